// Copyright 2026 The mwsec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mwsec/cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "mwsec/funcs.h"
#include "mwsec/gates.h"
#include "mwsec/mw.h"

namespace mwsec {

namespace {

bool Is(const RunConfig& c, const char* name) { return c.protocol == name; }

int ExpMu(const RunConfig& cfg) {
  ExpParams e;
  e.f = cfg.f;
  return e.mu();
}

int Shift(const RunConfig& cfg) { return cfg.k ? cfg.k : cfg.f; }

int ShareRing(const RunConfig& cfg) {
  if (Is(cfg, "mwconv")) return cfg.lr ? cfg.lr : cfg.l + 1;
  if (Is(cfg, "exp")) return cfg.f + 3;
  return cfg.l;
}

void Split(i128 v, int l, Rng& rng, JobInputs& in) {
  u128 x0 = rng.Next(l);
  in.in0.push_back(x0);
  in.in1.push_back((static_cast<u128>(v) - x0) & Mask(l));
  in.values.push_back(v);
}

// Uniform signed value with |v| < bound.
i128 Within(Rng& rng, u128 bound) {
  u128 span = 2 * bound - 1;
  u128 r = span <= (u128{1} << 63) ? static_cast<u128>(rng.Below(static_cast<uint64_t>(span)))
                                    : rng.Next(BitLength(span)) % span;
  return static_cast<i128>(r) - static_cast<i128>(bound - 1);
}

double Decode(u128 v, int width, int frac) {
  return std::ldexp(static_cast<double>(SignedOf(v, width)), -frac);
}

}  // namespace

const std::vector<std::string>& Protocols() {
  static const std::vector<std::string> kAll = {"mw",  "mwconv", "div",   "trunc", "bitmul", "and",
                                                "b2a", "mux",    "comp",  "drelu", "sin",    "exp",
                                                "rexp", "softmax"};
  return kAll;
}

bool IsApproximate(const std::string& protocol) {
  return protocol == "sin" || protocol == "exp" || protocol == "rexp" || protocol == "softmax";
}

u128 BoundOf(const RunConfig& cfg) {
  if (cfg.b_absolute) return *cfg.b_absolute;
  return MwParams::FromFraction(cfg.l, 2, cfg.b_fraction).bound();
}

int OutputWidth(const RunConfig& cfg) {
  const std::string& p = cfg.protocol;
  if (p == "mw" || p == "mwconv") return cfg.lp ? cfg.lp : 2;
  if (p == "and" || p == "comp" || p == "drelu") return 1;
  if (p == "exp") return cfg.lp ? cfg.lp : 2 * ExpMu(cfg) + 2 + cfg.f;
  if (p == "bitmul" || p == "sin") return cfg.lp ? cfg.lp : cfg.l;
  return cfg.l;
}

bool BooleanOutput(const RunConfig& cfg) {
  return Is(cfg, "and") || Is(cfg, "comp") || Is(cfg, "drelu");
}

void ValidateConfig(const RunConfig& cfg) {
  if (std::find(Protocols().begin(), Protocols().end(), cfg.protocol) == Protocols().end())
    throw std::invalid_argument("unknown protocol: " + cfg.protocol);
  if (cfg.l < 2 || cfg.l > 126) throw std::invalid_argument("l must be in [2, 126]");
  bool uses_f = IsApproximate(cfg.protocol) || (Is(cfg, "trunc") && cfg.k == 0);
  if (uses_f && (cfg.f < 0 || cfg.f >= cfg.l)) throw std::invalid_argument("f must be in [0, l)");
  if (cfg.lp < 0 || cfg.lp > 128) throw std::invalid_argument("l' must be in [1, 128]");
  if (!cfg.b_absolute && (!(cfg.b_fraction > 0) || cfg.b_fraction > 1))
    throw std::invalid_argument("B fraction must be in (0, 1]");
  u128 b = BoundOf(cfg);
  if (b == 0 || b > Pow2(cfg.l - 1)) throw std::invalid_argument("B must satisfy 0 < B <= L/2");
  if (Is(cfg, "mwconv") && (ShareRing(cfg) <= cfg.l || ShareRing(cfg) > 127))
    throw std::invalid_argument("mwconv needs l < lr <= 127");
  if (Is(cfg, "div") && (cfg.d < 2 || cfg.d >= Pow2(cfg.l)))
    throw std::invalid_argument("divisor must satisfy 2 <= d < 2^l");
  if (Is(cfg, "trunc") && (Shift(cfg) <= 0 || Shift(cfg) >= cfg.l))
    throw std::invalid_argument("shift must satisfy 0 < k < l");
  if (Is(cfg, "rexp") && cfg.l < cfg.f + 4) throw std::invalid_argument("rexp needs l >= f + 4");
  if (Is(cfg, "softmax") &&
      (cfg.n == 0 || cfg.f < 3 || cfg.l >= 64 || cfg.l < cfg.f + BitLength(cfg.n) + 2 ||
       59 - BitLength(cfg.n) < 2 * cfg.f))
    throw std::invalid_argument("softmax needs n >= 1, 3 <= f, f + bitlength(n) + 2 <= l < 64");
  if (cfg.batch == 0) throw std::invalid_argument("batch must be positive");
}

JobInputs MakeInputs(const RunConfig& cfg) {
  ValidateConfig(cfg);
  JobInputs in;
  Rng rng(cfg.seed ^ 0x6d77736563696e70ULL);
  const std::string& p = cfg.protocol;
  int l = cfg.l;
  size_t batch = cfg.batch;
  if (p == "mw" || p == "div" || p == "trunc" || p == "drelu" || p == "sin" || p == "mwconv") {
    int ring = ShareRing(cfg);
    u128 bound = p == "mwconv" ? Pow2(l - 1) : (p == "drelu" ? Pow2(l - 1) : BoundOf(cfg));
    if (cfg.exhaustive) {
      if (ring > 12) throw std::invalid_argument("exhaustive mode needs widths <= 12");
      // Every share pair with |x| < B.
      for (u128 x0 = 0; x0 < Pow2(ring); ++x0) {
        for (i128 v = -static_cast<i128>(bound) + 1; v < static_cast<i128>(bound); ++v) {
          in.in0.push_back(x0);
          in.in1.push_back((static_cast<u128>(v) - x0) & Mask(ring));
          in.values.push_back(v);
        }
      }
    } else {
      for (size_t i = 0; i < batch; ++i) Split(Within(rng, bound), ring, rng, in);
    }
  } else if (p == "exp") {
    int ring = cfg.f + 3;
    if (cfg.exhaustive) {
      for (u128 v = 0; v < Pow2(ring); ++v) Split(SignedOf(v, ring), ring, rng, in);
    } else {
      for (size_t i = 0; i < batch; ++i) Split(SignedOf(rng.Next(ring), ring), ring, rng, in);
    }
  } else if (p == "rexp") {
    i128 top = std::min<i128>(static_cast<i128>(8) << cfg.f, static_cast<i128>(Pow2(l - 1)));
    if (cfg.exhaustive) {
      for (i128 v = 0; v < top; ++v) Split(v, l, rng, in);
    } else {
      i128 hi = l > cfg.f + 4 ? std::min<i128>(static_cast<i128>(1000) << cfg.f, static_cast<i128>(Pow2(l - 1)) - 1)
                              : top - 1;
      for (size_t i = 0; i < batch; ++i) Split(static_cast<i128>(rng.Below(static_cast<uint64_t>(hi + 1))), l, rng, in);
    }
  } else if (p == "bitmul" || p == "and" || p == "b2a") {
    size_t count = cfg.exhaustive ? 4 : batch;
    for (size_t i = 0; i < count; ++i) {
      u128 a = cfg.exhaustive ? (i & 1) : rng.Bit(), b = cfg.exhaustive ? (i >> 1) : rng.Bit();
      in.in0.push_back(a);
      in.in1.push_back(b);
      in.values.push_back(p == "b2a" ? (a ^ b) : (a & b));
    }
  } else if (p == "mux") {
    for (size_t i = 0; i < batch; ++i) {
      Split(SignedOf(rng.Next(l), l), l, rng, in);
      u128 b0 = rng.Bit(), b1 = rng.Bit();
      in.aux0.push_back(b0);
      in.aux1.push_back(b1);
    }
  } else if (p == "comp") {
    for (size_t i = 0; i < batch; ++i) {
      u128 x = rng.Next(l), y = rng.Next(l);
      in.in0.push_back(x);
      in.in1.push_back(y);
      in.values.push_back(x < y ? 1 : 0);
    }
  } else if (p == "softmax") {
    // Peaked rows: N(0, 1) logits with one position raised by 4.
    std::mt19937_64 g(cfg.seed);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (size_t r = 0; r < batch; ++r) {
      size_t spike = static_cast<size_t>(g() % cfg.n);
      for (size_t t = 0; t < cfg.n; ++t) {
        double v = nd(g) + (t == spike ? 4.0 : 0.0);
        Split(SignedOf(EncodeFixRaw(v, l, cfg.f), l), l, rng, in);
      }
    }
  }
  in.count = in.in0.size();
  return in;
}

Shares RunJob(Party& p, const RunConfig& cfg, const JobInputs& in) {
  const Shares& x = p.id() == 0 ? in.in0 : in.in1;
  const std::string& name = cfg.protocol;
  int l = cfg.l;
  if (name == "mw") return PiMw(p, x, MwParams(l, OutputWidth(cfg), BoundOf(cfg)));
  if (name == "mwconv") return PiMwConv(p, x, ShareRing(cfg), l, OutputWidth(cfg));
  if (name == "div") return PiDiv(p, x, DivParams{l, cfg.d, BoundOf(cfg)});
  if (name == "trunc") return PiTrunc(p, x, l, Shift(cfg), BoundOf(cfg));
  auto bits_of = [](const Shares& s) {
    Bits b(s.size());
    for (size_t i = 0; i < s.size(); ++i) b[i] = static_cast<uint8_t>(s[i] & 1);
    return b;
  };
  auto widen = [](const Bits& b) { return Shares(b.begin(), b.end()); };
  if (name == "bitmul") return BitMul(p, bits_of(x), OutputWidth(cfg));
  if (name == "and") return widen(AndGate(p, bits_of(x)));
  if (name == "b2a") return B2A(p, bits_of(x), l);
  if (name == "mux") return Mux(p, x, bits_of(p.id() == 0 ? in.aux0 : in.aux1), l);
  if (name == "comp") return widen(Comp(p, x, l));
  if (name == "drelu") return widen(Drelu(p, x, l));
  if (name == "sin") {
    SinParams sp;
    sp.l = l;
    sp.f = cfg.f;
    sp.out_width = OutputWidth(cfg);
    sp.bound = BoundOf(cfg);
    return PiSin(p, x, sp);
  }
  if (name == "exp") {
    ExpParams e;
    e.f = cfg.f;
    e.out_width = OutputWidth(cfg);
    return PiExp(p, x, cfg.f + 3, e);
  }
  if (name == "rexp") {
    RexpParams rp;
    rp.l = l;
    rp.f = cfg.f;
    return PiRexp(p, x, rp);
  }
  if (name == "softmax") return PiSoftmax(p, x, cfg.n, l, cfg.f);
  throw std::invalid_argument("unknown protocol: " + name);
}

JobResult RunInMemory(const RunConfig& cfg, const JobInputs& in) {
  auto r = RunPair([&](Party& p) { return RunJob(p, cfg, in); }, cfg.seed);
  return JobResult{std::move(r.out0), std::move(r.out1), std::move(r.ledger)};
}

Shares Combine(const RunConfig& cfg, const Shares& a, const Shares& b) {
  Shares out(a.size());
  int w = OutputWidth(cfg);
  bool x = BooleanOutput(cfg);
  for (size_t i = 0; i < a.size(); ++i) out[i] = x ? ((a[i] ^ b[i]) & 1) : ((a[i] + b[i]) & Mask(w));
  return out;
}

VerifyReport Verify(const RunConfig& cfg, const JobInputs& in, const Shares& out) {
  VerifyReport rep;
  rep.protocol = cfg.protocol;
  const std::string& p = cfg.protocol;
  int w = OutputWidth(cfg);
  auto fail = [&](size_t i, const std::string& what) {
    ++rep.failures;
    if (rep.first_failure.empty())
      rep.first_failure = "case " + std::to_string(i) + ": " + what;
  };
  if (p == "softmax") {
    size_t n = cfg.n, rows = out.size() / n;
    rep.cases = static_cast<int64_t>(rows);
    UlpConfig uc{1e-6, cfg.f};
    for (size_t r = 0; r < rows; ++r) {
      std::vector<double> z(n), o(n);
      for (size_t t = 0; t < n; ++t) {
        z[t] = std::ldexp(static_cast<double>(in.values[r * n + t]), -cfg.f);
        o[t] = Decode(out[r * n + t], w, cfg.f);
      }
      std::vector<double> ref = SoftmaxOracle(z);
      double sum = 0;
      for (size_t t = 0; t < n; ++t) {
        sum += o[t];
        rep.ulp.Add(z[t], UlpError(ref[t], o[t], uc));
      }
      size_t am = std::max_element(o.begin(), o.end()) - o.begin();
      size_t rm = std::max_element(ref.begin(), ref.end()) - ref.begin();
      std::vector<double> srt(ref);
      std::sort(srt.rbegin(), srt.rend());
      bool margin = n == 1 || srt[0] - srt[1] >= std::ldexp(1.0, -8);
      double dev = std::fabs(sum - 1.0);
      rep.max_deviation = std::max(rep.max_deviation, dev);
      if (dev > 0.01) fail(r, "row sum " + std::to_string(sum));
      else if (margin && am != rm) fail(r, "argmax mismatch");
    }
    return rep;
  }
  rep.cases = static_cast<int64_t>(out.size());
  if (IsApproximate(p)) {
    int frac = cfg.f;
    UlpConfig uc{1e-6, frac};
    for (size_t i = 0; i < out.size(); ++i) {
      double xr = std::ldexp(static_cast<double>(in.values[i]), -cfg.f);
      double ref = p == "sin" ? SinOracle(xr) : (p == "exp" ? ExpOracle(std::exp(1.0), xr) : RexpOracle(xr));
      double got = Decode(out[i], w, frac);
      double u = UlpError(ref, got, uc);
      rep.ulp.Add(xr, u);
      rep.max_deviation = std::max(rep.max_deviation, std::fabs(ref - got));
      if (cfg.max_ulp >= 0 && u > cfg.max_ulp) fail(i, "ulp " + std::to_string(u) + " at x=" + std::to_string(xr));
    }
    return rep;
  }
  for (size_t i = 0; i < out.size(); ++i) {
    i128 want = 0;
    if (p == "mw") want = MwOracle(in.in0[i], in.in1[i], cfg.l);
    else if (p == "mwconv") want = MwOracle(in.in0[i] & Mask(cfg.l), in.in1[i] & Mask(cfg.l), cfg.l);
    else if (p == "div") want = DivOracle(in.values[i], static_cast<i128>(cfg.d));
    else if (p == "trunc") want = TruncOracle(in.values[i], Shift(cfg));
    else if (p == "mux") want = ((in.aux0[i] ^ in.aux1[i]) & 1) ? in.values[i] : 0;
    else if (p == "drelu") want = in.values[i] >= 0 ? 1 : 0;
    else want = in.values[i];
    u128 wr = static_cast<u128>(want) & Mask(w);
    if (out[i] != wr) {
      i128 diff = SignedOf(out[i] - wr, w);
      rep.max_deviation = std::max(rep.max_deviation, static_cast<double>(diff < 0 ? -diff : diff));
      fail(i, "got " + ToString(SignedOf(out[i], w)) + " want " + ToString(want));
    }
  }
  return rep;
}

std::string ParamString(const RunConfig& cfg) {
  std::ostringstream os;
  const std::string& p = cfg.protocol;
  os << "l=" << cfg.l;
  if (p == "sin" || p == "exp" || p == "rexp" || p == "softmax" || p == "trunc") os << " f=" << cfg.f;
  os << " lp=" << OutputWidth(cfg);
  if (p == "mw" || p == "div" || p == "trunc" || p == "sin") {
    if (cfg.b_absolute)
      os << " B=" << ToString(*cfg.b_absolute);
    else
      os << " B=" << cfg.b_fraction << "*L/2";
  }
  if (p == "mwconv") os << " lr=" << ShareRing(cfg);
  if (p == "div") os << " d=" << ToString(cfg.d);
  if (p == "trunc") os << " k=" << Shift(cfg);
  if (p == "softmax") os << " n=" << cfg.n;
  return os.str();
}

std::vector<BenchRow> Bench(const RunConfig& cfg, uint64_t runs, bool extrapolate) {
  JobInputs in = MakeInputs(cfg);
  JobResult r = RunInMemory(cfg, in);
  size_t units = Is(cfg, "softmax") ? in.count / cfg.n : in.count;
  BenchRow row;
  row.protocol = cfg.protocol;
  row.params = ParamString(cfg);
  row.batch = units;
  row.modeled_bits = r.ledger.modeled_bits / static_cast<int64_t>(units);
  row.actual_bytes = static_cast<double>(r.ledger.actual_bytes) / static_cast<double>(units);
  row.rounds = r.ledger.rounds;
  row.runs = runs;
  row.aggregate_mb = static_cast<double>(row.modeled_bits) * static_cast<double>(runs) / 8e6;
  if (IsApproximate(cfg.protocol)) {
    VerifyReport rep = Verify(cfg, in, Combine(cfg, r.out0, r.out1));
    row.max_ulp = rep.ulp.max_ulp;
    row.avg_ulp = rep.ulp.avg();
  }
  std::vector<BenchRow> rows{row};
  if (extrapolate) {
    BenchRow ex = row;
    ex.runs = Is(cfg, "softmax") ? (uint64_t{1} << 18) : (uint64_t{1} << 20);
    ex.aggregate_mb = static_cast<double>(row.modeled_bits) * static_cast<double>(ex.runs) / 8e6;
    ex.extrapolated = true;
    rows.push_back(ex);
  }
  return rows;
}

namespace {

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string BenchCsv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "protocol,params,batch,modeled_bits,actual_bytes,rounds,runs,aggregate_mb,extrapolated,max_ulp,avg_ulp\n";
  for (const auto& r : rows) {
    os << r.protocol << ',' << r.params << ',' << r.batch << ',' << r.modeled_bits << ','
       << Fixed(r.actual_bytes, 3) << ',' << r.rounds << ',' << r.runs << ',' << Fixed(r.aggregate_mb, 3) << ','
       << (r.extrapolated ? "yes" : "no") << ',' << (r.max_ulp ? Fixed(*r.max_ulp, 4) : "") << ','
       << (r.avg_ulp ? Fixed(*r.avg_ulp, 4) : "") << '\n';
  }
  return os.str();
}

std::string BenchJson(const std::vector<BenchRow>& rows) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["protocol"] = r.protocol;
    j["params"] = r.params;
    j["batch"] = r.batch;
    j["modeled_bits"] = r.modeled_bits;
    j["actual_bytes"] = std::stod(Fixed(r.actual_bytes, 3));
    j["rounds"] = r.rounds;
    j["runs"] = r.runs;
    j["aggregate_mb"] = std::stod(Fixed(r.aggregate_mb, 3));
    j["extrapolated"] = r.extrapolated;
    j["max_ulp"] = r.max_ulp ? nlohmann::ordered_json(std::stod(Fixed(*r.max_ulp, 4))) : nlohmann::ordered_json();
    j["avg_ulp"] = r.avg_ulp ? nlohmann::ordered_json(std::stod(Fixed(*r.avg_ulp, 4))) : nlohmann::ordered_json();
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

std::string ReportJson(const VerifyReport& r, const CostLedger& ledger) {
  nlohmann::ordered_json j;
  j["protocol"] = r.protocol;
  j["cases"] = r.cases;
  j["failures"] = r.failures;
  j["max_deviation"] = r.max_deviation;
  if (r.ulp.cases) {
    j["max_ulp"] = r.ulp.max_ulp;
    j["avg_ulp"] = r.ulp.avg();
    j["worst_input"] = r.ulp.worst_input;
  }
  if (!r.first_failure.empty()) j["first_failure"] = r.first_failure;
  j["modeled_bits"] = ledger.modeled_bits;
  j["rounds"] = ledger.rounds;
  j["actual_bytes"] = ledger.actual_bytes;
  nlohmann::ordered_json b;
  for (const auto& [k, v] : ledger.breakdown) b[k] = v;
  j["breakdown"] = b;
  return j.dump(2) + "\n";
}

uint64_t Digest(const Shares& s) {
  uint64_t h = 14695981039346656037ULL;
  for (u128 v : s) {
    for (int i = 0; i < 16; ++i) {
      h ^= static_cast<uint8_t>(v >> (8 * i));
      h *= 1099511628211ULL;
    }
  }
  return h;
}

}  // namespace mwsec
