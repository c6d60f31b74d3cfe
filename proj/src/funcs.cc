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

#include "mwsec/funcs.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mwsec/ot.h"

namespace mwsec {

namespace {

i128 EncodeScaled(double v, int frac, bool round) {
  double s = std::ldexp(v, frac);
  if (!std::isfinite(s) || std::fabs(s) >= 0x1p100)
    throw std::out_of_range("descriptor encoding overflow");
  return static_cast<i128>(round ? std::nearbyint(s) : std::floor(s));
}

u128 ModW(i128 v, int w) { return static_cast<u128>(v) & Mask(w); }

i128 FloorDivI(i128 a, i128 d) {
  i128 q = a / d;
  if ((a % d != 0) && ((a < 0) != (d < 0))) --q;
  return q;
}

}  // namespace

void FuncDescriptor::Validate() const {
  if (terms.empty() || h.empty()) throw std::invalid_argument("descriptor needs terms and groups");
  for (const auto& t : terms) {
    if (t.group < 0 || t.group >= groups()) throw std::invalid_argument("term group out of range");
    if (!t.f || !t.g) throw std::invalid_argument("term functions must be set");
  }
  if (l < 2 || f < 0 || f >= l) throw std::invalid_argument("bad input meta");
  if (in_ring() < l || in_ring() > 127) throw std::invalid_argument("bad share ring width");
  if (mw_bound > Pow2(l - 1)) throw std::invalid_argument("MW bound exceeds L/2");
  if (fg_width < 2 || 2 * fg_width > 126) throw std::invalid_argument("bad f/g width");
  if (product_bits() < 2 * fg_width || product_bits() > 126) throw std::invalid_argument("bad product width");
  if (fg_offset >= Pow2(fg_width)) throw std::invalid_argument("offset exceeds f/g width");
  if (h_width < 2 || wide() > 128) throw std::invalid_argument("bad h width");
  if (shift() < 0) throw std::invalid_argument("output precision exceeds the product precision");
  if (table_width < 2 || table_width > wide() - shift())
    throw std::invalid_argument("table width exceeds the shifted product width");
  if (out_width < 1 || out_width > 128) throw std::invalid_argument("bad output width");
}

int64_t CostSop(const FuncDescriptor& d) {
  int64_t bits = static_cast<int64_t>(d.terms.size()) * CostCrossTerm(d.fg_width, d.fg_width, d.product_bits());
  bits += d.groups() * CostSExtConstrained(d.product_bits(), d.wide());
  if (d.in_ring() > d.l)
    bits += CostMwConv(2);
  else
    bits += CostMw(MwParams(d.l, 2, d.mw_bound ? d.mw_bound : Pow2(d.l - 1)));
  bits += CostLut(2, d.table_width);
  if (d.out_width > d.table_width) bits += CostSExtConstrained(d.table_width, d.out_width);
  return bits;
}

Shares EvalSop(Party& p, const FuncDescriptor& d, const Shares& x) {
  d.Validate();
  size_t count = x.size();
  size_t nt = d.terms.size();
  int ng = d.groups();
  int w = d.fg_width, pw = d.product_bits(), wide = d.wide(), tw = d.table_width;
  i128 off = static_cast<i128>(d.fg_offset);

  // Local encodings of f_i(x0/2^f) on P0 and g_i(x1/2^f) on P1.
  Shares ops(count * nt);
  std::vector<i128> enc(count * nt);
  for (size_t i = 0; i < count; ++i) {
    double r = std::ldexp(static_cast<double>(x[i] & Mask(d.l)), -d.f);
    for (size_t t = 0; t < nt; ++t) {
      const RealFn& fn = p.id() == 0 ? d.terms[t].f : d.terms[t].g;
      i128 e = EncodeScaled(fn(r), d.fg_frac, d.round_encode);
      i128 s = e + off;
      if (s < 0 || s >= static_cast<i128>(Pow2(w))) throw std::out_of_range("descriptor encoding overflow");
      enc[i * nt + t] = e;
      ops[i * nt + t] = static_cast<u128>(s);
    }
  }

  // (e0 + o)(e1 + o) = e0 e1 + o e0 + o e1 + o^2.
  Shares prod = CrossTerm(p, ops, w, w, pw);
  Shares sums(count * ng, 0);
  for (size_t i = 0; i < count; ++i) {
    for (size_t t = 0; t < nt; ++t) {
      i128 corr = -off * enc[i * nt + t] - (p.id() == 0 ? off * off : 0);
      u128 v = (prod[i * nt + t] + ModW(corr, pw)) & Mask(pw);
      if (d.terms[t].negate) v = (u128{0} - v) & Mask(pw);
      u128& acc = sums[i * ng + d.terms[t].group];
      acc = (acc + v) & Mask(pw);
    }
  }
  // Nonnegative sums are recentred into the constrained domain and back.
  u128 centre = d.nonneg_sums && p.id() == 0 ? Pow2(pw - 2) : 0;
  for (auto& v : sums) v = (v - centre) & Mask(pw);
  Shares ext = SExt(p, sums, pw, wide, SExtVariant::kConstrained);
  for (auto& v : ext) v = (v + centre) & Mask(wide);

  // Public h values at the three possible MW corrections.
  std::vector<u128> hv(static_cast<size_t>(ng) * 3);
  for (int g = 0; g < ng; ++g) {
    for (int j = 0; j < 3; ++j) {
      double c = -std::ldexp(static_cast<double>(j), d.l - d.f);
      i128 e = EncodeScaled(d.h[g](c), d.h_frac, d.round_encode);
      if (e >= static_cast<i128>(Pow2(d.h_width - 1)) || e < -static_cast<i128>(Pow2(d.h_width - 1)))
        throw std::out_of_range("descriptor encoding overflow");
      hv[g * 3 + j] = ModW(e, wide);
    }
  }

  int k = d.shift();
  u128 bump = (d.unbiased_shift && p.id() == 0) ? 1 : 0;
  Shares table(count * 4, 0);
  for (size_t i = 0; i < count; ++i) {
    for (int j = 0; j < 3; ++j) {
      u128 e = 0;
      for (int g = 0; g < ng; ++g) e += ext[i * ng + g] * hv[g * 3 + j];
      e &= Mask(wide);
      table[i * 4 + j] = ((e >> k) + bump) & Mask(tw);
    }
  }

  Shares mw;
  if (d.in_ring() > d.l) {
    mw = PiMwConv(p, x, d.in_ring(), d.l, 2);
  } else {
    Shares xr(count);
    for (size_t i = 0; i < count; ++i) xr[i] = x[i] & Mask(d.l);
    mw = PiMw(p, xr, MwParams(d.l, 2, d.mw_bound ? d.mw_bound : Pow2(d.l - 1)));
  }
  Shares y = Lut(p, table, mw, 2, tw, TableOwner::kShared);
  if (d.out_width > tw) return SExt(p, y, tw, d.out_width, SExtVariant::kConstrained);
  for (auto& v : y) v &= Mask(d.out_width);
  return y;
}

int ExpParams::mu() const {
  return static_cast<int>(std::ceil(std::ldexp(std::log2(base), alpha))) + 1;
}

FuncDescriptor ExpDescriptor(const ExpParams& prm, int ring) {
  if (!(prm.base > 0)) throw std::invalid_argument("base must be positive");
  if (prm.alpha < 1 || prm.f < 0) throw std::invalid_argument("bad exponent meta");
  int mu = prm.mu();
  if (mu < 2) throw std::invalid_argument("mu must be at least 2");
  FuncDescriptor d;
  if (prm.l_a() < 2 || prm.f_a < 0) throw std::invalid_argument("bad A encoding");
  double lb = std::log(prm.base);
  int pw = prm.product_width ? prm.product_width : 2 * prm.l_a();
  double fill = 1.0;
  if (prm.fill) {
    // Largest encoding t with t^2 < 2^{pw-1} and t < 2^{l_a}.
    double target = std::min(std::ldexp(1.0, prm.l_a()) - 1, std::floor(std::sqrt(std::ldexp(1.0, pw - 1) - 1)));
    double top = std::exp(lb * std::ldexp(static_cast<double>(Pow2(prm.l()) - 1), -prm.f));
    fill = target / (std::ldexp(1.0, prm.f_a) * top);
  }
  auto pow_a = [lb, fill](double t) { return fill * std::exp(lb * t); };
  double scale = prm.scale / (fill * fill);
  d.terms = {SopTerm{pow_a, pow_a, 0, false}};
  d.h = {[lb, scale](double c) { return std::exp(lb * c) * scale; }};
  d.l = prm.l();
  d.f = prm.f;
  d.ring = ring;
  d.mw_bound = 0;
  d.fg_width = prm.l_a();
  d.fg_frac = prm.f_a;
  d.fg_offset = 0;
  d.product_width = pw;
  d.nonneg_sums = true;
  d.h_width = prm.l_m();
  d.h_frac = prm.f_m;
  d.out_width = prm.lp();
  d.out_frac = prm.fp();
  d.table_width = std::min(prm.lp(), 2 * mu + 2 + prm.fp());
  d.round_encode = prm.round_encode;
  d.unbiased_shift = prm.unbiased_shift;
  return d;
}

Shares PiExp(Party& p, const Shares& x, int ring, const ExpParams& prm) {
  return EvalSop(p, ExpDescriptor(prm, ring), x);
}

ExpParams RexpInnerParams(const RexpParams& prm) {
  if (prm.l < prm.f + 4) throw std::invalid_argument("rexp needs l >= f + 4");
  ExpParams e;
  e.f = prm.f;
  e.alpha = 3;
  e.f_a = prm.f_a;
  e.a_width = prm.a_width;
  e.fill = true;
  // One spare product bit lets the encodings fill all a_width bits.
  e.product_width = 2 * prm.a_width + 1;
  e.f_m = prm.f_m;
  if (prm.fp() < prm.f || prm.fp() > prm.l - 3) throw std::invalid_argument("bad rexp output precision");
  e.out_width = prm.l;
  e.out_frac = prm.fp();
  // e^{-x} = e^{y'} e^{-4 + 2^-f} with y' = -x + 4 - 2^-f.
  e.scale = std::exp(-4.0 + std::ldexp(1.0, -prm.f));
  e.round_encode = prm.round_encode;
  e.unbiased_shift = prm.unbiased_shift;
  return e;
}

Shares PiRexp(Party& p, const Shares& x, const RexpParams& prm) {
  ExpParams inner = RexpInnerParams(prm);
  int l = prm.l, f = prm.f;
  size_t count = x.size();
  Shares z(count);
  for (size_t i = 0; i < count; ++i) {
    u128 c = p.id() == 0 ? 4 * Pow2(f) - 1 : 0;
    z[i] = (c - x[i]) & Mask(l);
  }
  Shares e = PiExp(p, z, l, inner);
  if (l == f + 4) return e;
  Shares t(count);
  for (size_t i = 0; i < count; ++i) {
    u128 c = p.id() == 0 ? 8 * Pow2(f) - 1 : 0;
    t[i] = (c - x[i]) & Mask(l);
  }
  Bits b = Drelu(p, t, l);
  return Mux(p, e, b, l);
}

int64_t CostRexp(const RexpParams& prm) {
  int64_t bits = CostSop(ExpDescriptor(RexpInnerParams(prm), prm.l));
  if (prm.l > prm.f + 4) bits += CostDrelu(prm.l) + CostMux(prm.l);
  return bits;
}

FuncDescriptor SinDescriptor(const SinParams& prm) {
  auto s = [](double t) { return std::sin(t); };
  auto c = [](double t) { return std::cos(t); };
  FuncDescriptor d;
  // sin(a+b+c) = (sa cb + ca sb) cos c + (ca cb - sa sb) sin c.
  d.terms = {SopTerm{s, c, 0, false}, SopTerm{c, s, 0, false}, SopTerm{c, c, 1, false},
             SopTerm{s, s, 1, true}};
  d.h = {c, s};
  d.l = prm.l;
  d.f = prm.f;
  d.ring = 0;
  d.mw_bound = prm.bound;
  d.fg_width = prm.l_t();
  d.fg_frac = prm.f_t;
  d.fg_offset = Pow2(prm.f_t);
  d.h_width = prm.l_big();
  d.h_frac = prm.f_big;
  d.out_width = prm.lp();
  d.out_frac = prm.fp();
  d.table_width = 5 + prm.fp();
  d.round_encode = prm.round_encode;
  d.unbiased_shift = prm.unbiased_shift;
  return d;
}

Shares PiSin(Party& p, const Shares& x, const SinParams& prm) {
  return EvalSop(p, SinDescriptor(prm), x);
}

int DivParams::ld() const { return d <= 1 ? 0 : BitLength(d - 1); }

Shares PiDiv(Party& p, const Shares& x, const DivParams& prm) {
  int l = prm.l;
  u128 d = prm.d;
  if (d < 2) throw std::invalid_argument("divisor must be at least 2");
  if (d >= Pow2(l)) throw std::invalid_argument("divisor must be below 2^l");
  int ld = prm.ld();
  size_t count = x.size();
  u128 bound = prm.bound ? prm.bound : Pow2(l - 1);
  Shares mw = PiMw(p, x, MwParams(l, 2, bound));

  // Tables of P1: floor((x1 - jL)/d) and (x1 - jL) mod d.
  Shares table;
  if (p.id() == 1) {
    table.assign(count * 4 * 2, 0);
    i128 dd = static_cast<i128>(d);
    for (size_t i = 0; i < count; ++i) {
      for (int j = 0; j < 3; ++j) {
        i128 v = static_cast<i128>(x[i] & Mask(l)) - static_cast<i128>(j) * static_cast<i128>(Pow2(l));
        i128 q = FloorDivI(v, dd);
        table[(i * 4 + j) * 2] = ModW(q, l);
        table[(i * 4 + j) * 2 + 1] = static_cast<u128>(v - q * dd);
      }
    }
  }
  std::vector<Shares> got = LutFields(p, table, mw, 2, {l, ld + 1}, TableOwner::kP1);
  const Shares& x1 = got[0];
  const Shares& ie = got[1];

  Shares temp(count);
  for (size_t i = 0; i < count; ++i) {
    u128 v = ie[i];
    if (p.id() == 0) v += (x[i] & Mask(l)) % d - d;
    temp[i] = v & Mask(ld + 1);
  }
  Bits eps = Drelu(p, temp, ld + 1);
  Shares ea = B2A(p, eps, l);
  Shares out(count);
  for (size_t i = 0; i < count; ++i) {
    u128 v = x1[i] + ea[i];
    if (p.id() == 0) v += (x[i] & Mask(l)) / d;
    out[i] = v & Mask(l);
  }
  return out;
}

int64_t CostDiv(const DivParams& prm) {
  int l = prm.l, ld = prm.ld();
  u128 bound = prm.bound ? prm.bound : Pow2(l - 1);
  return CostMw(MwParams(l, 2, bound)) + CostLut(2, l + ld + 1) + CostDrelu(ld + 1) + CostB2A(l);
}

Shares PiTrunc(Party& p, const Shares& x, int l, int k, u128 bound, bool round) {
  if (k <= 0 || k >= l) throw std::invalid_argument("shift must satisfy 0 < k < l");
  size_t count = x.size();
  if (!bound) bound = Pow2(l - 1);
  Shares xs(count);
  for (size_t i = 0; i < count; ++i)
    xs[i] = (x[i] + (round && p.id() == 0 ? Pow2(k - 1) : 0)) & Mask(l);
  Shares mw = PiMw(p, xs, MwParams(l, k, bound));
  // e' = 1{(x0 mod 2^k) + (x1 mod 2^k) >= 2^k}.
  Shares v(count);
  for (size_t i = 0; i < count; ++i)
    v[i] = p.id() == 0 ? Mask(k) - (xs[i] & Mask(k)) : xs[i] & Mask(k);
  Shares ea = CompArith(p, v, k, l);
  Shares out(count);
  for (size_t i = 0; i < count; ++i)
    out[i] = ((xs[i] >> k) - (mw[i] << (l - k)) + ea[i]) & Mask(l);
  return out;
}

int64_t CostTrunc(int l, int k, u128 bound) {
  if (!bound) bound = Pow2(l - 1);
  return CostMw(MwParams(l, k, bound)) + CostComp(k) + CostB2A(l);
}

// a*b = a0 b0 + a1 b1 + a0 b1 + a1 b0; each cross product takes one COT
// per bit of the chooser's operand, the i-th only l - i bits long.
Shares MulRing(Party& p, const Shares& a, const Shares& b, int l) {
  size_t count = a.size();
  if (b.size() != count) throw std::invalid_argument("operand sizes differ");
  p.Record("mul_ring", static_cast<int64_t>(count) * CostMulRing(l));
  auto quiet = p.Quiet();
  std::vector<CotBatch> from0, from1;
  from0.reserve(l);
  from1.reserve(l);
  for (int i = 0; i < l; ++i) {
    from0.emplace_back(p, 0, count, l - i);
    from1.emplace_back(p, 1, count, l - i);
  }
  auto& send = p.id() == 0 ? from0 : from1;
  auto& recv = p.id() == 0 ? from1 : from0;
  for (int i = 0; i < l; ++i) {
    Bits bits(count);
    for (size_t t = 0; t < count; ++t) bits[t] = (b[t] >> i) & 1;
    recv[i].Choose(bits);
  }
  Shares out(count);
  for (size_t t = 0; t < count; ++t) out[t] = a[t] * b[t];
  for (int i = 0; i < l; ++i) {
    Shares corr(count);
    for (size_t t = 0; t < count; ++t) corr[t] = a[t] & Mask(l - i);
    Shares r = send[i].Transfer(corr);
    for (size_t t = 0; t < count; ++t) out[t] -= r[t] << i;
  }
  for (int i = 0; i < l; ++i) {
    Shares got = recv[i].Receive();
    for (size_t t = 0; t < count; ++t) out[t] += got[t] << i;
  }
  for (auto& v : out) v &= Mask(l);
  return out;
}

Shares SecureMax(Party& p, const Shares& z, size_t n, int l) {
  if (n == 0 || z.size() % n) throw std::invalid_argument("input is not a whole number of rows");
  size_t rows = z.size() / n;
  std::vector<Shares> cur(rows);
  for (size_t r = 0; r < rows; ++r) cur[r].assign(z.begin() + r * n, z.begin() + (r + 1) * n);
  size_t width = n;
  while (width > 1) {
    size_t pairs = width / 2;
    Shares a, b;
    a.reserve(rows * pairs);
    b.reserve(rows * pairs);
    for (size_t r = 0; r < rows; ++r) {
      for (size_t t = 0; t < pairs; ++t) {
        a.push_back(cur[r][2 * t]);
        b.push_back(cur[r][2 * t + 1]);
      }
    }
    Shares diff = SubShares(a, b, l);
    Bits ge = Drelu(p, diff, l);
    Shares sel = Mux(p, diff, ge, l);
    Shares m = AddShares(b, sel, l);
    size_t next = (width + 1) / 2;
    for (size_t r = 0; r < rows; ++r) {
      Shares nr(next);
      for (size_t t = 0; t < pairs; ++t) nr[t] = m[r * pairs + t];
      if (width % 2) nr[next - 1] = cur[r][width - 1];
      cur[r] = std::move(nr);
    }
    width = next;
  }
  Shares out(rows);
  for (size_t r = 0; r < rows; ++r) out[r] = cur[r][0];
  return out;
}

Shares Reciprocal(Party& p, const Shares& s, const ReciprocalParams& prm) {
  int l = prm.l, f = prm.f, rw = prm.ring, fr = prm.frac;
  if (prm.max_value < 1) throw std::invalid_argument("max_value must be at least 1");
  if (f < 3) throw std::invalid_argument("reciprocal needs f >= 3");
  if (rw <= l || rw > 127) throw std::invalid_argument("reciprocal ring must exceed l");
  if (2 * fr + 4 + BitLength(prm.max_value) >= rw || f + fr + BitLength(prm.max_value) + 3 >= rw)
    throw std::invalid_argument("reciprocal precision exceeds the ring");
  size_t count = s.size();

  // Initial guess: piecewise constant on eighth-octave intervals, built
  // from threshold bits 1{s >= t} with telescoping public weights.
  int octaves = std::max(1, BitLength(prm.max_value));
  std::vector<double> cuts;
  for (int k = 0; k < octaves; ++k)
    for (int m = 0; m < 8; ++m) cuts.push_back(std::ldexp(1.0 + m / 8.0, k));
  cuts.push_back(std::ldexp(1.0, octaves));
  size_t segs = cuts.size() - 1;
  std::vector<i128> guess(segs);
  for (size_t i = 0; i < segs; ++i) guess[i] = EncodeScaled(2.0 / (cuts[i] + cuts[i + 1]), fr, true);

  Shares diffs(count * (segs - 1));
  for (size_t i = 0; i < count; ++i)
    for (size_t t = 1; t < segs; ++t) {
      u128 thr = static_cast<u128>(std::ldexp(cuts[t], f));
      diffs[i * (segs - 1) + t - 1] = (s[i] - (p.id() == 0 ? thr : 0)) & Mask(l);
    }
  Shares c = B2A(p, Drelu(p, diffs, l), rw);
  Shares y(count);
  for (size_t i = 0; i < count; ++i) {
    u128 v = p.id() == 0 ? ModW(guess[0], rw) : 0;
    for (size_t t = 1; t < segs; ++t) v += c[i * (segs - 1) + t - 1] * ModW(guess[t] - guess[t - 1], rw);
    y[i] = v & Mask(rw);
  }

  // y <- y (2 - s y).
  Shares sx = SExt(p, s, l, rw, SExtVariant::kConstrained);
  for (int it = 0; it < prm.iterations; ++it) {
    Shares sy = PiTrunc(p, MulRing(p, sx, y, rw), rw, f, 0, true);
    Shares u(count);
    for (size_t i = 0; i < count; ++i) u[i] = ((p.id() == 0 ? Pow2(fr + 1) : 0) - sy[i]) & Mask(rw);
    y = PiTrunc(p, MulRing(p, y, u, rw), rw, fr, 0, true);
  }
  return y;
}

Shares PiSoftmax(Party& p, const Shares& z, size_t n, int l, int f) {
  if (n == 0 || z.size() % n) throw std::invalid_argument("input is not a whole number of rows");
  size_t rows = z.size() / n;
  int nb = BitLength(n);
  // Exponentials carry fe fractional bits and the reciprocal fr, so small
  // terms keep their relative precision until the final rounding.
  int fe = std::min(20, l - nb - 2);
  int fr = std::min({24, (59 - nb) / 2, 59 - fe - nb});
  if (fe < f || fr < f) throw std::invalid_argument("softmax needs l >= f + bitlength(n) + 2");
  int pw = std::max(l, fe + fr + 4);
  Shares mx = SecureMax(p, z, n, l);
  Shares x(z.size());
  for (size_t r = 0; r < rows; ++r)
    for (size_t t = 0; t < n; ++t) x[r * n + t] = (mx[r] - z[r * n + t]) & Mask(l);
  RexpParams rp;
  rp.l = l;
  rp.f = f;
  rp.out_frac = fe;
  Shares e = PiRexp(p, x, rp);
  Shares sum(rows, 0);
  for (size_t r = 0; r < rows; ++r)
    for (size_t t = 0; t < n; ++t) sum[r] = (sum[r] + e[r * n + t]) & Mask(l);
  ReciprocalParams rcp;
  rcp.l = l;
  rcp.f = fe;
  rcp.max_value = n;
  rcp.ring = 64;
  rcp.frac = fr;
  Shares dinv = Reciprocal(p, sum, rcp);
  Shares ew = pw > l ? SExt(p, e, l, pw, SExtVariant::kConstrained) : e;
  Shares db(z.size());
  for (size_t r = 0; r < rows; ++r)
    for (size_t t = 0; t < n; ++t) db[r * n + t] = dinv[r] & Mask(pw);
  Shares prod = MulRing(p, ew, db, pw);
  Shares out = PiTrunc(p, prod, pw, fe + fr - f, Pow2(fe + fr + 2), true);
  for (auto& v : out) v &= Mask(l);
  return out;
}

}  // namespace mwsec
