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

// mwsec: verification suites, cost tables and two-process runs.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "mwsec/cli.h"

namespace {

using mwsec::RunConfig;

mwsec::u128 ParseU128(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer");
  mwsec::u128 v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') throw std::invalid_argument("not an integer: " + s);
    v = v * 10 + static_cast<unsigned>(c - '0');
  }
  return v;
}

uint64_t DefaultSeed() {
  const char* env = std::getenv("MWSEC_SEED");
  return env ? std::strtoull(env, nullptr, 10) : 1;
}

struct Options {
  RunConfig cfg;
  std::string b_abs;
  std::string d = "7";
};

void AddCommon(CLI::App* app, Options& o) {
  app->add_option("protocol", o.cfg.protocol, "Protocol id")
      ->required()
      ->check(CLI::IsMember(mwsec::Protocols()));
  app->add_option("--l", o.cfg.l, "Ring width l");
  app->add_option("--f", o.cfg.f, "Fractional bits f");
  app->add_option("--lp", o.cfg.lp, "Output width l'");
  app->add_option("--lr", o.cfg.lr, "Share ring width for mwconv");
  app->add_option("--B", o.cfg.b_fraction, "B as a fraction of L/2");
  app->add_option("--B-abs", o.b_abs, "B as an absolute integer");
  app->add_option("--d", o.d, "Public divisor");
  app->add_option("--k", o.cfg.k, "Truncation shift (default f)");
  app->add_option("--batch", o.cfg.batch, "Instances (rows for softmax)");
  app->add_option("--n", o.cfg.n, "Softmax row length");
  app->add_option("--seed", o.cfg.seed, "Session seed (default $MWSEC_SEED or 1)");
}

void Finish(Options& o) {
  if (!o.b_abs.empty()) o.cfg.b_absolute = ParseU128(o.b_abs);
  o.cfg.d = ParseU128(o.d);
  mwsec::ValidateConfig(o.cfg);
}

std::string Hex(uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

int Verify(Options& o) {
  Finish(o);
  auto in = mwsec::MakeInputs(o.cfg);
  auto r = mwsec::RunInMemory(o.cfg, in);
  auto rep = mwsec::Verify(o.cfg, in, mwsec::Combine(o.cfg, r.out0, r.out1));
  std::cout << mwsec::ReportJson(rep, r.ledger);
  return rep.failures == 0 ? 0 : 1;
}

int Bench(Options& o, uint64_t runs, bool extrapolate, const std::string& format, const std::string& out) {
  Finish(o);
  auto rows = mwsec::Bench(o.cfg, runs, extrapolate);
  auto emit = [&](const std::string& text, const std::string& path) {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
  };
  if (format == "csv" || format == "both") emit(mwsec::BenchCsv(rows), out.empty() ? "" : out + ".csv");
  if (format == "json" || format == "both") emit(mwsec::BenchJson(rows), out.empty() ? "" : out + ".json");
  return 0;
}

int PartyCmd(Options& o, int role, const std::string& host, int port, bool listen, bool connect, bool check,
             int timeout_s) {
  Finish(o);
  auto in = mwsec::MakeInputs(o.cfg);
  mwsec::TcpOptions t;
  t.host = host;
  t.port = port;
  t.role = role;
  t.listen = connect ? false : (listen ? true : role == 0);
  t.seed = o.cfg.seed;
  t.tag = o.cfg.protocol + " " + mwsec::ParamString(o.cfg) + " batch=" + std::to_string(o.cfg.batch);
  t.connect_timeout = std::chrono::seconds(timeout_s);
  mwsec::Party p(role, o.cfg.seed, mwsec::ConnectTcp(t));
  p.set_timeout(std::chrono::seconds(timeout_s));
  mwsec::Shares out = mwsec::RunJob(p, o.cfg, in);
  // Each party's ledger already carries the full modeled cost.
  nlohmann::ordered_json j;
  j["role"] = role;
  j["protocol"] = o.cfg.protocol;
  j["params"] = mwsec::ParamString(o.cfg);
  j["outputs"] = out.size();
  j["modeled_bits"] = p.ledger().modeled_bits;
  j["modeled_mb"] = static_cast<double>(p.ledger().modeled_bits) / 8e6;
  j["actual_bytes_sent"] = p.ledger().actual_bytes;
  j["rounds"] = p.ledger().rounds;
  j["digest"] = Hex(mwsec::Digest(out));
  p.channel().Close();
  int rc = 0;
  if (check) {
    auto ref = mwsec::RunInMemory(o.cfg, in);
    const mwsec::Shares& mine = role == 0 ? ref.out0 : ref.out1;
    bool same = mine == out && ref.ledger.modeled_bits == p.ledger().modeled_bits;
    j["in_memory_digest"] = Hex(mwsec::Digest(mine));
    j["matches_in_memory"] = same;
    rc = same ? 0 : 1;
  }
  std::cout << j.dump(2) << std::endl;
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mwsec: two-party protocols built on the MW coefficient"};
  app.require_subcommand(1);

  Options vo;
  vo.cfg.seed = DefaultSeed();
  auto* verify = app.add_subcommand("verify", "Run a protocol against its plaintext oracle");
  AddCommon(verify, vo);
  verify->add_flag("--exhaustive", vo.cfg.exhaustive, "Enumerate every share pair (widths <= 12)");
  verify->add_option("--max-ulp", vo.cfg.max_ulp, "Fail cases above this ULP error");

  Options bo;
  bo.cfg.seed = DefaultSeed();
  uint64_t runs = 1u << 14;
  bool extrapolate = false;
  std::string format = "csv", out;
  auto* bench = app.add_subcommand("bench", "Report modeled and measured communication");
  AddCommon(bench, bo);
  bench->add_option("--runs", runs, "Run count for aggregate MB");
  bench->add_flag("--extrapolate", extrapolate, "Add a row scaled to the large run count");
  bench->add_option("--format", format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
  bench->add_option("--out", out, "Output path prefix (default stdout)");

  Options po;
  po.cfg.seed = DefaultSeed();
  int role = 0, port = 7420, timeout_s = 60;
  std::string host = "127.0.0.1";
  bool listen = false, connect = false, check = false;
  auto* party = app.add_subcommand("party", "Run one party over TCP");
  AddCommon(party, po);
  party->add_option("--role", role, "Party id")->required()->check(CLI::IsMember({0, 1}));
  party->add_option("--host", host, "Peer host");
  party->add_option("--port", port, "TCP port");
  party->add_flag("--listen", listen, "Accept the connection (default for role 0)");
  party->add_flag("--connect", connect, "Dial the peer (default for role 1)");
  party->add_flag("--check", check, "Compare against an in-memory run of the same seed");
  party->add_option("--timeout", timeout_s, "Seconds to wait for the peer");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*verify) return Verify(vo);
    if (*bench) return Bench(bo, runs, extrapolate, format, out);
    if (*party) return PartyCmd(po, role, host, port, listen, connect, check, timeout_s);
  } catch (const mwsec::HandshakeError& e) {
    std::cerr << "handshake error: " << e.what() << std::endl;
    return 3;
  } catch (const mwsec::TransportError& e) {
    std::cerr << "transport error: " << e.what() << std::endl;
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help() << std::endl;
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << std::endl;
    return 2;
  }
  return 0;
}
