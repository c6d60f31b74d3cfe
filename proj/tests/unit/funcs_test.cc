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

#include <cmath>

#include "doctest.h"
#include "mwsec/funcs.h"
#include "mwsec/oracle.h"
#include "test_util.h"

namespace mwsec {
namespace {

using testing::AddAll;
using testing::ShareAll;
using testing::Wrap;

// Shares the encodings of `reals`, runs `fn` and decodes the result.
template <class F>
std::vector<double> RunReal(const std::vector<double>& reals, int l, int f, int out_l, int out_f, F fn,
                            uint64_t seed = 31) {
  std::vector<u128> enc;
  for (double r : reals) enc.push_back(EncodeFixRaw(r, l, f));
  auto [a, b] = ShareAll(enc, l, seed);
  auto r = RunPair([&](Party& p) { return fn(p, p.id() == 0 ? a : b); }, seed);
  Shares got = AddAll(r.out0, r.out1, out_l);
  std::vector<double> out;
  for (u128 v : got) out.push_back(DecodeRealRaw(v, out_l, out_f));
  return out;
}

TEST_CASE("identity descriptor") {
  FuncDescriptor d;
  d.l = 8;
  d.f = 4;
  d.fg_width = 14;
  d.fg_frac = 8;
  d.h_width = 12;
  d.h_frac = 4;
  d.table_width = 12;
  d.out_width = 8;
  d.out_frac = 4;
  auto id = [](double v) { return v; };
  auto one = [](double) { return 1.0; };
  d.terms = {{id, one, 0, false}, {one, id, 0, false}, {one, one, 1, false}};
  d.h = {one, id};
  std::vector<u128> xs;
  for (u128 v = 0; v < 256; ++v) xs.push_back(v);
  auto [a, b] = ShareAll(xs, 8);
  auto r = RunPair([&](Party& p) { return EvalSop(p, d, p.id() == 0 ? a : b); }, 4);
  Shares got = AddAll(r.out0, r.out1, 8);
  int bad = 0;
  for (size_t i = 0; i < xs.size(); ++i) bad += got[i] != xs[i];
  CHECK(bad == 0);
  CHECK(r.ledger.modeled_bits == 256 * CostSop(d));
}

TEST_CASE("descriptor validation") {
  FuncDescriptor d;
  CHECK_THROWS_AS(d.Validate(), std::invalid_argument);
  ExpParams e;
  FuncDescriptor ok = ExpDescriptor(e, e.l());
  CHECK_NOTHROW(ok.Validate());
  ok.table_width = ok.wide();
  CHECK_THROWS_AS(ok.Validate(), std::invalid_argument);
}

TEST_CASE("exponential descriptor reproduces PiExp") {
  ExpParams e;
  std::vector<u128> xs;
  for (u128 v = 0; v < Pow2(e.l()); v += 37) xs.push_back(v);
  auto [a, b] = ShareAll(xs, e.l());
  auto d = ExpDescriptor(e, e.l());
  auto r1 = RunPair([&](Party& p) { return EvalSop(p, d, p.id() == 0 ? a : b); }, 6);
  auto r2 = RunPair([&](Party& p) { return PiExp(p, p.id() == 0 ? a : b, e.l(), e); }, 6);
  CHECK(AddAll(r1.out0, r1.out1, e.lp()) == AddAll(r2.out0, r2.out1, e.lp()));
  CHECK(r1.ledger.modeled_bits == r2.ledger.modeled_bits);
}

TEST_CASE("PiExp values") {
  ExpParams e;
  auto out = RunReal({0.0, -4.0}, e.l(), e.f, e.lp(), e.fp(),
                     [&](Party& p, const Shares& x) { return PiExp(p, x, e.l(), e); });
  CHECK(UlpError(1.0, out[0]) <= 2.0);
  CHECK(UlpError(std::exp(-4.0), out[1]) <= 2.0);
}

TEST_CASE("PiRexp values") {
  RexpParams rp;
  rp.l = 37;
  auto out = RunReal({0.0, 8.5, 3.0, 7.99}, 37, 12, 37, 12,
                     [&](Party& p, const Shares& x) { return PiRexp(p, x, rp); });
  CHECK(UlpError(1.0, out[0]) <= 1.5);
  CHECK(out[1] == 0.0);
  CHECK(UlpError(std::exp(-3.0), out[2]) <= 1.5);
  CHECK(UlpError(std::exp(-7.99), out[3]) <= 1.5);
  CHECK(CostRexp(RexpParams{}) <= 28 * 128 + 2 * 16 + 4 * 12 + 897);
}

TEST_CASE("PiRexp with extra output precision") {
  RexpParams rp;
  rp.l = 37;
  rp.out_frac = 20;
  std::vector<double> xs{0.0, 0.5, 3.0, 6.25, 7.99};
  auto out = RunReal(xs, 37, 12, 37, 20, [&](Party& p, const Shares& x) { return PiRexp(p, x, rp); });
  for (size_t i = 0; i < xs.size(); ++i) {
    CAPTURE(xs[i]);
    CHECK(std::abs(out[i] - std::exp(-xs[i])) <= std::exp(-xs[i]) * 2e-3);
  }
  rp.out_frac = 35;
  CHECK_THROWS_AS(RexpInnerParams(rp), std::invalid_argument);
}

TEST_CASE("PiSin values") {
  SinParams sp;
  auto out = RunReal({0.0, 1.5707, -1.5707, 100.0}, 21, 12, 21, 12,
                     [&](Party& p, const Shares& x) { return PiSin(p, x, sp); });
  CHECK(UlpError(0.0, out[0]) <= 2.0);
  CHECK(UlpError(std::sin(1.5707), out[1]) <= 1.5);
  CHECK(UlpError(std::sin(-1.5707), out[2]) <= 1.5);
  CHECK(UlpError(std::sin(100.0), out[3]) <= 1.5);
}

TEST_CASE("PiDiv") {
  auto r = RunPair(
      [](Party& p) {
        Shares mine{p.id() == 0 ? u128{200} : u128{100}, 0};
        return PiDiv(p, mine, DivParams{8, 7, 0});
      },
      1);
  CHECK(AddAll(r.out0, r.out1, 8) == Shares{6, 0});
  CHECK(r.ledger.modeled_bits == 2 * CostDiv(DivParams{8, 7, 0}));

  Rng rng(2);
  for (u128 d : {u128{3}, u128{1000}, u128{123457}}) {
    std::vector<u128> xs;
    for (int i = 0; i < 300; ++i) xs.push_back(rng.Next(37));
    auto [a, b] = ShareAll(xs, 37);
    auto s = RunPair([&](Party& p) { return PiDiv(p, p.id() == 0 ? a : b, DivParams{37, d, 0}); }, 3);
    Shares got = AddAll(s.out0, s.out1, 37);
    int bad = 0;
    for (size_t i = 0; i < xs.size(); ++i)
      bad += got[i] != Wrap(DivOracle(SignedOf(xs[i], 37), static_cast<i128>(d)), 37);
    CHECK(bad == 0);
  }
}

TEST_CASE("PiTrunc") {
  auto [a, b] = ShareAll({44, Wrap(-56, 8), 0}, 8);
  auto r2 = RunPair([&](Party& p) { return PiTrunc(p, p.id() == 0 ? a : b, 8, 2); }, 1);
  CHECK(AddAll(r2.out0, r2.out1, 8)[0] == 11);
  CHECK(AddAll(r2.out0, r2.out1, 8)[2] == 0);
  auto r3 = RunPair([&](Party& p) { return PiTrunc(p, p.id() == 0 ? a : b, 8, 3); }, 1);
  CHECK(AddAll(r3.out0, r3.out1, 8)[1] == Wrap(-7, 8));
  auto rr = RunPair([&](Party& p) { return PiTrunc(p, p.id() == 0 ? a : b, 8, 3, 0, true); }, 1);
  CHECK(AddAll(rr.out0, rr.out1, 8)[0] == 6);  // 44 / 8 = 5.5 rounds up
  CHECK(r2.ledger.modeled_bits == 3 * CostTrunc(8, 2));
}

TEST_CASE("MulRing") {
  Rng rng(7);
  std::vector<u128> xs, ys;
  for (int i = 0; i < 200; ++i) {
    xs.push_back(rng.Next(37));
    ys.push_back(rng.Next(37));
  }
  auto [a0, a1] = ShareAll(xs, 37, 1);
  auto [b0, b1] = ShareAll(ys, 37, 2);
  auto r = RunPair([&](Party& p) { return p.id() == 0 ? MulRing(p, a0, b0, 37) : MulRing(p, a1, b1, 37); }, 5);
  Shares got = AddAll(r.out0, r.out1, 37);
  int bad = 0;
  for (size_t i = 0; i < xs.size(); ++i) bad += got[i] != ((xs[i] * ys[i]) & Mask(37));
  CHECK(bad == 0);
  CHECK(r.ledger.modeled_bits == 200 * CostMulRing(37));
}

TEST_CASE("SecureMax") {
  auto [a, b] = ShareAll({3, Wrap(-5, 16), 9}, 16);
  auto r = RunPair([&](Party& p) { return SecureMax(p, p.id() == 0 ? a : b, 1, 16); }, 1);
  CHECK(AddAll(r.out0, r.out1, 16) == Shares{3, Wrap(-5, 16), 9});
  Shares a2(a.begin(), a.begin() + 2), b2(b.begin(), b.begin() + 2);
  auto s = RunPair([&](Party& p) { return SecureMax(p, p.id() == 0 ? a2 : b2, 2, 16); }, 1);
  CHECK(AddAll(s.out0, s.out1, 16)[0] == 3);

  Rng rng(5);
  std::vector<u128> xs;
  std::vector<i128> want;
  for (int row = 0; row < 1000; ++row) {
    i128 m = -100000;
    for (int t = 0; t < 16; ++t) {
      i128 v = static_cast<i128>(rng.Below(30001)) - 15000;
      m = v > m ? v : m;
      xs.push_back(Wrap(v, 16));
    }
    want.push_back(m);
  }
  auto [c, d] = ShareAll(xs, 16);
  auto t = RunPair([&](Party& p) { return SecureMax(p, p.id() == 0 ? c : d, 16, 16); }, 2);
  Shares got = AddAll(t.out0, t.out1, 16);
  int bad = 0;
  for (size_t i = 0; i < want.size(); ++i) bad += got[i] != Wrap(want[i], 16);
  CHECK(bad == 0);
}

TEST_CASE("Reciprocal") {
  ReciprocalParams rp;
  rp.max_value = 1024;
  auto out = RunReal({1.0, 4.0, 768.0, 3.3}, 37, 12, 64, rp.frac,
                     [&](Party& p, const Shares& x) { return Reciprocal(p, x, rp); });
  double tol = std::ldexp(1.0, -12 + 2);
  CHECK(std::abs(out[0] - 1.0) <= tol);
  CHECK(std::abs(out[1] - 0.25) <= tol);
  CHECK(std::abs(out[2] - 1.0 / 768) <= tol);
  CHECK(std::abs(out[3] - 1.0 / DecodeRealRaw(EncodeFixRaw(3.3, 37, 12), 37, 12)) <= tol);
}

TEST_CASE("PiSoftmax") {
  auto one = RunReal({2.5}, 37, 12, 37, 12, [](Party& p, const Shares& x) { return PiSoftmax(p, x, 1, 37, 12); });
  CHECK(std::abs(one[0] - 1.0) <= std::ldexp(1.0, -10));
  std::vector<double> uni(8, -1.25);
  auto u = RunReal(uni, 37, 12, 37, 12, [](Party& p, const Shares& x) { return PiSoftmax(p, x, 8, 37, 12); });
  for (double v : u) CHECK(std::abs(v - 0.125) <= std::ldexp(1.0, -10));
}

}  // namespace
}  // namespace mwsec
