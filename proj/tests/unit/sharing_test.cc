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

#include "doctest.h"
#include "mwsec/oracle.h"
#include "mwsec/sharing.h"

namespace mwsec {
namespace {

TEST_CASE("share and reconstruct") {
  Rng rng(5);
  auto [a, b] = Share(RingElem(0, 8), rng);
  CHECK(Reconstruct(a, b).value() == 0);
  auto [c, d] = Share(RingElem(44, 8), rng);
  CHECK(((c.value.value() + d.value.value()) & 255) == 44);
  CHECK(c.party == 0);
  CHECK(d.party == 1);
  CHECK(Reconstruct({RingElem(200, 8), 0}, {RingElem(100, 8), 1}).value() == 44);
  CHECK(Reconstruct({RingElem(0, 8), 0}, {RingElem(77, 8), 1}).value() == 77);
  CHECK(Reconstruct({RingElem(77, 8), 0}, {RingElem(256 - 77, 8), 1}).value() == 0);
}

TEST_CASE("sharing is reproducible under a fixed seed") {
  Rng r1(99), r2(99);
  auto p1 = Share(RingElem(123, 16), r1);
  auto p2 = Share(RingElem(123, 16), r2);
  CHECK(p1.first.value == p2.first.value);
  CHECK(p1.second.value == p2.second.value);
}

TEST_CASE("bit sharing") {
  Rng rng(3);
  for (int b = 0; b < 2; ++b) {
    auto [s0, s1] = ShareBit(b, rng);
    CHECK(ReconstructBit(s0, s1) == b);
  }
}

TEST_CASE("wrap_plain") {
  CHECK(WrapPlain(RingElem(200, 8), RingElem(100, 8)) == 1);
  CHECK(WrapPlain(RingElem(0, 8), RingElem(0, 8)) == 0);
  CHECK(WrapPlain(RingElem(255, 8), RingElem(1, 8)) == 1);
  CHECK(WrapRaw(Mask(128), 1, 128) == 1);
}

TEST_CASE("mw_plain") {
  CHECK(MwPlain(RingElem(200, 8), RingElem(100, 8)) == 1);
  CHECK(MwPlain(RingElem(0, 8), RingElem(0, 8)) == 0);
  CHECK(MwPlain(RingElem(200, 8), RingElem(200, 8)) == 2);
}

TEST_CASE("MW identity int(x) = x0 + x1 - MW*L on every pair at l = 8") {
  int bad = 0;
  for (u128 x0 = 0; x0 < 256; ++x0)
    for (u128 x1 = 0; x1 < 256; ++x1) {
      i128 v = SignedOf(x0 + x1, 8);
      int mw = MwRaw(x0, x1, 8);
      if (static_cast<i128>(x0 + x1) - mw * 256 != v) ++bad;
      if (mw != MwOracle(x0, x1, 8)) ++bad;
    }
  CHECK(bad == 0);
}

TEST_CASE("region classifier agrees with the MW case split") {
  int l = 8;
  u128 bound = 96;
  int bad = 0;
  for (u128 x0 = 0; x0 < 256; ++x0)
    for (u128 x1 = 0; x1 < 256; ++x1) {
      Region r = RegionOf(x0, x1, l, bound);
      bool within = WithinBound(x0 + x1, bound, l);
      if ((r == Region::kOutside) == within) ++bad;
      int mw = MwRaw(x0, x1, l);
      if (r == Region::kA && mw != 0) ++bad;
      if ((r == Region::kB || r == Region::kC) && mw != 1) ++bad;
      if (r == Region::kD && mw != 2) ++bad;
    }
  CHECK(bad == 0);
  CHECK(RegionName(Region::kA) == "A");
}

}  // namespace
}  // namespace mwsec
