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
#include "mwsec/oracle.h"

namespace mwsec {
namespace {

TEST_CASE("ULP error") {
  CHECK(UlpError(1.0, 1.0) == 0.0);
  CHECK(UlpError(std::exp(-8.0), 0.0) == doctest::Approx(1.374).epsilon(0.001));
  CHECK(UlpError(0.5, 0.5 + std::ldexp(1.0, -12)) == doctest::Approx(1.0));
  CHECK(UlpError(0.5, 0.5, {1e-6, 8}) == 0.0);
}

TEST_CASE("round to multiple uses ties to even") {
  CHECK(RoundToMultiple(2.5, 1.0) == 2.0);
  CHECK(RoundToMultiple(3.5, 1.0) == 4.0);
  CHECK(RoundToMultiple(-2.5, 1.0) == -2.0);
  CHECK(RoundToMultiple(0.1234567, 1e-6) == doctest::Approx(0.123457));
}

TEST_CASE("ULP statistics") {
  UlpStats s;
  s.Add(1.0, 0.5);
  s.Add(2.0, 1.5);
  CHECK(s.cases == 2);
  CHECK(s.max_ulp == 1.5);
  CHECK(s.worst_input == 2.0);
  CHECK(s.avg() == 1.0);
}

TEST_CASE("integer oracles") {
  CHECK(DivOracle(44, 7) == 6);
  CHECK(DivOracle(-1, 7) == -1);
  CHECK(FloorDiv(-14, 7) == -2);
  CHECK(TruncOracle(-56, 3) == -7);
  CHECK(TruncOracle(44, 2) == 11);
  CHECK(CompOracle(3, 6) == 1);
  CHECK(CompOracle(6, 6) == 0);
  CHECK(WrapOracle(255, 1, 8) == 1);
  CHECK(MwOracle(200, 200, 8) == 2);
}

TEST_CASE("real oracles") {
  CHECK(SinOracle(0.0) == 0.0);
  CHECK(RexpOracle(0.0) == 1.0);
  CHECK(ExpOracle(2.0, 3.0) == 8.0);
  auto s = SoftmaxOracle({1.0, 1.0});
  CHECK(s[0] == doctest::Approx(0.5));
  auto big = SoftmaxOracle({1000.0, 0.0});
  CHECK(big[0] == doctest::Approx(1.0));
  CHECK(SoftmaxOracle({}).empty());
}

}  // namespace
}  // namespace mwsec
