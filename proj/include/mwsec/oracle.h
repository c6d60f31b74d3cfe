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

#ifndef MWSEC_ORACLE_H_
#define MWSEC_ORACLE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "mwsec/ring.h"

namespace mwsec {

struct UlpConfig {
  double unit = 1e-6;  // reference quantum u
  int frac_bits = 12;  // approximation precision f~
};

// Rounds to the nearest multiple of `unit`, ties to even.
double RoundToMultiple(double a, double unit);
// |round(a, u) - approx| / 2^{-f~}.
double UlpError(double reference, double approx, const UlpConfig& cfg = {});

struct UlpStats {
  int64_t cases = 0;
  double max_ulp = 0;
  double sum_ulp = 0;
  double worst_input = 0;
  double avg() const { return cases ? sum_ulp / static_cast<double>(cases) : 0.0; }
  void Add(double input, double ulp);
};

enum class Region { kA, kB, kC, kD, kOutside };
// Classifies a share pair for the bound B by the integer sum x0 + x1.
Region RegionOf(u128 x0, u128 x1, int l, u128 bound);
std::string RegionName(Region r);

// Exact integer oracles.
int MwOracle(u128 x0, u128 x1, int l);
int WrapOracle(u128 x0, u128 x1, int l);
int CompOracle(u128 x, u128 y);
i128 FloorDiv(i128 a, i128 d);
i128 DivOracle(i128 x, i128 d);
i128 TruncOracle(i128 x, int k);

// Binary64 oracles.
double SinOracle(double x);
double ExpOracle(double base, double x);
double RexpOracle(double x);
std::vector<double> SoftmaxOracle(const std::vector<double>& z);

struct VerifyReport {
  std::string protocol;
  int64_t cases = 0;
  int64_t failures = 0;
  double max_deviation = 0;
  UlpStats ulp;
  std::string first_failure;
};

}  // namespace mwsec

#endif  // MWSEC_ORACLE_H_
