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

#include "mwsec/oracle.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mwsec/sharing.h"

namespace mwsec {

double RoundToMultiple(double a, double unit) {
  double q = a / unit;
  double r = std::nearbyint(q);
  // nearbyint honours the default ties-to-even mode; make it explicit.
  if (std::fabs(q - std::trunc(q)) == 0.5) r = 2.0 * std::nearbyint(q / 2.0);
  return r * unit;
}

double UlpError(double reference, double approx, const UlpConfig& cfg) {
  return std::fabs(RoundToMultiple(reference, cfg.unit) - approx) / std::ldexp(1.0, -cfg.frac_bits);
}

void UlpStats::Add(double input, double ulp) {
  ++cases;
  sum_ulp += ulp;
  if (ulp > max_ulp) {
    max_ulp = ulp;
    worst_input = input;
  }
}

Region RegionOf(u128 x0, u128 x1, int l, u128 bound) {
  u128 L = Pow2(l);
  u128 s = (x0 & Mask(l)) + (x1 & Mask(l));
  if (s < bound) return Region::kA;
  if (s >= L - bound && s < L) return Region::kB;
  if (s >= L && s < L + bound) return Region::kC;
  if (s >= 2 * L - bound) return Region::kD;
  return Region::kOutside;
}

std::string RegionName(Region r) {
  switch (r) {
    case Region::kA: return "A";
    case Region::kB: return "B";
    case Region::kC: return "C";
    case Region::kD: return "D";
    default: return "outside";
  }
}

int MwOracle(u128 x0, u128 x1, int l) {
  // Case split on the integer sum of the residues.
  u128 L = Pow2(l);
  u128 s = (x0 & Mask(l)) + (x1 & Mask(l));
  if (s < L / 2) return 0;
  if (s < L + L / 2) return 1;
  return 2;
}

int WrapOracle(u128 x0, u128 x1, int l) { return WrapRaw(x0, x1, l); }

int CompOracle(u128 x, u128 y) { return x < y ? 1 : 0; }

i128 FloorDiv(i128 a, i128 d) {
  if (d == 0) throw std::invalid_argument("division by zero");
  i128 q = a / d;
  if ((a % d != 0) && ((a < 0) != (d < 0))) --q;
  return q;
}

i128 DivOracle(i128 x, i128 d) { return FloorDiv(x, d); }

i128 TruncOracle(i128 x, int k) { return FloorDiv(x, static_cast<i128>(1) << k); }

double SinOracle(double x) { return std::sin(x); }

double ExpOracle(double base, double x) { return std::pow(base, x); }

double RexpOracle(double x) { return std::exp(-x); }

std::vector<double> SoftmaxOracle(const std::vector<double>& z) {
  if (z.empty()) return {};
  double m = *std::max_element(z.begin(), z.end());
  std::vector<double> e(z.size());
  double s = 0;
  for (size_t i = 0; i < z.size(); ++i) s += (e[i] = std::exp(z[i] - m));
  for (auto& v : e) v /= s;
  return e;
}

}  // namespace mwsec
