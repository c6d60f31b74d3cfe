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

#ifndef MWSEC_MW_H_
#define MWSEC_MW_H_

#include <cstdint>

#include "mwsec/gates.h"

namespace mwsec {

// Constraint bundle for computing MW(x) under |x| < B.
class MwParams {
 public:
  enum class Branch { kAuto, kAnd, kComp };

  // Throws unless 0 < B <= 2^{l-1} and 1 <= lp <= 128.
  MwParams(int l, int lp, u128 bound);
  // B given as a fraction of L/2, rounded down (at least 1).
  static MwParams FromFraction(int l, int lp, double fraction);

  int l() const { return l_; }
  int lp() const { return lp_; }
  u128 bound() const { return bound_; }
  bool full_range() const { return bound_ == Pow2(l_ - 1); }
  // L - 2B; zero when B = L/2.
  u128 gap() const { return Pow2(l_) - 2 * bound_; }
  // floor(L / (L - 2B)).
  u128 k() const;
  // ceil(log2 K), or l when B = L/2.
  int lstar() const;
  // Comparison width actually used by the comparison branch: l* unless K is
  // a power of two, where the largest operand K needs one more bit.
  int comp_bits() const;
  // Number of BitMuls of the AND branch: floor((L-1)/(L-2B)).
  int and_terms() const;
  // B < 3L/8.
  bool and_branch() const { return 8 * bound_ < 3 * Pow2(l_); }

 private:
  int l_;
  int lp_;
  u128 bound_;
};

// x@P0, y@P1 with x - y in [A, L) u [-L, 0): XOR shares of 1{y < x}.
Bits CompConstrained(Party& p, const Shares& mine, u128 gap, int l);
// x0@P0, x1@P1 with x0 + x1 in [0, L) u [L + A, 2L): shares of Wrap.
Bits WrapConstrained(Party& p, const Shares& mine, u128 gap, int l);

// Shares of x over Z_{2^l} with |x| < B -> shares of MW(x) over Z_{2^lp}.
Shares PiMw(Party& p, const Shares& x, const MwParams& prm,
            MwParams::Branch branch = MwParams::Branch::kAuto);

// Shares of x over Z_{2^lr} with |x| < 2^{l-1} -> shares over Z_{2^lp} of
// MW(z, 2^l), z_i = x_i mod 2^l.
Shares PiMwConv(Party& p, const Shares& x, int lr, int l, int lp);

inline int64_t CostMwConv(int lp) { return 2 * (kLambda + lp); }
// Modeled cost of PiMw for the chosen branch.
int64_t CostMw(const MwParams& prm, MwParams::Branch branch = MwParams::Branch::kAuto);

}  // namespace mwsec

#endif  // MWSEC_MW_H_
