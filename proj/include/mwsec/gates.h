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

#ifndef MWSEC_GATES_H_
#define MWSEC_GATES_H_

#include <cstdint>
#include <vector>

#include "mwsec/runtime.h"

namespace mwsec {

using Bits = std::vector<uint8_t>;
using Shares = std::vector<u128>;

// Modeled costs per instance.
inline int64_t CostAnd() { return kLambda + 20; }
inline int64_t CostBitMul(int lp) { return kLambda + lp; }
inline int64_t CostComp(int l) { return static_cast<int64_t>(kLambda) * l + 14 * l; }
inline int64_t CostDrelu(int l) { return CostComp(l - 1); }
inline int64_t CostB2A(int l) { return kLambda + l; }
inline int64_t CostMux(int l) { return 2 * (kLambda + l); }
inline int64_t CostLut(int m, int n) { return 2 * kLambda + (int64_t{1} << m) * n; }
inline int64_t CostSExtGeneral(int l, int lp) {
  return static_cast<int64_t>(kLambda) * (l + 1) + 13 * l + lp;
}
inline int64_t CostSExtConstrained(int l, int lp) { return kLambda + lp - l; }
// out is the output width, 0 meaning m + n.
inline int64_t CostCrossTerm(int m, int n, int out = 0) {
  int64_t u = m < n ? m : n;
  int64_t o = out ? out : m + n;
  return u * kLambda + u * o - u * (u - 1) / 2;
}
inline int64_t CostCompSmallOt(int bits, int lp) { return 3 * kLambda + (int64_t{1} << bits) + lp; }
inline int64_t CostCompSmallAnd(int n, int lp) { return static_cast<int64_t>(n - 1) * (kLambda + lp); }

// Each gate is called by both parties with their own inputs; vectors are
// batches of independent instances. "a@P0" inputs are read only on P0.

// a@P0, b@P1 -> XOR shares of a & b.
Bits AndGate(Party& p, const Bits& mine);
// a@P0, b@P1 -> shares of a*b over Z_{2^lp}.
Shares BitMul(Party& p, const Bits& mine, int lp);
// x@P0, y@P1 (l-bit) -> XOR shares of 1{x < y}.
Bits Comp(Party& p, const Shares& mine, int l);
// Like Comp, but returns arithmetic shares over Z_{2^lp} without extra
// rounds. Charged as Comp(l) + B2A(lp).
Shares CompArith(Party& p, const Shares& mine, int l, int lp);
// XOR-shared AND via dealer triples; one simultaneous exchange.
Bits AndShared(Party& p, const Bits& x, const Bits& y);

enum class CompSmallVariant { kOt, kAnd };
// x@P0, y@P1 in [0, n) -> arithmetic shares of 1{x < y} over Z_{2^lp}.
Shares CompSmall(Party& p, const Shares& mine, int n, int lp, CompSmallVariant variant);

// Shares of x over Z_{2^l} -> XOR shares of 1{int(x) >= 0}.
Bits Drelu(Party& p, const Shares& x, int l);
Shares B2A(Party& p, const Bits& b, int l);
// Shares of x*b over Z_{2^l}.
Shares Mux(Party& p, const Shares& x, const Bits& b, int l);

// Who holds table entries. kShared: both parties hold additive shares.
enum class TableOwner { kP0, kP1, kShared };
// table holds count * 2^m entries of n bits (this party's part; ignored on
// the party that owns nothing). idx are shares over Z_{2^m}.
Shares Lut(Party& p, const Shares& table, const Shares& idx, int m, int n, TableOwner owner);

// Like Lut, but each entry packs several fields (low field first) that are
// masked independently, so each field is returned as its own sharing.
// table holds one value per field per entry: table[(i*2^m + v)*F + f].
std::vector<Shares> LutFields(Party& p, const Shares& table, const Shares& idx, int m,
                              const std::vector<int>& widths, TableOwner owner);

enum class SExtVariant { kGeneral, kConstrained };
// Constrained requires int(x) in [-2^{l-2}, 2^{l-2}).
Shares SExt(Party& p, const Shares& x, int l, int lp, SExtVariant variant);

// x@P0 (m bits), y@P1 (n bits), unsigned -> shares of x*y mod 2^out,
// out defaulting to m + n.
Shares CrossTerm(Party& p, const Shares& mine, int m, int n, int out = 0);

struct MulHints {
  bool msb_x_zero = false;
  bool msb_y_zero = false;
};
// x@P0 (m-bit signed), y@P1 (n-bit signed) -> shares of int(x)*int(y)
// over Z_{2^{m+n}}.
Shares MulSigned(Party& p, const Shares& mine, int m, int n, MulHints hints = {});
// Shares of x (m bits) times public signed c (n bits) -> Z_{2^{m+n}}.
Shares MulPublic(Party& p, const Shares& x, int m, i128 c, int n,
                 SExtVariant variant = SExtVariant::kGeneral);

// Local helpers.
Shares AddShares(const Shares& a, const Shares& b, int l);
Shares SubShares(const Shares& a, const Shares& b, int l);
// Adds a public constant (party 0 only).
Shares AddPublic(const Party& p, const Shares& a, u128 c, int l);
// Opens shares to both parties (one simultaneous exchange).
Shares Open(Party& p, const Shares& x, int l);
Bits OpenBits(Party& p, const Bits& b);

}  // namespace mwsec

#endif  // MWSEC_GATES_H_
