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

#ifndef MWSEC_FUNCS_H_
#define MWSEC_FUNCS_H_

#include <cstdint>
#include <functional>
#include <vector>

#include "mwsec/gates.h"
#include "mwsec/mw.h"

namespace mwsec {

using RealFn = std::function<double(double)>;

// One product f(x0/2^f) * g(x1/2^f) * h(-MW*L/2^f); terms sharing a group
// share h.
struct SopTerm {
  RealFn f;
  RealFn g;
  int group = 0;
  bool negate = false;
};

// func(Real(x)) = sum_i f_i(x0/2^f) g_i(x1/2^f) h_i(-MW L/2^f).
struct FuncDescriptor {
  std::vector<SopTerm> terms;
  std::vector<RealFn> h;  // one per group
  int l = 15;             // input ring
  int f = 12;
  int ring = 0;           // width of the incoming shares; 0 means l
  u128 mw_bound = 0;      // |x| < B for MW; 0 means L/2
  // f/g encodings. A nonzero offset is added to each value so the
  // operands are nonnegative and one cross term suffices per product.
  int fg_width = 16;
  int fg_frac = 14;
  u128 fg_offset = 0;
  int product_width = 0;  // cross-term output width; 0 means 2 * fg_width
  // Every group sum is known to lie in [0, 2^{product_width - 1}), which
  // widens the domain of the constrained sign extension.
  bool nonneg_sums = false;
  // Public h values.
  int h_width = 32;
  int h_frac = 30;
  int table_width = 17;
  int out_width = 16;
  int out_frac = 12;
  bool round_encode = true;
  // Adds one on P0 after the share-local shift, making its expected
  // result exact rather than one low.
  bool unbiased_shift = true;

  int groups() const { return static_cast<int>(h.size()); }
  int in_ring() const { return ring ? ring : l; }
  int shift() const { return 2 * fg_frac + h_frac - out_frac; }
  int product_bits() const { return product_width ? product_width : 2 * fg_width; }
  int wide() const { return product_bits() + h_width; }
  // Throws std::invalid_argument when inconsistent.
  void Validate() const;
};

// Modeled bits of EvalSop for one input.
int64_t CostSop(const FuncDescriptor& d);
Shares EvalSop(Party& p, const FuncDescriptor& d, const Shares& x);

struct ExpParams {
  double base = 2.718281828459045;
  int f = 12;
  int alpha = 3;
  int f_a = 10;
  int a_width = 0;    // width of the A encodings; 0 means mu + f_a
  // Scales the A encodings by a public constant so the largest one fills
  // a_width bits; M absorbs the inverse square.
  bool fill = false;
  int product_width = 0;  // 0 means 2 * l_a
  int f_m = 32;
  int out_width = 0;  // 0 means f + alpha
  int out_frac = 0;   // 0 means f
  double scale = 1.0; // public factor folded into the M table
  bool round_encode = true;
  bool unbiased_shift = true;

  int l() const { return f + alpha; }
  int mu() const;
  int l_a() const { return a_width ? a_width : mu() + f_a; }
  int l_m() const { return f_m + 2; }
  int lp() const { return out_width ? out_width : l(); }
  int fp() const { return out_frac ? out_frac : f; }
};

// ring is the width of the incoming shares (>= f + alpha).
FuncDescriptor ExpDescriptor(const ExpParams& prm, int ring);
Shares PiExp(Party& p, const Shares& x, int ring, const ExpParams& prm);

// e^{-Real(x)} for int(x) >= 0 over Z_{2^l}, precision f, l >= f + 4.
struct RexpParams {
  int l = 16;
  int f = 12;
  // A < e^8 < 2^12, so 12 integer bits suffice and the encodings are
  // scaled to fill them.
  int f_a = 11;
  int a_width = 23;
  int f_m = 38;
  int out_frac = 0;  // 0 means f
  bool round_encode = true;
  bool unbiased_shift = true;
  int fp() const { return out_frac ? out_frac : f; }
};
ExpParams RexpInnerParams(const RexpParams& prm);
Shares PiRexp(Party& p, const Shares& x, const RexpParams& prm);
int64_t CostRexp(const RexpParams& prm);

struct SinParams {
  int l = 21;
  int f = 12;
  int out_width = 0;  // 0 means l
  int out_frac = 0;   // 0 means f
  u128 bound = 0;     // 0 means L/2
  int f_t = 14;
  int f_big = 30;
  bool round_encode = true;
  bool unbiased_shift = true;

  int l_t() const { return f_t + 2; }
  int l_big() const { return f_big + 2; }
  int lp() const { return out_width ? out_width : l; }
  int fp() const { return out_frac ? out_frac : f; }
};
FuncDescriptor SinDescriptor(const SinParams& prm);
Shares PiSin(Party& p, const Shares& x, const SinParams& prm);

struct DivParams {
  int l = 16;
  u128 d = 2;
  u128 bound = 0;  // 0 means L/2
  int ld() const;
};
// floor(int(x) / d), exact.
Shares PiDiv(Party& p, const Shares& x, const DivParams& prm);
int64_t CostDiv(const DivParams& prm);

// floor(int(x) / 2^k), exact. With round set, adds 2^{k-1} first (the
// caller keeps |x| + 2^{k-1} < B).
Shares PiTrunc(Party& p, const Shares& x, int l, int k, u128 bound = 0, bool round = false);
int64_t CostTrunc(int l, int k, u128 bound = 0);

// Product of two shared values mod 2^l.
Shares MulRing(Party& p, const Shares& a, const Shares& b, int l);
inline int64_t CostMulRing(int l) {
  return 2 * (static_cast<int64_t>(l) * kLambda + static_cast<int64_t>(l) * (l + 1) / 2);
}

// Row-wise maximum of rows x n signed values.
Shares SecureMax(Party& p, const Shares& z, size_t n, int l);

struct ReciprocalParams {
  int l = 37;
  int f = 12;
  u128 max_value = 1024;  // Real(s) <= max_value
  int ring = 64;
  int frac = 22;
  int iterations = 2;
};
// 1 / Real(s) for Real(s) >= 1, as shares over Z_{2^ring} with `frac`
// fractional bits.
Shares Reciprocal(Party& p, const Shares& s, const ReciprocalParams& prm);

// Row-wise softmax of rows x n values over Z_{2^l}, precision f.
Shares PiSoftmax(Party& p, const Shares& z, size_t n, int l, int f);

}  // namespace mwsec

#endif  // MWSEC_FUNCS_H_
