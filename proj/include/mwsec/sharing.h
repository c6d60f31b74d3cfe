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

#ifndef MWSEC_SHARING_H_
#define MWSEC_SHARING_H_

#include <cstdint>
#include <random>
#include <utility>

#include "mwsec/ring.h"

namespace mwsec {

// Seedable PRNG handing out ring-width draws. Split() derives an
// independent child stream.
class Rng {
 public:
  explicit Rng(uint64_t seed = 0) : eng_(seed) {}

  uint64_t Next64() { return eng_(); }
  u128 Next(int width) {
    u128 v = eng_();
    if (width > 64) v |= static_cast<u128>(eng_()) << 64;
    return v & Mask(width);
  }
  int Bit() { return static_cast<int>(eng_() & 1); }
  // Uniform in [0, n).
  uint64_t Below(uint64_t n) { return std::uniform_int_distribution<uint64_t>(0, n - 1)(eng_); }
  Rng Split() {
    Rng child;
    std::seed_seq seq{eng_(), eng_()};
    child.eng_.seed(seq);
    return child;
  }

 private:
  std::mt19937_64 eng_;
};

struct ArithShare {
  RingElem value;
  int party = 0;
};

struct BoolShare {
  int bit = 0;
  int party = 0;
};

std::pair<ArithShare, ArithShare> Share(const RingElem& x, Rng& rng);
std::pair<BoolShare, BoolShare> ShareBit(int b, Rng& rng);
RingElem Reconstruct(const ArithShare& s0, const ArithShare& s1);
int ReconstructBit(const BoolShare& s0, const BoolShare& s1);

// 1{x0 + x1 >= 2^l}.
int WrapPlain(const RingElem& x0, const RingElem& x1);
// MSB(x0 + x1 mod 2^l) + Wrap(x0, x1).
int MwPlain(const RingElem& x0, const RingElem& x1);

// Raw-residue variants.
inline int WrapRaw(u128 x0, u128 x1, int l) {
  if (l == 128) return (x0 + x1) < x0 ? 1 : 0;
  return ((x0 & Mask(l)) + (x1 & Mask(l))) >> l ? 1 : 0;
}
inline int MwRaw(u128 x0, u128 x1, int l) {
  return MsbOf((x0 + x1) & Mask(l), l) + WrapRaw(x0, x1, l);
}

// True iff x lies in [0, B) or [L - B, L).
inline bool WithinBound(u128 x, u128 bound, int l) {
  x &= Mask(l);
  return x < bound || x >= Pow2(l) - bound;
}

}  // namespace mwsec

#endif  // MWSEC_SHARING_H_
