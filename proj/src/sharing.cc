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

#include "mwsec/sharing.h"

#include <stdexcept>

namespace mwsec {

std::pair<ArithShare, ArithShare> Share(const RingElem& x, Rng& rng) {
  RingElem x0(rng.Next(x.width()), x.width());
  return {ArithShare{x0, 0}, ArithShare{x - x0, 1}};
}

std::pair<BoolShare, BoolShare> ShareBit(int b, Rng& rng) {
  int r = rng.Bit();
  return {BoolShare{r, 0}, BoolShare{(b & 1) ^ r, 1}};
}

RingElem Reconstruct(const ArithShare& s0, const ArithShare& s1) {
  if (s0.party == s1.party) throw std::invalid_argument("shares must come from both parties");
  if (s0.value.width() != s1.value.width()) throw std::invalid_argument("share width mismatch");
  return s0.value + s1.value;
}

int ReconstructBit(const BoolShare& s0, const BoolShare& s1) {
  if (s0.party == s1.party) throw std::invalid_argument("shares must come from both parties");
  return (s0.bit ^ s1.bit) & 1;
}

int WrapPlain(const RingElem& x0, const RingElem& x1) {
  if (x0.width() != x1.width()) throw std::invalid_argument("share width mismatch");
  return WrapRaw(x0.value(), x1.value(), x0.width());
}

int MwPlain(const RingElem& x0, const RingElem& x1) {
  if (x0.width() != x1.width()) throw std::invalid_argument("share width mismatch");
  return MwRaw(x0.value(), x1.value(), x0.width());
}

}  // namespace mwsec
