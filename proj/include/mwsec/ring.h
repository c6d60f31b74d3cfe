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

#ifndef MWSEC_RING_H_
#define MWSEC_RING_H_

#include <cstdint>
#include <string>

namespace mwsec {

using u128 = unsigned __int128;
using i128 = __int128;

// All-ones mask of the low `width` bits. Valid for 0..128.
constexpr u128 Mask(int width) {
  return width >= 128 ? ~u128{0} : ((u128{1} << width) - 1);
}

constexpr u128 Pow2(int k) { return u128{1} << k; }

// Signed interpretation of a raw residue of the given width.
constexpr i128 SignedOf(u128 v, int width) {
  v &= Mask(width);
  if (width == 128) return static_cast<i128>(v);
  if ((v >> (width - 1)) & 1) return static_cast<i128>(v) - static_cast<i128>(Pow2(width));
  return static_cast<i128>(v);
}

constexpr int MsbOf(u128 v, int width) {
  return static_cast<int>((v >> (width - 1)) & 1);
}

// Bit length of v (0 for v == 0).
int BitLength(u128 v);

std::string ToString(u128 v);
std::string ToString(i128 v);

struct FixedPointMeta {
  int width = 16;
  int frac_bits = 12;
};

void ValidateMeta(const FixedPointMeta& meta);

// Element of Z_{2^width}, 1 <= width <= 128.
class RingElem {
 public:
  RingElem() = default;
  RingElem(u128 value, int width);

  static RingElem FromSigned(i128 v, int width);

  u128 value() const { return value_; }
  int width() const { return width_; }

  RingElem operator+(const RingElem& o) const;
  RingElem operator-(const RingElem& o) const;
  RingElem operator*(const RingElem& o) const;
  RingElem operator-() const;
  bool operator==(const RingElem& o) const = default;

  RingElem ShrLogical(int k) const;
  RingElem Resize(int new_width) const;
  int Msb() const { return MsbOf(value_, width_); }

 private:
  void CheckSame(const RingElem& o) const;

  u128 value_ = 0;
  int width_ = 1;
};

RingElem EncodeFix(double x_real, const FixedPointMeta& meta);
double DecodeReal(const RingElem& x, const FixedPointMeta& meta);
i128 ToSigned(const RingElem& x);

// Raw-value variants used on hot paths.
u128 EncodeFixRaw(double x_real, int width, int frac_bits);
double DecodeRealRaw(u128 x, int width, int frac_bits);

}  // namespace mwsec

#endif  // MWSEC_RING_H_
