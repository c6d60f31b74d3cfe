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

#include "mwsec/ring.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mwsec {

int BitLength(u128 v) {
  int n = 0;
  while (v) {
    ++n;
    v >>= 1;
  }
  return n;
}

std::string ToString(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

std::string ToString(i128 v) {
  if (v < 0) return "-" + ToString(static_cast<u128>(-(v + 1)) + 1);
  return ToString(static_cast<u128>(v));
}

void ValidateMeta(const FixedPointMeta& meta) {
  if (meta.width < 1 || meta.width > 128)
    throw std::invalid_argument("ring width must be in [1, 128]");
  if (meta.frac_bits < 0 || meta.frac_bits >= meta.width)
    throw std::invalid_argument("frac_bits must satisfy 0 <= f < l");
}

RingElem::RingElem(u128 value, int width) : width_(width) {
  if (width < 1 || width > 128)
    throw std::invalid_argument("ring width must be in [1, 128]");
  value_ = value & Mask(width);
}

RingElem RingElem::FromSigned(i128 v, int width) {
  return RingElem(static_cast<u128>(v), width);
}

void RingElem::CheckSame(const RingElem& o) const {
  if (width_ != o.width_) throw std::invalid_argument("ring width mismatch");
}

RingElem RingElem::operator+(const RingElem& o) const {
  CheckSame(o);
  return RingElem(value_ + o.value_, width_);
}

RingElem RingElem::operator-(const RingElem& o) const {
  CheckSame(o);
  return RingElem(value_ - o.value_, width_);
}

RingElem RingElem::operator*(const RingElem& o) const {
  CheckSame(o);
  return RingElem(value_ * o.value_, width_);
}

RingElem RingElem::operator-() const { return RingElem(u128{0} - value_, width_); }

RingElem RingElem::ShrLogical(int k) const {
  if (k < 0) throw std::invalid_argument("negative shift");
  return RingElem(k >= 128 ? 0 : value_ >> k, width_);
}

RingElem RingElem::Resize(int new_width) const { return RingElem(value_, new_width); }

u128 EncodeFixRaw(double x_real, int width, int frac_bits) {
  double half = std::ldexp(1.0, width - 1);
  double scaled = std::floor(std::ldexp(x_real, frac_bits));
  if (!(scaled >= -half && scaled < half))
    throw std::out_of_range("value outside the representable fixed-point range");
  i128 v = static_cast<i128>(scaled);
  return static_cast<u128>(v) & Mask(width);
}

double DecodeRealRaw(u128 x, int width, int frac_bits) {
  return std::ldexp(static_cast<double>(SignedOf(x, width)), -frac_bits);
}

RingElem EncodeFix(double x_real, const FixedPointMeta& meta) {
  ValidateMeta(meta);
  return RingElem(EncodeFixRaw(x_real, meta.width, meta.frac_bits), meta.width);
}

double DecodeReal(const RingElem& x, const FixedPointMeta& meta) {
  ValidateMeta(meta);
  if (x.width() != meta.width) throw std::invalid_argument("ring width mismatch");
  return DecodeRealRaw(x.value(), meta.width, meta.frac_bits);
}

i128 ToSigned(const RingElem& x) { return SignedOf(x.value(), x.width()); }

}  // namespace mwsec
