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

#include "mwsec/mw.h"

#include <cmath>
#include <stdexcept>

namespace mwsec {

MwParams::MwParams(int l, int lp, u128 bound) : l_(l), lp_(lp), bound_(bound) {
  if (l < 2 || l > 127) throw std::invalid_argument("MW ring width must be in [2, 127]");
  if (lp < 1 || lp > 128) throw std::invalid_argument("MW output width must be in [1, 128]");
  if (bound == 0 || bound > Pow2(l - 1)) throw std::invalid_argument("B must satisfy 0 < B <= L/2");
}

MwParams MwParams::FromFraction(int l, int lp, double fraction) {
  if (!(fraction > 0.0) || fraction > 1.0) throw std::invalid_argument("B fraction must be in (0, 1]");
  long double b = std::floor(static_cast<long double>(fraction) * std::ldexp(1.0L, l - 1));
  u128 bound = static_cast<u128>(b);
  if (bound == 0) bound = 1;
  if (bound > Pow2(l - 1)) bound = Pow2(l - 1);
  return MwParams(l, lp, bound);
}

u128 MwParams::k() const {
  if (full_range()) return Pow2(l_);
  return Pow2(l_) / gap();
}

int MwParams::lstar() const {
  if (full_range()) return l_;
  u128 kk = k();
  int bits = BitLength(kk - 1);
  return bits == 0 ? 1 : bits;
}

int MwParams::comp_bits() const {
  if (full_range()) return l_;
  int bits = BitLength(k());
  return bits == 0 ? 1 : bits;
}

int MwParams::and_terms() const {
  if (full_range()) throw std::logic_error("AND branch needs B < L/2");
  return static_cast<int>((Pow2(l_) - 1) / gap());
}

int64_t CostMw(const MwParams& prm, MwParams::Branch branch) {
  bool use_and = branch == MwParams::Branch::kAuto ? prm.and_branch() : branch == MwParams::Branch::kAnd;
  if (use_and) return static_cast<int64_t>(prm.and_terms()) * CostBitMul(prm.lp());
  return CostComp(prm.comp_bits()) + CostB2A(prm.lp());
}

Bits CompConstrained(Party& p, const Shares& mine, u128 gap, int l) {
  if (gap == 0 || gap >= Pow2(l)) throw std::invalid_argument("gap must satisfy 0 < A < L");
  int bits = BitLength((Pow2(l) - 1) / gap);
  if (bits == 0) bits = 1;
  // 1{y' < x'} = 1{(M-1-x') < (M-1-y')}, putting P0's operand first.
  Shares v(mine.size());
  for (size_t i = 0; i < mine.size(); ++i) v[i] = Mask(bits) - (mine[i] & Mask(l)) / gap;
  return Comp(p, v, bits);
}

Bits WrapConstrained(Party& p, const Shares& mine, u128 gap, int l) {
  if (gap == 0 || gap >= Pow2(l)) throw std::invalid_argument("gap must satisfy 0 < A < L");
  int bits = BitLength(Pow2(l) / gap);
  Shares v(mine.size());
  for (size_t i = 0; i < mine.size(); ++i) {
    u128 s = mine[i] & Mask(l);
    v[i] = p.id() == 0 ? (Pow2(l) - s) / gap : s / gap;
  }
  return Comp(p, v, bits);
}

namespace {

// Bits for the AND branch: P0 one-hot of floor((L - x0*)/A), P1 the
// threshold indicators 1{floor(x1/A) > i}.
Bits AndBranchBits(const Party& p, const Shares& x, const MwParams& prm) {
  int l = prm.l();
  int terms = prm.and_terms();
  u128 gap = prm.gap();
  Bits sel(x.size() * terms);
  for (size_t i = 0; i < x.size(); ++i) {
    u128 s = x[i] & Mask(l);
    if (p.id() == 0) {
      u128 xs = (s - prm.bound()) & Mask(l);
      u128 idx = (Pow2(l) - xs) / gap;
      for (int t = 0; t < terms; ++t) sel[i * terms + t] = idx == static_cast<u128>(t);
    } else {
      u128 idx = s / gap;
      for (int t = 0; t < terms; ++t) sel[i * terms + t] = idx > static_cast<u128>(t);
    }
  }
  return sel;
}

u128 Delta(const Party& p, u128 x0, const MwParams& prm) {
  return p.id() == 0 && (x0 & Mask(prm.l())) >= prm.bound() ? 1 : 0;
}

}  // namespace

Shares PiMw(Party& p, const Shares& x, const MwParams& prm, MwParams::Branch branch) {
  int l = prm.l(), lp = prm.lp();
  size_t count = x.size();
  bool use_and = branch == MwParams::Branch::kAuto ? prm.and_branch() : branch == MwParams::Branch::kAnd;
  if (use_and && prm.full_range()) throw std::invalid_argument("AND branch needs B < L/2");
  p.Record("mw", static_cast<int64_t>(count) * CostMw(prm, branch));
  auto quiet = p.Quiet();
  Shares mstar(count, 0);
  if (use_and) {
    int terms = prm.and_terms();
    if (terms > 0) {
      Shares c = BitMul(p, AndBranchBits(p, x, prm), lp);
      for (size_t i = 0; i < count; ++i)
        for (int t = 0; t < terms; ++t) mstar[i] = (mstar[i] + c[i * terms + t]) & Mask(lp);
    }
  } else {
    Shares v(count);
    int bits;
    if (prm.full_range()) {
      bits = l;
      for (size_t i = 0; i < count; ++i) {
        u128 s = x[i] & Mask(l);
        // Wrap(x0*, x1) = 1{L - 1 - x0* < x1}; L - x1 would not fit when x1 = 0.
        v[i] = p.id() == 0 ? (Mask(l) - ((s - prm.bound()) & Mask(l))) : s;
      }
    } else {
      bits = prm.comp_bits();
      u128 gap = prm.gap();
      for (size_t i = 0; i < count; ++i) {
        u128 s = x[i] & Mask(l);
        v[i] = p.id() == 0 ? (Pow2(l) - ((s - prm.bound()) & Mask(l))) / gap : s / gap;
      }
    }
    mstar = CompArith(p, v, bits, lp);
  }
  for (size_t i = 0; i < count; ++i) mstar[i] = (mstar[i] + Delta(p, x[i], prm)) & Mask(lp);
  return mstar;
}

Shares PiMwConv(Party& p, const Shares& x, int lr, int l, int lp) {
  if (lr < l + 1) throw std::invalid_argument("MW conversion needs lr >= l + 1");
  if (l < 2) throw std::invalid_argument("MW conversion needs l >= 2");
  size_t count = x.size();
  p.Record("mw_conv", static_cast<int64_t>(count) * CostMwConv(lp));
  auto quiet = p.Quiet();
  int ly = l + 1;
  MwParams prm(ly, lp, Pow2(l - 1));
  Shares y(count);
  for (size_t i = 0; i < count; ++i) y[i] = x[i] & Mask(ly);
  // Both BitMuls (MW(y) and the region correction) share one batch.
  Bits sel = AndBranchBits(p, y, prm);
  Bits corr(count);
  Shares base(count);
  for (size_t i = 0; i < count; ++i) {
    u128 yh = (y[i] + Pow2(l)) & Mask(ly);
    if (p.id() == 0) {
      u128 ys = (yh - Pow2(l - 1)) & Mask(ly);
      u128 delta = yh >= Pow2(l - 1) ? 1 : 0;
      corr[i] = ys >= Pow2(l);
      // MW_z = MW_y - (1 - delta - M^), P0 carries the public parts.
      base[i] = Delta(p, y[i], prm) - 1 + delta;
    } else {
      corr[i] = yh >= Pow2(l);
      base[i] = 0;
    }
  }
  Bits all(sel);
  all.insert(all.end(), corr.begin(), corr.end());
  Shares prod = BitMul(p, all, lp);
  Shares out(count);
  for (size_t i = 0; i < count; ++i) out[i] = (base[i] + prod[i] + prod[count + i]) & Mask(lp);
  return out;
}

}  // namespace mwsec
