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

#include "mwsec/gates.h"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "mwsec/ot.h"

namespace mwsec {


Shares AddShares(const Shares& a, const Shares& b, int l) {
  Shares out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) & Mask(l);
  return out;
}

Shares SubShares(const Shares& a, const Shares& b, int l) {
  Shares out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = (a[i] - b[i]) & Mask(l);
  return out;
}

Shares AddPublic(const Party& p, const Shares& a, u128 c, int l) {
  Shares out(a.size());
  for (size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + (p.id() == 0 ? c : 0)) & Mask(l);
  return out;
}

Shares Open(Party& p, const Shares& x, int l) {
  Writer w;
  for (u128 v : x) w.Put(v & Mask(l), l);
  p.Send(w.Take());
  Reader r(p.Recv());
  Shares out(x.size());
  for (size_t i = 0; i < x.size(); ++i) out[i] = (x[i] + r.Get(l)) & Mask(l);
  return out;
}

Bits OpenBits(Party& p, const Bits& b) {
  Writer w;
  w.PutBits(b);
  p.Send(w.Take());
  Reader r(p.Recv());
  Bits other = r.GetBits(b.size());
  Bits out(b.size());
  for (size_t i = 0; i < b.size(); ++i) out[i] = (b[i] ^ other[i]) & 1;
  return out;
}

Bits AndGate(Party& p, const Bits& mine) {
  size_t count = mine.size();
  p.Record("and", static_cast<int64_t>(count) * CostAnd());
  auto quiet = p.Quiet();
  if (p.id() == 0) {
    Bits r(count);
    Shares msgs(2 * count);
    for (size_t i = 0; i < count; ++i) {
      r[i] = static_cast<uint8_t>(p.rng().Bit());
      msgs[2 * i] = r[i];
      msgs[2 * i + 1] = r[i] ^ (mine[i] & 1);
    }
    Ot1Of2(p, 0, 1, msgs, {});
    return r;
  }
  Shares got = Ot1Of2(p, 0, 1, {}, mine);
  Bits out(count);
  for (size_t i = 0; i < count; ++i) out[i] = static_cast<uint8_t>(got[i] & 1);
  return out;
}

Shares BitMul(Party& p, const Bits& mine, int lp) {
  size_t count = mine.size();
  p.Record("bitmul", static_cast<int64_t>(count) * CostBitMul(lp));
  auto quiet = p.Quiet();
  if (p.id() == 0) {
    Shares corr(count);
    for (size_t i = 0; i < count; ++i) corr[i] = mine[i] & 1;
    Shares r = Cot(p, 0, lp, corr, {});
    for (auto& v : r) v = (u128{0} - v) & Mask(lp);
    return r;
  }
  return Cot(p, 0, lp, {}, mine);
}

Bits AndShared(Party& p, const Bits& x, const Bits& y) {
  size_t count = x.size();
  Bits a(count), b(count), c(count);
  Rng& d = p.dealer();
  for (size_t i = 0; i < count; ++i) {
    uint64_t w = d.Next64();
    uint8_t a0 = w & 1, a1 = (w >> 1) & 1, b0 = (w >> 2) & 1, b1 = (w >> 3) & 1, c0 = (w >> 4) & 1;
    uint8_t c1 = static_cast<uint8_t>(((a0 ^ a1) & (b0 ^ b1)) ^ c0);
    if (p.id() == 0) {
      a[i] = a0, b[i] = b0, c[i] = c0;
    } else {
      a[i] = a1, b[i] = b1, c[i] = c1;
    }
  }
  Bits de(2 * count);
  for (size_t i = 0; i < count; ++i) {
    de[2 * i] = (x[i] ^ a[i]) & 1;
    de[2 * i + 1] = (y[i] ^ b[i]) & 1;
  }
  Bits opened = OpenBits(p, de);
  Bits z(count);
  for (size_t i = 0; i < count; ++i) {
    uint8_t dd = opened[2 * i], ee = opened[2 * i + 1];
    z[i] = c[i] ^ (dd & b[i]) ^ (ee & a[i]) ^ (p.id() == 0 ? (dd & ee) : 0);
  }
  return z;
}

namespace {

constexpr int kBlock = 4;

// Millionaires' comparison with 4-bit leaves: each leaf is a 1-of-16 OT
// returning shares of (lt, eq) for the block; pairs of blocks are then
// combined up a tree, one AND round per level, until at most `stop`
// blocks remain. lt/eq are indexed [instance][block], low block first.
void CompTree(Party& p, const Shares& mine, int l, int stop, std::vector<Bits>& lt,
              std::vector<Bits>& eq) {
  size_t count = mine.size();
  int q = (l + kBlock - 1) / kBlock;
  int last = l - (q - 1) * kBlock;
  size_t full_blocks = static_cast<size_t>(q - 1);

  OtBatch full(p, 0, count * full_blocks, 1 << kBlock, 2);
  OtBatch top(p, 0, count, 1 << last, 2);
  lt.assign(count, Bits(q));
  eq.assign(count, Bits(q));
  auto block_of = [&](u128 v, int j) {
    int bits = j == q - 1 ? last : kBlock;
    return static_cast<uint32_t>((v >> (j * kBlock)) & Mask(bits));
  };
  if (p.id() == 0) {
    Shares mf(count * full_blocks * (1 << kBlock)), mt(count * (1u << last));
    for (size_t i = 0; i < count; ++i) {
      for (int j = 0; j < q; ++j) {
        uint8_t rl = static_cast<uint8_t>(p.rng().Bit()), re = static_cast<uint8_t>(p.rng().Bit());
        lt[i][j] = rl;
        eq[i][j] = re;
        uint32_t xj = block_of(mine[i], j);
        int k = j == q - 1 ? (1 << last) : (1 << kBlock);
        u128* dst = j == q - 1 ? &mt[i * k] : &mf[(i * full_blocks + j) * k];
        for (int v = 0; v < k; ++v) {
          uint8_t a = (xj < static_cast<uint32_t>(v)) ^ rl;
          uint8_t b = (xj == static_cast<uint32_t>(v)) ^ re;
          dst[v] = static_cast<u128>(a | (b << 1));
        }
      }
    }
    if (full_blocks) full.Transfer(mf);
    top.Transfer(mt);
  } else {
    std::vector<uint32_t> idf(count * full_blocks), idt(count);
    for (size_t i = 0; i < count; ++i) {
      for (int j = 0; j + 1 < q; ++j) idf[i * full_blocks + j] = block_of(mine[i], j);
      idt[i] = block_of(mine[i], q - 1);
    }
    if (full_blocks) full.Choose(idf);
    top.Choose(idt);
    Shares gf = full_blocks ? full.Receive() : Shares{};
    Shares gt = top.Receive();
    for (size_t i = 0; i < count; ++i) {
      for (int j = 0; j + 1 < q; ++j) {
        u128 g = gf[i * full_blocks + j];
        lt[i][j] = g & 1;
        eq[i][j] = (g >> 1) & 1;
      }
      lt[i][q - 1] = gt[i] & 1;
      eq[i][q - 1] = (gt[i] >> 1) & 1;
    }
  }

  // Combine (hi, lo): lt = lt_hi ^ (eq_hi & lt_lo), eq = eq_hi & eq_lo.
  int width = q;
  while (width > stop) {
    int pairs = width / 2;
    Bits xa, ya;
    xa.reserve(count * pairs * 2);
    ya.reserve(count * pairs * 2);
    for (size_t i = 0; i < count; ++i) {
      for (int t = 0; t < pairs; ++t) {
        int lo = 2 * t, hi = 2 * t + 1;
        xa.push_back(eq[i][hi]);
        ya.push_back(lt[i][lo]);
        xa.push_back(eq[i][hi]);
        ya.push_back(eq[i][lo]);
      }
    }
    Bits z = AndShared(p, xa, ya);
    int next = (width + 1) / 2;
    size_t k = 0;
    for (size_t i = 0; i < count; ++i) {
      Bits nl(next), ne(next);
      for (int t = 0; t < pairs; ++t) {
        int hi = 2 * t + 1;
        nl[t] = lt[i][hi] ^ z[k++];
        ne[t] = z[k++];
      }
      if (width % 2) {
        nl[next - 1] = lt[i][width - 1];
        ne[next - 1] = eq[i][width - 1];
      }
      lt[i] = std::move(nl);
      eq[i] = std::move(ne);
    }
    width = next;
  }
}

}  // namespace

Bits Comp(Party& p, const Shares& mine, int l) {
  if (l < 1 || l > 128) throw std::invalid_argument("comparison width must be in [1, 128]");
  size_t count = mine.size();
  p.Record("comp", static_cast<int64_t>(count) * CostComp(l));
  auto quiet = p.Quiet();
  std::vector<Bits> lt, eq;
  CompTree(p, mine, l, 1, lt, eq);
  Bits out(count);
  for (size_t i = 0; i < count; ++i) out[i] = lt[i][0];
  return out;
}

// Same rounds as Comp alone: a single-block comparison reads arithmetic
// shares straight from the leaf OT; otherwise the last combine level is
// evaluated arithmetically. Since lt_hi and eq_hi are exclusive,
// lt = lt_hi + eq_hi * lt_lo over the integers, and with dealer bits r
// shared both ways, opening c = b ^ r makes [b] = c + (1 - 2c)[r] linear.
Shares CompArith(Party& p, const Shares& mine, int l, int lp) {
  if (l < 1 || l > 128) throw std::invalid_argument("comparison width must be in [1, 128]");
  size_t count = mine.size();
  p.Record("comp", static_cast<int64_t>(count) * CostComp(l));
  p.Record("b2a", static_cast<int64_t>(count) * CostB2A(lp));
  auto quiet = p.Quiet();
  Shares out(count);
  if (l <= kBlock) {
    int k = 1 << l;
    OtBatch ot(p, 0, count, k, lp);
    if (p.id() == 0) {
      Shares msgs(count * k);
      for (size_t i = 0; i < count; ++i) {
        out[i] = p.rng().Next(lp);
        u128 x = mine[i] & Mask(l);
        for (int v = 0; v < k; ++v)
          msgs[i * k + v] = ((x < static_cast<u128>(v) ? 1 : 0) - out[i]) & Mask(lp);
      }
      ot.Transfer(msgs);
      return out;
    }
    std::vector<uint32_t> idx(count);
    for (size_t i = 0; i < count; ++i) idx[i] = static_cast<uint32_t>(mine[i] & Mask(l));
    ot.Choose(idx);
    return ot.Receive();
  }
  std::vector<Bits> lt, eq;
  CompTree(p, mine, l, 2, lt, eq);
  // Dealer bits: r_a, r_e, r_l as XOR and additive shares, plus r_e r_l.
  Rng& d = p.dealer();
  Bits masked(count * 3);
  std::vector<std::array<u128, 4>> ra(count);
  for (size_t i = 0; i < count; ++i) {
    uint64_t w = d.Next64();
    u128 r[3] = {w & 1, (w >> 1) & 1, (w >> 2) & 1};
    uint8_t b0[3] = {static_cast<uint8_t>((w >> 3) & 1), static_cast<uint8_t>((w >> 4) & 1),
                     static_cast<uint8_t>((w >> 5) & 1)};
    u128 vals[4] = {r[0], r[1], r[2], r[1] * r[2]};
    for (int t = 0; t < 4; ++t) {
      u128 s0 = d.Next(lp);
      ra[i][t] = p.id() == 0 ? s0 : (vals[t] - s0) & Mask(lp);
    }
    uint8_t rb[3];
    for (int t = 0; t < 3; ++t) rb[t] = p.id() == 0 ? b0[t] : static_cast<uint8_t>(b0[t] ^ r[t]);
    masked[3 * i] = lt[i][1] ^ rb[0];
    masked[3 * i + 1] = eq[i][1] ^ rb[1];
    masked[3 * i + 2] = lt[i][0] ^ rb[2];
  }
  Bits c = OpenBits(p, masked);
  for (size_t i = 0; i < count; ++i) {
    u128 ca = c[3 * i], ce = c[3 * i + 1], cl = c[3 * i + 2];
    u128 v = ra[i][0] * (1 - 2 * ca) + ra[i][2] * ce * (1 - 2 * cl) + ra[i][1] * cl * (1 - 2 * ce) +
             ra[i][3] * (1 - 2 * ce) * (1 - 2 * cl);
    if (p.id() == 0) v += ca + ce * cl;
    out[i] = v & Mask(lp);
  }
  return out;
}

Shares CompSmall(Party& p, const Shares& mine, int n, int lp, CompSmallVariant variant) {
  if (n < 2) throw std::invalid_argument("domain size must be at least 2");
  size_t count = mine.size();
  for (u128 v : mine)
    if (v >= static_cast<u128>(n)) throw std::out_of_range("comparison input exceeds the domain");
  if (variant == CompSmallVariant::kAnd) {
    p.Record("comp_small", static_cast<int64_t>(count) * CostCompSmallAnd(n, lp));
    auto quiet = p.Quiet();
    Bits sel(count * (n - 1));
    for (size_t i = 0; i < count; ++i)
      for (int t = 0; t < n - 1; ++t)
        sel[i * (n - 1) + t] = p.id() == 0 ? (mine[i] == static_cast<u128>(t)) : (mine[i] > static_cast<u128>(t));
    Shares c = BitMul(p, sel, lp);
    Shares out(count, 0);
    for (size_t i = 0; i < count; ++i)
      for (int t = 0; t < n - 1; ++t) out[i] = (out[i] + c[i * (n - 1) + t]) & Mask(lp);
    return out;
  }
  int bits = BitLength(static_cast<u128>(n - 1));
  p.Record("comp_small", static_cast<int64_t>(count) * CostCompSmallOt(bits, lp));
  auto quiet = p.Quiet();
  int k = 1 << bits;
  Bits b(count);
  if (p.id() == 0) {
    Shares msgs(count * k);
    for (size_t i = 0; i < count; ++i) {
      b[i] = static_cast<uint8_t>(p.rng().Bit());
      for (int v = 0; v < k; ++v) msgs[i * k + v] = (mine[i] < static_cast<u128>(v)) ^ b[i];
    }
    Ot1OfK(p, 0, k, 1, msgs, {});
  } else {
    std::vector<uint32_t> idx(count);
    for (size_t i = 0; i < count; ++i) idx[i] = static_cast<uint32_t>(mine[i]);
    Shares got = Ot1OfK(p, 0, k, 1, {}, idx);
    for (size_t i = 0; i < count; ++i) b[i] = got[i] & 1;
  }
  return B2A(p, b, lp);
}

// MSB(x) = msb0 ^ msb1 ^ carry of the low l-1 bits.
Bits Drelu(Party& p, const Shares& x, int l) {
  size_t count = x.size();
  p.Record("drelu", static_cast<int64_t>(count) * CostDrelu(l));
  auto quiet = p.Quiet();
  Bits carry(count, 0);
  if (l > 1) {
    Shares v(count);
    u128 lowmask = Mask(l - 1);
    for (size_t i = 0; i < count; ++i)
      v[i] = p.id() == 0 ? (lowmask - (x[i] & lowmask)) : (x[i] & lowmask);
    carry = Comp(p, v, l - 1);
  }
  Bits out(count);
  for (size_t i = 0; i < count; ++i)
    out[i] = static_cast<uint8_t>(MsbOf(x[i], l) ^ carry[i] ^ (p.id() == 0 ? 1 : 0));
  return out;
}

// b0 ^ b1 = b0 + b1 - 2 b0 b1, with b0 b1 from one COT.
Shares B2A(Party& p, const Bits& b, int l) {
  size_t count = b.size();
  p.Record("b2a", static_cast<int64_t>(count) * CostB2A(l));
  auto quiet = p.Quiet();
  Shares prod;
  if (p.id() == 0) {
    Shares corr(count);
    for (size_t i = 0; i < count; ++i) corr[i] = b[i] & 1;
    prod = Cot(p, 0, l, corr, {});
    for (auto& v : prod) v = (u128{0} - v) & Mask(l);
  } else {
    prod = Cot(p, 0, l, {}, b);
  }
  Shares out(count);
  for (size_t i = 0; i < count; ++i) out[i] = (static_cast<u128>(b[i] & 1) - 2 * prod[i]) & Mask(l);
  return out;
}

// (b0 ^ b1) x_i = b_i x_i + b_{1-i} (1 - 2 b_i) x_i; the cross part uses a
// COT in each direction, run concurrently.
Shares Mux(Party& p, const Shares& x, const Bits& b, int l) {
  size_t count = x.size();
  p.Record("mux", static_cast<int64_t>(count) * CostMux(l));
  auto quiet = p.Quiet();
  CotBatch from0(p, 0, count, l);
  CotBatch from1(p, 1, count, l);
  CotBatch& mine_send = p.id() == 0 ? from0 : from1;
  CotBatch& mine_recv = p.id() == 0 ? from1 : from0;
  Shares corr(count);
  for (size_t i = 0; i < count; ++i)
    corr[i] = ((b[i] & 1) ? (u128{0} - x[i]) : x[i]) & Mask(l);
  mine_recv.Choose(b);
  Shares r = mine_send.Transfer(corr);
  Shares got = mine_recv.Receive();
  Shares out(count);
  for (size_t i = 0; i < count; ++i)
    out[i] = (((b[i] & 1) ? x[i] : 0) - r[i] + got[i]) & Mask(l);
  return out;
}

// The owner of a table part sends, for every possible peer index share v,
// its entry at (v + own share) minus a fresh mask.
Shares Lut(Party& p, const Shares& table, const Shares& idx, int m, int n, TableOwner owner) {
  if (m < 1 || m > 16) throw std::invalid_argument("LUT index width must be in [1, 16]");
  size_t count = idx.size();
  int k = 1 << m;
  p.Record("lut", static_cast<int64_t>(count) * CostLut(m, n));
  auto quiet = p.Quiet();
  auto build = [&](Shares& masks) {
    Shares msgs(count * k);
    masks.resize(count);
    for (size_t i = 0; i < count; ++i) {
      masks[i] = p.rng().Next(n);
      for (int v = 0; v < k; ++v) {
        size_t at = (static_cast<size_t>(v) + static_cast<size_t>(idx[i] & Mask(m))) & (k - 1);
        msgs[i * k + v] = (table[i * k + at] - masks[i]) & Mask(n);
      }
    }
    return msgs;
  };
  auto choices = [&] {
    std::vector<uint32_t> c(count);
    for (size_t i = 0; i < count; ++i) c[i] = static_cast<uint32_t>(idx[i] & Mask(m));
    return c;
  };
  if (owner != TableOwner::kShared) {
    int sender = owner == TableOwner::kP0 ? 0 : 1;
    OtBatch ot(p, sender, count, k, n);
    if (ot.is_sender()) {
      Shares masks;
      ot.Transfer(build(masks));
      return masks;
    }
    ot.Choose(choices());
    return ot.Receive();
  }
  OtBatch from0(p, 0, count, k, n);
  OtBatch from1(p, 1, count, k, n);
  OtBatch& s = p.id() == 0 ? from0 : from1;
  OtBatch& r = p.id() == 0 ? from1 : from0;
  r.Choose(choices());
  Shares masks;
  s.Transfer(build(masks));
  Shares got = r.Receive();
  return AddShares(masks, got, n);
}

std::vector<Shares> LutFields(Party& p, const Shares& table, const Shares& idx, int m,
                              const std::vector<int>& widths, TableOwner owner) {
  int n = 0;
  for (int w : widths) n += w;
  if (n > 128) throw std::invalid_argument("LUT entry exceeds 128 bits");
  size_t fields = widths.size();
  size_t count = idx.size();
  int k = 1 << m;
  Shares packed(owner == TableOwner::kShared || (owner == TableOwner::kP0) == (p.id() == 0)
                    ? count * k
                    : 0);
  for (size_t e = 0; e < packed.size(); ++e) {
    u128 v = 0;
    int shift = 0;
    for (size_t f = 0; f < fields; ++f) {
      v |= (table[e * fields + f] & Mask(widths[f])) << shift;
      shift += widths[f];
    }
    packed[e] = v;
  }
  // Per-field masking: draw each field's mask separately and subtract
  // field-wise so no borrow crosses a field boundary.
  std::vector<Shares> out(fields, Shares(count));
  auto unpack = [&](const Shares& v, size_t i) {
    int shift = 0;
    for (size_t f = 0; f < fields; ++f) {
      out[f][i] = (v[i] >> shift) & Mask(widths[f]);
      shift += widths[f];
    }
  };
  p.Record("lut", static_cast<int64_t>(count) * CostLut(m, n));
  auto quiet = p.Quiet();
  auto build = [&](Shares& masks) {
    Shares msgs(count * k);
    masks.resize(count);
    for (size_t i = 0; i < count; ++i) {
      u128 mask = 0;
      int shift = 0;
      for (size_t f = 0; f < fields; ++f) {
        mask |= p.rng().Next(widths[f]) << shift;
        shift += widths[f];
      }
      masks[i] = mask;
      for (int v = 0; v < k; ++v) {
        size_t at = (static_cast<size_t>(v) + static_cast<size_t>(idx[i] & Mask(m))) & (k - 1);
        u128 entry = packed[i * k + at], msg = 0;
        shift = 0;
        for (size_t f = 0; f < fields; ++f) {
          u128 d = ((entry >> shift) - (mask >> shift)) & Mask(widths[f]);
          msg |= d << shift;
          shift += widths[f];
        }
        msgs[i * k + v] = msg;
      }
    }
    return msgs;
  };
  std::vector<uint32_t> choice(count);
  for (size_t i = 0; i < count; ++i) choice[i] = static_cast<uint32_t>(idx[i] & Mask(m));
  auto add = [&](const Shares& a, const Shares& b) {
    for (size_t i = 0; i < count; ++i) {
      int shift = 0;
      for (size_t f = 0; f < fields; ++f) {
        out[f][i] = ((a[i] >> shift) + (b[i] >> shift)) & Mask(widths[f]);
        shift += widths[f];
      }
    }
  };
  if (owner != TableOwner::kShared) {
    int sender = owner == TableOwner::kP0 ? 0 : 1;
    OtBatch ot(p, sender, count, k, n);
    Shares got;
    if (ot.is_sender()) {
      Shares masks;
      ot.Transfer(build(masks));
      got = masks;
    } else {
      ot.Choose(choice);
      got = ot.Receive();
    }
    for (size_t i = 0; i < count; ++i) unpack(got, i);
    return out;
  }
  OtBatch from0(p, 0, count, k, n);
  OtBatch from1(p, 1, count, k, n);
  OtBatch& s = p.id() == 0 ? from0 : from1;
  OtBatch& r = p.id() == 0 ? from1 : from0;
  r.Choose(choice);
  Shares masks;
  s.Transfer(build(masks));
  add(masks, r.Receive());
  return out;
}

Shares SExt(Party& p, const Shares& x, int l, int lp, SExtVariant variant) {
  if (lp <= l || lp > 128) throw std::invalid_argument("SExt target must exceed the source width");
  size_t count = x.size();
  int dl = lp - l;
  Shares out(count);
  if (variant == SExtVariant::kConstrained) {
    if (l < 2) throw std::invalid_argument("constrained SExt needs l >= 2");
    p.Record("sext", static_cast<int64_t>(count) * CostSExtConstrained(l, lp));
    auto quiet = p.Quiet();
    // x' = x + 2^{l-2} lies in [0, 2^{l-1}), so Wrap = msb(x0') | msb(x1').
    u128 off = Pow2(l - 2);
    Shares xs(count);
    Bits msb(count);
    for (size_t i = 0; i < count; ++i) {
      xs[i] = (x[i] + (p.id() == 0 ? off : 0)) & Mask(l);
      msb[i] = static_cast<uint8_t>(MsbOf(xs[i], l));
    }
    Shares prod = BitMul(p, msb, dl);
    for (size_t i = 0; i < count; ++i) {
      u128 w = (static_cast<u128>(msb[i]) - prod[i]) & Mask(dl);
      u128 y = xs[i] - (w << l) - (p.id() == 0 ? off : 0);
      out[i] = y & Mask(lp);
    }
    return out;
  }
  p.Record("sext", static_cast<int64_t>(count) * CostSExtGeneral(l, lp));
  auto quiet = p.Quiet();
  // x' = x + 2^{l-1} is the unsigned image; Wrap(x0', x1') = 1{L-1-x0' < x1'}.
  u128 off = Pow2(l - 1);
  Shares xs(count), cmp(count);
  for (size_t i = 0; i < count; ++i) {
    xs[i] = (x[i] + (p.id() == 0 ? off : 0)) & Mask(l);
    cmp[i] = p.id() == 0 ? (Mask(l) - xs[i]) : xs[i];
  }
  Shares wa = CompArith(p, cmp, l, dl);
  for (size_t i = 0; i < count; ++i) {
    u128 y = xs[i] - (wa[i] << l) - (p.id() == 0 ? off : 0);
    out[i] = y & Mask(lp);
  }
  return out;
}

// Bit i of the shorter operand selects x * 2^i; only the top w-i bits
// of that term matter, so the i-th COT is w-i bits long for output width w.
Shares CrossTerm(Party& p, const Shares& mine, int m, int n, int out_width) {
  int w = out_width ? out_width : m + n;
  if (w > 128 || w < std::max(m, n)) throw std::invalid_argument("bad cross term output width");
  size_t count = mine.size();
  p.Record("cross_term", static_cast<int64_t>(count) * CostCrossTerm(m, n, w));
  auto quiet = p.Quiet();
  int owner = n <= m ? 1 : 0;
  int u = std::min(m, n);
  std::vector<CotBatch> batches;
  batches.reserve(u);
  for (int i = 0; i < u; ++i) batches.emplace_back(p, 1 - owner, count, w - i);
  Shares out(count, 0);
  if (p.id() == owner) {
    for (int i = 0; i < u; ++i) {
      Bits b(count);
      for (size_t t = 0; t < count; ++t) b[t] = (mine[t] >> i) & 1;
      batches[i].Choose(b);
    }
    for (int i = 0; i < u; ++i) {
      Shares got = batches[i].Receive();
      for (size_t t = 0; t < count; ++t) out[t] += got[t] << i;
    }
  } else {
    for (int i = 0; i < u; ++i) {
      Shares corr(count);
      for (size_t t = 0; t < count; ++t) corr[t] = mine[t] & Mask(w - i);
      Shares r = batches[i].Transfer(corr);
      for (size_t t = 0; t < count; ++t) out[t] -= r[t] << i;
    }
  }
  for (auto& v : out) v &= Mask(w);
  return out;
}

Shares MulSigned(Party& p, const Shares& mine, int m, int n, MulHints hints) {
  int w = m + n;
  size_t count = mine.size();
  Shares xy = CrossTerm(p, mine, m, n);
  if (hints.msb_x_zero && hints.msb_y_zero) return xy;
  // int(x) int(y) = xy - 2^m msb_x y - 2^n msb_y x  (mod 2^{m+n}).
  if (!hints.msb_x_zero) {
    // msb_x@P0 selects y@P1.
    Shares t;
    if (p.id() == 1) {
      Shares corr(count);
      for (size_t i = 0; i < count; ++i) corr[i] = mine[i] & Mask(n);
      t = Cot(p, 1, n, corr, {});
      for (auto& v : t) v = (u128{0} - v) & Mask(n);
    } else {
      Bits b(count);
      for (size_t i = 0; i < count; ++i) b[i] = static_cast<uint8_t>(MsbOf(mine[i], m));
      t = Cot(p, 1, n, {}, b);
    }
    for (size_t i = 0; i < count; ++i) xy[i] = (xy[i] - (t[i] << m)) & Mask(w);
  }
  if (!hints.msb_y_zero) {
    Shares t;
    if (p.id() == 0) {
      Shares corr(count);
      for (size_t i = 0; i < count; ++i) corr[i] = mine[i] & Mask(m);
      t = Cot(p, 0, m, corr, {});
      for (auto& v : t) v = (u128{0} - v) & Mask(m);
    } else {
      Bits b(count);
      for (size_t i = 0; i < count; ++i) b[i] = static_cast<uint8_t>(MsbOf(mine[i], n));
      t = Cot(p, 0, m, {}, b);
    }
    for (size_t i = 0; i < count; ++i) xy[i] = (xy[i] - (t[i] << n)) & Mask(w);
  }
  return xy;
}

Shares MulPublic(Party& p, const Shares& x, int m, i128 c, int n, SExtVariant variant) {
  Shares ext = SExt(p, x, m, m + n, variant);
  u128 cu = static_cast<u128>(c) & Mask(m + n);
  for (auto& v : ext) v = (v * cu) & Mask(m + n);
  return ext;
}

}  // namespace mwsec
