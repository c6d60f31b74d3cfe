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

#include "mwsec/ot.h"

#include <stdexcept>

namespace mwsec {

RandomOts DealerOtBackend::Draw(Party& p, size_t count, int k, int n) {
  RandomOts ro;
  ro.k = k;
  ro.n = n;
  ro.pads.resize(count * k);
  ro.choice.resize(count);
  ro.chosen.resize(count);
  Rng& d = p.dealer();
  bool packed = static_cast<int64_t>(k) * n <= 64;
  for (size_t i = 0; i < count; ++i) {
    u128* pads = &ro.pads[i * k];
    if (packed) {
      uint64_t w = d.Next64();
      for (int j = 0; j < k; ++j) pads[j] = (w >> (j * n)) & Mask(n);
    } else {
      for (int j = 0; j < k; ++j) pads[j] = d.Next(n);
    }
    uint32_t c = static_cast<uint32_t>(d.Next64() % static_cast<uint64_t>(k));
    ro.choice[i] = c;
    ro.chosen[i] = pads[c];
  }
  return ro;
}

OtBackend& DefaultOtBackend() {
  static DealerOtBackend backend;
  return backend;
}

OtBatch::OtBatch(Party& p, int sender, size_t count, int k, int n)
    : p_(p), sender_(sender), count_(count), k_(k), n_(n) {
  if (k < 2 || k > (1 << 16)) throw std::invalid_argument("OT arity must be in [2, 2^16]");
  if (n < 1 || n > 128) throw std::invalid_argument("OT message length must be in [1, 128]");
  ro_ = DefaultOtBackend().Draw(p, count, k, n);
}

// Receiver announces e = (index - c) mod k; sender answers with
// y_j = m_j xor pad_{(j - e) mod k}.
void OtBatch::Choose(const std::vector<uint32_t>& index) {
  if (index.size() != count_) throw std::invalid_argument("OT index count mismatch");
  int ebits = BitLength(static_cast<u128>(k_ - 1));
  Writer w;
  for (size_t i = 0; i < count_; ++i) {
    if (index[i] >= static_cast<uint32_t>(k_)) throw std::out_of_range("OT index out of range");
    uint32_t e = (index[i] + k_ - ro_.choice[i]) % k_;
    w.Put(e, ebits);
  }
  index_ = index;
  p_.Send(w.Take());
}

void OtBatch::Transfer(const std::vector<u128>& msgs) {
  if (msgs.size() != count_ * k_) throw std::invalid_argument("OT message count mismatch");
  int ebits = BitLength(static_cast<u128>(k_ - 1));
  Reader r(p_.Recv());
  Writer w;
  for (size_t i = 0; i < count_; ++i) {
    uint32_t e = static_cast<uint32_t>(r.Get(ebits));
    const u128* pads = &ro_.pads[i * k_];
    for (int j = 0; j < k_; ++j) {
      uint32_t t = (static_cast<uint32_t>(j) + k_ - e) % k_;
      w.Put((msgs[i * k_ + j] ^ pads[t]) & Mask(n_), n_);
    }
  }
  p_.Send(w.Take());
}

std::vector<u128> OtBatch::Receive() {
  Reader r(p_.Recv());
  std::vector<u128> out(count_);
  for (size_t i = 0; i < count_; ++i) {
    for (int j = 0; j < k_; ++j) {
      u128 y = r.Get(n_);
      if (static_cast<uint32_t>(j) == index_[i]) out[i] = y ^ ro_.chosen[i];
    }
  }
  return out;
}

CotBatch::CotBatch(Party& p, int sender, size_t count, int n)
    : p_(p), sender_(sender), count_(count), n_(n) {
  if (n < 1 || n > 128) throw std::invalid_argument("COT length must be in [1, 128]");
  ro_ = DefaultOtBackend().Draw(p, count, 2, n);
}

// Receiver sends e = b xor c. Sender fixes r = s_e and sends
// y = r + x - s_{1-e}; the receiver adds y to its pad when b = 1.
void CotBatch::Choose(const std::vector<uint8_t>& bits) {
  if (bits.size() != count_) throw std::invalid_argument("COT choice count mismatch");
  std::vector<uint8_t> e(count_);
  for (size_t i = 0; i < count_; ++i) e[i] = (bits[i] & 1) ^ static_cast<uint8_t>(ro_.choice[i]);
  bits_ = bits;
  Writer w;
  w.PutBits(e);
  p_.Send(w.Take());
}

std::vector<u128> CotBatch::Transfer(const std::vector<u128>& corr) {
  if (corr.size() != count_) throw std::invalid_argument("COT correlation count mismatch");
  Reader r(p_.Recv());
  std::vector<uint8_t> e = r.GetBits(count_);
  std::vector<u128> out(count_);
  Writer w;
  for (size_t i = 0; i < count_; ++i) {
    u128 rr = ro_.pads[2 * i + e[i]];
    u128 other = ro_.pads[2 * i + (1 ^ e[i])];
    out[i] = rr & Mask(n_);
    w.Put((rr + corr[i] - other) & Mask(n_), n_);
  }
  p_.Send(w.Take());
  return out;
}

std::vector<u128> CotBatch::Receive() {
  Reader r(p_.Recv());
  std::vector<u128> out(count_);
  for (size_t i = 0; i < count_; ++i) {
    u128 y = r.Get(n_);
    out[i] = (ro_.chosen[i] + (bits_[i] ? y : 0)) & Mask(n_);
  }
  return out;
}

std::vector<u128> Ot1OfK(Party& p, int sender, int k, int n, const std::vector<u128>& msgs,
                         const std::vector<uint32_t>& index) {
  size_t count = p.id() == sender ? msgs.size() / k : index.size();
  OtBatch ot(p, sender, count, k, n);
  p.Record(k == 2 ? "ot_1of2" : "ot_1ofk",
           static_cast<int64_t>(count) * (k == 2 ? CostOt1Of2(n) : CostOt1OfK(k, n)));
  if (ot.is_sender()) {
    ot.Transfer(msgs);
    return {};
  }
  ot.Choose(index);
  return ot.Receive();
}

std::vector<u128> Ot1Of2(Party& p, int sender, int n, const std::vector<u128>& msgs,
                         const std::vector<uint8_t>& choice) {
  std::vector<uint32_t> idx(choice.begin(), choice.end());
  return Ot1OfK(p, sender, 2, n, msgs, idx);
}

std::vector<u128> Cot(Party& p, int sender, int n, const std::vector<u128>& corr,
                      const std::vector<uint8_t>& bits) {
  size_t count = p.id() == sender ? corr.size() : bits.size();
  CotBatch cot(p, sender, count, n);
  p.Record("cot", static_cast<int64_t>(count) * CostCot(n));
  if (cot.is_sender()) return cot.Transfer(corr);
  cot.Choose(bits);
  return cot.Receive();
}

}  // namespace mwsec
