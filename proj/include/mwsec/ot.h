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

#ifndef MWSEC_OT_H_
#define MWSEC_OT_H_

#include <cstdint>
#include <vector>

#include "mwsec/runtime.h"

namespace mwsec {

// Random-OT correlations for a batch of `count` 1-of-k instances with
// n-bit pads: the sender holds pads[i*k + j], the receiver holds a random
// choice[i] and pads[i*k + choice[i]]. Each side only reads its own half.
struct RandomOts {
  int k = 2;
  int n = 1;
  std::vector<u128> pads;
  std::vector<uint32_t> choice;
  std::vector<u128> chosen;
};

// Source of random OTs. Protocols derandomize these, so a cryptographic
// OT extension can replace the dealer without touching callers.
class OtBackend {
 public:
  virtual ~OtBackend() = default;
  virtual RandomOts Draw(Party& p, size_t count, int k, int n) = 0;
};

// Correlations expanded from the session's shared dealer stream. Gives
// exact functionality semantics; it is a stand-in for OT extension and is
// not secure against a party that inspects the dealer seed.
class DealerOtBackend : public OtBackend {
 public:
  RandomOts Draw(Party& p, size_t count, int k, int n) override;
};

OtBackend& DefaultOtBackend();

// Batched 1-of-k OT of n-bit messages, split into phases so that several
// transfers in opposite directions can share rounds. Both parties construct
// the batch with identical arguments.
class OtBatch {
 public:
  OtBatch(Party& p, int sender, size_t count, int k, int n);

  bool is_sender() const { return p_.id() == sender_; }
  // Receiver, phase 1: sends the offsets of the chosen indices.
  void Choose(const std::vector<uint32_t>& index);
  // Sender, phase 2: msgs[i*k + j] is message j of instance i.
  void Transfer(const std::vector<u128>& msgs);
  // Receiver, phase 3.
  std::vector<u128> Receive();

 private:
  Party& p_;
  int sender_;
  size_t count_;
  int k_, n_;
  RandomOts ro_;
  std::vector<uint32_t> index_;
};

// Batched correlated OT over Z_{2^n}: sender gets r, receiver gets
// r + b*x.
class CotBatch {
 public:
  CotBatch(Party& p, int sender, size_t count, int n);

  bool is_sender() const { return p_.id() == sender_; }
  void Choose(const std::vector<uint8_t>& bits);
  std::vector<u128> Transfer(const std::vector<u128>& corr);
  std::vector<u128> Receive();

 private:
  Party& p_;
  int sender_;
  size_t count_;
  int n_;
  RandomOts ro_;
  std::vector<uint8_t> bits_;
};

// Blocking conveniences; each records its modeled cost.
// Sender passes msgs (count*k values) and gets an empty vector back;
// the receiver passes index and gets the chosen messages.
std::vector<u128> Ot1OfK(Party& p, int sender, int k, int n, const std::vector<u128>& msgs,
                         const std::vector<uint32_t>& index);
std::vector<u128> Ot1Of2(Party& p, int sender, int n, const std::vector<u128>& msgs,
                         const std::vector<uint8_t>& choice);
// Sender passes corr and gets r; receiver passes bits and gets r + b*x.
std::vector<u128> Cot(Party& p, int sender, int n, const std::vector<u128>& corr,
                      const std::vector<uint8_t>& bits);

// Modeled costs, lambda = 128.
inline int64_t CostOt1Of2(int n) { return kLambda + 2 * n; }
inline int64_t CostOt1OfK(int k, int n) { return 2 * kLambda + static_cast<int64_t>(k) * n; }
inline int64_t CostCot(int n) { return kLambda + n; }

}  // namespace mwsec

#endif  // MWSEC_OT_H_
