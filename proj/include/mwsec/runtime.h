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

#ifndef MWSEC_RUNTIME_H_
#define MWSEC_RUNTIME_H_

#include <chrono>
#include <cstdint>
#include <exception>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "mwsec/ring.h"
#include "mwsec/sharing.h"

namespace mwsec {

inline constexpr int kLambda = 128;

using Bytes = std::vector<uint8_t>;

struct Message {
  uint32_t depth = 0;
  Bytes data;
};

class TransportError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class HandshakeError : public TransportError {
 public:
  using TransportError::TransportError;
};

// Ordered, exactly-once duplex byte channel to the peer.
class Channel {
 public:
  virtual ~Channel() = default;
  virtual void Send(Message msg) = 0;
  // Throws TransportError on timeout or when the peer has gone away.
  virtual Message Recv(std::chrono::milliseconds timeout) = 0;
  virtual void Close() = 0;
  virtual std::string Mode() const = 0;
};

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> MakeMemoryChannels();

struct TcpOptions {
  std::string host = "127.0.0.1";
  int port = 7420;
  bool listen = true;
  int role = 0;
  uint64_t seed = 0;
  std::string tag;  // protocol descriptor both sides must agree on
  std::chrono::milliseconds connect_timeout{20000};
};

// Opens a TCP channel and runs the hello exchange. A peer announcing the
// same role, a different seed or a different tag raises HandshakeError.
std::unique_ptr<Channel> ConnectTcp(const TcpOptions& opt);

struct CostLedger {
  int64_t modeled_bits = 0;
  int64_t actual_bytes = 0;
  int64_t rounds = 0;
  std::map<std::string, int64_t> breakdown;

  void Add(const std::string& primitive, int64_t bits);
};

// Combines the two parties' ledgers of one session.
CostLedger MergeLedgers(const CostLedger& a, const CostLedger& b);

// Bit-granular packer; the last byte is zero padded.
class Writer {
 public:
  void Put(u128 v, int width);
  void PutBits(const std::vector<uint8_t>& bits);
  Bytes Take() { return std::move(buf_); }

 private:
  Bytes buf_;
  size_t bitpos_ = 0;
};

class Reader {
 public:
  explicit Reader(Bytes buf) : buf_(std::move(buf)) {}
  u128 Get(int width);
  std::vector<uint8_t> GetBits(size_t n);

 private:
  Bytes buf_;
  size_t bitpos_ = 0;
};

// One party's protocol context: id, private randomness, the dealer stream
// shared with the peer, transport and ledger.
class Party {
 public:
  Party(int id, uint64_t seed, std::unique_ptr<Channel> channel);

  int id() const { return id_; }
  Rng& rng() { return rng_; }
  Rng& dealer() { return dealer_; }
  CostLedger& ledger() { return ledger_; }
  const CostLedger& ledger() const { return ledger_; }
  Channel& channel() { return *channel_; }

  void Send(Bytes data);
  Bytes Recv();

  // Both parties execute the same program, so each records the same
  // modeled cost; records made while a Quiet guard is alive are dropped.
  void Record(const std::string& primitive, int64_t bits);

  class QuietGuard {
   public:
    explicit QuietGuard(Party* p) : p_(p) { ++p_->quiet_; }
    ~QuietGuard() { --p_->quiet_; }
    QuietGuard(const QuietGuard&) = delete;
    QuietGuard& operator=(const QuietGuard&) = delete;

   private:
    Party* p_;
  };
  QuietGuard Quiet() { return QuietGuard(this); }

  void set_timeout(std::chrono::milliseconds t) { timeout_ = t; }

 private:
  int id_;
  Rng rng_;
  Rng dealer_;
  std::unique_ptr<Channel> channel_;
  CostLedger ledger_;
  uint32_t depth_ = 0;
  int quiet_ = 0;
  std::chrono::milliseconds timeout_{120000};
};

uint64_t DealerSeed(uint64_t seed);
uint64_t PrivateSeed(uint64_t seed, int id);

template <class R>
struct PairResult {
  R out0;
  R out1;
  CostLedger ledger;
};

// Runs `prog` for both parties over in-memory channels, party 1 on a
// worker thread.
template <class F>
auto RunPair(F&& prog, uint64_t seed) -> PairResult<std::invoke_result_t<F&, Party&>> {
  using R = std::invoke_result_t<F&, Party&>;
  auto chans = MakeMemoryChannels();
  Party p0(0, seed, std::move(chans.first));
  Party p1(1, seed, std::move(chans.second));
  std::optional<R> r1;
  std::exception_ptr err1;
  std::thread worker([&] {
    try {
      r1.emplace(prog(p1));
    } catch (...) {
      err1 = std::current_exception();
      p1.channel().Close();
    }
  });
  std::optional<R> r0;
  try {
    r0.emplace(prog(p0));
  } catch (...) {
    p0.channel().Close();
    worker.join();
    if (err1) std::rethrow_exception(err1);
    throw;
  }
  worker.join();
  if (err1) std::rethrow_exception(err1);
  return PairResult<R>{std::move(*r0), std::move(*r1), MergeLedgers(p0.ledger(), p1.ledger())};
}

}  // namespace mwsec

#endif  // MWSEC_RUNTIME_H_
