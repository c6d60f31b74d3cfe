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

#include "mwsec/runtime.h"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>

namespace mwsec {

namespace {

class Mailbox {
 public:
  void Push(Message m) {
    {
      std::lock_guard<std::mutex> lk(mu_);
      q_.push_back(std::move(m));
    }
    cv_.notify_one();
  }

  Message Pop(std::chrono::milliseconds timeout) {
    std::unique_lock<std::mutex> lk(mu_);
    if (!cv_.wait_for(lk, timeout, [&] { return !q_.empty() || closed_; }))
      throw TransportError("receive timed out; the peer may be deadlocked");
    if (q_.empty()) throw TransportError("peer closed the channel");
    Message m = std::move(q_.front());
    q_.pop_front();
    return m;
  }

  void Close() {
    {
      std::lock_guard<std::mutex> lk(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Message> q_;
  bool closed_ = false;
};

class MemoryChannel : public Channel {
 public:
  MemoryChannel(std::shared_ptr<Mailbox> in, std::shared_ptr<Mailbox> out)
      : in_(std::move(in)), out_(std::move(out)) {}
  ~MemoryChannel() override { Close(); }

  void Send(Message msg) override { out_->Push(std::move(msg)); }
  Message Recv(std::chrono::milliseconds timeout) override { return in_->Pop(timeout); }
  void Close() override {
    in_->Close();
    out_->Close();
  }
  std::string Mode() const override { return "in_memory"; }

 private:
  std::shared_ptr<Mailbox> in_, out_;
};

void PutLe32(Bytes& b, uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

uint32_t GetLe32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | static_cast<uint32_t>(p[1]) << 8 |
         static_cast<uint32_t>(p[2]) << 16 | static_cast<uint32_t>(p[3]) << 24;
}

bool ReadFull(int fd, uint8_t* p, size_t n) {
  while (n > 0) {
    ssize_t r = ::recv(fd, p, n, 0);
    if (r <= 0) return false;
    p += r;
    n -= static_cast<size_t>(r);
  }
  return true;
}

void WriteFull(int fd, const uint8_t* p, size_t n) {
  while (n > 0) {
    ssize_t r = ::send(fd, p, n, MSG_NOSIGNAL);
    if (r <= 0) throw TransportError("tcp send failed");
    p += r;
    n -= static_cast<size_t>(r);
  }
}

// Frames are a 4-byte little-endian payload length, then the payload:
// 4-byte depth followed by the message body.
class TcpChannel : public Channel {
 public:
  explicit TcpChannel(int fd) : fd_(fd) {
    reader_ = std::thread([this] { ReadLoop(); });
  }
  ~TcpChannel() override {
    Close();
    if (reader_.joinable()) reader_.join();
    ::close(fd_);
  }

  void Send(Message msg) override {
    Bytes frame;
    frame.reserve(msg.data.size() + 8);
    PutLe32(frame, static_cast<uint32_t>(msg.data.size() + 4));
    PutLe32(frame, msg.depth);
    frame.insert(frame.end(), msg.data.begin(), msg.data.end());
    std::lock_guard<std::mutex> lk(send_mu_);
    WriteFull(fd_, frame.data(), frame.size());
  }

  Message Recv(std::chrono::milliseconds timeout) override { return box_.Pop(timeout); }

  void Close() override {
    if (!closed_.exchange(true)) ::shutdown(fd_, SHUT_RDWR);
    box_.Close();
  }

  std::string Mode() const override { return "tcp"; }

 private:
  void ReadLoop() {
    for (;;) {
      uint8_t hdr[4];
      if (!ReadFull(fd_, hdr, 4)) break;
      uint32_t n = GetLe32(hdr);
      if (n < 4) break;
      Bytes payload(n);
      if (!ReadFull(fd_, payload.data(), n)) break;
      Message m;
      m.depth = GetLe32(payload.data());
      m.data.assign(payload.begin() + 4, payload.end());
      box_.Push(std::move(m));
    }
    box_.Close();
  }

  int fd_;
  Mailbox box_;
  std::mutex send_mu_;
  std::thread reader_;
  std::atomic<bool> closed_{false};
};

int OpenSocket(const TcpOptions& opt) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  if (opt.listen) hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  std::string port = std::to_string(opt.port);
  if (::getaddrinfo(opt.host.c_str(), port.c_str(), &hints, &res) != 0 || !res)
    throw TransportError("cannot resolve " + opt.host);
  std::unique_ptr<addrinfo, decltype(&::freeaddrinfo)> guard(res, ::freeaddrinfo);

  if (opt.listen) {
    int ls = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    if (ls < 0) throw TransportError("socket() failed");
    int one = 1;
    ::setsockopt(ls, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(ls, res->ai_addr, res->ai_addrlen) != 0 || ::listen(ls, 1) != 0) {
      ::close(ls);
      throw TransportError("cannot listen on port " + port);
    }
    int fd = ::accept(ls, nullptr, nullptr);
    ::close(ls);
    if (fd < 0) throw TransportError("accept() failed");
    return fd;
  }

  auto deadline = std::chrono::steady_clock::now() + opt.connect_timeout;
  for (;;) {
    int fd = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
    if (fd < 0) throw TransportError("socket() failed");
    if (::connect(fd, res->ai_addr, res->ai_addrlen) == 0) return fd;
    ::close(fd);
    if (std::chrono::steady_clock::now() > deadline)
      throw TransportError("cannot connect to " + opt.host + ":" + port);
    std::this_thread::sleep_for(std::chrono::milliseconds(50));
  }
}

Bytes Hello(const TcpOptions& opt) {
  Bytes b = {'M', 'W', 'S', '1'};
  b.push_back(static_cast<uint8_t>(opt.role));
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<uint8_t>(opt.seed >> (8 * i)));
  b.insert(b.end(), opt.tag.begin(), opt.tag.end());
  return b;
}

}  // namespace

std::pair<std::unique_ptr<Channel>, std::unique_ptr<Channel>> MakeMemoryChannels() {
  auto a = std::make_shared<Mailbox>();
  auto b = std::make_shared<Mailbox>();
  return {std::make_unique<MemoryChannel>(a, b), std::make_unique<MemoryChannel>(b, a)};
}

std::unique_ptr<Channel> ConnectTcp(const TcpOptions& opt) {
  if (opt.role != 0 && opt.role != 1) throw std::invalid_argument("role must be 0 or 1");
  int fd = OpenSocket(opt);
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
  auto ch = std::make_unique<TcpChannel>(fd);
  ch->Send(Message{0, Hello(opt)});
  Message peer = ch->Recv(opt.connect_timeout);
  const Bytes& h = peer.data;
  if (h.size() < 13 || std::memcmp(h.data(), "MWS1", 4) != 0)
    throw HandshakeError("handshake: malformed hello from peer");
  int peer_role = h[4];
  uint64_t peer_seed = 0;
  for (int i = 0; i < 8; ++i) peer_seed |= static_cast<uint64_t>(h[5 + i]) << (8 * i);
  std::string peer_tag(h.begin() + 13, h.end());
  if (peer_role == opt.role)
    throw HandshakeError("handshake: role collision, both parties claim role " +
                         std::to_string(opt.role));
  if (peer_seed != opt.seed) throw HandshakeError("handshake: session seed mismatch");
  if (peer_tag != opt.tag)
    throw HandshakeError("handshake: protocol mismatch (" + opt.tag + " vs " + peer_tag + ")");
  return ch;
}

void CostLedger::Add(const std::string& primitive, int64_t bits) {
  if (bits < 0) throw std::invalid_argument("modeled bits must be non-negative");
  modeled_bits += bits;
  breakdown[primitive] += bits;
}

CostLedger MergeLedgers(const CostLedger& a, const CostLedger& b) {
  if (a.modeled_bits != b.modeled_bits)
    throw std::logic_error("parties disagree on modeled cost; programs diverged");
  CostLedger m = a;
  m.actual_bytes = a.actual_bytes + b.actual_bytes;
  m.rounds = std::max(a.rounds, b.rounds);
  return m;
}

void Writer::Put(u128 v, int width) {
  size_t need = (bitpos_ + width + 7) / 8;
  if (buf_.size() < need) buf_.resize(need, 0);
  for (int i = 0; i < width;) {
    size_t byte = bitpos_ / 8;
    int off = static_cast<int>(bitpos_ % 8);
    int take = std::min(8 - off, width - i);
    uint8_t chunk = static_cast<uint8_t>((v >> i) & ((1u << take) - 1));
    buf_[byte] |= static_cast<uint8_t>(chunk << off);
    i += take;
    bitpos_ += take;
  }
}

void Writer::PutBits(const std::vector<uint8_t>& bits) {
  for (uint8_t b : bits) Put(b & 1, 1);
}

u128 Reader::Get(int width) {
  if ((bitpos_ + width + 7) / 8 > buf_.size()) throw TransportError("short message");
  u128 v = 0;
  for (int i = 0; i < width;) {
    size_t byte = bitpos_ / 8;
    int off = static_cast<int>(bitpos_ % 8);
    int take = std::min(8 - off, width - i);
    u128 chunk = (buf_[byte] >> off) & ((1u << take) - 1);
    v |= chunk << i;
    i += take;
    bitpos_ += take;
  }
  return v;
}

std::vector<uint8_t> Reader::GetBits(size_t n) {
  std::vector<uint8_t> out(n);
  for (size_t i = 0; i < n; ++i) out[i] = static_cast<uint8_t>(Get(1));
  return out;
}

uint64_t DealerSeed(uint64_t seed) { return seed ^ 0x6a09e667f3bcc909ULL; }
uint64_t PrivateSeed(uint64_t seed, int id) {
  return (seed + 0x9e3779b97f4a7c15ULL * static_cast<uint64_t>(id + 1)) ^ 0xbb67ae8584caa73bULL;
}

Party::Party(int id, uint64_t seed, std::unique_ptr<Channel> channel)
    : id_(id), rng_(PrivateSeed(seed, id)), dealer_(DealerSeed(seed)), channel_(std::move(channel)) {}

void Party::Send(Bytes data) {
  Message m;
  m.depth = depth_ + 1;
  ledger_.actual_bytes += static_cast<int64_t>(data.size());
  ledger_.rounds = std::max<int64_t>(ledger_.rounds, m.depth);
  m.data = std::move(data);
  channel_->Send(std::move(m));
}

Bytes Party::Recv() {
  Message m = channel_->Recv(timeout_);
  depth_ = std::max(depth_, m.depth);
  ledger_.rounds = std::max<int64_t>(ledger_.rounds, m.depth);
  return std::move(m.data);
}

void Party::Record(const std::string& primitive, int64_t bits) {
  if (quiet_ == 0) ledger_.Add(primitive, bits);
}

}  // namespace mwsec
