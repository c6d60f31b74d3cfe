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

#ifndef MWSEC_CLI_H_
#define MWSEC_CLI_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mwsec/oracle.h"
#include "mwsec/gates.h"
#include "mwsec/runtime.h"

namespace mwsec {

// Everything needed to reproduce one protocol batch.
struct RunConfig {
  std::string protocol = "mw";
  int l = 16;
  int f = 12;
  int lp = 0;   // output width; 0 picks the protocol default
  int lr = 0;   // share ring for mwconv; 0 means l + 1
  double b_fraction = 1.0;          // B as a fraction of L/2
  std::optional<u128> b_absolute;   // overrides b_fraction
  u128 d = 7;
  int k = 0;    // truncation shift; 0 means f
  size_t batch = 1024;
  size_t n = 768;  // softmax row length
  uint64_t seed = 1;
  bool exhaustive = false;
  double max_ulp = -1;  // failure threshold for approximate protocols
};

// Protocol ids accepted by verify/bench/party.
const std::vector<std::string>& Protocols();
bool IsApproximate(const std::string& protocol);

u128 BoundOf(const RunConfig& cfg);
int OutputWidth(const RunConfig& cfg);
// Outputs combine by XOR rather than addition.
bool BooleanOutput(const RunConfig& cfg);
// Throws std::invalid_argument when preconditions fail.
void ValidateConfig(const RunConfig& cfg);

// Per-party private inputs plus what the oracles need.
struct JobInputs {
  Shares in0, in1;       // first input of P0 / P1
  Shares aux0, aux1;     // second input (mux bits) when used
  std::vector<i128> values;  // plaintext inputs (signed)
  size_t count = 0;          // number of outputs
};

// Deterministic in cfg.seed. In exhaustive mode the batch size is ignored.
JobInputs MakeInputs(const RunConfig& cfg);

// The program one party runs.
Shares RunJob(Party& p, const RunConfig& cfg, const JobInputs& in);

struct JobResult {
  Shares out0, out1;
  CostLedger ledger;
};
JobResult RunInMemory(const RunConfig& cfg, const JobInputs& in);
Shares Combine(const RunConfig& cfg, const Shares& a, const Shares& b);

VerifyReport Verify(const RunConfig& cfg, const JobInputs& in, const Shares& out);

struct BenchRow {
  std::string protocol;
  std::string params;
  size_t batch = 0;
  int64_t modeled_bits = 0;   // per run
  double actual_bytes = 0;    // per run
  int64_t rounds = 0;
  uint64_t runs = 0;
  double aggregate_mb = 0;
  bool extrapolated = false;
  std::optional<double> max_ulp, avg_ulp;
};

std::vector<BenchRow> Bench(const RunConfig& cfg, uint64_t runs, bool extrapolate);
std::string BenchCsv(const std::vector<BenchRow>& rows);
std::string BenchJson(const std::vector<BenchRow>& rows);
std::string ReportJson(const VerifyReport& r, const CostLedger& ledger);
std::string ParamString(const RunConfig& cfg);

// 64-bit FNV-1a over the output shares.
uint64_t Digest(const Shares& s);

}  // namespace mwsec

#endif  // MWSEC_CLI_H_
