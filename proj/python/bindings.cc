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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "mwsec/cli.h"
#include "mwsec/funcs.h"
#include "mwsec/mw.h"
#include "mwsec/oracle.h"

namespace py = pybind11;
using namespace mwsec;

namespace {

py::dict LedgerDict(const CostLedger& l) {
  py::dict d;
  d["modeled_bits"] = l.modeled_bits;
  d["actual_bytes"] = l.actual_bytes;
  d["rounds"] = l.rounds;
  d["breakdown"] = l.breakdown;
  return d;
}

py::dict RunVerify(const std::string& protocol, int l, int f, int lp, int lr, double b_fraction, uint64_t d,
                   int k, size_t batch, size_t n, uint64_t seed, bool exhaustive, double max_ulp) {
  RunConfig cfg;
  cfg.protocol = protocol;
  cfg.l = l;
  cfg.f = f;
  cfg.lp = lp;
  cfg.lr = lr;
  cfg.b_fraction = b_fraction;
  cfg.d = d;
  cfg.k = k;
  cfg.batch = batch;
  cfg.n = n;
  cfg.seed = seed;
  cfg.exhaustive = exhaustive;
  cfg.max_ulp = max_ulp;
  VerifyReport r;
  JobResult res;
  {
    py::gil_scoped_release release;
    ValidateConfig(cfg);
    JobInputs in = MakeInputs(cfg);
    res = RunInMemory(cfg, in);
    r = Verify(cfg, in, Combine(cfg, res.out0, res.out1));
  }
  py::dict out;
  out["protocol"] = r.protocol;
  out["cases"] = r.cases;
  out["failures"] = r.failures;
  out["max_deviation"] = r.max_deviation;
  if (r.ulp.cases) {
    out["max_ulp"] = r.ulp.max_ulp;
    out["avg_ulp"] = r.ulp.avg();
  }
  out["ledger"] = LedgerDict(res.ledger);
  return out;
}

}  // namespace

PYBIND11_MODULE(_mwsec, m) {
  m.doc() = "Two-party fixed-point protocols with a modeled cost ledger";
  m.attr("LAMBDA") = kLambda;
  m.def("protocols", &Protocols, "Protocol ids accepted by verify");
  m.def("verify", &RunVerify, "Run a protocol in memory and check it against its plaintext oracle",
        py::arg("protocol"), py::arg("l") = 16, py::arg("f") = 12, py::arg("lp") = 0, py::arg("lr") = 0,
        py::arg("b_fraction") = 1.0, py::arg("d") = 7, py::arg("k") = 0, py::arg("batch") = 1024,
        py::arg("n") = 768, py::arg("seed") = 1, py::arg("exhaustive") = false, py::arg("max_ulp") = -1.0);
  m.def(
      "mw_plain", [](uint64_t x0, uint64_t x1, int l) { return MwOracle(x0, x1, l); },
      "Wrap count of the signed sum of two l-bit shares", py::arg("x0"), py::arg("x1"), py::arg("l"));
  m.def(
      "cost_mw",
      [](int l, int lp, double fraction) { return CostMw(MwParams::FromFraction(l, lp, fraction)); },
      "Modeled bits of one MW evaluation", py::arg("l"), py::arg("lp"), py::arg("b_fraction"));
  m.def(
      "cost_rexp",
      [](int l, int f) {
        RexpParams p;
        p.l = l;
        p.f = f;
        return CostRexp(p);
      },
      "Modeled bits of one e^-x evaluation", py::arg("l") = 16, py::arg("f") = 12);
  m.def("rexp_oracle", &RexpOracle, py::arg("x"));
  m.def("sin_oracle", &SinOracle, py::arg("x"));
  m.def("softmax_oracle", &SoftmaxOracle, py::arg("z"));
}
