// Copyright 2026 The entpower Authors.
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


#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "entpower/optimize.hpp"

namespace entpower {

// Registers a, b hold the Kraus index; e, f hold the shared resource. All have dimension r.
struct ProtocolCircuit {
  BipartiteUnitary target;
  OperatorSchmidt schmidt;
  int r = 1;
  // K_j = c_j A_j and L_j = c_j B_j. With the trace normalization of OperatorSchmidt these
  // satisfy sum_j K_j^dagger K_j = I_A and sum_j L_j^dagger L_j = I_B for any dA, dB.
  std::vector<CMat> krausA;
  std::vector<CMat> krausB;
  // (dA r) x dA, row index a * r + j. Likewise for B.
  CMat isometryA;
  CMat isometryB;
  PureState resource;
  CMat postUnitaryA;
  // First row proportional to (1/c_1, ..., 1/c_r).
  CMat postUnitaryB;
};

struct Branch {
  // (o_e, o_f, o_a, o_b), each in 1..r.
  std::array<int, 4> outcomes{};
  double probability = 0.0;
  CMat conditionalOperator;
  bool isSuccess = false;
  // |Tr(U^dagger V)|^2 / (d Tr(V^dagger V)); 1 exactly when V is a multiple of U.
  double fidelityToTarget = 0.0;
};

struct BranchTable {
  int r = 1;
  std::vector<Branch> rows;

  double total_probability() const;
  double success_probability() const;
};

ProtocolCircuit build_protocol(const BipartiteUnitary& U);
BranchTable enumerate_branches(const ProtocolCircuit& circuit, const PureState& input,
                               Execution exec = Execution::Parallel);

struct RunResult {
  std::array<int, 4> outcomes{};
  PureState outputState;
  bool success = false;
};

RunResult simulate_run(const ProtocolCircuit& circuit, const PureState& input, std::uint64_t seed);
// count draws from one generator seeded with seed; the first equals simulate_run(.., seed).
std::vector<RunResult> simulate_runs(const ProtocolCircuit& circuit, const PureState& input, std::uint64_t seed,
                                     int count);

// Labels (l, m) in 1..r of the branch operator for equal coefficients.
std::pair<int, int> vlm_labels(const std::array<int, 4>& outcomes, int r);
// sum_j e^{2 pi i m j / r} A_j (x) B_{1 + (j + l - 2) mod r}, j in 1..r.
CMat vlm_operator(const OperatorSchmidt& dec, int l, int m);

}  // namespace entpower
