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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "entpower/gates.hpp"

namespace entpower {

enum class Quantity { KE, KEa, Kd };
std::string to_string(Quantity q);

// Parallel runs restarts under OpenMP; Serial is the reference order.
enum class Execution { Serial, Parallel };

struct PowerOptions {
  int restarts = 32;
  std::uint64_t seed = 0;
  // Unset means the local dimension of the matching side.
  std::optional<int> ancillaA;
  std::optional<int> ancillaB;
  bool noAncilla = false;
  // Drop an ancilla that a basis-controlled side makes redundant.
  bool useReductions = true;
  int maxEvaluations = 50000;
  double tolerance = 1e-10;
  Execution execution = Execution::Parallel;
};

struct PowerEstimate {
  Quantity quantity = Quantity::KE;
  double value = 0.0;
  // K_E: {alpha on A R_A, beta on B R_B}. K_Ea and K_d: {psi on A R_A B R_B}.
  std::vector<PureState> witness;
  int restartsUsed = 0;
  int bestRestart = 0;
  long evaluations = 0;
  bool converged = false;
  std::vector<std::pair<std::string, double>> upperBounds;
  int ancillaA = 1;
  int ancillaB = 1;
  std::string path;

  double min_upper_bound() const;
};

// E across (A R_A : B R_B) of (U (x) I)(alpha (x) beta). A one-subsystem state means no ancilla.
double output_entanglement(const BipartiteUnitary& U, const PureState& alpha, const PureState& beta);
// E((U (x) I) psi) - E(psi) for psi on A R_A B R_B.
double entanglement_gain(const BipartiteUnitary& U, const PureState& psi);

PowerEstimate entangling_power(const BipartiteUnitary& U, const PowerOptions& opts = {});
// keSeed, when given, must come from entangling_power on the same gate.
PowerEstimate assisted_entangling_power(const BipartiteUnitary& U, const PowerOptions& opts = {},
                                        const PowerEstimate* keSeed = nullptr);
PowerEstimate disentangling_power(const BipartiteUnitary& U, const PowerOptions& opts = {});

// Density operator sigma with Tr(sigma U_j^dagger U_k) = 0 for all j > k, if one is found.
std::optional<CMat> sigma_witness_search(const std::vector<CMat>& terms, std::uint64_t seed = 0);

struct BoundsReport {
  double kE = 0.0;
  double kEa = 0.0;
  double kSch = 0.0;
  double log2SchmidtRank = 0.0;
  std::optional<double> log2m;
  double twoLog2dmin = 0.0;
  // Asymptotic quantities in the chain; listed, never evaluated.
  std::vector<std::string> placeholders;
  // Probe data: does kEa stay below log2 Sch(U)?
  bool conjectureProbeHolds = true;
  double conjectureProbeMargin = 0.0;
  PowerEstimate keEstimate;
  PowerEstimate keaEstimate;
};

BoundsReport bounds_report(const BipartiteUnitary& U, const PowerOptions& opts = {});

}  // namespace entpower
