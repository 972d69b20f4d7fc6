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
#include <vector>

#include "entpower/optimize.hpp"

namespace entpower {

// d^2 operators on C^d with an optional invertible weight R (identity when unset).
struct KrausFamily {
  int d = 1;
  std::vector<CMat> operators;
  std::optional<CMat> weightR;
};

// Heisenberg-Weyl words X^a Z^b / sqrt(d), index a*d + b.
KrausFamily hw_family(int d);
// P_i U_k / sqrt(d) with P_i cyclic shifts and U_k = diag(1, w^k, ..., w^{k(d-1)}).
KrausFamily diagonal_family(int d);

struct UnitalReport {
  // max |Tr K_i^dagger R^{-1} K_j - delta_ij|
  double gramDeviation = 0.0;
  // max entry of sum_j K_j^dagger X K_j - Tr(RX) I over matrix units X (exact by linearity)
  double allMatrixDeviation = 0.0;
  // Same over sampled pure states.
  double pureStateDeviation = 0.0;
  // Tr_A of the block-diagonal conjugation of sampled pure product states, against Tr(R Tr_A Y) I.
  double productStateDeviation = 0.0;
  bool gramHolds = false;
  bool pureStateHolds = false;
  // gramHolds and pureStateHolds agree.
  bool confirmed = false;
  int samples = 0;
};

UnitalReport unital_equivalence_check(const KrausFamily& fam, int samples = 64, std::uint64_t seed = 0);

enum class PhaseFamily { RootsOfUnity, Signs };
// (1/r) sum_k U_k X U_k^dagger over the diagonal family.
CMat phase_average(const CMat& X, PhaseFamily family);

// max over nontrivial HW words of | |<phi|U_j|phi>| - 1/sqrt(d+1) |.
double fiducial_residual(const CVec& phi);
// Multi-start search for a fiducial vector, d in {2, 3}. Throws SearchFailed when no
// restart reaches a residual below 1e-8.
PureState fiducial_search(int d, std::uint64_t seed = 0, int restarts = 16, Execution exec = Execution::Parallel);

struct SicReport {
  int d = 0;
  PureState fiducial;
  // max over j, k of | |<psi_j|psi_k>|^2 - (1 + d delta_jk)/(d+1) |
  double maxOverlapDeviation = 0.0;
  // Output entanglement of the HW-controlled gate at uniform control weights and the fiducial.
  double entanglingCheck = 0.0;
  // Numeric K_E of the same gate.
  double optimizerValue = 0.0;
};

SicReport sic_entangling_check(int d, const PureState& fiducial, const PowerOptions& opts = {});

}  // namespace entpower
