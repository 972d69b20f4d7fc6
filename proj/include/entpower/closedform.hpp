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

#include <optional>
#include <string>
#include <vector>

#include "entpower/optimize.hpp"

namespace entpower {

// Entangling power of P (x) I + (I - P) (x) diag(e^{i theta_j}), any number of phases.
struct Sr2Value {
  double value = 0.0;        // exact maximum over the weight simplex
  double pairwiseMax = 0.0;  // max_{i<j} h(i, j)
  std::vector<double> weights;
  // More than three phases: the pairwise maximum is only conjectured.
  bool conjectureMode = false;
  bool pairwiseAgrees = true;
};

// h(i, j) for one phase difference.
double pair_entropy(double thetaI, double thetaJ);
Sr2Value ke_sr2(const std::vector<double>& thetas);

struct FormParameters {
  int m = 0, n = 0, q = 0, p = 0;
  Side side = Side::A;
};

struct Sr3PermVerdict {
  double value = 0.0;
  std::optional<FormParameters> formDetected;
  double numericEstimate = 0.0;
  bool agrees = false;  // |numericEstimate - value| < 1e-3
};

// Structural part only; numericEstimate left at zero.
Sr3PermVerdict classify_perm_sr3_structure(const BipartiteUnitary& U);
Sr3PermVerdict classify_perm_sr3(const BipartiteUnitary& U, const PowerOptions& opts = {});

struct Cp3Value {
  double analytic = 0.0;  // H(1/(e^M+1), e^M/(e^M+1)) + M e^M/(e^M+1)
  double M = 0.0;
  // Stationary value for a base-2 exponent, log2(1 + 2^M).
  double base2Stationary = 0.0;
  bool discrepancyFlag = false;
  int n = 0;
  bool rowsSwapped = false;
};

double cp3_formula(double M);
Cp3Value ke_cp3(const BipartiteUnitary& U);

struct GcnotVerdict {
  bool isGCNOT = false;
  std::optional<std::vector<double>> witness;
  std::vector<double> thetas;
};
GcnotVerdict gcnot_check(const BipartiteUnitary& U);

struct Sr4Witness {
  PureState alpha;  // on A R_A, R_A a qubit
  PureState beta;   // on B R_B, R_B of dimension d_B
  int i = 0, j = 0;
  bool zeroColumnCase = false;
  double outputEntanglement = 0.0;
};
Sr4Witness sr4_witness(const BipartiteUnitary& U);

double clifford_powers(const BipartiteUnitary& C);

// symmetricU = (leftA (x) leftB) U (rightA (x) rightB).
struct Symmetrized {
  CMat leftA, leftB, rightA, rightB;
  BipartiteUnitary symmetricU;
};
Symmetrized symmetrize_dax2_sr3(const BipartiteUnitary& U);

struct Nqp220 {
  double value = 0.0;
  std::vector<double> spectrum;
};
Nqp220 nqp220_bound();

}  // namespace entpower
