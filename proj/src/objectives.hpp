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


// Objectives maximised by the power estimators, exposed for gradient tests.
#pragma once

#include <vector>

#include "entpower/qcore.hpp"

namespace entpower::detail {

// Entropy in bits of Psi Psi^dagger / |Psi|^2. G receives dS/d conj(Psi).
double entropy_with_gradient(const CMat& Psi, CMat* G);
// in: (d1 d2) x (d3 d4), out: (d1 d3) x (d2 d4).
CMat swap_middle(const CMat& in, int d1, int d2, int d3, int d4);
// Complex matrix stored as [real parts, imaginary parts], each row-major.
CMat unpack(const RVec& x, Eigen::Index offset, int rows, int cols);
void pack(const CMat& M, Eigen::Index offset, RVec& x, double scale = 1.0);

// Product inputs alpha (dA x dRA) and beta (dB x dRB).
struct ProductProblem {
  const CMat* U;
  int dA, dB, dRA, dRB;

  Eigen::Index size() const { return 2 * (dA * dRA + dB * dRB); }
  Eigen::Index beta_offset() const { return 2 * dA * dRA; }
  double operator()(const RVec& x, RVec* grad) const;
};

// Pure input psi on A R_A B R_B, objective E(U psi) - E(psi).
struct GainProblem {
  const CMat* U;
  int dA, dB, dRA, dRB;

  Eigen::Index size() const { return 2 * dA * dRA * dB * dRB; }
  double operator()(const RVec& x, RVec* grad) const;
};

// Controlled gate: S(sum_j W_j M_j W_j^dagger) - S(sum_j M_j), M_j = T_j^dagger T_j / Z.
struct ControlledProblem {
  std::vector<CMat> W;  // terms tensored with the identity on their ancilla
  int D;

  Eigen::Index size() const { return 2 * static_cast<Eigen::Index>(W.size()) * D * D; }
  double operator()(const RVec& x, RVec* grad) const;
};

}  // namespace entpower::detail
