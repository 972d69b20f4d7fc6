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

#include <vector>

#include "entpower/qcore.hpp"

namespace entpower {

// Gate on A (dim dA) tensor B (dim dB); basis |a>|b> sits at index a*dB + b.
struct BipartiteUnitary {
  int dA = 1;
  int dB = 1;
  CMat matrix;

  int dim() const { return dA * dB; }
  BipartiteUnitary adjoint() const { return {dA, dB, matrix.adjoint()}; }
  BipartiteUnitary conjugate() const { return {dA, dB, matrix.conjugate()}; }
  // Same gate with the roles of A and B exchanged.
  BipartiteUnitary swapped() const;
};

// Validates shape and unitarity (Frobenius defect of U^dagger U - I).
BipartiteUnitary make_unitary(int dA, int dB, CMat matrix, double tol = 1e-10);

// U = sum_j c_j A_j (x) B_j with (1/dA)Tr(A_j^dagger A_k) = delta, likewise for B.
struct OperatorSchmidt {
  int dA = 1;
  int dB = 1;
  int rank = 0;
  std::vector<double> coefficients;
  std::vector<CMat> aOps;
  std::vector<CMat> bOps;
};

// Entry <a,b|M|a',b'> moved to row (a,a') and column (b,b').
CMat reshuffle(const CMat& M, int dA, int dB);

OperatorSchmidt operator_schmidt_decompose(const BipartiteUnitary& U, double rankTol = 1e-9);
// No unitarity requirement; used for products and partial sums.
OperatorSchmidt operator_schmidt_decompose_any(const CMat& M, int dA, int dB, double rankTol = 1e-9);
int schmidt_rank(const CMat& M, int dA, int dB, double rankTol = 1e-9);
double schmidt_strength(const OperatorSchmidt& dec);
CMat reconstruct(const OperatorSchmidt& dec);

}  // namespace entpower
