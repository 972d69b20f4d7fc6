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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

namespace entpower {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Rng = std::mt19937_64;

// Eigenvalues at or below this are dropped from entropy sums.
inline constexpr double kEntropyCutoff = 1e-12;

// Amplitudes over a tensor product, composite index row-major in dims.
struct PureState {
  std::vector<int> dims;
  CVec amplitudes;

  int total_dim() const;
  double norm() const { return amplitudes.norm(); }
};

PureState make_state(std::vector<int> dims, CVec amplitudes, bool normalize = false);
PureState product_state(const PureState& a, const PureState& b);

// Entropies, all in bits.
double shannon_entropy(const std::vector<double>& p);
double spectrum_entropy(const RVec& eigenvalues);
double von_neumann_entropy(const CMat& rho);
void validate_density(const CMat& rho, double tol = 1e-10);

CMat partial_trace(const CMat& rho, const std::vector<int>& dims, const std::vector<int>& keep);

// E across the cut separating the subsystems in sideA from the rest.
double entanglement_entropy(const PureState& psi, const std::vector<int>& sideA);
// Same value from the complementary marginal, for cross-checks.
double entanglement_entropy_other_side(const PureState& psi, const std::vector<int>& sideA);
// Vector reshaped to an m x n matrix, row-major composite index.
double entanglement_entropy(const CVec& psi, int m, int n);
RVec schmidt_probabilities(const CVec& psi, int m, int n);

CMat as_matrix(const CVec& v, int m, int n);
CVec as_vector(const CMat& M);

// Reorder subsystems: result subsystem k is input subsystem order[k].
CVec permute_subsystems(const CVec& psi, const std::vector<int>& dims, const std::vector<int>& order);

CMat kron(const CMat& a, const CMat& b);
bool is_unitary(const CMat& U, double tol = 1e-10);
double unitarity_defect(const CMat& U);

CMat random_unitary(int d, Rng& rng);
CVec random_state(int d, Rng& rng);
CMat random_density(int d, Rng& rng);

// f applied to the eigenvalues of a Hermitian matrix.
template <class F>
CMat hermitian_function(const CMat& H, F f) {
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  RVec w = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

// Orthonormal basis diagonalising every matrix in a commuting Hermitian set.
CMat common_eigenbasis(const std::vector<CMat>& hermitians, double tol = 1e-9);

// Eigen-decomposition of a normal matrix through its two Hermitian parts.
struct NormalSpectrum {
  std::vector<cplx> values;
  CMat vectors;
};
NormalSpectrum normal_eigen(const CMat& W, double tol = 1e-9);

}  // namespace entpower
