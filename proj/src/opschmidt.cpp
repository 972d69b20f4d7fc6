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


#include "entpower/opschmidt.hpp"

#include <cmath>

#include "entpower/errors.hpp"

namespace entpower {

BipartiteUnitary BipartiteUnitary::swapped() const {
  const int n = dim();
  CMat S = CMat::Zero(n, n);
  // S|a,b> = |b,a> maps the A(x)B ordering to B(x)A.
  for (int a = 0; a < dA; ++a)
    for (int b = 0; b < dB; ++b) S(b * dA + a, a * dB + b) = 1.0;
  return {dB, dA, S * matrix * S.adjoint()};
}

BipartiteUnitary make_unitary(int dA, int dB, CMat matrix, double tol) {
  if (dA < 1 || dB < 1) throw ShapeError("local dimensions must be positive");
  if (matrix.rows() != dA * dB || matrix.cols() != dA * dB)
    throw ShapeError("matrix order must equal dA*dB");
  if (!matrix.allFinite()) throw InvalidUnitary("matrix has non-finite entries");
  double defect = unitarity_defect(matrix);
  if (defect > tol) throw InvalidUnitary("matrix is not unitary (defect " + std::to_string(defect) + ")");
  return {dA, dB, std::move(matrix)};
}

CMat reshuffle(const CMat& M, int dA, int dB) {
  CMat R(dA * dA, dB * dB);
  for (int a = 0; a < dA; ++a)
    for (int ap = 0; ap < dA; ++ap)
      for (int b = 0; b < dB; ++b)
        for (int bp = 0; bp < dB; ++bp) R(a * dA + ap, b * dB + bp) = M(a * dB + b, ap * dB + bp);
  return R;
}

OperatorSchmidt operator_schmidt_decompose_any(const CMat& M, int dA, int dB, double rankTol) {
  if (M.rows() != dA * dB || M.cols() != dA * dB) throw ShapeError("operator order must equal dA*dB");
  CMat R = reshuffle(M, dA, dB);
  Eigen::JacobiSVD<CMat> svd(R, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVec& s = svd.singularValues();
  OperatorSchmidt dec;
  dec.dA = dA;
  dec.dB = dB;
  if (s.size() == 0 || s[0] == 0.0) return dec;
  const double scale = std::sqrt(double(dA) * dB);
  const double sA = std::sqrt(double(dA));
  const double sB = std::sqrt(double(dB));
  for (Eigen::Index j = 0; j < s.size(); ++j) {
    if (s[j] <= rankTol * s[0]) break;
    dec.coefficients.push_back(s[j] / scale);
    CMat A(dA, dA), B(dB, dB);
    for (int a = 0; a < dA; ++a)
      for (int ap = 0; ap < dA; ++ap) A(a, ap) = sA * svd.matrixU()(a * dA + ap, j);
    for (int b = 0; b < dB; ++b)
      for (int bp = 0; bp < dB; ++bp) B(b, bp) = sB * std::conj(svd.matrixV()(b * dB + bp, j));
    dec.aOps.push_back(std::move(A));
    dec.bOps.push_back(std::move(B));
  }
  dec.rank = static_cast<int>(dec.coefficients.size());
  return dec;
}

OperatorSchmidt operator_schmidt_decompose(const BipartiteUnitary& U, double rankTol) {
  if (!is_unitary(U.matrix, 1e-8)) throw InvalidUnitary("operator Schmidt decomposition needs a unitary");
  return operator_schmidt_decompose_any(U.matrix, U.dA, U.dB, rankTol);
}

int schmidt_rank(const CMat& M, int dA, int dB, double rankTol) {
  CMat R = reshuffle(M, dA, dB);
  Eigen::JacobiSVD<CMat> svd(R);
  const RVec& s = svd.singularValues();
  if (s.size() == 0 || s[0] == 0.0) return 0;
  int r = 0;
  for (Eigen::Index j = 0; j < s.size(); ++j)
    if (s[j] > rankTol * s[0]) ++r;
  return r;
}

double schmidt_strength(const OperatorSchmidt& dec) {
  double h = 0.0;
  for (double c : dec.coefficients) {
    double p = c * c;
    if (p > kEntropyCutoff) h -= p * std::log2(p);
  }
  return h;
}

CMat reconstruct(const OperatorSchmidt& dec) {
  CMat M = CMat::Zero(dec.dA * dec.dB, dec.dA * dec.dB);
  for (int j = 0; j < dec.rank; ++j) M += dec.coefficients[j] * kron(dec.aOps[j], dec.bOps[j]);
  return M;
}

}  // namespace entpower
