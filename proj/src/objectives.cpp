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


#include "objectives.hpp"

#include <cmath>
#include <numbers>

namespace entpower::detail {

namespace {

constexpr double kLn2 = std::numbers::ln2;

// Natural-log entropy of rho; L receives log(rho) + S on the support.
double log_part(const CMat& rho, CMat* L) {
  Eigen::SelfAdjointEigenSolver<CMat> es(rho);
  const RVec& w = es.eigenvalues();
  double S = 0.0;
  for (Eigen::Index k = 0; k < w.size(); ++k)
    if (w[k] > kEntropyCutoff) S -= w[k] * std::log(w[k]);
  if (L) {
    RVec h(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) h[k] = w[k] > kEntropyCutoff ? std::log(w[k]) + S : S;
    *L = es.eigenvectors() * h.asDiagonal() * es.eigenvectors().adjoint();
  }
  return S;
}

}  // namespace

double entropy_with_gradient(const CMat& Psi, CMat* G) {
  const double N = Psi.squaredNorm();
  const bool left = Psi.rows() <= Psi.cols();
  CMat rho = left ? CMat(Psi * Psi.adjoint() / N) : CMat(Psi.adjoint() * Psi / N);
  Eigen::SelfAdjointEigenSolver<CMat> es(rho, G ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  const RVec& w = es.eigenvalues();
  double S = 0.0;
  for (Eigen::Index k = 0; k < w.size(); ++k)
    if (w[k] > kEntropyCutoff) S -= w[k] * std::log(w[k]);
  if (G) {
    RVec h(w.size());
    for (Eigen::Index k = 0; k < w.size(); ++k) h[k] = w[k] > kEntropyCutoff ? std::log(w[k]) + S : 0.0;
    const CMat& V = es.eigenvectors();
    CMat H = V * h.asDiagonal() * V.adjoint();
    *G = left ? CMat(-(H * Psi) / (N * kLn2)) : CMat(-(Psi * H) / (N * kLn2));
  }
  return S / kLn2;
}

CMat swap_middle(const CMat& in, int d1, int d2, int d3, int d4) {
  CMat out(d1 * d3, d2 * d4);
  for (int i1 = 0; i1 < d1; ++i1)
    for (int i2 = 0; i2 < d2; ++i2)
      for (int i3 = 0; i3 < d3; ++i3)
        for (int i4 = 0; i4 < d4; ++i4) out(i1 * d3 + i3, i2 * d4 + i4) = in(i1 * d2 + i2, i3 * d4 + i4);
  return out;
}

CMat unpack(const RVec& x, Eigen::Index offset, int rows, int cols) {
  const Eigen::Index n = static_cast<Eigen::Index>(rows) * cols;
  CMat M(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      Eigen::Index k = offset + r * cols + c;
      M(r, c) = cplx(x[k], x[k + n]);
    }
  return M;
}

void pack(const CMat& M, Eigen::Index offset, RVec& x, double scale) {
  const Eigen::Index n = M.size();
  for (Eigen::Index r = 0; r < M.rows(); ++r)
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      Eigen::Index k = offset + r * M.cols() + c;
      x[k] = scale * M(r, c).real();
      x[k + n] = scale * M(r, c).imag();
    }
}

double ProductProblem::operator()(const RVec& x, RVec* grad) const {
  CMat A = unpack(x, 0, dA, dRA);
  CMat B = unpack(x, beta_offset(), dB, dRB);
  CMat Y = (*U) * kron(A, B);
  CMat Psi = swap_middle(Y, dA, dB, dRA, dRB);
  if (!grad) return entropy_with_gradient(Psi, nullptr);
  CMat G;
  double S = entropy_with_gradient(Psi, &G);
  CMat GX = U->adjoint() * swap_middle(G, dA, dRA, dB, dRB);
  CMat gA = CMat::Zero(dA, dRA), gB = CMat::Zero(dB, dRB);
  for (int a = 0; a < dA; ++a)
    for (int b = 0; b < dB; ++b)
      for (int ra = 0; ra < dRA; ++ra)
        for (int rb = 0; rb < dRB; ++rb) {
          cplx g = GX(a * dB + b, ra * dRB + rb);
          gA(a, ra) += g * std::conj(B(b, rb));
          gB(b, rb) += g * std::conj(A(a, ra));
        }
  grad->resize(size());
  pack(gA, 0, *grad, 2.0);
  pack(gB, beta_offset(), *grad, 2.0);
  return S;
}

double GainProblem::operator()(const RVec& x, RVec* grad) const {
  CMat Psi0 = unpack(x, 0, dA * dRA, dB * dRB);
  CMat Psi1 = swap_middle((*U) * swap_middle(Psi0, dA, dRA, dB, dRB), dA, dB, dRA, dRB);
  if (!grad) return entropy_with_gradient(Psi1, nullptr) - entropy_with_gradient(Psi0, nullptr);
  CMat G0, G1;
  double S0 = entropy_with_gradient(Psi0, &G0);
  double S1 = entropy_with_gradient(Psi1, &G1);
  CMat back = swap_middle(U->adjoint() * swap_middle(G1, dA, dRA, dB, dRB), dA, dB, dRA, dRB);
  grad->resize(size());
  pack(back - G0, 0, *grad, 2.0);
  return S1 - S0;
}

double ControlledProblem::operator()(const RVec& x, RVec* grad) const {
  const int m = static_cast<int>(W.size());
  std::vector<CMat> T(m);
  double Z = 0.0;
  CMat rho0 = CMat::Zero(D, D), rho1 = CMat::Zero(D, D);
  for (int j = 0; j < m; ++j) {
    T[j] = unpack(x, 2 * static_cast<Eigen::Index>(j) * D * D, D, D);
    CMat M = T[j].adjoint() * T[j];
    Z += M.trace().real();
    rho0 += M;
    rho1 += W[j] * M * W[j].adjoint();
  }
  rho0 /= Z;
  rho1 /= Z;
  CMat L0, L1;
  double S0 = log_part(rho0, grad ? &L0 : nullptr);
  double S1 = log_part(rho1, grad ? &L1 : nullptr);
  if (grad) {
    grad->resize(size());
    for (int j = 0; j < m; ++j) {
      CMat Q = L0 - W[j].adjoint() * L1 * W[j];
      CMat G = T[j] * Q / (Z * kLn2);
      pack(G, 2 * static_cast<Eigen::Index>(j) * D * D, *grad, 2.0);
    }
  }
  return (S1 - S0) / kLn2;
}

}  // namespace entpower::detail
