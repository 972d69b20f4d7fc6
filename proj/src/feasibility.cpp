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


#include "feasibility.hpp"

#include <cmath>

namespace entpower::detail {

namespace {

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

}  // namespace

std::optional<std::vector<double>> origin_in_hull(const std::vector<cplx>& z, double tol) {
  const int n = static_cast<int>(z.size());
  std::vector<double> w(n, 0.0);
  for (int i = 0; i < n; ++i)
    if (std::abs(z[i]) < tol) {
      w[i] = 1.0;
      return w;
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double ri = std::abs(z[i]), rj = std::abs(z[j]);
      cplx c = std::conj(z[i]) * z[j];
      if (std::abs(c.imag()) < tol * ri * rj && c.real() < 0) {
        w[i] = rj / (ri + rj);
        w[j] = ri / (ri + rj);
        return w;
      }
    }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        double D = cross(z[j] - z[i], z[k] - z[i]);
        if (std::abs(D) < tol) continue;
        // Barycentric coordinates of the origin.
        double li = cross(z[j], z[k]) / D;
        double lj = cross(z[k], z[i]) / D;
        double lk = cross(z[i], z[j]) / D;
        if (li >= -tol && lj >= -tol && lk >= -tol) {
          double s = std::max(li, 0.0) + std::max(lj, 0.0) + std::max(lk, 0.0);
          w[i] = std::max(li, 0.0) / s;
          w[j] = std::max(lj, 0.0) / s;
          w[k] = std::max(lk, 0.0) / s;
          return w;
        }
      }
  return std::nullopt;
}

std::optional<RVec> nonnegative_solution(const Eigen::MatrixXd& A0, const RVec& b0, double tol) {
  const int m = static_cast<int>(A0.rows());
  const int n = static_cast<int>(A0.cols());
  Eigen::MatrixXd A = A0;
  RVec b = b0;
  for (int i = 0; i < m; ++i)
    if (b[i] < 0) {
      A.row(i) *= -1.0;
      b[i] *= -1.0;
    }
  // Tableau columns: n structural, m artificial, then the right-hand side.
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  T.topLeftCorner(m, n) = A;
  T.block(0, n, m, m).setIdentity();
  T.col(n + m).head(m) = b;
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;
  // Objective row: minimise the artificial sum, written as reduced costs.
  for (int j = 0; j < n; ++j) T(m, j) = -A.col(j).sum();
  T(m, n + m) = -b.sum();
  const double eps = 1e-12;
  for (int iter = 0; iter < 10000; ++iter) {
    int enter = -1;
    for (int j = 0; j < n + m; ++j)
      if (T(m, j) < -eps) {
        enter = j;  // Bland: lowest index
        break;
      }
    if (enter < 0) break;
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i)
      if (T(i, enter) > eps) {
        double ratio = T(i, n + m) / T(i, enter);
        if (leave < 0 || ratio < best - eps || (std::abs(ratio - best) <= eps && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
    if (leave < 0) break;
    T.row(leave) /= T(leave, enter);
    for (int i = 0; i <= m; ++i)
      if (i != leave && T(i, enter) != 0.0) T.row(i) -= T(i, enter) * T.row(leave);
    basis[leave] = enter;
  }
  if (-T(m, n + m) > tol * std::max(1.0, b.norm())) return std::nullopt;
  RVec w = RVec::Zero(n);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) w[basis[i]] = std::max(0.0, T(i, n + m));
  if ((A0 * w - b0).norm() > 1e-8) return std::nullopt;
  return w;
}

}  // namespace entpower::detail
