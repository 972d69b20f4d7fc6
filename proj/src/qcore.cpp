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


#include "entpower/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "entpower/errors.hpp"

namespace entpower {

int PureState::total_dim() const {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
}

PureState make_state(std::vector<int> dims, CVec amplitudes, bool normalize) {
  PureState s{std::move(dims), std::move(amplitudes)};
  for (int d : s.dims)
    if (d < 1) throw ShapeError("subsystem dimension must be positive");
  if (s.total_dim() != s.amplitudes.size())
    throw ShapeError("amplitude count does not match the product of dims");
  if (!s.amplitudes.allFinite()) throw InvalidState("non-finite amplitude");
  double n = s.amplitudes.norm();
  if (normalize) {
    if (n == 0.0) throw InvalidState("cannot normalize the zero vector");
    s.amplitudes /= n;
  } else if (std::abs(n * n - 1.0) > 1e-10) {
    throw InvalidState("state is not normalized");
  }
  return s;
}

PureState product_state(const PureState& a, const PureState& b) {
  PureState s;
  s.dims = a.dims;
  s.dims.insert(s.dims.end(), b.dims.begin(), b.dims.end());
  s.amplitudes = kron(a.amplitudes, b.amplitudes);
  return s;
}

double shannon_entropy(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p)
    if (x > kEntropyCutoff) h -= x * std::log2(x);
  return h;
}

double spectrum_entropy(const RVec& eigenvalues) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    double x = eigenvalues[i];
    if (x > kEntropyCutoff) h -= x * std::log2(x);
  }
  return h;
}

void validate_density(const CMat& rho, double tol) {
  if (rho.rows() != rho.cols() || rho.rows() == 0) throw ShapeError("density operator must be square");
  if (!rho.allFinite()) throw InvalidState("non-finite density operator entry");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) throw InvalidState("density operator is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > tol) throw InvalidState("density operator trace is not one");
  Eigen::SelfAdjointEigenSolver<CMat> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) throw InvalidState("density operator has a negative eigenvalue");
}

double von_neumann_entropy(const CMat& rho) {
  validate_density(rho);
  Eigen::SelfAdjointEigenSolver<CMat> es(rho, Eigen::EigenvaluesOnly);
  return spectrum_entropy(es.eigenvalues());
}

namespace {

std::vector<int> strides_of(const std::vector<int>& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k) s[k] = s[k + 1] * dims[k + 1];
  return s;
}

// new_index[i] for each old composite index i under the subsystem reorder.
std::vector<int> permutation_map(const std::vector<int>& dims, const std::vector<int>& order) {
  const int n = static_cast<int>(dims.size());
  if (static_cast<int>(order.size()) != n) throw ShapeError("subsystem order has the wrong length");
  std::vector<int> seen(n, 0);
  for (int o : order) {
    if (o < 0 || o >= n || seen[o]++) throw ShapeError("subsystem order is not a permutation");
  }
  std::vector<int> newDims(n);
  for (int k = 0; k < n; ++k) newDims[k] = dims[order[k]];
  auto oldStr = strides_of(dims);
  auto newStr = strides_of(newDims);
  int total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
  std::vector<int> map(total);
  for (int i = 0; i < total; ++i) {
    int j = 0;
    for (int k = 0; k < n; ++k) {
      int digit = (i / oldStr[order[k]]) % dims[order[k]];
      j += digit * newStr[k];
    }
    map[i] = j;
  }
  return map;
}

std::vector<int> cut_order(int n, const std::vector<int>& sideA) {
  std::vector<int> inA(n, 0);
  for (int k : sideA) {
    if (k < 0 || k >= n) throw ShapeError("cut refers to a missing subsystem");
    if (inA[k]++) throw ShapeError("cut lists a subsystem twice");
  }
  std::vector<int> order;
  for (int k = 0; k < n; ++k)
    if (inA[k]) order.push_back(k);
  for (int k = 0; k < n; ++k)
    if (!inA[k]) order.push_back(k);
  return order;
}

}  // namespace

CVec permute_subsystems(const CVec& psi, const std::vector<int>& dims, const std::vector<int>& order) {
  auto map = permutation_map(dims, order);
  if (static_cast<Eigen::Index>(map.size()) != psi.size()) throw ShapeError("state size does not match dims");
  CVec out(psi.size());
  for (size_t i = 0; i < map.size(); ++i) out[map[i]] = psi[i];
  return out;
}

CMat partial_trace(const CMat& rho, const std::vector<int>& dims, const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  int total = std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<int>());
  if (rho.rows() != total || rho.cols() != total) throw ShapeError("operator size does not match dims");
  if (keep.empty() || static_cast<int>(keep.size()) >= n) throw ShapeError("keep must be a nonempty proper subset");
  auto order = cut_order(n, keep);
  auto map = permutation_map(dims, order);
  int dk = 1;
  for (int k : keep) dk *= dims[k];
  int dr = total / dk;
  CMat out = CMat::Zero(dk, dk);
  // Inverse map gives the old index of each reordered index.
  std::vector<int> inv(total);
  for (int i = 0; i < total; ++i) inv[map[i]] = i;
  for (int a = 0; a < dk; ++a)
    for (int b = 0; b < dk; ++b) {
      cplx s = 0.0;
      for (int r = 0; r < dr; ++r) s += rho(inv[a * dr + r], inv[b * dr + r]);
      out(a, b) = s;
    }
  return out;
}

CMat as_matrix(const CVec& v, int m, int n) {
  if (v.size() != static_cast<Eigen::Index>(m) * n) throw ShapeError("reshape size mismatch");
  return Eigen::Map<const CMat>(v.data(), n, m).transpose();
}

CVec as_vector(const CMat& M) {
  CMat t = M.transpose();
  return Eigen::Map<const CVec>(t.data(), t.size());
}

RVec schmidt_probabilities(const CVec& psi, int m, int n) {
  CMat M = as_matrix(psi, m, n);
  CMat G = (m <= n) ? CMat(M * M.adjoint()) : CMat(M.adjoint() * M);
  Eigen::SelfAdjointEigenSolver<CMat> es(G, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

double entanglement_entropy(const CVec& psi, int m, int n) {
  return spectrum_entropy(schmidt_probabilities(psi, m, n));
}

namespace {

double cut_entropy(const PureState& psi, const std::vector<int>& sideA, bool useA) {
  if (psi.total_dim() != psi.amplitudes.size()) throw ShapeError("state size does not match dims");
  if (std::abs(psi.amplitudes.squaredNorm() - 1.0) > 1e-10) throw InvalidState("state is not normalized");
  const int n = static_cast<int>(psi.dims.size());
  auto order = cut_order(n, sideA);
  int m = 1;
  for (int k : sideA) m *= psi.dims[k];
  int rest = psi.total_dim() / m;
  if (m == 1 || rest == 1) return 0.0;
  CMat M = as_matrix(permute_subsystems(psi.amplitudes, psi.dims, order), m, rest);
  CMat G = useA ? CMat(M * M.adjoint()) : CMat(M.transpose() * M.conjugate());
  Eigen::SelfAdjointEigenSolver<CMat> es(G, Eigen::EigenvaluesOnly);
  return spectrum_entropy(es.eigenvalues());
}

}  // namespace

double entanglement_entropy(const PureState& psi, const std::vector<int>& sideA) {
  return cut_entropy(psi, sideA, true);
}

double entanglement_entropy_other_side(const PureState& psi, const std::vector<int>& sideA) {
  return cut_entropy(psi, sideA, false);
}

CMat kron(const CMat& a, const CMat& b) {
  CMat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double unitarity_defect(const CMat& U) {
  if (U.rows() != U.cols()) return INFINITY;
  return (U.adjoint() * U - CMat::Identity(U.rows(), U.cols())).norm();
}

bool is_unitary(const CMat& U, double tol) { return U.allFinite() && unitarity_defect(U) <= tol; }

CMat random_unitary(int d, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat Z(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) Z(i, j) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<CMat> qr(Z);
  CMat Q = qr.householderQ();
  CMat R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < d; ++j) {
    cplx r = R(j, j);
    double a = std::abs(r);
    if (a > 0) Q.col(j) *= r / a;
  }
  return Q;
}

CVec random_state(int d, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVec v(d);
  for (int i = 0; i < d; ++i) v[i] = cplx(g(rng), g(rng));
  return v / v.norm();
}

CMat random_density(int d, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat G(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) G(i, j) = cplx(g(rng), g(rng));
  CMat rho = G * G.adjoint();
  return rho / rho.trace().real();
}

namespace {

void refine_basis(const std::vector<CMat>& hs, size_t idx, const CMat& V, double tol, std::vector<CVec>& out) {
  if (idx == hs.size() || V.cols() == 1) {
    for (Eigen::Index k = 0; k < V.cols(); ++k) out.push_back(V.col(k));
    return;
  }
  CMat H = V.adjoint() * hs[idx] * V;
  H = (H + H.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  const RVec& w = es.eigenvalues();
  CMat E = V * es.eigenvectors();
  Eigen::Index start = 0;
  for (Eigen::Index k = 1; k <= w.size(); ++k) {
    if (k == w.size() || w[k] - w[k - 1] > tol) {
      refine_basis(hs, idx + 1, E.middleCols(start, k - start), tol, out);
      start = k;
    }
  }
}

}  // namespace

CMat common_eigenbasis(const std::vector<CMat>& hermitians, double tol) {
  if (hermitians.empty()) throw ShapeError("need at least one matrix");
  const Eigen::Index n = hermitians.front().rows();
  std::vector<CVec> cols;
  refine_basis(hermitians, 0, CMat::Identity(n, n), tol, cols);
  CMat V(n, n);
  for (Eigen::Index k = 0; k < n; ++k) V.col(k) = cols[k];
  return V;
}

NormalSpectrum normal_eigen(const CMat& W, double tol) {
  CMat re = (W + W.adjoint()) / 2.0;
  CMat im = (W - W.adjoint()) / cplx(0.0, 2.0);
  NormalSpectrum s;
  s.vectors = common_eigenbasis({re, im}, tol);
  for (Eigen::Index k = 0; k < W.rows(); ++k)
    s.values.push_back(s.vectors.col(k).dot(W * s.vectors.col(k)));
  return s;
}

}  // namespace entpower
