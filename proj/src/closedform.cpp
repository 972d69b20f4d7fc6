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


#include "entpower/closedform.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "entpower/errors.hpp"
#include "feasibility.hpp"

namespace entpower {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double binary_entropy(double x) { return shannon_entropy({x, 1.0 - x}); }

CMat block(const BipartiteUnitary& U, int j, int k) { return U.matrix.block(j * U.dB, k * U.dB, U.dB, U.dB); }

bool proportional_or_zero(const CMat& X, const CMat& Y) {
  const bool zx = X.norm() < 1e-12, zy = Y.norm() < 1e-12;
  if (zx || zy) return zx && zy;
  return proportional(X, Y);
}

std::vector<int> nonzero_columns(const CMat& M) {
  std::vector<int> cols;
  for (Eigen::Index c = 0; c < M.cols(); ++c)
    if (M.col(c).norm() > 1e-12) cols.push_back(static_cast<int>(c));
  return cols;
}

std::vector<double> eigenphases(const CMat& C) {
  std::vector<double> out;
  for (cplx z : normal_eigen(C).values) {
    double t = std::arg(z);
    if (t < 0) t += kTwoPi;
    out.push_back(t);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Composite-index permutation of a permutation matrix: column c maps to row perm[c].
std::vector<int> as_permutation(const CMat& M) {
  std::vector<int> p(M.cols());
  for (Eigen::Index c = 0; c < M.cols(); ++c) {
    Eigen::Index r;
    M.col(c).cwiseAbs().maxCoeff(&r);
    p[c] = static_cast<int>(r);
  }
  return p;
}

std::vector<int> inverse(const std::vector<int>& p) {
  std::vector<int> q(p.size());
  for (size_t i = 0; i < p.size(); ++i) q[p[i]] = static_cast<int>(i);
  return q;
}

// (a o b)(x) = a(b(x)).
std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> c(b.size());
  for (size_t i = 0; i < b.size(); ++i) c[i] = a[b[i]];
  return c;
}

std::set<int> moved(const std::vector<int>& p) {
  std::set<int> s;
  for (size_t i = 0; i < p.size(); ++i)
    if (p[i] != static_cast<int>(i)) s.insert(static_cast<int>(i));
  return s;
}

bool invariant(const std::set<int>& s, const std::vector<int>& p) {
  return std::all_of(s.begin(), s.end(), [&](int x) { return s.count(p[x]) > 0; });
}

std::set<int> minus(const std::set<int>& a, const std::set<int>& b) {
  std::set<int> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.begin()));
  return out;
}

// Distinct B-terms of a permutation whose A output depends only on the A input.
std::optional<std::vector<std::vector<int>>> classical_terms(const BipartiteUnitary& U) {
  const auto perm = as_permutation(U.matrix);
  std::vector<std::vector<int>> distinct;
  for (int a = 0; a < U.dA; ++a) {
    const int target = perm[a * U.dB] / U.dB;
    std::vector<int> t(U.dB);
    for (int b = 0; b < U.dB; ++b) {
      const int r = perm[a * U.dB + b];
      if (r / U.dB != target) return std::nullopt;
      t[b] = r % U.dB;
    }
    if (std::find(distinct.begin(), distinct.end(), t) == distinct.end()) distinct.push_back(t);
  }
  return distinct;
}

}  // namespace

double pair_entropy(double thetaI, double thetaJ) {
  const double c = std::abs(std::cos((thetaI - thetaJ) / 2.0));
  return binary_entropy((1.0 - c) / 2.0);
}

Sr2Value ke_sr2(const std::vector<double>& thetas) {
  const int n = static_cast<int>(thetas.size());
  if (n < 2) throw PreconditionError("ke_sr2 needs at least two phases");
  if (n > 16) throw PreconditionError("ke_sr2 supports at most 16 phases");
  for (double t : thetas)
    if (!std::isfinite(t)) throw PreconditionError("phases must be finite");
  Sr2Value out;
  out.conjectureMode = n > 3;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.pairwiseMax = std::max(out.pairwiseMax, pair_entropy(thetas[i], thetas[j]));

  // Maximise y(c) = sum_{j<k} c_j c_k sin^2((t_j - t_k)/2) on the simplex through the
  // stationary points of every face.
  Eigen::MatrixXd s(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s(i, j) = std::pow(std::sin((thetas[i] - thetas[j]) / 2.0), 2);
  double bestY = 0.0;
  std::vector<double> bestC(n, 0.0);
  bestC[0] = 1.0;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1u) idx.push_back(i);
    const int k = static_cast<int>(idx.size());
    if (k < 2) continue;
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(k + 1, k + 1);
    RVec rhs = RVec::Zero(k + 1);
    for (int a = 0; a < k; ++a) {
      for (int b = 0; b < k; ++b) K(a, b) = s(idx[a], idx[b]);
      K(a, k) = -1.0;
      K(k, a) = 1.0;
    }
    rhs[k] = 1.0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(K);
    if (!lu.isInvertible()) continue;
    RVec sol = lu.solve(rhs);
    if (sol.head(k).minCoeff() < -1e-12) continue;
    std::vector<double> c(n, 0.0);
    for (int a = 0; a < k; ++a) c[idx[a]] = std::max(0.0, sol[a]);
    double y = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b) y += c[a] * c[b] * s(a, b);
    if (y > bestY) {
      bestY = y;
      bestC = c;
    }
  }
  const double r = std::sqrt(std::max(0.0, 1.0 - 4.0 * bestY));
  out.value = binary_entropy((1.0 - r) / 2.0);
  out.weights = bestC;
  out.pairwiseAgrees = std::abs(out.value - out.pairwiseMax) < 1e-9;
  return out;
}

Sr3PermVerdict classify_perm_sr3_structure(const BipartiteUnitary& U) {
  const StructureReport rep = classify(U);
  if (!rep.isPermutation) throw PreconditionError("classify_perm_sr3 needs a permutation unitary");
  if (rep.schmidtRank != 3) throw PreconditionError("classify_perm_sr3 needs Schmidt rank 3");
  Sr3PermVerdict v;
  std::optional<FormParameters> general;
  for (Side side : {Side::A, Side::B}) {
    const BipartiteUnitary W = side == Side::A ? U : U.swapped();
    auto terms = classical_terms(W);
    if (!terms || terms->size() != 3) continue;
    for (int ref = 0; ref < 3; ++ref) {
      const auto rinv = inverse((*terms)[ref]);
      const auto t = compose((*terms)[(ref + 1) % 3], rinv);
      const auto u = compose((*terms)[(ref + 2) % 3], rinv);
      const auto mt = moved(t), mu = moved(u);
      const auto q = minus(mt, mu), n = minus(mu, mt);
      const int p = static_cast<int>(mt.size() - q.size());
      FormParameters f{W.dB - static_cast<int>(mt.size() + n.size()), static_cast<int>(n.size()),
                       static_cast<int>(q.size()), p, side};
      if (p == 0) {
        v.value = std::log2(9.0) - 16.0 / 9.0;
        v.formDetected = f;
        return v;
      }
      if (!general && invariant(q, t) && invariant(n, u)) general = f;
    }
  }
  v.value = std::log2(3.0);
  v.formDetected = general;
  return v;
}

Sr3PermVerdict classify_perm_sr3(const BipartiteUnitary& U, const PowerOptions& opts) {
  Sr3PermVerdict v = classify_perm_sr3_structure(U);
  v.numericEstimate = entangling_power(U, opts).value;
  v.agrees = std::abs(v.numericEstimate - v.value) < 1e-3;
  return v;
}

double cp3_formula(double M) {
  const double e = std::exp(M);
  return binary_entropy(1.0 / (e + 1.0)) + M * e / (e + 1.0);
}

Cp3Value ke_cp3(const BipartiteUnitary& U) {
  if (U.dA != 2) throw PreconditionError("ke_cp3 needs a 2 x d_B gate");
  const StructureReport rep = classify(U);
  if (!rep.isComplexPermutation) throw PreconditionError("ke_cp3 needs a complex permutation unitary");
  if (rep.schmidtRank != 3) throw PreconditionError("ke_cp3 needs Schmidt rank 3");
  const CMat U11 = block(U, 0, 0), U12 = block(U, 0, 1), U21 = block(U, 1, 0), U22 = block(U, 1, 1);
  Cp3Value out;
  CMat Cfull;
  std::vector<int> support;
  if (proportional_or_zero(U11, U22)) {
    Cfull = U12.adjoint() * U21;
    support = nonzero_columns(U12);
  } else if (proportional_or_zero(U12, U21)) {
    // Exchanging the two A outputs turns this case into the first one.
    out.rowsSwapped = true;
    Cfull = U22.adjoint() * U11;
    support = nonzero_columns(U22);
  } else {
    throw InternalError("rank-three 2 x d_B complex permutation with neither block pair proportional");
  }
  const int k = static_cast<int>(support.size());
  out.n = U.dB - k;
  CMat C(k, k);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) C(a, b) = Cfull(support[a], support[b]);
  if (k == 0 || !is_unitary(C, 1e-9)) throw InternalError("ke_cp3 normalisation did not produce a unitary C");
  out.M = k == 1 ? 0.0 : ke_sr2(eigenphases(C)).value;
  out.analytic = cp3_formula(out.M);
  out.base2Stationary = std::log2(1.0 + std::exp2(out.M));
  out.discrepancyFlag = std::abs(out.analytic - out.base2Stationary) > 1e-9;
  if (out.analytic < 1.0 - 1e-12 || out.analytic >= std::log2(3.0))
    throw InternalError("ke_cp3 value left [1, log2 3)");
  return out;
}

GcnotVerdict gcnot_check(const BipartiteUnitary& U) {
  if (schmidt_rank(U.matrix, U.dA, U.dB) != 2) throw PreconditionError("gcnot_check needs Schmidt rank 2");
  const CoarseGrained cg = coarse_grain_sr2(U);
  std::vector<cplx> pts;
  for (double t : cg.thetas) pts.push_back(std::polar(1.0, t));
  GcnotVerdict v;
  v.thetas = cg.thetas;
  v.witness = detail::origin_in_hull(pts);
  v.isGCNOT = v.witness.has_value();
  return v;
}

Sr4Witness sr4_witness(const BipartiteUnitary& U) {
  if (U.dA != 2) throw PreconditionError("sr4_witness needs a 2 x d_B gate");
  const StructureReport rep = classify(U);
  if (!rep.isComplexPermutation) throw PreconditionError("sr4_witness needs a complex permutation unitary");
  if (rep.schmidtRank != 4) throw PreconditionError("sr4_witness needs Schmidt rank 4");
  Sr4Witness w;
  const CMat U12 = block(U, 0, 1);
  w.zeroColumnCase = static_cast<int>(nonzero_columns(U12).size()) < U.dB;
  CVec a = CVec::Zero(4);
  a[0] = a[3] = 1.0 / std::sqrt(2.0);
  w.alpha = make_state({2, 2}, a);
  // The input family (|11> + |22>)(|ii> + |jj>) is closed under local complex
  // permutations, so the index pair is searched in the given frame.
  const int d = U.dB;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      CVec b = CVec::Zero(d * d);
      b[i * d + i] = b[j * d + j] = 1.0 / std::sqrt(2.0);
      PureState beta = make_state({d, d}, b);
      const double e = output_entanglement(U, w.alpha, beta);
      if (std::abs(e - 2.0) < 1e-9) {
        w.beta = beta;
        w.i = i;
        w.j = j;
        w.outputEntanglement = e;
        return w;
      }
    }
  throw SearchFailed("no index pair gives a uniformly entangled rank-four output");
}

double clifford_powers(const BipartiteUnitary& C) {
  const int d = infer_qudit_dimension(C.dA, C.dB);
  if (!clifford_check(C, d)) throw PreconditionError("clifford_powers needs a generalized Clifford gate");
  return schmidt_strength(operator_schmidt_decompose(C));
}

Symmetrized symmetrize_dax2_sr3(const BipartiteUnitary& U) {
  if (U.dB != 2) throw PreconditionError("symmetrize_dax2_sr3 needs d_B = 2");
  if (schmidt_rank(U.matrix, U.dA, U.dB) != 3) throw PreconditionError("symmetrize_dax2_sr3 needs Schmidt rank 3");
  auto form = controlled_in_basis(U, Side::A);
  if (!form || !form->computationalBasis) throw PreconditionError("symmetrize_dax2_sr3 needs a gate controlled from A");
  const CMat IA = CMat::Identity(U.dA, U.dA), I2 = CMat::Identity(2, 2);
  Symmetrized out{IA, I2, IA, I2, U};
  if ((U.matrix - U.matrix.transpose()).norm() < 1e-9) return out;

  const CMat& U1 = form->terms[0];
  const CMat& U2 = form->terms[1];
  const CMat& U3 = form->terms[2];
  CMat W = I2;
  CMat Y2 = U2 * U1.adjoint();
  if (std::abs(Y2(0, 1)) > 1e-12 || std::abs(Y2(1, 0)) > 1e-12) W = normal_eigen(Y2).vectors;
  CMat Y3 = W.adjoint() * U3 * U1.adjoint() * W;
  CMat D = I2;
  if (std::abs(Y3(1, 0)) > 1e-12) D(1, 1) = std::polar(1.0, std::arg(Y3(0, 1) / Y3(1, 0)) / 2.0);
  out.leftB = D * W.adjoint();
  out.rightB = U1.adjoint() * W * D.adjoint();
  CMat S = kron(out.leftA, out.leftB) * U.matrix * kron(out.rightA, out.rightB);
  if ((S - S.transpose()).norm() > 1e-9) throw InternalError("symmetrisation left an asymmetric matrix");
  out.symmetricU = BipartiteUnitary{U.dA, U.dB, S};
  return out;
}

Nqp220 nqp220_bound() { return {std::log2(9.0) - 16.0 / 9.0, {1.0 / 9.0, 4.0 / 9.0, 4.0 / 9.0}}; }

}  // namespace entpower
