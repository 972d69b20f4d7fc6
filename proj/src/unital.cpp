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


#include "entpower/unital.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "ascent.hpp"
#include "entpower/errors.hpp"
#include "objectives.hpp"
#include "parallel.hpp"

namespace entpower {

namespace {

void check_family(const KrausFamily& fam) {
  if (fam.d < 1) throw ShapeError("family dimension must be positive");
  if (static_cast<int>(fam.operators.size()) != fam.d * fam.d)
    throw ShapeError("family must hold exactly d^2 operators");
  for (const auto& K : fam.operators)
    if (K.rows() != fam.d || K.cols() != fam.d) throw ShapeError("family operator is not d x d");
  if (fam.weightR && (fam.weightR->rows() != fam.d || fam.weightR->cols() != fam.d))
    throw ShapeError("weight R is not d x d");
}

CMat conjugation_sum(const KrausFamily& fam, const CMat& X) {
  CMat S = CMat::Zero(fam.d, fam.d);
  for (const auto& K : fam.operators) S += K.adjoint() * X * K;
  return S;
}

std::vector<CMat> nontrivial_words(int d) {
  std::vector<CMat> words;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      if (a || b) words.push_back(hw_word(d, a, b));
  return words;
}

// Squared overlaps |<phi|U|phi>|^2 / |phi|^4 and their gradients in the packed real layout.
struct OverlapModel {
  int d;
  std::vector<CMat> words;
  double target;

  Eigen::Index size() const { return 2 * d; }

  RVec residuals(const RVec& x, Eigen::MatrixXd* jacobian) const {
    CVec phi = detail::unpack(x, 0, d, 1);
    const double N = phi.squaredNorm();
    const int m = static_cast<int>(words.size());
    RVec r(m);
    if (jacobian) jacobian->resize(m, size());
    for (int j = 0; j < m; ++j) {
      CVec Up = words[j] * phi;
      cplx a = phi.dot(Up);
      r[j] = std::norm(a) / (N * N) - target;
      if (jacobian) {
        CVec g = (std::conj(a) * Up + a * (words[j].adjoint() * phi)) / (N * N) - 2.0 * std::norm(a) / (N * N * N) * phi;
        RVec row(size());
        detail::pack(g, 0, row, 2.0);
        jacobian->row(j) = row.transpose();
      }
    }
    return r;
  }
};

double gauss_newton(const OverlapModel& model, RVec& x) {
  for (int it = 0; it < 60; ++it) {
    Eigen::MatrixXd J;
    RVec r = model.residuals(x, &J);
    if (r.cwiseAbs().maxCoeff() < 1e-15) break;
    // Normalisation and global phase leave two flat directions; the minimum-norm step ignores them.
    RVec step = J.completeOrthogonalDecomposition().solve(r);
    x -= step;
    x /= x.norm();
  }
  return fiducial_residual(detail::unpack(x, 0, model.d, 1).col(0));
}

}  // namespace

KrausFamily hw_family(int d) {
  KrausFamily fam{d, {}, std::nullopt};
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) fam.operators.push_back(hw_word(d, a, b) / std::sqrt(double(d)));
  return fam;
}

KrausFamily diagonal_family(int d) {
  KrausFamily fam{d, {}, std::nullopt};
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) {
      CMat U = CMat::Zero(d, d);
      for (int j = 0; j < d; ++j) U(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * ((j * k) % d) / d);
      fam.operators.push_back(hw_word(d, i, 0) * U / std::sqrt(double(d)));
    }
  return fam;
}

UnitalReport unital_equivalence_check(const KrausFamily& fam, int samples, std::uint64_t seed) {
  check_family(fam);
  const int d = fam.d;
  const CMat R = fam.weightR.value_or(CMat::Identity(d, d));
  Eigen::FullPivLU<CMat> lu(R);
  if (!lu.isInvertible()) throw PreconditionError("weight R is singular");
  const CMat Rinv = lu.inverse();
  UnitalReport rep;
  rep.samples = samples;
  const int n = d * d;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx g = (fam.operators[i].adjoint() * Rinv * fam.operators[j]).trace();
      rep.gramDeviation = std::max(rep.gramDeviation, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  const CMat I = CMat::Identity(d, d);
  auto deviation = [&](const CMat& X) {
    return (conjugation_sum(fam, X) - (R * X).trace() * I).cwiseAbs().maxCoeff();
  };
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      CMat E = CMat::Zero(d, d);
      E(a, b) = 1.0;
      rep.allMatrixDeviation = std::max(rep.allMatrixDeviation, deviation(E));
    }
  Rng rng(seed);
  for (int s = 0; s < samples; ++s) {
    CVec x = random_state(d, rng);
    CMat X = x * x.adjoint();
    rep.pureStateDeviation = std::max(rep.pureStateDeviation, deviation(X));
    // Y = |a><a| (x) X on C^{d^2} (x) C^d; the block-diagonal conjugation keeps the diagonal of |a><a|.
    CVec a = random_state(n, rng);
    CMat T = CMat::Zero(d, d);
    for (int j = 0; j < n; ++j) T += std::norm(a[j]) * fam.operators[j].adjoint() * X * fam.operators[j];
    rep.productStateDeviation = std::max(rep.productStateDeviation, (T - (R * X).trace() * I).cwiseAbs().maxCoeff());
  }
  rep.gramHolds = rep.gramDeviation <= 1e-9;
  rep.pureStateHolds = rep.pureStateDeviation < 1e-8;
  rep.confirmed = rep.gramHolds == rep.pureStateHolds;
  return rep;
}

CMat phase_average(const CMat& X, PhaseFamily family) {
  if (X.rows() != X.cols()) throw ShapeError("phase_average needs a square matrix");
  const int d = static_cast<int>(X.rows());
  CMat out = CMat::Zero(d, d);
  if (family == PhaseFamily::RootsOfUnity) {
    for (int k = 0; k < d; ++k) {
      CVec u(d);
      for (int j = 0; j < d; ++j) u[j] = std::polar(1.0, 2.0 * std::numbers::pi * ((j * k) % d) / d);
      out += u.asDiagonal() * X * u.conjugate().asDiagonal();
    }
    return out / double(d);
  }
  if (d > 20) throw ShapeError("signs family limited to d <= 20");
  const long r = 1L << d;
  for (long mask = 0; mask < r; ++mask) {
    RVec u(d);
    for (int j = 0; j < d; ++j) u[j] = (mask >> j) & 1 ? -1.0 : 1.0;
    out += u.cast<cplx>().asDiagonal() * X * u.cast<cplx>().asDiagonal();
  }
  return out / double(r);
}

double fiducial_residual(const CVec& phi) {
  const int d = static_cast<int>(phi.size());
  const double N = phi.squaredNorm();
  const double target = 1.0 / std::sqrt(d + 1.0);
  double worst = 0.0;
  for (const auto& U : nontrivial_words(d))
    worst = std::max(worst, std::abs(std::abs(phi.dot(U * phi)) / N - target));
  return worst;
}

PureState fiducial_search(int d, std::uint64_t seed, int restarts, Execution exec) {
  if (d != 2 && d != 3) throw PreconditionError("fiducial search supports d = 2 and d = 3");
  if (restarts < 1) throw PreconditionError("restart budget must be positive");
  OverlapModel model{d, nontrivial_words(d), 1.0 / (d + 1.0)};
  detail::Objective f = [&](const RVec& x, RVec* grad) {
    Eigen::MatrixXd J;
    RVec r = model.residuals(x, grad ? &J : nullptr);
    if (grad) *grad = -2.0 * J.transpose() * r;
    return -r.squaredNorm();
  };
  detail::AscentOptions ao;
  ao.maxEvaluations = 5000;
  ao.tolerance = 1e-16;
  auto results = detail::run_indexed<std::pair<double, RVec>>(restarts, exec, [&](int i) {
    Rng rng(seed + static_cast<std::uint64_t>(i));
    RVec x0(model.size());
    detail::pack(random_state(d, rng), 0, x0);
    RVec x = detail::maximize(f, x0, ao).x;
    x /= x.norm();
    double res = gauss_newton(model, x);
    return std::pair{res, x};
  });
  for (const auto& [res, x] : results)
    if (res < 1e-8) {
      CVec phi = detail::unpack(x, 0, d, 1).col(0);
      // Fix the global phase on the first nonzero amplitude.
      Eigen::Index k = 0;
      phi.cwiseAbs().maxCoeff(&k);
      phi *= std::conj(phi[k]) / std::abs(phi[k]);
      return make_state({d}, phi, true);
    }
  throw SearchFailed("no fiducial found within the restart budget");
}

SicReport sic_entangling_check(int d, const PureState& fiducial, const PowerOptions& opts) {
  if (fiducial.amplitudes.size() != d) throw ShapeError("fiducial dimension does not match d");
  const double res = fiducial_residual(fiducial.amplitudes);
  if (res >= 1e-6) throw PreconditionError("fiducial overlap residual " + std::to_string(res) + " is not below 1e-6");
  SicReport rep;
  rep.d = d;
  rep.fiducial = make_state({d}, fiducial.amplitudes, true);
  std::vector<CVec> orbit;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) orbit.push_back(hw_word(d, a, b) * rep.fiducial.amplitudes);
  for (std::size_t j = 0; j < orbit.size(); ++j)
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      double expect = (1.0 + (j == k ? d : 0)) / (d + 1.0);
      rep.maxOverlapDeviation = std::max(rep.maxOverlapDeviation, std::abs(std::norm(orbit[j].dot(orbit[k])) - expect));
    }
  BipartiteUnitary U = build(spec::Named{"hw-controlled", d});
  PureState alpha = make_state({d * d}, CVec::Constant(d * d, 1.0 / d));
  rep.entanglingCheck = output_entanglement(U, alpha, rep.fiducial);
  if (std::abs(rep.entanglingCheck - std::log2(double(d))) > 1e-6)
    throw InternalError("fiducial input does not reach log2 d");
  rep.optimizerValue = entangling_power(U, opts).value;
  return rep;
}

}  // namespace entpower
