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


#include "entpower/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>

#include "ascent.hpp"
#include "entpower/errors.hpp"
#include "feasibility.hpp"
#include "objectives.hpp"
#include "parallel.hpp"

namespace entpower {

std::string to_string(Quantity q) {
  switch (q) {
    case Quantity::KE: return "K_E";
    case Quantity::KEa: return "K_Ea";
    case Quantity::Kd: return "K_d";
  }
  return "?";
}

double PowerEstimate::min_upper_bound() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& [label, v] : upperBounds) m = std::min(m, v);
  return m;
}

namespace {

using detail::ControlledProblem;
using detail::GainProblem;
using detail::ProductProblem;
using detail::pack;
using detail::swap_middle;
using detail::unpack;

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  RVec x;
  int evaluations = 0;
  bool converged = false;
};

// Highest value, lowest index on ties.
int best_index(const std::vector<Candidate>& c) {
  int best = 0;
  for (int i = 1; i < static_cast<int>(c.size()); ++i)
    if (c[i].value > c[best].value) best = i;
  return best;
}

RVec gaussian(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  RVec x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = g(rng);
  return x;
}

// |Phi> on a (x) r with min(d, dr) Schmidt terms, or the uniform superposition when dr == 1.
CMat max_entangled(int d, int dr) {
  CMat M = CMat::Zero(d, dr);
  if (dr == 1) {
    M.setConstant(1.0 / std::sqrt(double(d)));
    return M;
  }
  const int k = std::min(d, dr);
  for (int i = 0; i < k; ++i) M(i, i) = 1.0 / std::sqrt(double(k));
  return M;
}

CMat uniform_product(int d, int dr) {
  CMat M = CMat::Zero(d, dr);
  M.col(0).setConstant(1.0 / std::sqrt(double(d)));
  return M;
}

PureState state_from(const CMat& M, std::vector<int> dims) {
  CVec v = as_vector(M);
  return make_state(std::move(dims), v / v.norm());
}

// Copies an amplitude matrix d x dOld into d x dNew, padding the ancilla with zeros.
std::optional<CMat> embed_columns(const CMat& M, int dNew) {
  if (M.cols() > dNew) return std::nullopt;
  CMat out = CMat::Zero(M.rows(), dNew);
  out.leftCols(M.cols()) = M;
  return out;
}

detail::AscentOptions ascent_options(const PowerOptions& o) {
  detail::AscentOptions a;
  a.maxEvaluations = o.maxEvaluations;
  a.tolerance = o.tolerance;
  return a;
}

void check_options(const PowerOptions& o) {
  if (o.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if ((o.ancillaA && *o.ancillaA < 1) || (o.ancillaB && *o.ancillaB < 1))
    throw std::invalid_argument("ancilla dimensions must be positive");
}

std::optional<int> min_terms(const StructureReport& r) {
  std::optional<int> m;
  if (r.controlledInBasisA) m = r.controlledInBasisA->m;
  if (r.controlledInBasisB) m = m ? std::min(*m, r.controlledInBasisB->m) : r.controlledInBasisB->m;
  return m;
}

std::vector<std::pair<std::string, double>> ke_bounds(const BipartiteUnitary& U, const StructureReport& r,
                                                      bool noAncilla) {
  std::vector<std::pair<std::string, double>> ub;
  ub.emplace_back("log2 Sch(U)", std::log2(double(r.schmidtRank)));
  ub.emplace_back("log2 min(dA^2, dB^2)", std::log2(double(std::min(U.dA * U.dA, U.dB * U.dB))));
  if (auto m = min_terms(r)) ub.emplace_back("log2 m", std::log2(double(*m)));
  if (noAncilla) ub.emplace_back("log2 min(dA, dB)", std::log2(double(std::min(U.dA, U.dB))));
  return ub;
}

// (U (x) I) on psi laid out as (dA dRA) x (dB dRB).
CMat apply_on_matrix(const CMat& U, const CMat& Psi, int dA, int dB, int dRA, int dRB) {
  return swap_middle(U * swap_middle(Psi, dA, dRA, dB, dRB), dA, dB, dRA, dRB);
}

}  // namespace

double output_entanglement(const BipartiteUnitary& U, const PureState& alpha, const PureState& beta) {
  auto split = [](const PureState& s, int d, const char* which) {
    if (s.dims.empty() || s.dims.size() > 2 || s.dims[0] != d)
      throw ShapeError(std::string(which) + " must live on the gate side with at most one ancilla");
    return s.dims.size() == 2 ? s.dims[1] : 1;
  };
  const int dRA = split(alpha, U.dA, "alpha");
  const int dRB = split(beta, U.dB, "beta");
  std::vector<int> dims{U.dA, dRA, U.dB, dRB};
  CVec psi = kron(alpha.amplitudes, beta.amplitudes);
  // Order (A, B, R_A, R_B) so that U (x) I acts as one matrix product.
  CVec moved = permute_subsystems(psi, dims, {0, 2, 1, 3});
  moved = kron(U.matrix, CMat::Identity(dRA * dRB, dRA * dRB)) * moved;
  CVec out = permute_subsystems(moved, {U.dA, U.dB, dRA, dRB}, {0, 2, 1, 3});
  return entanglement_entropy(make_state(dims, out / out.norm()), {0, 1});
}

double entanglement_gain(const BipartiteUnitary& U, const PureState& psi) {
  if (psi.dims.size() != 4 || psi.dims[0] != U.dA || psi.dims[2] != U.dB)
    throw ShapeError("psi must be on A R_A B R_B matching the gate");
  const int dRA = psi.dims[1], dRB = psi.dims[3];
  CVec moved = permute_subsystems(psi.amplitudes, psi.dims, {0, 2, 1, 3});
  moved = kron(U.matrix, CMat::Identity(dRA * dRB, dRA * dRB)) * moved;
  CVec out = permute_subsystems(moved, {U.dA, U.dB, dRA, dRB}, {0, 2, 1, 3});
  return entanglement_entropy(make_state(psi.dims, out / out.norm()), {0, 1}) - entanglement_entropy(psi, {0, 1});
}

PowerEstimate entangling_power(const BipartiteUnitary& U, const PowerOptions& opts) {
  check_options(opts);
  const StructureReport rep = classify(U);
  const int dA = U.dA, dB = U.dB;
  int dRA = opts.noAncilla ? 1 : opts.ancillaA.value_or(dA);
  int dRB = opts.noAncilla ? 1 : opts.ancillaB.value_or(dB);
  if (opts.useReductions && !opts.noAncilla) {
    if (!opts.ancillaA && rep.controlledInBasisA) dRA = 1;
    if (!opts.ancillaB && rep.controlledInBasisB) dRB = 1;
  }
  ProductProblem prob{&U.matrix, dA, dB, dRA, dRB};
  const auto aopts = ascent_options(opts);
  auto attempt = [&](int i) {
    RVec x0(prob.size());
    if (i == 0) {
      pack(max_entangled(dA, dRA), 0, x0);
      pack(max_entangled(dB, dRB), prob.beta_offset(), x0);
    } else if (i == 1) {
      pack(uniform_product(dA, dRA), 0, x0);
      pack(uniform_product(dB, dRB), prob.beta_offset(), x0);
    } else {
      Rng rng(opts.seed + static_cast<std::uint64_t>(i));
      x0 = gaussian(prob.size(), rng);
    }
    auto r = detail::maximize(prob, std::move(x0), aopts);
    return Candidate{r.value, std::move(r.x), r.evaluations, r.converged};
  };
  std::vector<Candidate> cands = detail::run_indexed<Candidate>(opts.restarts, opts.execution, attempt);
  int best = best_index(cands);

  PowerEstimate est;
  est.quantity = Quantity::KE;
  est.restartsUsed = opts.restarts;
  est.path = "product-ascent";
  for (const auto& c : cands) est.evaluations += c.evaluations;
  est.value = cands[best].value;
  est.bestRestart = best;
  est.converged = cands[best].converged;
  CMat A = unpack(cands[best].x, 0, dA, dRA);
  CMat B = unpack(cands[best].x, prob.beta_offset(), dB, dRB);
  est.ancillaA = dRA;
  est.ancillaB = dRB;

  // Reduced ancillas lose the Schmidt-strength certificate; evaluate it at full size.
  if (!opts.noAncilla && (dRA < dA || dRB < dB) && !opts.ancillaA && !opts.ancillaB) {
    ProductProblem full{&U.matrix, dA, dB, dA, dB};
    RVec x(full.size());
    pack(max_entangled(dA, dA), 0, x);
    pack(max_entangled(dB, dB), full.beta_offset(), x);
    double v = full(x, nullptr);
    if (v > est.value) {
      est.value = v;
      est.bestRestart = opts.restarts;
      est.converged = true;
      A = max_entangled(dA, dA);
      B = max_entangled(dB, dB);
      est.ancillaA = dA;
      est.ancillaB = dB;
    }
  }
  est.witness = {state_from(A, {dA, est.ancillaA}), state_from(B, {dB, est.ancillaB})};
  est.upperBounds = ke_bounds(U, rep, opts.noAncilla);
  return est;
}

namespace {

// Unit vector in the range of a projector.
CVec range_vector(const CMat& P) {
  Eigen::Index k;
  P.colwise().norm().maxCoeff(&k);
  CVec v = P.col(k);
  return v / v.norm();
}

PowerEstimate controlled_assisted(const BipartiteUnitary& U, const ControlledForm& form, const PowerOptions& opts,
                                  const PowerEstimate& ke, const StructureReport& rep) {
  const bool sideA = form.side == Side::A;
  const int dT = sideA ? U.dB : U.dA;
  const int dR = sideA ? opts.ancillaB.value_or(U.dB) : opts.ancillaA.value_or(U.dA);
  const int D = dT * dR;
  ControlledProblem prob;
  prob.D = D;
  for (const auto& t : form.terms) prob.W.push_back(kron(t, CMat::Identity(dR, dR)));
  const int m = form.m;

  // Seed from the K_E witness: weights on the control side, the other factor as a rank-one M_j.
  std::optional<RVec> seed;
  {
    const PureState& ctrl = sideA ? ke.witness[0] : ke.witness[1];
    const PureState& targ = sideA ? ke.witness[1] : ke.witness[0];
    const int dC = ctrl.dims[0];
    const int dCR = ctrl.dims.size() > 1 ? ctrl.dims[1] : 1;
    CMat C = as_matrix(ctrl.amplitudes, dC, dCR);
    CMat Tm = as_matrix(targ.amplitudes, dT, targ.dims.size() > 1 ? targ.dims[1] : 1);
    if (auto emb = embed_columns(Tm, dR)) {
      CVec beta = as_vector(*emb);
      RVec x = RVec::Zero(prob.size());
      for (int j = 0; j < m; ++j) {
        double p = (form.projectors[j] * C).squaredNorm();
        CMat T = CMat::Zero(D, D);
        T.row(0) = std::sqrt(p) * beta.adjoint();
        pack(T, 2 * static_cast<Eigen::Index>(j) * D * D, x);
      }
      seed = x;
    }
  }
  const auto aopts = ascent_options(opts);
  auto attempt = [&](int i) {
    RVec x0;
    if (i == 0 && seed) {
      x0 = *seed;
    } else {
      Rng rng(opts.seed + static_cast<std::uint64_t>(i));
      x0 = gaussian(prob.size(), rng);
    }
    auto r = detail::maximize(prob, std::move(x0), aopts);
    return Candidate{r.value, std::move(r.x), r.evaluations, r.converged};
  };
  auto cands = detail::run_indexed<Candidate>(opts.restarts, opts.execution, attempt);
  const int best = best_index(cands);

  PowerEstimate est;
  est.quantity = Quantity::KEa;
  est.path = sideA ? "controlled-A" : "controlled-B";
  est.restartsUsed = opts.restarts;
  for (const auto& c : cands) est.evaluations += c.evaluations;
  est.value = cands[best].value;
  est.bestRestart = best;
  est.converged = cands[best].converged;

  // Purify: psi = sum_j v_j (control) (x) sum_k |k>_purifier (x) T_j^dagger |k>.
  double Z = 0.0;
  std::vector<CMat> T(m);
  for (int j = 0; j < m; ++j) {
    T[j] = unpack(cands[best].x, 2 * static_cast<Eigen::Index>(j) * D * D, D, D);
    Z += T[j].squaredNorm();
  }
  const int dC = sideA ? U.dA : U.dB;
  if (sideA) {
    // Layout (A, R_A = purifier of size D, B, R_B = dR).
    CMat Psi = CMat::Zero(U.dA * D, U.dB * dR);
    for (int j = 0; j < m; ++j) {
      CVec v = range_vector(form.projectors[j]);
      for (int a = 0; a < dC; ++a)
        for (int k = 0; k < D; ++k)
          for (int x = 0; x < D; ++x) Psi(a * D + k, x) += v[a] * std::conj(T[j](k, x));
    }
    est.witness = {make_state({U.dA, D, U.dB, dR}, as_vector(Psi) / std::sqrt(Z), true)};
    est.ancillaA = D;
    est.ancillaB = dR;
  } else {
    // Layout (A, R_A = dR, B, R_B = purifier of size D).
    CMat Psi = CMat::Zero(U.dA * dR, U.dB * D);
    for (int j = 0; j < m; ++j) {
      CVec v = range_vector(form.projectors[j]);
      for (int x = 0; x < D; ++x)
        for (int b = 0; b < dC; ++b)
          for (int k = 0; k < D; ++k) Psi(x, b * D + k) += std::conj(T[j](k, x)) * v[b];
    }
    est.witness = {make_state({U.dA, dR, U.dB, D}, as_vector(Psi) / std::sqrt(Z), true)};
    est.ancillaA = dR;
    est.ancillaB = D;
  }
  est.upperBounds.emplace_back("log2 m", std::log2(double(min_terms(rep).value_or(m))));
  return est;
}

PowerEstimate general_assisted(const BipartiteUnitary& U, const PowerOptions& opts, const PowerEstimate& ke) {
  const int dA = U.dA, dB = U.dB;
  const int dRA = opts.noAncilla ? 1 : opts.ancillaA.value_or(dA);
  const int dRB = opts.noAncilla ? 1 : opts.ancillaB.value_or(dB);
  GainProblem prob{&U.matrix, dA, dB, dRA, dRB};
  std::optional<RVec> seed;
  {
    const auto& wa = ke.witness[0];
    const auto& wb = ke.witness[1];
    auto ea = embed_columns(as_matrix(wa.amplitudes, dA, wa.dims.size() > 1 ? wa.dims[1] : 1), dRA);
    auto eb = embed_columns(as_matrix(wb.amplitudes, dB, wb.dims.size() > 1 ? wb.dims[1] : 1), dRB);
    if (ea && eb) {
      CVec psi = kron(as_vector(*ea), as_vector(*eb));
      RVec x(prob.size());
      pack(as_matrix(psi, dA * dRA, dB * dRB), 0, x);
      seed = x;
    }
  }
  const auto aopts = ascent_options(opts);
  auto attempt = [&](int i) {
    RVec x0;
    if (i == 0 && seed) {
      x0 = *seed;
    } else {
      Rng rng(opts.seed + static_cast<std::uint64_t>(i));
      x0 = gaussian(prob.size(), rng);
    }
    auto r = detail::maximize(prob, std::move(x0), aopts);
    return Candidate{r.value, std::move(r.x), r.evaluations, r.converged};
  };
  auto cands = detail::run_indexed<Candidate>(opts.restarts, opts.execution, attempt);
  const int best = best_index(cands);
  PowerEstimate est;
  est.quantity = Quantity::KEa;
  est.path = "general";
  est.restartsUsed = opts.restarts;
  for (const auto& c : cands) est.evaluations += c.evaluations;
  est.value = cands[best].value;
  est.bestRestart = best;
  est.converged = cands[best].converged;
  CMat Psi = unpack(cands[best].x, 0, dA * dRA, dB * dRB);
  est.witness = {make_state({dA, dRA, dB, dRB}, as_vector(Psi), true)};
  est.ancillaA = dRA;
  est.ancillaB = dRB;
  return est;
}

}  // namespace

PowerEstimate assisted_entangling_power(const BipartiteUnitary& U, const PowerOptions& opts,
                                        const PowerEstimate* keSeed) {
  check_options(opts);
  PowerEstimate ke = keSeed ? *keSeed : entangling_power(U, opts);
  const StructureReport rep = classify(U);
  const ControlledForm* form = nullptr;
  if (!opts.noAncilla) {
    if (rep.controlledInBasisA) form = &*rep.controlledInBasisA;
    if (rep.controlledInBasisB && (!form || rep.controlledInBasisB->m < form->m)) form = &*rep.controlledInBasisB;
  }
  PowerEstimate est = form ? controlled_assisted(U, *form, opts, ke, rep) : general_assisted(U, opts, ke);
  est.upperBounds.emplace_back("2 log2 min(dA, dB)", 2.0 * std::log2(double(std::min(U.dA, U.dB))));
  return est;
}

PowerEstimate disentangling_power(const BipartiteUnitary& U, const PowerOptions& opts) {
  BipartiteUnitary Ud = U.adjoint();
  PowerEstimate est = assisted_entangling_power(Ud, opts);
  est.quantity = Quantity::Kd;
  // U lowers the entanglement of (U^dagger (x) I) psi by the found amount.
  PureState& psi = est.witness[0];
  const int dRA = psi.dims[1], dRB = psi.dims[3];
  CMat Psi = apply_on_matrix(Ud.matrix, as_matrix(psi.amplitudes, U.dA * dRA, U.dB * dRB), U.dA, U.dB, dRA, dRB);
  psi = make_state(psi.dims, as_vector(Psi), true);
  return est;
}

std::optional<CMat> sigma_witness_search(const std::vector<CMat>& terms, std::uint64_t seed) {
  const int m = static_cast<int>(terms.size());
  if (m == 0) throw ShapeError("need at least one term");
  const int d = static_cast<int>(terms[0].rows());
  for (const auto& t : terms)
    if (t.rows() != d || t.cols() != d) throw ShapeError("terms must share one square size");
  if (m == 1) return CMat(CMat::Identity(d, d) / double(d));
  std::vector<CMat> C;
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < j; ++k) C.push_back(terms[j].adjoint() * terms[k]);

  bool diagonal = true;
  for (const auto& t : terms) {
    CMat off = t;
    off.diagonal().setZero();
    if (off.cwiseAbs().maxCoeff() > 1e-12) diagonal = false;
  }
  if (diagonal) {
    std::optional<std::vector<double>> w;
    if (m == 2) {
      std::vector<cplx> z(d);
      for (int i = 0; i < d; ++i) z[i] = C[0](i, i);
      w = detail::origin_in_hull(z);
    } else {
      const int rows = 1 + 2 * static_cast<int>(C.size());
      Eigen::MatrixXd A(rows, d);
      RVec b = RVec::Zero(rows);
      A.row(0).setOnes();
      b[0] = 1.0;
      for (size_t p = 0; p < C.size(); ++p)
        for (int i = 0; i < d; ++i) {
          A(1 + 2 * p, i) = C[p](i, i).real();
          A(2 + 2 * p, i) = C[p](i, i).imag();
        }
      if (auto sol = detail::nonnegative_solution(A, b)) w = std::vector<double>(sol->data(), sol->data() + d);
    }
    if (!w) return std::nullopt;
    CMat sigma = CMat::Zero(d, d);
    for (int i = 0; i < d; ++i) sigma(i, i) = (*w)[i];
    return sigma;
  }

  // Minimise sum |Tr(sigma C_p)|^2 over sigma = T^dagger T / Tr(T^dagger T).
  auto objective = [&](const RVec& x, RVec* grad) {
    CMat T = unpack(x, 0, d, d);
    CMat M = T.adjoint() * T;
    const double Z = M.trace().real();
    double f = 0.0;
    CMat G = CMat::Zero(d, d);
    for (const auto& Cp : C) {
      cplx t = (M * Cp).trace() / Z;
      f += std::norm(t);
      if (grad) G += (std::conj(t) * (T * Cp - t * T) + t * (T * Cp.adjoint() - std::conj(t) * T)) / Z;
    }
    if (grad) {
      grad->resize(2 * d * d);
      pack(-G, 0, *grad, 2.0);
    }
    return -f;
  };
  detail::AscentOptions aopts;
  aopts.tolerance = 0.0;
  aopts.gradientTolerance = 1e-15;
  aopts.maxEvaluations = 20000;
  double bestResidual = std::numeric_limits<double>::infinity();
  CMat bestSigma;
  for (int r = 0; r < 8 && bestResidual >= 1e-8; ++r) {
    Rng rng(seed + static_cast<std::uint64_t>(r));
    auto res = detail::maximize(objective, gaussian(2 * d * d, rng), aopts);
    CMat T = unpack(res.x, 0, d, d);
    CMat sigma = T.adjoint() * T;
    sigma /= sigma.trace().real();
    double residual = 0.0;
    for (const auto& Cp : C) residual = std::max(residual, std::abs((sigma * Cp).trace()));
    if (residual < bestResidual) {
      bestResidual = residual;
      bestSigma = sigma;
    }
  }
  if (bestResidual < 1e-8) return bestSigma;
  return std::nullopt;
}

BoundsReport bounds_report(const BipartiteUnitary& U, const PowerOptions& opts) {
  BoundsReport r;
  const StructureReport rep = classify(U);
  auto dec = operator_schmidt_decompose(U);
  r.kSch = schmidt_strength(dec);
  r.log2SchmidtRank = std::log2(double(dec.rank));
  if (auto m = min_terms(rep)) r.log2m = std::log2(double(*m));
  r.twoLog2dmin = 2.0 * std::log2(double(std::min(U.dA, U.dB)));
  r.keEstimate = entangling_power(U, opts);
  r.keaEstimate = assisted_entangling_power(U, opts, &r.keEstimate);
  r.kE = r.keEstimate.value;
  r.kEa = r.keaEstimate.value;
  r.placeholders = {"K'_Ea(U)", "E'_c(U)", "E_c(U)"};
  r.conjectureProbeMargin = r.log2SchmidtRank - r.kEa;
  r.conjectureProbeHolds = r.kEa <= r.log2SchmidtRank + 2e-3;
  if (r.kSch > r.kE + 2e-3 || r.kE > r.kEa + 2e-3)
    throw InternalError("bound chain ordering violated: K_Sch <= K_E <= K_Ea fails beyond 2e-3");
  return r;
}

}  // namespace entpower
