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


#include "entpower/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "entpower/errors.hpp"

namespace entpower {

namespace {

constexpr double kEntryTol = 1e-10;

CMat pauli(int k) {
  CMat s = CMat::Zero(2, 2);
  switch (k) {
    case 0: s << 1, 0, 0, 1; break;
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
    default: s << 1, 0, 0, -1; break;
  }
  return s;
}

CMat direct_sum(const std::vector<CMat>& parts) {
  Eigen::Index n = 0;
  for (const auto& p : parts) n += p.rows();
  CMat out = CMat::Zero(n, n);
  Eigen::Index o = 0;
  for (const auto& p : parts) {
    out.block(o, o, p.rows(), p.cols()) = p;
    o += p.rows();
  }
  return out;
}

CMat controlled_from_terms(const std::vector<CMat>& perLevel) {
  if (perLevel.empty()) throw ConstructionError("controlled gate needs at least one level");
  const Eigen::Index dB = perLevel.front().rows();
  std::vector<CMat> blocks;
  for (const auto& t : perLevel) {
    if (t.rows() != dB || t.cols() != dB) throw ConstructionError("controlled terms must share one square size");
    blocks.push_back(t);
  }
  return direct_sum(blocks);
}

BipartiteUnitary finish(int dA, int dB, CMat M) {
  if (M.rows() != dA * dB || M.cols() != dA * dB) throw ConstructionError("built matrix has the wrong order");
  double defect = unitarity_defect(M);
  if (!(defect <= kEntryTol)) throw ConstructionError("built matrix is not unitary");
  return {dA, dB, std::move(M)};
}

CMat block_of(const CMat& U, int dB, int j, int k) { return U.block(j * dB, k * dB, dB, dB); }

BipartiteUnitary build_named(const spec::Named& s) {
  const int d = s.d;
  const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / d);
  if (s.name == "cnot") {
    std::vector<CMat> terms;
    for (int j = 0; j < d; ++j) terms.push_back(hw_word(d, j, 0));
    return finish(d, d, controlled_from_terms(terms));
  }
  if (s.name == "swap") {
    CMat M = CMat::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) M(b * d + a, a * d + b) = 1.0;
    return finish(d, d, M);
  }
  if (s.name == "identity") return finish(d, d, CMat::Identity(d * d, d * d));
  if (s.name == "cz") {
    CMat M = CMat::Zero(d * d, d * d);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) M(a * d + b, a * d + b) = std::pow(w, a * b);
    return finish(d, d, M);
  }
  if (s.name == "toffoli") {
    CMat cnot = build_named({"cnot", 2}).matrix;
    return finish(2, 4, controlled_from_terms({CMat::Identity(4, 4), cnot}));
  }
  if (s.name == "pauli-controlled") return finish(4, 2, controlled_from_terms({pauli(0), pauli(1), pauli(2), pauli(3)}));
  if (s.name == "hw-controlled") {
    std::vector<CMat> terms;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) terms.push_back(hw_word(d, a, b));
    return finish(d * d, d, controlled_from_terms(terms));
  }
  if (s.name == "five-by-two") {
    const double r = 1.0 / std::sqrt(2.0);
    CMat t4 = r * (pauli(1) + pauli(3));
    CMat t5 = r * (cplx(0, 1) * pauli(0) + pauli(1));
    return finish(5, 2, controlled_from_terms({pauli(0), pauli(1), pauli(3), t4, t5}));
  }
  if (s.name == "gs-example") {
    const double r = 1.0 / std::sqrt(2.0);
    CMat M = CMat::Zero(6, 6);
    M(0, 0) = r;
    M(0, 5) = r;
    M(1, 1) = 1;
    M(2, 3) = 1;
    M(3, 4) = 1;
    M(4, 0) = r;
    M(4, 5) = -r;
    M(5, 2) = 1;
    return finish(2, 3, M);
  }
  if (s.name == "cp3-example") {
    // U11 = U22 = 1 + 0_2, U12 = 0 + I_2, U21 = 0 + sigma_x.
    CMat d0 = CMat::Zero(3, 3);
    d0(0, 0) = 1;
    CMat off = CMat::Zero(3, 3);
    off(1, 1) = off(2, 2) = 1;
    CMat c = CMat::Zero(3, 3);
    c(1, 2) = c(2, 1) = 1;
    return build(spec::BlockTable{2, 3, {d0, off, c, d0}, false});
  }
  throw ConstructionError("unknown named gate '" + s.name + "'");
}

void check_gs_properties(const spec::BlockTable& t) {
  const int dA = t.dA, dB = t.dB;
  for (int k = 0; k < dA; ++k) {
    double ck = -1.0;
    for (int j = 0; j < dA; ++j) {
      double n2 = t.blocks[j * dA + k].squaredNorm();
      if (n2 <= kEntryTol) continue;
      if (ck < 0) ck = n2;
      else if (std::abs(n2 - ck) > 1e-9)
        throw ConstructionError("block table violates constant Tr(V^dagger V) within big column " + std::to_string(k));
    }
  }
  Eigen::MatrixXi used = Eigen::MatrixXi::Zero(dB, dB);
  for (const auto& V : t.blocks)
    for (int r = 0; r < dB; ++r)
      for (int c = 0; c < dB; ++c)
        if (std::abs(V(r, c)) > kEntryTol && used(r, c)++)
          throw ConstructionError("block table violates disjoint entry positions");
}

struct Builder {
  BipartiteUnitary operator()(const spec::Named& s) const { return build_named(s); }
  BipartiteUnitary operator()(const spec::ControlledTerms& s) const {
    CMat M = controlled_from_terms(s.perLevel);
    return finish(static_cast<int>(s.perLevel.size()), static_cast<int>(s.perLevel.front().rows()), M);
  }
  BipartiteUnitary operator()(const spec::CompositePermutation& s) const {
    const int n = s.dA * s.dB;
    if (static_cast<int>(s.perm.size()) != n) throw ConstructionError("permutation length must be dA*dB");
    std::vector<int> seen(n, 0);
    CMat M = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      int j = s.perm[i];
      if (j < 0 || j >= n || seen[j]++) throw ConstructionError("composite map is not a permutation");
      M(j, i) = 1.0;
    }
    return finish(s.dA, s.dB, M);
  }
  BipartiteUnitary operator()(const spec::Ud1& s) const {
    auto sized = [](const CMat& V, int k, const char* name) {
      if (k == 0) return CMat(0, 0);
      if (V.rows() != k || V.cols() != k)
        throw ConstructionError(std::string("block ") + name + " has the wrong size");
      return V;
    };
    if (s.m < 0 || s.n < 0 || s.q < 0 || s.p < 0) throw ConstructionError("block sizes must be nonnegative");
    const int dB = s.m + s.n + s.q + s.p;
    if (dB == 0) throw ConstructionError("empty B space");
    auto I = [](int k) { return CMat(CMat::Identity(k, k)); };
    CMat t1 = I(dB);
    CMat t2 = direct_sum({I(s.m), I(s.n), sized(s.V1, s.q, "V1"), sized(s.V2, s.p, "V2")});
    CMat t3 = direct_sum({I(s.m), sized(s.V3, s.n, "V3"), I(s.q), sized(s.V4, s.p, "V4")});
    const CMat* terms[3] = {&t1, &t2, &t3};
    std::vector<CMat> perLevel;
    for (int k : s.levelTerm) {
      if (k < 0 || k > 2) throw ConstructionError("level term index must be 0, 1 or 2");
      perLevel.push_back(*terms[k]);
    }
    return finish(static_cast<int>(perLevel.size()), dB, controlled_from_terms(perLevel));
  }
  BipartiteUnitary operator()(const spec::BlockTable& s) const {
    if (static_cast<int>(s.blocks.size()) != s.dA * s.dA) throw ConstructionError("block table needs dA^2 blocks");
    for (const auto& V : s.blocks)
      if (V.rows() != s.dB || V.cols() != s.dB) throw ConstructionError("blocks must be dB x dB");
    if (s.requireGsProperties) check_gs_properties(s);
    CMat M(s.dA * s.dB, s.dA * s.dB);
    for (int j = 0; j < s.dA; ++j)
      for (int k = 0; k < s.dA; ++k) M.block(j * s.dB, k * s.dB, s.dB, s.dB) = s.blocks[j * s.dA + k];
    return finish(s.dA, s.dB, M);
  }
  BipartiteUnitary operator()(const spec::PauliPair& s) const {
    return finish(s.d, s.d, kron(hw_word(s.d, s.a1, s.b1), hw_word(s.d, s.a2, s.b2)));
  }
  BipartiteUnitary operator()(const spec::ControlledPhases& s) const {
    if (s.pRank < 0 || s.pRank > s.dA) throw ConstructionError("projector rank out of range");
    const int n = static_cast<int>(s.thetas.size());
    if (n == 0) throw ConstructionError("need at least one phase");
    CMat D = CMat::Zero(n, n);
    for (int j = 0; j < n; ++j) D(j, j) = std::polar(1.0, s.thetas[j]);
    std::vector<CMat> perLevel;
    for (int a = 0; a < s.dA; ++a) perLevel.push_back(a < s.pRank ? CMat(CMat::Identity(n, n)) : D);
    return finish(s.dA, n, controlled_from_terms(perLevel));
  }
};

}  // namespace

BipartiteUnitary build(const GateSpec& spec) { return std::visit(Builder{}, spec); }

CMat shift_matrix(int d) {
  CMat X = CMat::Zero(d, d);
  for (int k = 0; k < d; ++k) X((k + 1) % d, k) = 1.0;
  return X;
}

CMat clock_matrix(int d) {
  CMat Z = CMat::Zero(d, d);
  for (int k = 0; k < d; ++k) Z(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * k / d);
  return Z;
}

CMat hw_word(int d, int a, int b) {
  a = ((a % d) + d) % d;
  b = ((b % d) + d) % d;
  // X^a Z^b |k> = w^{bk} |k+a>.
  CMat W = CMat::Zero(d, d);
  for (int k = 0; k < d; ++k) W((k + a) % d, k) = std::polar(1.0, 2.0 * std::numbers::pi * ((b * k) % d) / d);
  return W;
}

CMat pauli_word(int d, const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) throw ShapeError("exponent vectors differ in length");
  CMat P = CMat::Identity(1, 1);
  for (size_t i = 0; i < a.size(); ++i) P = kron(P, hw_word(d, a[i], b[i]));
  return P;
}

bool proportional(const CMat& X, const CMat& Y, double tol) {
  if (X.rows() != Y.rows() || X.cols() != Y.cols()) return false;
  double nx = X.norm(), ny = Y.norm();
  if (nx == 0.0 || ny == 0.0) return nx == ny;
  // Distance between X and the best phase multiple of Y, both scaled to unit norm.
  cplx ov = X.cwiseProduct(Y.conjugate()).sum();
  cplx phase = std::abs(ov) > 0 ? ov / std::abs(ov) : cplx(1.0);
  return (X / nx - phase * Y / ny).norm() * std::sqrt(nx * ny) < tol;
}

namespace {

ControlledForm group_levels(const std::vector<CMat>& perLevel, Side side) {
  ControlledForm f;
  f.side = side;
  const int dC = static_cast<int>(perLevel.size());
  for (int a = 0; a < dC; ++a) {
    int g = -1;
    for (int k = 0; k < f.m; ++k)
      if (proportional(perLevel[a], f.terms[k])) {
        g = k;
        break;
      }
    cplx phase = 1.0;
    if (g < 0) {
      g = f.m++;
      f.terms.push_back(perLevel[a]);
      f.projectors.push_back(CMat::Zero(dC, dC));
    } else {
      cplx ov = f.terms[g].cwiseProduct(perLevel[a].conjugate()).sum();
      // perLevel[a] = phase * term, with phase = <term, perLevel[a]> / |term|^2.
      phase = std::conj(ov) / f.terms[g].squaredNorm();
      phase /= std::abs(phase);
    }
    f.projectors[g](a, a) = 1.0;
    f.levelGroup.push_back(g);
    f.levelPhase.push_back(phase);
  }
  return f;
}

// Commuting terms make the gate controlled from the other side in their joint eigenbasis.
std::optional<ControlledForm> dual_form(const ControlledForm& f) {
  for (int j = 0; j < f.m; ++j)
    for (int k = j + 1; k < f.m; ++k)
      if ((f.terms[j] * f.terms[k] - f.terms[k] * f.terms[j]).norm() > 1e-9) return std::nullopt;
  std::vector<CMat> hs;
  for (const auto& t : f.terms) {
    hs.push_back((t + t.adjoint()) / 2.0);
    hs.push_back((t - t.adjoint()) / cplx(0.0, 2.0));
  }
  CMat V = common_eigenbasis(hs);
  const int dT = static_cast<int>(V.rows());
  const int dC = static_cast<int>(f.levelGroup.size());
  std::vector<CMat> diagTerms;
  for (int k = 0; k < dT; ++k) {
    CMat D = CMat::Zero(dC, dC);
    for (int a = 0; a < dC; ++a) D(a, a) = f.levelPhase[a] * V.col(k).dot(f.terms[f.levelGroup[a]] * V.col(k));
    diagTerms.push_back(D);
  }
  ControlledForm g = group_levels(diagTerms, f.side == Side::A ? Side::B : Side::A);
  g.computationalBasis = false;
  for (int j = 0; j < g.m; ++j) {
    CMat P = CMat::Zero(dT, dT);
    for (int k = 0; k < dT; ++k)
      if (g.levelGroup[k] == j) P += V.col(k) * V.col(k).adjoint();
    g.projectors[j] = P;
  }
  g.levelGroup.clear();
  g.levelPhase.clear();
  return g;
}

}  // namespace

std::optional<ControlledForm> controlled_in_basis(const BipartiteUnitary& U, Side side) {
  if (side == Side::B) {
    auto f = controlled_in_basis(U.swapped(), Side::A);
    if (f) f->side = Side::B;
    return f;
  }
  const int dA = U.dA, dB = U.dB;
  for (int j = 0; j < dA; ++j)
    for (int k = 0; k < dA; ++k)
      if (j != k && block_of(U.matrix, dB, j, k).cwiseAbs().maxCoeff() > kEntryTol) return std::nullopt;
  std::vector<CMat> perLevel;
  for (int a = 0; a < dA; ++a) perLevel.push_back(block_of(U.matrix, dB, a, a));
  return group_levels(perLevel, Side::A);
}

StructureReport classify(const BipartiteUnitary& U) {
  StructureReport r;
  r.schmidtRank = schmidt_rank(U.matrix, U.dA, U.dB);
  const CMat& M = U.matrix;
  const Eigen::Index n = M.rows();
  bool cperm = true, perm = true;
  for (Eigen::Index i = 0; i < n && cperm; ++i) {
    int rowCount = 0, colCount = 0;
    for (Eigen::Index j = 0; j < n; ++j) {
      double ar = std::abs(M(i, j)), ac = std::abs(M(j, i));
      if (ar > kEntryTol) {
        ++rowCount;
        if (std::abs(ar - 1.0) > kEntryTol) cperm = false;
        if (std::abs(M(i, j) - cplx(1.0)) > kEntryTol) perm = false;
      }
      if (ac > kEntryTol) ++colCount;
    }
    if (rowCount != 1 || colCount != 1) cperm = false;
  }
  r.isComplexPermutation = cperm;
  r.isPermutation = cperm && perm;
  r.blockPattern.assign(U.dA, std::vector<bool>(U.dA, false));
  for (int j = 0; j < U.dA; ++j)
    for (int k = 0; k < U.dA; ++k) r.blockPattern[j][k] = block_of(M, U.dB, j, k).cwiseAbs().maxCoeff() > kEntryTol;
  r.controlledInBasisA = controlled_in_basis(U, Side::A);
  r.controlledInBasisB = controlled_in_basis(U, Side::B);
  if (r.controlledInBasisA && !r.controlledInBasisB) r.controlledInBasisB = dual_form(*r.controlledInBasisA);
  if (r.controlledInBasisB && !r.controlledInBasisA) r.controlledInBasisA = dual_form(*r.controlledInBasisB);
  return r;
}

int infer_qudit_dimension(int dA, int dB) {
  auto isPower = [](int x, int d) {
    while (x > 1 && x % d == 0) x /= d;
    return x == 1;
  };
  for (int d = 2; d <= std::max(dA, dB); ++d)
    if (isPower(dA, d) && isPower(dB, d)) return d;
  throw ShapeError("local dimensions are not powers of a common qudit dimension");
}

bool clifford_check(const CMat& C, int d) {
  if (d < 2) throw ShapeError("qudit dimension must be at least 2");
  const Eigen::Index N = C.rows();
  int n = 0;
  Eigen::Index p = 1;
  while (p < N) {
    p *= d;
    ++n;
  }
  if (p != N || C.cols() != N) throw ShapeError("operator dimension is not a power of d");
  if (!is_unitary(C, 1e-8)) throw InvalidUnitary("Clifford test needs a unitary");
  // Enumerate all words once; each is a monomial matrix.
  const Eigen::Index words = N * N;
  std::vector<CMat> basis;
  basis.reserve(words);
  for (Eigen::Index w = 0; w < words; ++w) {
    std::vector<int> a(n), b(n);
    Eigen::Index x = w;
    for (int i = 0; i < n; ++i) {
      a[i] = static_cast<int>(x % d);
      x /= d;
      b[i] = static_cast<int>(x % d);
      x /= d;
    }
    basis.push_back(pauli_word(d, a, b));
  }
  for (int i = 0; i < n; ++i)
    for (int kind = 0; kind < 2; ++kind) {
      std::vector<int> a(n, 0), b(n, 0);
      (kind == 0 ? a : b)[i] = 1;
      CMat g = pauli_word(d, a, b);
      CMat M = C * g * C.adjoint();
      int unitCount = 0;
      for (const auto& P : basis) {
        double c = std::abs(P.cwiseProduct(M.conjugate()).sum()) / static_cast<double>(N);
        if (std::abs(c - 1.0) < 1e-9) ++unitCount;
      }
      if (unitCount != 1) return false;
    }
  return true;
}

bool clifford_check(const BipartiteUnitary& C, int d) { return clifford_check(C.matrix, d); }

CoarseGrained coarse_grain_sr2(const BipartiteUnitary& U) {
  if (schmidt_rank(U.matrix, U.dA, U.dB) != 2) throw PreconditionError("coarse graining needs Schmidt rank 2");
  auto f = controlled_in_basis(U, Side::A);
  if (!f) {
    auto g = controlled_in_basis(U, Side::B);
    if (!g) throw PreconditionError("coarse graining needs a gate controlled in the computational basis");
    return coarse_grain_sr2(U.swapped());
  }
  if (f->m != 2) throw PreconditionError("coarse graining needs exactly two distinct controlled terms");
  const int g0 = f->levelGroup[0];
  const CMat& U1 = f->terms[g0];
  const CMat& U2 = f->terms[1 - g0];
  CMat D = U1.adjoint() * U2;
  std::vector<cplx> eig;
  CMat off = D;
  off.diagonal().setZero();
  if (off.cwiseAbs().maxCoeff() < 1e-12) {
    for (Eigen::Index k = 0; k < D.rows(); ++k) eig.push_back(D(k, k));
  } else {
    eig = normal_eigen(D).values;
  }
  std::vector<double> thetas;
  for (cplx z : eig) {
    double t = std::arg(z);
    if (t < 0) t += 2.0 * std::numbers::pi;
    if (t >= 2.0 * std::numbers::pi - 1e-12) t = 0.0;
    bool dup = false;
    for (double s : thetas) {
      double gap = std::abs(t - s);
      if (std::min(gap, 2.0 * std::numbers::pi - gap) < 1e-9) dup = true;
    }
    if (!dup) thetas.push_back(t);
  }
  std::sort(thetas.begin(), thetas.end());
  CoarseGrained out;
  out.thetas = thetas;
  out.gate = build(spec::ControlledPhases{2, 1, thetas});
  return out;
}

BipartiteUnitary random_instance(RandomKind kind, int dA, int dB, std::optional<int> targetRank, std::uint64_t seed) {
  if (dA < 1 || dB < 1) throw ShapeError("local dimensions must be positive");
  Rng rng(seed);
  const int n = dA * dB;
  if (targetRank && (*targetRank < 1 || *targetRank > std::min(dA * dA, dB * dB)))
    throw SamplingExhausted("target Schmidt rank is outside the feasible range");
  std::uniform_real_distribution<double> unif(0.0, 2.0 * std::numbers::pi);
  auto draw = [&]() -> CMat {
    switch (kind) {
      case RandomKind::HaarLike: return random_unitary(n, rng);
      case RandomKind::Permutation:
      case RandomKind::ComplexPermutation: {
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        std::shuffle(p.begin(), p.end(), rng);
        CMat M = CMat::Zero(n, n);
        for (int i = 0; i < n; ++i)
          M(p[i], i) = kind == RandomKind::Permutation ? cplx(1.0) : std::polar(1.0, unif(rng));
        return M;
      }
      case RandomKind::Controlled: {
        std::vector<CMat> perLevel;
        if (targetRank) {
          const int r = *targetRank;
          std::vector<CMat> pool;
          for (int k = 0; k < r; ++k) pool.push_back(random_unitary(dB, rng));
          std::uniform_int_distribution<int> pick(0, r - 1);
          for (int a = 0; a < dA; ++a) perLevel.push_back(a < r ? pool[a] : pool[pick(rng)]);
        } else {
          for (int a = 0; a < dA; ++a) perLevel.push_back(random_unitary(dB, rng));
        }
        return controlled_from_terms(perLevel);
      }
    }
    return CMat();
  };
  for (int attempt = 0; attempt < 10000; ++attempt) {
    CMat M = draw();
    if (!targetRank || schmidt_rank(M, dA, dB) == *targetRank) return {dA, dB, M};
  }
  throw SamplingExhausted("no sample reached the target Schmidt rank within 10000 attempts");
}

}  // namespace entpower
