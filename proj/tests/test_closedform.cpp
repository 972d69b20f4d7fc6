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


#include "doctest.h"
#include "entpower/closedform.hpp"
#include "entpower/errors.hpp"
#include "oracle.hpp"

using namespace entpower;

namespace {

const double kPi = std::numbers::pi;
const double kBound = std::log2(9.0) - 16.0 / 9.0;

CMat sx() {
  CMat x(2, 2);
  x << 0, 1, 1, 0;
  return x;
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

PowerOptions quick(int restarts = 8) {
  PowerOptions o;
  o.restarts = restarts;
  return o;
}

// Brute force of the weight-simplex problem on a grid, test-only.
double sr2_grid(const std::vector<double>& t, int steps) {
  double best = 0.0;
  for (int a = 0; a <= steps; ++a)
    for (int b = 0; a + b <= steps; ++b) {
      double c[3] = {double(a) / steps, double(b) / steps, double(steps - a - b) / steps};
      cplx z = 0.0;
      for (int j = 0; j < 3; ++j) z += c[j] * std::polar(1.0, t[j]);
      double x = std::abs(z);
      best = std::max(best, oracle::h2({(1 - x) / 2, (1 + x) / 2}));
    }
  return best;
}

// Random local complex permutation on dimension d.
CMat random_local(int d, std::mt19937_64& rng) {
  std::vector<int> p(d);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  std::uniform_real_distribution<double> ph(0.0, 2 * kPi);
  CMat M = CMat::Zero(d, d);
  for (int i = 0; i < d; ++i) M(p[i], i) = std::polar(1.0, ph(rng));
  return M;
}

// 2 x d_B gate with U11 = U22 = I_n + 0, U12 = 0 + I, U21 = 0 + C.
BipartiteUnitary cp3_gate(int n, const CMat& C) {
  const int k = static_cast<int>(C.rows()), d = n + k;
  CMat In = CMat::Identity(n, n), Ik = CMat::Identity(k, k), Zn = CMat::Zero(n, n), Zk = CMat::Zero(k, k);
  spec::BlockTable t{2, d, {direct_sum({In, Zk}), direct_sum({Zn, Ik}), direct_sum({Zn, C}), direct_sum({In, Zk})}};
  t.requireGsProperties = false;
  return build(t);
}

}  // namespace

TEST_CASE("ke_sr2 examples") {
  CHECK(ke_sr2({0, kPi}).value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(ke_sr2({0, 0}).value) < 1e-12);
  const double c = std::sqrt(2.0) / 2;
  CHECK(ke_sr2({0, kPi / 2}).value == doctest::Approx(oracle::h2({(1 - c) / 2, (1 + c) / 2})).epsilon(1e-12));
  CHECK(ke_sr2({0, kPi / 2}).value == doctest::Approx(0.60088).epsilon(1e-5));
  CHECK_THROWS_AS(ke_sr2({}), PreconditionError);
  CHECK_THROWS_AS(ke_sr2({1.0}), PreconditionError);
}

TEST_CASE("ke_sr2 interior maximum for three balanced phases") {
  auto v = ke_sr2({0, 2 * kPi / 3, 4 * kPi / 3});
  CHECK(v.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(v.pairwiseMax == doctest::Approx(oracle::h2({0.25, 0.75})).epsilon(1e-12));
  CHECK_FALSE(v.pairwiseAgrees);
  for (double w : v.weights) CHECK(w == doctest::Approx(1.0 / 3).epsilon(1e-12));
}

TEST_CASE("property: ke_sr2 matches a simplex grid search") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (int t = 0; t < 25; ++t) {
    std::vector<double> th{u(rng), u(rng), u(rng)};
    auto v = ke_sr2(th);
    double g = sr2_grid(th, 300);
    CHECK(v.value >= g - 1e-12);
    CHECK(v.value <= g + 2e-4);
    CHECK(v.value >= v.pairwiseMax - 1e-12);
  }
}

TEST_CASE("property: ke_sr2 conjecture mode never falls below sampled weights") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi), w(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    const int n = 4 + t % 3;
    std::vector<double> th(n);
    for (auto& x : th) x = u(rng);
    auto v = ke_sr2(th);
    CHECK(v.conjectureMode);
    for (int s = 0; s < 2000; ++s) {
      std::vector<double> c(n);
      double tot = 0;
      for (auto& x : c) tot += (x = w(rng));
      cplx z = 0;
      for (int j = 0; j < n; ++j) z += c[j] / tot * std::polar(1.0, th[j]);
      double x = std::abs(z);
      REQUIRE(v.value >= oracle::h2({(1 - x) / 2, (1 + x) / 2}) - 1e-12);
    }
  }
}

TEST_CASE("ke_sr2 agrees with the optimizer on sample gates") {
  for (auto th : std::vector<std::vector<double>>{{0, kPi / 3}, {0, kPi / 2, kPi}, {0, 2 * kPi / 3, 4 * kPi / 3}}) {
    auto U = build(spec::ControlledPhases{2, 1, th});
    double numeric = entangling_power(U, quick()).value;
    double exact = ke_sr2(th).value;
    CHECK(std::abs(numeric - exact) < 2e-3);
    CHECK(numeric <= exact + 1e-6);
  }
}

TEST_CASE("permutation rank-three classifier") {
  spec::Ud1 s;
  s.n = 2;
  s.q = 2;
  s.V1 = sx();
  s.V3 = sx();
  auto v = classify_perm_sr3(build(s), quick());
  CHECK(v.value == doctest::Approx(kBound).epsilon(1e-12));
  CHECK(v.value == doctest::Approx(1.392147).epsilon(1e-6));
  REQUIRE(v.formDetected);
  CHECK(v.formDetected->p == 0);
  CHECK(v.formDetected->n == 2);
  CHECK(v.formDetected->q == 2);
  CHECK(v.formDetected->m == 0);
  CHECK(v.agrees);
  CHECK(v.numericEstimate <= kBound + 1e-6);

  spec::Ud1 g;
  g.n = 2;
  g.q = 2;
  g.p = 2;
  g.V1 = g.V2 = g.V3 = g.V4 = sx();
  auto w = classify_perm_sr3(build(g), quick());
  CHECK(w.value == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  REQUIRE(w.formDetected);
  CHECK(w.formDetected->p == 2);
  CHECK(w.agrees);

  CHECK_THROWS_AS(classify_perm_sr3_structure(build(spec::Named{"cnot", 2})), PreconditionError);
}

TEST_CASE("property: classifier is invariant under local permutations") {
  std::mt19937_64 rng(5);
  spec::Ud1 s;
  s.n = 2;
  s.q = 2;
  s.V1 = sx();
  s.V3 = sx();
  auto base = build(s);
  for (int t = 0; t < 10; ++t) {
    std::vector<int> pa(3), pb(4), qa(3), qb(4);
    for (auto* v : {&pa, &qa}) std::iota(v->begin(), v->end(), 0), std::shuffle(v->begin(), v->end(), rng);
    for (auto* v : {&pb, &qb}) std::iota(v->begin(), v->end(), 0), std::shuffle(v->begin(), v->end(), rng);
    CMat L = kron(oracle::permutation(pa), oracle::permutation(pb));
    CMat R = kron(oracle::permutation(qa), oracle::permutation(qb));
    BipartiteUnitary U{3, 4, L * base.matrix * R};
    CHECK(classify_perm_sr3_structure(U).value == doctest::Approx(kBound).epsilon(1e-12));
    CHECK(classify_perm_sr3_structure(U.swapped()).value == doctest::Approx(kBound).epsilon(1e-12));
  }
}

TEST_CASE("property: classifier agrees with the optimizer on random rank-three permutations") {
  int checked = 0;
  for (int seed = 0; seed < 12; ++seed) {
    const std::pair<int, int> shapes[3] = {{2, 3}, {2, 4}, {3, 3}};
    auto [dA, dB] = shapes[seed % 3];
    auto U = random_instance(RandomKind::Permutation, dA, dB, 3, 1000 + seed);
    auto v = classify_perm_sr3(U, quick(6));
    CHECK(v.agrees);
    ++checked;
  }
  CHECK(checked == 12);
}

TEST_CASE("ke_cp3") {
  auto ex = ke_cp3(build(spec::Named{"cp3-example", 2}));
  CHECK(ex.M == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(ex.analytic - 1.57100011) < 1e-3);
  CHECK(ex.analytic == doctest::Approx(cp3_formula(1.0)).epsilon(1e-15));
  CHECK(ex.base2Stationary == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  CHECK(ex.discrepancyFlag);
  CHECK(ex.n == 1);
  CHECK(cp3_formula(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(ke_cp3(build(spec::Named{"cnot", 2})), PreconditionError);
  // n = 1, d_B = 2 with a scalar C has Schmidt rank two.
  CMat c(1, 1);
  c(0, 0) = std::polar(1.0, 0.3);
  CHECK_THROWS_AS(ke_cp3(cp3_gate(1, c)), PreconditionError);

  for (int k = 1; k < 10; ++k) CHECK(cp3_formula(0.1 * k) >= cp3_formula(0.1 * (k - 1)));
}

TEST_CASE("explicit product input reaching log2 3 on the cp3 example") {
  CVec a = CVec::Zero(4), b = CVec::Zero(9);
  a[0] = a[3] = 1 / std::sqrt(2.0);
  b[0] = 1 / std::sqrt(3.0);
  b[4] = std::sqrt(2.0 / 3.0);
  double e = output_entanglement(build(spec::Named{"cp3-example", 2}), make_state({2, 2}, a), make_state({3, 3}, b));
  CHECK(e == doctest::Approx(std::log2(3.0)).epsilon(1e-14));
}

TEST_CASE("property: ke_cp3 is invariant under local complex permutations") {
  std::mt19937_64 rng(99);
  CMat C = CMat::Zero(3, 3);
  C(1, 0) = std::polar(1.0, 0.4);
  C(2, 1) = 1.0;
  C(0, 2) = std::polar(1.0, 1.1);
  auto base = cp3_gate(1, C);
  auto ref = ke_cp3(base);
  for (int t = 0; t < 15; ++t) {
    CMat L = kron(random_local(2, rng), random_local(4, rng));
    CMat R = kron(random_local(2, rng), random_local(4, rng));
    auto v = ke_cp3(BipartiteUnitary{2, 4, L * base.matrix * R});
    CHECK(v.M == doctest::Approx(ref.M).epsilon(1e-10));
    CHECK(v.analytic == doctest::Approx(ref.analytic).epsilon(1e-10));
  }
  CHECK(ref.M == doctest::Approx(ke_sr2({0.0, 2 * kPi / 3 + 0.5, 4 * kPi / 3 + 1.0}).value).epsilon(1e-8));
}

TEST_CASE("gcnot check") {
  auto c = gcnot_check(build(spec::Named{"cnot", 2}));
  CHECK(c.isGCNOT);
  REQUIRE(c.witness);
  CHECK((*c.witness)[0] == doctest::Approx(0.5));
  CHECK((*c.witness)[1] == doctest::Approx(0.5));
  CHECK_FALSE(gcnot_check(build(spec::ControlledPhases{2, 1, {0, kPi / 4}})).isGCNOT);
  auto w = gcnot_check(build(spec::ControlledPhases{2, 1, {0, 2 * kPi / 3, 4 * kPi / 3}}));
  CHECK(w.isGCNOT);
  REQUIRE(w.witness);
  for (double x : *w.witness) CHECK(x == doctest::Approx(1.0 / 3).epsilon(1e-12));
  CHECK(entangling_power(build(spec::ControlledPhases{2, 1, {0, 2 * kPi / 3, 4 * kPi / 3}}), quick()).value ==
        doctest::Approx(1.0).epsilon(1e-4));
  CHECK_THROWS_AS(gcnot_check(build(spec::Named{"swap", 2})), PreconditionError);
}

TEST_CASE("property: GCNOT conditions coincide") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> step(0, 11), count(2, 4);
  for (int t = 0; t < 50; ++t) {
    const int n = count(rng);
    std::vector<double> th;
    for (int j = 0; j < n; ++j) th.push_back(step(rng) * kPi / 6);
    std::sort(th.begin(), th.end());
    th.erase(std::unique(th.begin(), th.end()), th.end());
    if (th.size() < 2) th = {0, kPi / 6};
    auto U = build(spec::ControlledPhases{2, 1, th});
    bool g = gcnot_check(U).isGCNOT;
    bool k = entangling_power(U, quick(4)).value >= 1 - 1e-3;
    std::vector<CMat> terms{CMat::Identity(th.size(), th.size()), CMat::Zero(th.size(), th.size())};
    for (size_t j = 0; j < th.size(); ++j) terms[1](j, j) = std::polar(1.0, th[j]);
    bool s = sigma_witness_search(terms).has_value();
    CHECK(g == k);
    CHECK(g == s);
  }
}

TEST_CASE("property: coarse graining keeps the entangling power") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  for (int t = 0; t < 6; ++t) {
    std::vector<double> th{0.0, u(rng), u(rng)};
    auto U = build(spec::ControlledPhases{3, 1 + t % 2, th});
    auto cg = coarse_grain_sr2(U);
    CHECK(std::abs(entangling_power(U, quick(4)).value - entangling_power(cg.gate, quick(4)).value) < 2e-3);
  }
}

TEST_CASE("rank-four witness") {
  auto s = sr4_witness(build(spec::Named{"swap", 2}));
  CHECK(s.outputEntanglement == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::abs(output_entanglement(build(spec::Named{"swap", 2}), s.alpha, s.beta) - 2.0) < 1e-9);
  for (int seed = 0; seed < 5; ++seed) {
    auto U = random_instance(RandomKind::ComplexPermutation, 2, 3, 4, seed);
    auto w = sr4_witness(U);
    CHECK(std::abs(output_entanglement(U, w.alpha, w.beta) - 2.0) < 1e-9);
  }
  CHECK_THROWS_AS(sr4_witness(build(spec::Named{"cp3-example", 2})), PreconditionError);
}

TEST_CASE("Clifford powers") {
  CHECK(clifford_powers(build(spec::Named{"cnot", 2})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(clifford_powers(build(spec::Named{"swap", 3})) == doctest::Approx(2 * std::log2(3.0)).epsilon(1e-12));
  CHECK(clifford_powers(build(spec::Named{"cz", 3})) == doctest::Approx(std::log2(3.0)).epsilon(1e-12));
  CHECK_THROWS_AS(clifford_powers(build(spec::Named{"toffoli", 2})), PreconditionError);
}

TEST_CASE("symmetrisation of rank-three qubit-target gates") {
  const cplx i(0, 1);
  CMat z = CMat::Identity(2, 2), h(2, 2);
  z(1, 1) = -1.0;
  h << 1, i, 1, -i;
  h /= std::sqrt(2.0);
  auto U = build(spec::ControlledTerms{{CMat::Identity(2, 2), z, h}});
  auto s = symmetrize_dax2_sr3(U);
  CHECK((s.symmetricU.matrix - s.symmetricU.matrix.transpose()).norm() < 1e-9);
  CHECK((kron(s.leftA, s.leftB) * U.matrix * kron(s.rightA, s.rightB) - s.symmetricU.matrix).norm() < 1e-9);
  for (const CMat& m : {s.leftA, s.leftB, s.rightA, s.rightB}) CHECK(is_unitary(m, 1e-9));

  std::mt19937_64 rng(3);
  Rng r2(4);
  for (int t = 0; t < 10; ++t) {
    auto V = build(spec::ControlledTerms{{random_unitary(2, r2), random_unitary(2, r2), random_unitary(2, r2)}});
    auto sv = symmetrize_dax2_sr3(V);
    CHECK((sv.symmetricU.matrix - sv.symmetricU.matrix.transpose()).norm() < 1e-9);
    CHECK((kron(sv.leftA, sv.leftB) * V.matrix * kron(sv.rightA, sv.rightB) - sv.symmetricU.matrix).norm() < 1e-9);
  }

  auto sym = build(spec::ControlledTerms{{CMat::Identity(2, 2), z, sx()}});
  auto id = symmetrize_dax2_sr3(sym);
  CHECK(id.leftB == CMat::Identity(2, 2));
  CHECK(id.rightB == CMat::Identity(2, 2));
  CHECK(id.symmetricU.matrix == sym.matrix);
  CHECK_THROWS_AS(symmetrize_dax2_sr3(build(spec::Named{"cnot", 2})), PreconditionError);
}

TEST_CASE("rank-three permutation bound") {
  auto b = nqp220_bound();
  CHECK(b.value == doctest::Approx(1.3921472).epsilon(1e-7));
  CHECK(std::abs(shannon_entropy(b.spectrum) - b.value) < 1e-12);
  CHECK(b.value < std::log2(3.0));
}
