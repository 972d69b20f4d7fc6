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
#include "entpower/errors.hpp"
#include "entpower/gates.hpp"
#include "oracle.hpp"

using namespace entpower;

namespace {

CMat sx() {
  CMat x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

CMat direct_sum(const CMat& a, const CMat& b) {
  CMat out = CMat::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

CMat proj(int d, int i) {
  CMat p = CMat::Zero(d, d);
  p(i, i) = 1.0;
  return p;
}

// |i><j| on dimension d.
CMat unit(int d, int i, int j) {
  CMat e = CMat::Zero(d, d);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

TEST_CASE("named constructors") {
  CMat cnot = CMat::Zero(4, 4);
  cnot(0, 0) = cnot(1, 1) = cnot(3, 2) = cnot(2, 3) = 1.0;
  CHECK(build(spec::Named{"cnot", 2}).matrix == cnot);
  CHECK_THROWS_AS(build(spec::Named{"no-such-gate", 2}), ConstructionError);
  auto gs = build(spec::Named{"gs-example", 2});
  CHECK(gs.dA == 2);
  CHECK(gs.dB == 3);
  CHECK(is_unitary(gs.matrix));
}

TEST_CASE("three-term permutation instance") {
  spec::Ud1 s;
  s.m = 0;
  s.n = 2;
  s.q = 2;
  s.p = 0;
  s.V1 = sx();
  s.V3 = sx();
  auto U = build(s);
  CMat I2 = CMat::Identity(2, 2);
  CMat want = kron(proj(3, 0), CMat::Identity(4, 4)) + kron(proj(3, 1), direct_sum(I2, sx())) +
              kron(proj(3, 2), direct_sum(sx(), I2));
  CHECK(U.dA == 3);
  CHECK(U.dB == 4);
  CHECK((U.matrix - want).norm() == 0.0);
  auto rep = classify(U);
  CHECK(rep.schmidtRank == 3);
  CHECK(rep.isPermutation);
  REQUIRE(rep.controlledInBasisA);
  CHECK(rep.controlledInBasisA->m == 3);
}

TEST_CASE("block table properties are enforced") {
  // Unitary but the two nonzero blocks in column 0 overlap in position.
  spec::BlockTable t{2, 2, {CMat::Identity(2, 2) / std::sqrt(2.0), CMat::Identity(2, 2) / std::sqrt(2.0),
                            CMat::Identity(2, 2) / std::sqrt(2.0), -CMat::Identity(2, 2) / std::sqrt(2.0)}};
  CHECK_THROWS_AS(build(t), ConstructionError);
  t.requireGsProperties = false;
  CHECK(is_unitary(build(t).matrix));
  spec::BlockTable broken{2, 2, {CMat::Identity(2, 2), CMat::Identity(2, 2), CMat::Zero(2, 2), CMat::Zero(2, 2)}};
  broken.requireGsProperties = false;
  CHECK_THROWS_AS(build(broken), ConstructionError);
}

TEST_CASE("classify examples") {
  auto swap = classify(build(spec::Named{"swap", 2}));
  CHECK(swap.isPermutation);
  CHECK(swap.isComplexPermutation);
  CHECK(swap.schmidtRank == 4);
  CHECK_FALSE(swap.controlledInBasisA);
  CHECK_FALSE(swap.controlledInBasisB);
  CHECK(swap.blockPattern[0][1]);

  // V = sum_j |j><j| (x) P_j with the four qutrit permutations.
  std::vector<CMat> P(4);
  P[0] = CMat::Identity(3, 3);
  P[1] = proj(3, 0) + unit(3, 1, 2) + unit(3, 2, 1);
  P[2] = proj(3, 1) + unit(3, 2, 0) + unit(3, 0, 2);
  P[3] = proj(3, 2) + unit(3, 0, 1) + unit(3, 1, 0);
  auto rep = classify(build(spec::ControlledTerms{P}));
  CHECK(rep.schmidtRank == 4);
  CHECK(rep.isPermutation);
  REQUIRE(rep.controlledInBasisA);
  CHECK(rep.controlledInBasisA->m == 4);

  auto cnot = classify(build(spec::Named{"cnot", 2}));
  REQUIRE(cnot.controlledInBasisA);
  REQUIRE(cnot.controlledInBasisB);
  CHECK(cnot.controlledInBasisA->m == 2);
  CHECK(cnot.controlledInBasisB->m == 2);
  CHECK(cnot.controlledInBasisA->computationalBasis);
  CHECK_FALSE(cnot.controlledInBasisB->computationalBasis);
}

TEST_CASE("controlled forms reconstruct the gate") {
  for (int seed = 0; seed < 20; ++seed) {
    auto U = random_instance(RandomKind::Controlled, 2 + seed % 3, 2 + seed % 2, std::nullopt, seed);
    auto rep = classify(U);
    for (const auto& f : {rep.controlledInBasisA, rep.controlledInBasisB}) {
      if (!f) continue;
      const int dC = f->side == Side::A ? U.dA : U.dB;
      CMat sum = CMat::Zero(dC, dC);
      CMat rebuilt = CMat::Zero(U.dim(), U.dim());
      for (int j = 0; j < f->m; ++j) {
        sum += f->projectors[j];
        for (int k = 0; k < f->m; ++k) {
          CMat pp = f->projectors[j] * f->projectors[k];
          CHECK((pp - (j == k ? f->projectors[j] : CMat::Zero(dC, dC))).norm() < 1e-10);
          if (j < k) CHECK_FALSE(proportional(f->terms[j], f->terms[k]));
        }
        rebuilt += f->side == Side::A ? kron(f->projectors[j], f->terms[j]) : kron(f->terms[j], f->projectors[j]);
      }
      CHECK((sum - CMat::Identity(dC, dC)).norm() < 1e-10);
      CHECK((rebuilt - U.matrix).norm() < 1e-8);
    }
  }
}

TEST_CASE("Clifford checks") {
  CHECK(clifford_check(build(spec::Named{"cnot", 2}), 2));
  CHECK_FALSE(clifford_check(build(spec::Named{"toffoli", 2}), 2));
  CHECK(clifford_check(build(spec::Named{"cz", 3}), 3));
  CHECK(clifford_check(build(spec::Named{"swap", 3}), 3));
  CHECK_THROWS_AS(clifford_check(CMat::Identity(6, 6), 2), ShapeError);
  CMat t = CMat::Identity(2, 2);
  t(1, 1) = std::polar(1.0, M_PI / 4);
  CHECK_FALSE(clifford_check(t, 2));
}

TEST_CASE("generalized Pauli words are orthogonal") {
  for (int d = 2; d <= 4; ++d)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) {
            cplx tr = (hw_word(d, a, b).adjoint() * hw_word(d, c, e)).trace();
            double want = (a == c && b == e) ? d : 0.0;
            CHECK(std::abs(tr - want) < 1e-12);
          }
}

TEST_CASE("coarse graining of rank-two controlled gates") {
  // CNOT with a three-level control, two levels carrying the identity.
  auto big = build(spec::ControlledTerms{{CMat::Identity(2, 2), CMat::Identity(2, 2), sx()}});
  auto cg = coarse_grain_sr2(big);
  CHECK(cg.gate.dA == 2);
  CHECK(cg.gate.dB == 2);
  CHECK(operator_schmidt_decompose(cg.gate).rank == 2);
  REQUIRE(cg.thetas.size() == 2);
  CHECK(std::abs(cg.thetas[0]) < 1e-12);
  CHECK(std::abs(cg.thetas[1] - M_PI) < 1e-12);

  spec::ControlledPhases ph{2, 1, {0.0, M_PI / 3, M_PI / 3, M_PI}};
  auto cg2 = coarse_grain_sr2(build(ph));
  CHECK(cg2.gate.dB == 3);
  REQUIRE(cg2.thetas.size() == 3);
  CHECK(std::abs(cg2.thetas[0]) < 1e-12);
  CHECK(std::abs(cg2.thetas[1] - M_PI / 3) < 1e-12);
  CHECK(std::abs(cg2.thetas[2] - M_PI) < 1e-12);

  auto cnot = coarse_grain_sr2(build(spec::Named{"cnot", 2}));
  CHECK(cnot.gate.dA == 2);
  CHECK(cnot.gate.dB == 2);
  CHECK_THROWS_AS(coarse_grain_sr2(build(spec::Named{"swap", 2})), PreconditionError);
}

TEST_CASE("random instances") {
  auto a = random_instance(RandomKind::Permutation, 2, 2, 4, 7);
  auto b = random_instance(RandomKind::Permutation, 2, 2, 4, 7);
  CHECK(a.matrix == b.matrix);
  CHECK(classify(a).schmidtRank == 4);
  for (int seed = 0; seed < 5; ++seed) {
    auto p = random_instance(RandomKind::Permutation, 3, 4, 3, seed);
    auto rep = classify(p);
    CHECK(rep.schmidtRank == 3);
    CHECK(rep.isPermutation);
    CHECK(is_unitary(random_instance(RandomKind::HaarLike, 2, 2, std::nullopt, seed).matrix));
  }
  CHECK_THROWS_AS(random_instance(RandomKind::Permutation, 2, 2, 3, 0), SamplingExhausted);
}

TEST_CASE("property: build and classify round trip") {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const int dA = 2 + t % 3, dB = 2 + (t / 2) % 3;
    auto cp = random_instance(RandomKind::ComplexPermutation, dA, dB, std::nullopt, t);
    auto rc = classify(cp);
    CHECK(rc.isComplexPermutation);
    auto p = random_instance(RandomKind::Permutation, dA, dB, std::nullopt, t);
    auto rp = classify(p);
    CHECK(rp.isPermutation);
    CHECK(rp.isComplexPermutation);
    std::vector<int> perm(dA * dB);
    for (int i = 0; i < dA * dB; ++i)
      for (int j = 0; j < dA * dB; ++j)
        if (std::abs(p.matrix(j, i)) > 0.5) perm[i] = j;
    CHECK(build(spec::CompositePermutation{dA, dB, perm}).matrix == p.matrix);
    auto c = random_instance(RandomKind::Controlled, dA, dB, std::nullopt, t);
    CHECK(classify(c).controlledInBasisA);
  }
}

TEST_CASE("property: controlled permutations on a qubit target have rank at most two") {
  for (int seed = 0; seed < 40; ++seed) {
    std::mt19937_64 rng(seed);
    const int dA = 2 + seed % 4;
    std::vector<CMat> terms;
    for (int a = 0; a < dA; ++a) terms.push_back(rng() % 2 ? sx() : CMat(CMat::Identity(2, 2)));
    CHECK(classify(build(spec::ControlledTerms{terms})).schmidtRank <= 2);
  }
}

TEST_CASE("property: grouped term count bounds the rank for controlled samples") {
  int seen = 0;
  for (int seed = 0; seed < 200 && seen < 30; ++seed) {
    auto U = random_instance(RandomKind::Controlled, 2 + seed % 3, 2 + seed % 2, std::nullopt, seed);
    auto rep = classify(U);
    if (rep.schmidtRank != 2 && rep.schmidtRank != 3) continue;
    ++seen;
    REQUIRE(rep.controlledInBasisA);
    CHECK(rep.controlledInBasisA->m >= rep.schmidtRank);
  }
  CHECK(seen > 0);
}
