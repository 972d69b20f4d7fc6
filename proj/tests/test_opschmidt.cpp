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

CMat local(const CMat& a, const CMat& b) { return kron(a, b); }

std::vector<double> sorted(std::vector<double> v) {
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

}  // namespace

TEST_CASE("decomposition examples") {
  auto id = operator_schmidt_decompose(build(spec::Named{"identity", 3}));
  CHECK(id.rank == 1);
  CHECK(id.coefficients[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(schmidt_strength(id)) < 1e-12);

  auto cnot = operator_schmidt_decompose(build(spec::Named{"cnot", 2}));
  CHECK(cnot.rank == 2);
  for (double c : cnot.coefficients) CHECK(c == doctest::Approx(1 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(schmidt_strength(cnot) == doctest::Approx(1.0).epsilon(1e-12));

  auto swap = operator_schmidt_decompose(build(spec::Named{"swap", 2}));
  CHECK(swap.rank == 4);
  for (double c : swap.coefficients) CHECK(c == doctest::Approx(0.5).epsilon(1e-12));
  for (int d = 2; d <= 4; ++d)
    CHECK(schmidt_strength(operator_schmidt_decompose(build(spec::Named{"swap", d}))) ==
          doctest::Approx(2 * std::log2(double(d))).epsilon(1e-10));
}

TEST_CASE("decomposition rejects non-unitary input") {
  BipartiteUnitary bad{2, 2, CMat::Identity(4, 4) * 1.1};
  CHECK_THROWS_AS(operator_schmidt_decompose(bad), InvalidUnitary);
  CHECK_THROWS_AS(make_unitary(2, 2, CMat::Identity(4, 4) * 1.1), InvalidUnitary);
  CHECK_THROWS_AS(make_unitary(2, 3, CMat::Identity(4, 4)), ShapeError);
}

TEST_CASE("reshuffle convention") {
  Rng rng(1);
  CMat M = random_unitary(6, rng);
  CMat R = reshuffle(M, 2, 3);
  for (int a = 0; a < 2; ++a)
    for (int ap = 0; ap < 2; ++ap)
      for (int b = 0; b < 3; ++b)
        for (int bp = 0; bp < 3; ++bp) CHECK(R(a * 2 + ap, b * 3 + bp) == M(a * 3 + b, ap * 3 + bp));
}

TEST_CASE("property: decomposition invariants on random gates") {
  Rng rng(42);
  for (int t = 0; t < 40; ++t) {
    const int dA = 2 + t % 3, dB = 2 + (t / 3) % 3;
    BipartiteUnitary U{dA, dB, random_unitary(dA * dB, rng)};
    if (t % 4 == 1) U = random_instance(RandomKind::Permutation, dA, dB, std::nullopt, t);
    if (t % 4 == 2) U = random_instance(RandomKind::Controlled, dA, dB, std::nullopt, t);
    auto dec = operator_schmidt_decompose(U);
    double sq = 0.0;
    for (double c : dec.coefficients) sq += c * c;
    CHECK(sq == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::is_sorted(dec.coefficients.rbegin(), dec.coefficients.rend()));
    for (int j = 0; j < dec.rank; ++j)
      for (int k = 0; k < dec.rank; ++k) {
        double want = j == k ? 1.0 : 0.0;
        CHECK(std::abs((dec.aOps[j].adjoint() * dec.aOps[k]).trace() / double(dA) - want) < 1e-9);
        CHECK(std::abs((dec.bOps[j].adjoint() * dec.bOps[k]).trace() / double(dB) - want) < 1e-9);
      }
    CHECK((U.matrix - reconstruct(dec)).norm() <= 1e-8);
    CHECK(dec.rank == oracle::schmidt_rank(U.matrix, dA, dB));
    CHECK(std::log2(double(dec.rank)) >= schmidt_strength(dec) - 1e-9);
  }
}

TEST_CASE("property: coefficients are local-unitary invariant") {
  Rng rng(77);
  for (int t = 0; t < 20; ++t) {
    const int dA = 2 + t % 2, dB = 2 + t % 3;
    BipartiteUnitary U = t % 2 ? random_instance(RandomKind::Permutation, dA, dB, std::nullopt, t)
                               : BipartiteUnitary{dA, dB, random_unitary(dA * dB, rng)};
    CMat L = local(random_unitary(dA, rng), random_unitary(dB, rng));
    CMat R = local(random_unitary(dA, rng), random_unitary(dB, rng));
    auto c1 = operator_schmidt_decompose(U).coefficients;
    auto c2 = operator_schmidt_decompose(BipartiteUnitary{dA, dB, L * U.matrix * R}).coefficients;
    REQUIRE(c1.size() == c2.size());
    for (size_t i = 0; i < c1.size(); ++i) CHECK(std::abs(c1[i] - c2[i]) < 1e-8);
  }
}

TEST_CASE("property: Schmidt rank is multiplicative under tensor powers") {
  Rng rng(91);
  const std::vector<std::pair<int, int>> shapes{{2, 2}, {2, 3}, {3, 2}};
  for (int t = 0; t < 12; ++t) {
    auto [dA, dB] = shapes[t % 3];
    BipartiteUnitary U = random_instance(t % 2 ? RandomKind::Permutation : RandomKind::Controlled, dA, dB,
                                         std::nullopt, 500 + t);
    int r = operator_schmidt_decompose(U).rank;
    CMat UU = oracle::square_gate(U.matrix, dA, dB);
    CHECK(schmidt_rank(UU, dA * dA, dB * dB) == r * r);
  }
}

TEST_CASE("coefficient vector of a sorted product") {
  // (CNOT (x) I) on 2 x 4 has the same coefficients as CNOT.
  BipartiteUnitary c = build(spec::Named{"cnot", 2});
  CMat ext = oracle::square_gate(c.matrix, 2, 2);
  auto dec = operator_schmidt_decompose_any(ext, 4, 4);
  CHECK(dec.rank == 4);
  CHECK(sorted(dec.coefficients).front() == doctest::Approx(0.5).epsilon(1e-12));
}
