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


#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "entpower/opschmidt.hpp"

namespace entpower {

enum class Side { A, B };

// U = sum_j P_j (x) U_j (or U_j (x) P_j when side is B), terms grouped up to phase.
struct ControlledForm {
  Side side = Side::A;
  std::vector<CMat> projectors;
  std::vector<CMat> terms;
  int m = 0;
  // For computational-basis control: group of each level and the phase it carries.
  std::vector<int> levelGroup;
  std::vector<cplx> levelPhase;
  bool computationalBasis = true;
};

struct StructureReport {
  int schmidtRank = 0;
  bool isPermutation = false;
  bool isComplexPermutation = false;
  std::optional<ControlledForm> controlledInBasisA;
  std::optional<ControlledForm> controlledInBasisB;
  // blockPattern[j][k] is true when the (j,k) dB x dB block is nonzero.
  std::vector<std::vector<bool>> blockPattern;
};

namespace spec {

// cnot, swap, identity, cz, toffoli, pauli-controlled, hw-controlled,
// five-by-two, gs-example. d is the local dimension where it applies.
struct Named {
  std::string name;
  int d = 2;
};
// U = sum_a |a><a| (x) perLevel[a].
struct ControlledTerms {
  std::vector<CMat> perLevel;
};
// U|i> = |perm[i]> on composite indices.
struct CompositePermutation {
  int dA = 1;
  int dB = 1;
  std::vector<int> perm;
};
// Three B-terms I, I_m+I_n+V1+V2, I_m+V3+I_q+V4 assigned to A levels.
struct Ud1 {
  int m = 0, n = 0, q = 0, p = 0;
  CMat V1, V2, V3, V4;
  std::vector<int> levelTerm{0, 1, 2};
};
// U = sum_{j,k} |j><k| (x) blocks[j*dA + k].
struct BlockTable {
  int dA = 1;
  int dB = 1;
  std::vector<CMat> blocks;
  bool requireGsProperties = true;
};
// (X^a1 Z^b1) (x) (X^a2 Z^b2) on two qudits of dimension d.
struct PauliPair {
  int d = 2;
  int a1 = 0, b1 = 0, a2 = 0, b2 = 0;
};
// First pRank levels of A carry I, the rest carry diag(e^{i theta_j}).
struct ControlledPhases {
  int dA = 2;
  int pRank = 1;
  std::vector<double> thetas;
};

}  // namespace spec

using GateSpec = std::variant<spec::Named, spec::ControlledTerms, spec::CompositePermutation, spec::Ud1,
                              spec::BlockTable, spec::PauliPair, spec::ControlledPhases>;

BipartiteUnitary build(const GateSpec& spec);

StructureReport classify(const BipartiteUnitary& U);
std::optional<ControlledForm> controlled_in_basis(const BipartiteUnitary& U, Side side);

// Generalized Pauli operators: X|k> = |k+1 mod d>, Z|k> = w^k |k>.
CMat shift_matrix(int d);
CMat clock_matrix(int d);
CMat hw_word(int d, int a, int b);
// Tensor product of single-qudit words X^{a_i} Z^{b_i}.
CMat pauli_word(int d, const std::vector<int>& a, const std::vector<int>& b);

// Clifford test over all qudits of the gate's total space.
bool clifford_check(const CMat& C, int d);
bool clifford_check(const BipartiteUnitary& C, int d);
// Smallest d >= 2 of which both dA and dB are powers.
int infer_qudit_dimension(int dA, int dB);

struct CoarseGrained {
  BipartiteUnitary gate;
  std::vector<double> thetas;
};
CoarseGrained coarse_grain_sr2(const BipartiteUnitary& U);

enum class RandomKind { HaarLike, Permutation, ComplexPermutation, Controlled };
BipartiteUnitary random_instance(RandomKind kind, int dA, int dB, std::optional<int> targetRank, std::uint64_t seed);

// Phase grouping: |<X,Y>| / (|X||Y|) within tol of one.
bool proportional(const CMat& X, const CMat& Y, double tol = 1e-8);

}  // namespace entpower
