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


#include "entpower/protocol.hpp"

#include <cmath>
#include <numbers>

#include "entpower/errors.hpp"
#include "parallel.hpp"

namespace entpower {

namespace {

cplx root_of_unity(long k, int r) { return std::polar(1.0, 2.0 * std::numbers::pi * double(k % r) / r); }

int mod(int x, int r) { return ((x % r) + r) % r; }

// Rows v_k[j] = w^{-jk} / c_j, orthonormalized in order. Row 0 stays proportional to 1/c.
CMat completion_unitary(const std::vector<double>& c) {
  const int r = static_cast<int>(c.size());
  CMat W(r, r);
  for (int k = 0; k < r; ++k) {
    for (int j = 0; j < r; ++j) W(k, j) = root_of_unity(-long(j) * k, r) / c[j];
    for (int p = 0; p < k; ++p) {
      cplx ov = W.row(p).dot(W.row(k));
      W.row(k) -= ov * W.row(p);
    }
    W.row(k).normalize();
  }
  return W;
}

CMat isometry(const std::vector<CMat>& kraus, int d) {
  const int r = static_cast<int>(kraus.size());
  CMat V(d * r, d);
  for (int a = 0; a < d; ++a)
    for (int j = 0; j < r; ++j) V.row(a * r + j) = kraus[j].row(a);
  return V;
}

CMat kraus_from(const CMat& iso, int j, int r) {
  const int d = static_cast<int>(iso.cols());
  CMat K(d, d);
  for (int a = 0; a < d; ++a) K.row(a) = iso.row(a * r + j);
  return K;
}

Branch evaluate(const ProtocolCircuit& c, const std::vector<CMat>& K, const std::vector<CMat>& L, const CVec& psi,
                int t) {
  const int r = c.r;
  Branch b;
  const int oe = t / (r * r * r), of = (t / (r * r)) % r, oa = (t / r) % r, ob = t % r;
  b.outcomes = {oe + 1, of + 1, oa + 1, ob + 1};
  const int d = c.target.dim();
  CMat V = CMat::Zero(d, d);
  // Undo the shifts: e reads oe = x + ja, f reads of = x + jb, with x the resource index.
  for (int ja = 0; ja < r; ++ja)
    for (int jb = 0; jb < r; ++jb) {
      cplx amp = c.resource.amplitudes[mod(oe - ja, r) * r + mod(of - jb, r)];
      if (amp == 0.0) continue;
      cplx coef = c.postUnitaryA(oa, ja) * c.postUnitaryB(ob, jb) * amp;
      if (coef != 0.0) V += coef * kron(K[ja], L[jb]);
    }
  b.probability = (V * psi).squaredNorm();
  const double vn = V.squaredNorm();
  if (vn > 1e-24) {
    b.fidelityToTarget = std::norm((c.target.matrix.adjoint() * V).trace()) / (d * vn);
    b.isSuccess = b.fidelityToTarget >= 1.0 - 1e-9;
  }
  b.conditionalOperator = std::move(V);
  return b;
}

}  // namespace

double BranchTable::total_probability() const {
  double s = 0.0;
  for (const auto& b : rows) s += b.probability;
  return s;
}

double BranchTable::success_probability() const {
  double s = 0.0;
  for (const auto& b : rows)
    if (b.isSuccess) s += b.probability;
  return s;
}

ProtocolCircuit build_protocol(const BipartiteUnitary& U) {
  if (U.matrix.rows() != U.dim() || U.matrix.cols() != U.dim())
    throw ShapeError("protocol: matrix shape does not match dA*dB");
  if (!is_unitary(U.matrix, 1e-8)) throw InvalidUnitary("protocol: input is not unitary");
  ProtocolCircuit c;
  c.target = U;
  c.schmidt = operator_schmidt_decompose(U);
  const int r = c.r = c.schmidt.rank;
  for (int j = 0; j < r; ++j) {
    c.krausA.push_back(c.schmidt.coefficients[j] * c.schmidt.aOps[j]);
    c.krausB.push_back(c.schmidt.coefficients[j] * c.schmidt.bOps[j]);
  }
  c.isometryA = isometry(c.krausA, U.dA);
  c.isometryB = isometry(c.krausB, U.dB);
  CVec res = CVec::Zero(r * r);
  for (int j = 0; j < r; ++j) res[j * r + j] = 1.0 / std::sqrt(double(r));
  c.resource = make_state({r, r}, res);
  c.postUnitaryA.resize(r, r);
  for (int j = 0; j < r; ++j)
    for (int k = 0; k < r; ++k) c.postUnitaryA(j, k) = root_of_unity(long(j) * k, r) / std::sqrt(double(r));
  c.postUnitaryB = completion_unitary(c.schmidt.coefficients);
  return c;
}

BranchTable enumerate_branches(const ProtocolCircuit& circuit, const PureState& input, Execution exec) {
  const int d = circuit.target.dim();
  if (input.amplitudes.size() != d) throw ShapeError("protocol: input dimension does not match dA*dB");
  if (std::abs(input.norm() - 1.0) > 1e-9) throw InvalidState("protocol: input is not normalized");
  const int r = circuit.r;
  std::vector<CMat> K(r), L(r);
  for (int j = 0; j < r; ++j) {
    K[j] = kraus_from(circuit.isometryA, j, r);
    L[j] = kraus_from(circuit.isometryB, j, r);
  }
  BranchTable table;
  table.r = r;
  table.rows = detail::run_indexed<Branch>(r * r * r * r, exec,
                                           [&](int t) { return evaluate(circuit, K, L, input.amplitudes, t); });
  return table;
}

std::vector<RunResult> simulate_runs(const ProtocolCircuit& circuit, const PureState& input, std::uint64_t seed,
                                     int count) {
  BranchTable table = enumerate_branches(circuit, input, Execution::Serial);
  std::vector<double> cumulative;
  double s = 0.0;
  for (const auto& b : table.rows) cumulative.push_back(s += b.probability);
  Rng rng(seed);
  std::vector<RunResult> out;
  out.reserve(count);
  for (int n = 0; n < count; ++n) {
    // 53 random bits, scaled by the accumulated total to absorb rounding.
    const double u = double(rng() >> 11) * 0x1p-53 * s;
    std::size_t k = 0;
    while (k + 1 < cumulative.size() && (cumulative[k] <= u || table.rows[k].probability == 0.0)) ++k;
    const Branch& b = table.rows[k];
    RunResult run;
    run.outcomes = b.outcomes;
    run.outputState = make_state({circuit.target.dA, circuit.target.dB}, b.conditionalOperator * input.amplitudes, true);
    run.success = b.isSuccess;
    out.push_back(std::move(run));
  }
  return out;
}

RunResult simulate_run(const ProtocolCircuit& circuit, const PureState& input, std::uint64_t seed) {
  return simulate_runs(circuit, input, seed, 1).front();
}

std::pair<int, int> vlm_labels(const std::array<int, 4>& o, int r) {
  const int l = mod(o[1] - o[0], r) + 1;
  int m = mod(o[2] - o[3], r);
  return {l, m == 0 ? r : m};
}

CMat vlm_operator(const OperatorSchmidt& dec, int l, int m) {
  const int r = dec.rank;
  CMat V = CMat::Zero(dec.dA * dec.dB, dec.dA * dec.dB);
  for (int j = 1; j <= r; ++j) V += root_of_unity(long(m) * j, r) * kron(dec.aOps[j - 1], dec.bOps[(j + l - 2) % r]);
  return V;
}

}  // namespace entpower
