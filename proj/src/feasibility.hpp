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

#include <optional>
#include <vector>

#include "entpower/qcore.hpp"

namespace entpower::detail {

// Nonnegative weights summing to one with sum_i w_i z_i = 0, using at most
// three points, or nothing when the origin lies outside the hull.
std::optional<std::vector<double>> origin_in_hull(const std::vector<cplx>& points, double tol = 1e-10);

// Some w >= 0 with A w = b, found by a phase-one simplex.
std::optional<RVec> nonnegative_solution(const Eigen::MatrixXd& A, const RVec& b, double tol = 1e-10);

}  // namespace entpower::detail
