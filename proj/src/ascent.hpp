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

#include <deque>
#include <functional>

#include "entpower/qcore.hpp"

namespace entpower::detail {

// Value and, when grad is non-null, its gradient with respect to x.
using Objective = std::function<double(const RVec& x, RVec* grad)>;

struct AscentResult {
  RVec x;
  double value = 0.0;
  int evaluations = 0;
  bool converged = false;
};

struct AscentOptions {
  int maxEvaluations = 50000;
  // Stop once one iteration gains less than this.
  double tolerance = 1e-10;
  double gradientTolerance = 1e-12;
  int memory = 12;
};

// Limited-memory BFGS ascent with backtracking line search.
AscentResult maximize(const Objective& f, RVec x0, const AscentOptions& opts);

}  // namespace entpower::detail
