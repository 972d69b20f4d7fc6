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

#include <exception>
#include <vector>

#include "entpower/optimize.hpp"

namespace entpower::detail {

// Evaluates f(0..n-1) into a vector. Result order never depends on the schedule.
template <class T, class F>
std::vector<T> run_indexed(int n, Execution exec, F&& f) {
  std::vector<T> out(n);
  if (exec == Execution::Serial) {
    for (int i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    try {
      out[i] = f(i);
    } catch (...) {
#pragma omp critical(entpower_run_indexed)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace entpower::detail
