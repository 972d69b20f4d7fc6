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


#include "ascent.hpp"

#include <cmath>

namespace entpower::detail {

AscentResult maximize(const Objective& f, RVec x0, const AscentOptions& opts) {
  AscentResult res;
  RVec x = std::move(x0);
  RVec g(x.size());
  double fx = f(x, &g);
  res.evaluations = 1;
  std::deque<RVec> S, Y;
  std::deque<double> rho;
  bool freshRestart = true;

  while (res.evaluations < opts.maxEvaluations) {
    if (!std::isfinite(fx) || g.norm() <= opts.gradientTolerance) {
      res.converged = true;
      break;
    }
    // Two-loop recursion on the negated problem gives an ascent direction.
    RVec q = g;
    std::vector<double> alpha(S.size());
    for (int i = static_cast<int>(S.size()) - 1; i >= 0; --i) {
      alpha[i] = rho[i] * S[i].dot(q);
      q -= alpha[i] * Y[i];
    }
    double gamma = 1.0;
    if (!S.empty()) gamma = S.back().dot(Y.back()) / Y.back().squaredNorm();
    else gamma = 1.0 / std::max(1.0, g.norm());
    RVec d = gamma * q;
    for (size_t i = 0; i < S.size(); ++i) {
      double beta = rho[i] * Y[i].dot(d);
      d += (alpha[i] - beta) * S[i];
    }
    double slope = g.dot(d);
    if (!(slope > 0)) {
      d = g / std::max(1.0, g.norm());
      slope = g.dot(d);
      S.clear();
      Y.clear();
      rho.clear();
    }
    double step = 1.0;
    RVec xn, gn(x.size());
    double fn = fx;
    bool accepted = false;
    for (int ls = 0; ls < 50 && res.evaluations < opts.maxEvaluations; ++ls) {
      xn = x + step * d;
      fn = f(xn, &gn);
      ++res.evaluations;
      if (std::isfinite(fn) && fn >= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) {
      if (!freshRestart) {
        S.clear();
        Y.clear();
        rho.clear();
        freshRestart = true;
        continue;
      }
      res.converged = true;
      break;
    }
    double gain = fn - fx;
    RVec s = xn - x;
    RVec y = g - gn;  // curvature pair of the minimisation of -f
    x = std::move(xn);
    fx = fn;
    g = gn;
    double sy = s.dot(y);
    if (sy > 1e-16 * s.norm() * y.norm()) {
      S.push_back(s);
      Y.push_back(y);
      rho.push_back(1.0 / sy);
      if (static_cast<int>(S.size()) > opts.memory) {
        S.pop_front();
        Y.pop_front();
        rho.pop_front();
      }
    }
    if (gain < opts.tolerance) {
      if (!freshRestart) {
        // One gradient-restarted iteration before declaring convergence.
        S.clear();
        Y.clear();
        rho.clear();
        freshRestart = true;
        continue;
      }
      res.converged = true;
      break;
    }
    freshRestart = false;
  }
  res.x = std::move(x);
  res.value = fx;
  return res;
}

}  // namespace entpower::detail
