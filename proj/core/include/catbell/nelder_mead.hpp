// Copyright 2026 The catbell Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#pragma once

#include <functional>
#include <span>
#include <vector>

namespace catbell {

struct NelderMeadOptions {
  double initial_step = 0.5;
  /// Converged when the simplex value spread is below f_tol and every vertex
  /// lies within x_tol (max-norm) of the best one.
  double f_tol = 1e-8;
  double x_tol = 1e-6;
  /// Iteration budget shared by the initial run and all restarts.
  int max_iter = 2000;
  /// Restarts from the converged vertex with a fresh simplex; the search
  /// stops early once a restart improves by less than f_tol.
  int max_restarts = 3;
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Minimises f from x0 with the dimension-adaptive Nelder-Mead simplex
/// method. The returned value never exceeds f(x0).
NelderMeadResult nelder_mead(const Objective& f, std::span<const double> x0,
                             const NelderMeadOptions& options);

}  // namespace catbell
