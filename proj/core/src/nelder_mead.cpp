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


#include "catbell/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace catbell {

namespace {

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;
};

Simplex make_simplex(const Objective& fn, const std::vector<double>& origin,
                     double f_origin, double step, int& evals) {
  const std::size_t n = origin.size();
  Simplex s;
  s.x.assign(n + 1, origin);
  s.f.assign(n + 1, f_origin);
  for (std::size_t i = 0; i < n; ++i) {
    s.x[i + 1][i] += step;
    s.f[i + 1] = fn(s.x[i + 1]);
    ++evals;
  }
  return s;
}

bool small_enough(const Simplex& s, std::size_t best, double f_tol,
                  double x_tol) {
  const auto [lo, hi] = std::minmax_element(s.f.begin(), s.f.end());
  if (*hi - *lo > f_tol) return false;
  for (const auto& v : s.x) {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (std::abs(v[j] - s.x[best][j]) > x_tol) return false;
    }
  }
  return true;
}

// One Nelder-Mead run; returns true on convergence within the budget.
bool run(const Objective& fn, Simplex& s, const NelderMeadOptions& opt,
         int& iterations, int& evals) {
  const std::size_t n = s.x.size() - 1;
  const double dn = static_cast<double>(n);
  // Gao & Han adaptive coefficients.
  const double reflect = 1.0;
  const double expand = 1.0 + 2.0 / dn;
  const double contract = 0.75 - 1.0 / (2.0 * dn);
  const double shrink = 1.0 - 1.0 / dn;

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), xr(n), xe(n), xc(n);

  while (iterations < opt.max_iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    // Stable sort keeps the fold deterministic when values tie.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return s.f[i] < s.f[j]; });
    const std::size_t best = order.front();
    const std::size_t worst = order.back();
    const std::size_t second = order[n - 1];
    if (small_enough(s, best, opt.f_tol, opt.x_tol)) return true;
    ++iterations;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const auto& v = s.x[order[k]];
      for (std::size_t j = 0; j < n; ++j) centroid[j] += v[j];
    }
    for (double& c : centroid) c /= dn;

    const auto& xw = s.x[worst];
    for (std::size_t j = 0; j < n; ++j) {
      xr[j] = centroid[j] + reflect * (centroid[j] - xw[j]);
    }
    const double fr = fn(xr);
    ++evals;

    if (fr < s.f[best]) {
      for (std::size_t j = 0; j < n; ++j) {
        xe[j] = centroid[j] + expand * (xr[j] - centroid[j]);
      }
      const double fe = fn(xe);
      ++evals;
      if (fe < fr) {
        s.x[worst] = xe;
        s.f[worst] = fe;
      } else {
        s.x[worst] = xr;
        s.f[worst] = fr;
      }
      continue;
    }
    if (fr < s.f[second]) {
      s.x[worst] = xr;
      s.f[worst] = fr;
      continue;
    }

    const bool outside = fr < s.f[worst];
    for (std::size_t j = 0; j < n; ++j) {
      xc[j] = outside ? centroid[j] + contract * (xr[j] - centroid[j])
                      : centroid[j] - contract * (centroid[j] - xw[j]);
    }
    const double fc = fn(xc);
    ++evals;
    if (fc < (outside ? fr : s.f[worst])) {
      s.x[worst] = xc;
      s.f[worst] = fc;
      continue;
    }

    const auto xb = s.x[best];
    for (std::size_t k = 0; k <= n; ++k) {
      if (k == best) continue;
      for (std::size_t j = 0; j < n; ++j) {
        s.x[k][j] = xb[j] + shrink * (s.x[k][j] - xb[j]);
      }
      s.f[k] = fn(s.x[k]);
      ++evals;
    }
  }
  return false;
}

std::size_t argmin(const std::vector<double>& f) {
  return static_cast<std::size_t>(
      std::min_element(f.begin(), f.end()) - f.begin());
}

}  // namespace

NelderMeadResult nelder_mead(const Objective& fn, std::span<const double> x0,
                             const NelderMeadOptions& opt) {
  NelderMeadResult result;
  std::vector<double> origin(x0.begin(), x0.end());
  double f_origin = fn(origin);
  result.evaluations = 1;

  Simplex s = make_simplex(fn, origin, f_origin, opt.initial_step,
                           result.evaluations);
  bool converged = run(fn, s, opt, result.iterations, result.evaluations);
  std::size_t best = argmin(s.f);

  for (int r = 0; converged && r < opt.max_restarts; ++r) {
    const double before = s.f[best];
    origin = s.x[best];
    s = make_simplex(fn, origin, before, opt.initial_step, result.evaluations);
    converged = run(fn, s, opt, result.iterations, result.evaluations);
    best = argmin(s.f);
    if (before - s.f[best] <= opt.f_tol) break;
  }

  result.x = s.x[best];
  result.f = s.f[best];
  result.converged = converged;
  return result;
}

}  // namespace catbell
