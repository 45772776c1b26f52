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


#include "catbell/optimize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "catbell/error.hpp"
#include "catbell/nelder_mead.hpp"

namespace catbell {

namespace {

constexpr std::array<unsigned, 12> kHaltonBases = {2,  3,  5,  7,  11, 13,
                                                   17, 19, 23, 29, 31, 37};

// Simplex edge for the local search. Parity fringes have period about
// pi/(4 gamma), so this stays below one fringe for the amplitudes of interest.
constexpr double kSimplexStep = 0.3;

// Smallest nested start box. The functionals are flat outside the state's
// phase-space support, and a simplex started there stalls on the plateau, so
// starts cycle through the boxes h, h/2, h/4, ... down to about this size.
constexpr double kInnerBox = 0.25;

double radical_inverse(unsigned base, std::uint64_t i) {
  double inv = 1.0 / base;
  double f = inv;
  double r = 0.0;
  while (i > 0) {
    r += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return r;
}

// Uniform [0, 1) from the top 53 bits, so shifts do not depend on the
// standard library's distribution implementation.
double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

bool chsh_type(Scheme scheme) { return scheme != Scheme::Ch; }

// Cranley-Patterson shifted Halton point with `dims` coordinates in [0, 1).
std::vector<double> shifted_halton(std::uint64_t seed, int index, std::size_t dims) {
  std::mt19937_64 rng(seed);
  std::vector<double> u(dims);
  for (std::size_t j = 0; j < dims; ++j) {
    const double shift = unit_draw(rng);
    u[j] = radical_inverse(kHaltonBases[j], static_cast<std::uint64_t>(index) + 1) + shift;
    if (u[j] >= 1.0) u[j] -= 1.0;
  }
  return u;
}

// Half-width of the jitter around anchors.
constexpr double kAnchorJitter = 0.5;
constexpr std::size_t kPeaksPerMode = 3;

}  // namespace

void OptimizerConfig::validate() const {
  if (n_starts <= 0) throw DomainError("OptimizerConfig: n_starts must be > 0");
  if (n_anchor_starts < 0) {
    throw DomainError("OptimizerConfig: n_anchor_starts must be >= 0");
  }
  if (box_halfwidth && !(*box_halfwidth > 0.0 && std::isfinite(*box_halfwidth))) {
    throw DomainError("OptimizerConfig: box_halfwidth must be finite and > 0");
  }
  if (!(local_tol > 0.0)) {
    throw DomainError("OptimizerConfig: local_tol must be > 0");
  }
  if (max_iter <= 0) throw DomainError("OptimizerConfig: max_iter must be > 0");
  if (simplex_step && !(*simplex_step > 0.0 && std::isfinite(*simplex_step))) {
    throw DomainError("OptimizerConfig: simplex_step must be finite and > 0");
  }
}

double default_box_halfwidth(const StateSpec& spec) {
  return std::max(3.0, 2.0 * spec.gamma() * std::exp(std::abs(spec.s())));
}

std::vector<double> pack(const DisplacementSettings& s) {
  return {s.a.real(),       s.a.imag(),       s.a_prime.real(),
          s.a_prime.imag(), s.b.real(),       s.b.imag(),
          s.b_prime.real(), s.b_prime.imag()};
}

DisplacementSettings unpack(const std::vector<double>& x) {
  return {Complex(x[0], x[1]), Complex(x[2], x[3]), Complex(x[4], x[5]),
          Complex(x[6], x[7])};
}

int start_levels(double h) {
  if (h <= kInnerBox) return 1;
  return 1 + static_cast<int>(std::ceil(std::log2(h / kInnerBox)));
}

DisplacementSettings start_point(std::uint64_t seed, int index, double h) {
  const int level = index % start_levels(h);
  const double scale = std::ldexp(h, -level);
  const std::vector<double> u = shifted_halton(seed, index, 8);
  std::vector<double> x(8);
  for (std::size_t j = 0; j < 8; ++j) x[j] = scale * (2.0 * u[j] - 1.0);
  return unpack(x);
}

std::vector<Complex> husimi_anchors(const PhaseSpaceModel& model, Mode mode,
                                    double h) {
  const int n = std::min(61, 1 + static_cast<int>(std::ceil(2.0 * h / 0.2)));
  const double step = 2.0 * h / (n - 1);
  std::vector<double> q(static_cast<std::size_t>(n) * n);
  auto at = [&](int i, int j) -> double& { return q[static_cast<std::size_t>(i) * n + j]; };
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      at(i, j) = model.husimi_marginal(mode, Complex(-h + i * step, -h + j * step));
    }
  }
  const double q_max = *std::max_element(q.begin(), q.end());
  std::vector<std::pair<double, Complex>> peaks;
  for (int i = 1; i + 1 < n; ++i) {
    for (int j = 1; j + 1 < n; ++j) {
      const double v = at(i, j);
      if (!(v > 1e-3 * q_max)) continue;
      bool is_peak = true;
      for (int di = -1; di <= 1 && is_peak; ++di) {
        for (int dj = -1; dj <= 1; ++dj) {
          if ((di != 0 || dj != 0) && at(i + di, j + dj) > v) {
            is_peak = false;
            break;
          }
        }
      }
      if (is_peak) peaks.emplace_back(v, Complex(-h + i * step, -h + j * step));
    }
  }
  std::stable_sort(peaks.begin(), peaks.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<Complex> anchors = {Complex(0.0, 0.0)};
  for (std::size_t k = 0; k < std::min(peaks.size(), kPeaksPerMode); ++k) {
    anchors.push_back(peaks[k].second);
    anchors.push_back(-peaks[k].second);
  }
  return anchors;
}

DisplacementSettings anchored_start(std::uint64_t seed, int index,
                                    const std::vector<Complex>& anchors_a,
                                    const std::vector<Complex>& anchors_b) {
  const std::vector<double> u = shifted_halton(seed ^ 0xa5a5'a5a5'a5a5'a5a5ULL, index, 12);
  auto pick = [&](const std::vector<Complex>& anchors, double v) {
    const auto k = std::min(anchors.size() - 1,
                            static_cast<std::size_t>(v * static_cast<double>(anchors.size())));
    return anchors[k];
  };
  auto jitter = [&](std::size_t j) {
    return Complex(kAnchorJitter * (2.0 * u[j] - 1.0),
                   kAnchorJitter * (2.0 * u[j + 1] - 1.0));
  };
  const Complex ca = pick(anchors_a, u[8]);
  const Complex cb = pick(anchors_b, u[9]);
  if (index % 2 == 0) {
    return {ca + jitter(0), ca + jitter(2), cb + jitter(4), cb + jitter(6)};
  }
  return {ca + jitter(0), pick(anchors_a, u[10]) + jitter(2), cb + jitter(4),
          pick(anchors_b, u[11]) + jitter(6)};
}

namespace {

BellOutcome maximize_in_box(const PhaseSpaceModel& model, Scheme scheme,
                            const OptimizerConfig& config, double box) {
  config.validate();
  const bool use_abs = chsh_type(scheme);
  const Objective objective = [&](std::span<const double> x) {
    const DisplacementSettings s = {Complex(x[0], x[1]), Complex(x[2], x[3]),
                                    Complex(x[4], x[5]), Complex(x[6], x[7])};
    const double b = bell_value(model, scheme, s);
    return use_abs ? -std::abs(b) : -b;
  };

  NelderMeadOptions nm;
  nm.initial_step = config.simplex_step.value_or(kSimplexStep);
  nm.f_tol = config.local_tol;
  nm.max_iter = config.max_iter;

  std::vector<DisplacementSettings> starts;
  starts.reserve(static_cast<std::size_t>(config.n_starts + config.n_anchor_starts) +
                 config.warm_starts.size());
  for (int i = 0; i < config.n_starts; ++i) {
    starts.push_back(start_point(config.seed, i, box));
  }
  if (config.n_anchor_starts > 0) {
    const auto anchors_a = husimi_anchors(model, Mode::A, box);
    const auto anchors_b = husimi_anchors(model, Mode::B, box);
    for (int i = 0; i < config.n_anchor_starts; ++i) {
      starts.push_back(anchored_start(config.seed, i, anchors_a, anchors_b));
    }
  }
  starts.insert(starts.end(), config.warm_starts.begin(),
                config.warm_starts.end());

  BellOutcome out;
  out.starts_total = static_cast<int>(starts.size());
  double best_f = 0.0;
  // Ordered fold: a later start replaces the incumbent only if strictly
  // better, and only converged starts compete.
  for (std::size_t i = 0; i < starts.size(); ++i) {
    const std::vector<double> x0 = pack(starts[i]);
    const NelderMeadResult r = nelder_mead(objective, x0, nm);
    if (!r.converged) continue;
    ++out.starts_converged;
    if (out.best_start_index < 0 || r.f < best_f) {
      best_f = r.f;
      out.best_start_index = static_cast<int>(i);
      out.settings = unpack(r.x);
    }
  }
  if (out.starts_converged == 0) {
    throw ConvergenceError(
        "maximize_bell: none of the " + std::to_string(out.starts_total) +
        " starts met local_tol within max_iter");
  }
  out.signed_value = bell_value(model, scheme, out.settings);
  out.value = use_abs ? std::abs(out.signed_value) : out.signed_value;
  return out;
}

}  // namespace

BellOutcome maximize_bell(const PhaseSpaceModel& model, Scheme scheme,
                          const OptimizerConfig& config) {
  return maximize_in_box(model, scheme, config, config.box_halfwidth.value_or(3.0));
}

BellOutcome maximize_bell(const StateSpec& spec, Scheme scheme,
                          const OptimizerConfig& config) {
  const StateModel model(spec);
  return maximize_in_box(model, scheme, config,
                         config.box_halfwidth.value_or(default_box_halfwidth(spec)));
}

std::vector<SweepRow> sweep(Family family, const std::vector<double>& gamma_grid,
                            const std::vector<double>& s_grid, Scheme scheme,
                            const OptimizerConfig& config) {
  if (gamma_grid.empty() || s_grid.empty()) {
    throw DomainError("sweep: grids must be nonempty");
  }
  auto monotone = [](const std::vector<double>& g) {
    return std::is_sorted(g.begin(), g.end()) ||
           std::is_sorted(g.rbegin(), g.rend());
  };
  if (!monotone(gamma_grid) || !monotone(s_grid)) {
    throw DomainError("sweep: grids must be monotone");
  }
  config.validate();

  std::vector<SweepRow> rows;
  rows.reserve(gamma_grid.size() * s_grid.size());
  for (const double gamma : gamma_grid) {
    std::optional<DisplacementSettings> previous;
    for (const double s : s_grid) {
      SweepRow row;
      row.gamma = gamma;
      row.s = s;
      try {
        OptimizerConfig c = config;
        if (previous) c.warm_starts.push_back(*previous);
        row.outcome = maximize_bell(StateSpec::make(family, gamma, s), scheme, c);
        previous = row.outcome->settings;
      } catch (const Error& e) {
        row.error = e.what();
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

}  // namespace catbell
