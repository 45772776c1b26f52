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

// Multistart maximisation of Bell functionals over the four complex
// displacement settings, and (gamma, s) sweeps.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "catbell/bell.hpp"
#include "catbell/states.hpp"

namespace catbell {

struct OptimizerConfig {
  int n_starts = 64;
  /// Additional starts placed around the peaks of the Husimi marginals (and
  /// their mirror images). On/off maxima sit where a displacement moves a
  /// Husimi lump to the origin, in basins too small for box sampling.
  int n_anchor_starts = 64;
  std::uint64_t seed = 0x2009'0c47'be11'5eedULL;
  /// Half-width of the start box per real parameter. Unset means
  /// max(3, 2 gamma e^{|s|}) for state specs and 3 for other models.
  std::optional<double> box_halfwidth;
  /// Local stopping tolerance on the objective value.
  double local_tol = 1e-8;
  /// Nelder-Mead iterations per start, restarts included.
  int max_iter = 2000;
  /// Initial simplex edge; unset means 0.3.
  std::optional<double> simplex_step;
  /// Extra start points tried after the box and anchored ones, in order.
  std::vector<DisplacementSettings> warm_starts;

  /// Throws DomainError when a field is out of range.
  void validate() const;
};

/// Best value found. For the CHSH-type schemes (parity, on/off) value is
/// max |B| and signed_value is B at the arg max; for Ch it is the signed
/// maximum of the CH combination, whose classical bound is 0.
struct BellOutcome {
  double value = 0.0;
  double signed_value = 0.0;
  DisplacementSettings settings{};
  int starts_converged = 0;
  int best_start_index = -1;
  int starts_total = 0;

  /// False when every start exhausted its iteration budget.
  bool converged() const { return starts_converged > 0; }
};

double default_box_halfwidth(const StateSpec& spec);

/// Number of nested start boxes used for outer half-width h.
int start_levels(double h);

/// Low-discrepancy start i (0-based): Halton point i + 1 in bases 2..19,
/// shifted by a seeded Cranley-Patterson rotation and scaled into the nested
/// box of half-width h / 2^(i mod start_levels(h)).
DisplacementSettings start_point(std::uint64_t seed, int index, double h);

/// 0 followed by +/- each of the (up to three) highest local maxima of the
/// mode's Husimi marginal on a grid over [-h, h]^2.
std::vector<Complex> husimi_anchors(const PhaseSpaceModel& model, Mode mode,
                                    double h);

/// Anchored start i: each setting is an anchor of its mode plus a jitter of
/// half-width 0.5 per real component. Even i share one anchor between the two
/// settings of a mode, odd i pick them independently.
DisplacementSettings anchored_start(std::uint64_t seed, int index,
                                    const std::vector<Complex>& anchors_a,
                                    const std::vector<Complex>& anchors_b);

/// The optimiser's parameter packing: (Re a, Im a, Re a', Im a', Re b, ...).
std::vector<double> pack(const DisplacementSettings& settings);
DisplacementSettings unpack(const std::vector<double>& x);

/// Deterministic multistart search. Throws ConvergenceError when no start
/// meets local_tol within max_iter.
BellOutcome maximize_bell(const PhaseSpaceModel& model, Scheme scheme,
                          const OptimizerConfig& config);

/// Same for a two-mode state spec (DomainError for single-mode specs).
BellOutcome maximize_bell(const StateSpec& spec, Scheme scheme,
                          const OptimizerConfig& config);

struct SweepRow {
  double gamma = 0.0;
  double s = 0.0;
  /// Empty when the point failed; error then holds the diagnostic.
  std::optional<BellOutcome> outcome;
  std::string error;
};

/// gamma-major, s-minor sweep. Each point after the first in a gamma row is
/// warm-started from its predecessor's arg max. Per-point failures are
/// recorded in the row and do not abort the sweep.
std::vector<SweepRow> sweep(Family family, const std::vector<double>& gamma_grid,
                            const std::vector<double>& s_grid, Scheme scheme,
                            const OptimizerConfig& config);

}  // namespace catbell
