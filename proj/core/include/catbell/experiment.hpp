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

// Realistic squeezed-cat source: the measured-state Wigner model, its
// single-gain reduction, fidelity to |phi2> = sqrt(2/3)|2> + sqrt(1/3)|0>,
// and Bell tests on the state split at a 50:50 beam splitter.
//
// The source model's symbols alpha, beta are renamed a_w, b_w here so they do
// not collide with displacement settings. Its natural coordinates are
// x = sqrt2 Re z, p = sqrt2 Im z, where the density integrates to one over
// dx dp; the alpha-plane density used everywhere else is twice that.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "catbell/bell.hpp"
#include "catbell/optimize.hpp"
#include "catbell/phasespace.hpp"

namespace catbell {

struct ExperimentModel {
  double g = 0.0;  // amplifier gain, only meaningful for reduced models
  double a_w = 0.0;
  double b_w = 0.0;
  double nu = 0.0;
  double delta = 0.0;

  /// a_w > 0, b_w > 0 and a_w != b_w, else DomainError.
  void validate() const;
};

/// Ideal-detector reduction: a_w = g, b_w = g - (g-1)^2/g, nu = 1/g,
/// delta = 1. DomainError unless g > 1.
ExperimentModel reduce_params(double g);

/// The source Wigner function at (x, p) in the model's own coordinates.
double w_exp(double x, double p, const ExperimentModel& model);

/// Parameters for which w_exp gives the Husimi function of the same state:
/// a_w + 1, b_w + 1, and delta scaled by a_w / (a_w + 1).
ExperimentModel to_q_params(const ExperimentModel& model);

/// exp(-kx X - kp P) (c0 + cx X + cp P + cxx X^2 + cxp X P + cpp P^2) with
/// X = (Re z)^2, P = (Im z)^2. Every source here has this shape in the
/// alpha plane, both for W and for Q.
struct EvenGaussianQuartic {
  double kx = 0.0;
  double kp = 0.0;
  double c0 = 0.0;
  double cx = 0.0;
  double cp = 0.0;
  double cxx = 0.0;
  double cxp = 0.0;
  double cpp = 0.0;

  double operator()(Complex z) const;
  double polynomial(Complex z) const;
};

/// Alpha-plane form of w_exp for the given parameters (2 w_exp(sqrt2 z)).
EvenGaussianQuartic alpha_plane_density(const ExperimentModel& model);

namespace phi2 {
inline constexpr double kC0 = 0.57735026918962576451;  // sqrt(1/3)
inline constexpr double kC2 = 0.81649658092772603273;  // sqrt(2/3)

EvenGaussianQuartic wigner_form();
EvenGaussianQuartic husimi_form();
double wigner(Complex z);
double husimi(Complex z);
}  // namespace phi2

/// pi Int f g d^2 z by the trapezoid rule on [-h, h]^2, halving the step from
/// `initial_step` until two successive values agree within tol. Equals
/// Tr(rho sigma) when f and g are alpha-plane Wigner functions. Throws
/// ConvergenceError after max_refinements halvings.
struct OverlapOptions {
  double half_width = 6.0;
  double initial_step = 0.1;
  double tol = 1e-10;
  int max_refinements = 5;
};
double wigner_overlap(const std::function<double(Complex)>& f,
                      const std::function<double(Complex)>& g,
                      const OverlapOptions& options);
/// Trapezoid integral of f over d^2 z, refined the same way.
double plane_integral(const std::function<double(Complex)>& f,
                      const OverlapOptions& options);

struct FidelityResult {
  double value = 0.0;
  /// Int w_exp dx dp before any renormalisation.
  double normalization = 1.0;
  /// True when |normalization - 1| > 1e-3 and value was divided by it.
  bool renormalized = false;
};

/// <phi2|rho_exp|phi2> for the reduced model at gain g, by phase-space
/// overlap on the grid +/-(6 sqrt(max(a_w, b_w)/2) + 1) in x and p.
FidelityResult fidelity_phi2_detail(double g);
double fidelity_phi2(double g);

/// A single-mode source with W and Q of EvenGaussianQuartic shape, mixed on a
/// 50:50 beam splitter with vacuum:
///   W(a, b) = W_src((a - b)/sqrt2) W_0((a + b)/sqrt2)
/// and likewise for Q. Husimi marginals use Gauss-Hermite quadrature on the
/// combined Gaussian, which is exact for a quartic prefactor.
class SplitSourceModel final : public PhaseSpaceModel {
 public:
  SplitSourceModel(EvenGaussianQuartic w_src, EvenGaussianQuartic q_src);

  double wigner(Complex a, Complex b) const override;
  double husimi(Complex a, Complex b) const override;
  double husimi_marginal(Mode mode, Complex point) const override;

 private:
  EvenGaussianQuartic w_src_;
  EvenGaussianQuartic q_src_;
};

SplitSourceModel split_experimental(double g);
SplitSourceModel split_phi2();

enum class IdealSource { Phi2, Sscs };

/// Optimised Bell value for rho_exp at gain g after splitting.
BellOutcome split_and_bell(double g, Scheme scheme, const OptimizerConfig& config);

/// Same for the ideal states: split |phi2>, or the split squeezed even cat
/// S(0.4)|SCS+(sqrt 2.6)>, i.e. ess-plus at per-arm gamma sqrt(1.3).
BellOutcome ideal_bell(IdealSource source, Scheme scheme,
                       const OptimizerConfig& config);

struct ThresholdRow {
  double g = 0.0;
  double fidelity = 0.0;
  double bell = 0.0;
  double normalization = 1.0;
  DisplacementSettings settings{};
};

struct ThresholdOptions {
  /// B counts as above the local bound when B - 2 > margin. On/off values
  /// never fall below 2 (every O tends to 1 at large displacement), so a
  /// strict B = 2 crossing would sit on optimiser noise.
  double margin = 1e-4;
  /// Slack allowed in the monotonicity checks.
  double monotone_tol = 1e-6;
};

struct ThresholdResult {
  std::vector<ThresholdRow> rows;
  bool fidelity_monotone = false;
  bool bell_monotone = false;
  /// Fidelity at which B - 2 crosses the margin, interpolated linearly in F.
  std::optional<double> f_star;
  /// "ok", "no crossing", or the monotonicity violation.
  std::string status;
};

/// Fidelity and optimised Bell value on a monotone g grid (each point
/// warm-started from its predecessor), then the crossing fidelity.
ThresholdResult threshold_sweep(const std::vector<double>& g_grid, Scheme scheme,
                                const OptimizerConfig& config,
                                const ThresholdOptions& options = {});

}  // namespace catbell
