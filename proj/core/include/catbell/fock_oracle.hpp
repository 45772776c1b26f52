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

// Truncated Fock-space engine. States are rebuilt from their preparation
// pipelines (cat -> squeeze -> beam splitter -> two-mode squeeze) and every
// phase-space quantity is computed from amplitudes, independently of the
// closed forms in states.hpp.
//
// Operator exponentials act on vectors through a Taylor series with
// substeps, in a working space padded until the amplitude reaching its edge
// is negligible. A pure state on one mode is a vector over |0>..|dim-1>; on
// two modes it is a dim_a x dim_b array stored a-major.

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "catbell/phasespace.hpp"
#include "catbell/states.hpp"

namespace catbell {

struct TruncationPolicy {
  /// Highest photon number kept per mode in built states.
  int n_max = 48;
  /// Largest probability mass allowed above n_max.
  double tail_bound = 1e-12;
  /// Upper limit on the padded working dimension per mode.
  int max_work_dim = 400;

  void validate() const;
};

struct FockState {
  std::vector<Complex> amp;

  int dim() const { return static_cast<int>(amp.size()); }
};

struct TwoModeFockState {
  int dim_a = 0;
  int dim_b = 0;
  std::vector<Complex> amp;

  Complex at(int i, int j) const { return amp[static_cast<std::size_t>(i) * dim_b + j]; }
  Complex& at(int i, int j) { return amp[static_cast<std::size_t>(i) * dim_b + j]; }
};

using AnyFockState = std::variant<FockState, TwoModeFockState>;
using DensityMatrix = Eigen::MatrixXcd;

double norm_squared(const FockState& psi);
double norm_squared(const TwoModeFockState& psi);

/// Probability mass on levels above n_max (on either mode for two modes).
double tail_mass(const FockState& psi, int n_max);
double tail_mass(const TwoModeFockState& psi, int n_max);

/// <phi|psi>.
Complex inner(const FockState& phi, const FockState& psi);
Complex inner(const TwoModeFockState& phi, const TwoModeFockState& psi);

/// Pure state on levels 0..n_max with the given amplitudes (zero-padded).
FockState fock_superposition(const std::vector<Complex>& amplitudes,
                             const TruncationPolicy& policy);

/// |gamma> on 0..n_max, renormalised. TruncationError when the Poisson tail
/// above n_max exceeds the policy bound.
FockState coherent(Complex gamma, const TruncationPolicy& policy);

/// N (|gamma> + sign |-gamma>), built from coherent amplitudes; sign = 0
/// gives |gamma> itself.
FockState cat(Complex gamma, int sign, const TruncationPolicy& policy);

TwoModeFockState tensor(const FockState& a, const FockState& b);

/// exp[(s/2)(a^2 - a^dag^2)] psi.
FockState apply_single_squeeze(const FockState& psi, double s,
                               const TruncationPolicy& policy);

/// exp[s(ab - a^dag b^dag)] psi.
TwoModeFockState apply_two_mode_squeeze(const TwoModeFockState& psi, double s,
                                        const TruncationPolicy& policy);

/// exp[(pi/4)(a^dag b - a b^dag)] psi: |g>|0> goes to |g/sqrt2>|-g/sqrt2>.
TwoModeFockState apply_beam_splitter(const TwoModeFockState& psi,
                                     const TruncationPolicy& policy);

/// (-1)^{n_b} on mode b, the relative phase that turns Psi-type
/// superpositions into Phi-type ones.
TwoModeFockState apply_parity_b(const TwoModeFockState& psi);

/// D(alpha) psi in a padded space, without truncation back to n_max.
FockState displace(const FockState& psi, Complex alpha,
                   const TruncationPolicy& policy);
TwoModeFockState displace(const TwoModeFockState& psi, Complex alpha,
                          Complex beta, const TruncationPolicy& policy);

/// <D(alpha) Pi D^dag(alpha)> with Pi the photon-number parity.
double displaced_parity(const FockState& psi, Complex alpha,
                        const TruncationPolicy& policy);
/// <Pi_a(alpha) Pi_b(beta)>.
double displaced_parity(const TwoModeFockState& psi, Complex alpha,
                        Complex beta, const TruncationPolicy& policy);

/// Total photon-number parity <(-1)^{n_a + n_b}>.
double parity(const FockState& psi);
double parity(const TwoModeFockState& psi);

/// W from the displaced parity: (2/pi) <Pi(alpha)>, (2/pi)^2 <Pi_a Pi_b>.
double wigner(const FockState& psi, Complex alpha,
              const TruncationPolicy& policy);
double wigner(const TwoModeFockState& psi, Complex alpha, Complex beta,
              const TruncationPolicy& policy);

/// Q from coherent-state overlaps: |<alpha|psi>|^2 / pi and the two-mode and
/// reduced-state analogues.
double husimi(const FockState& psi, Complex alpha);
double husimi(const TwoModeFockState& psi, Complex alpha, Complex beta);
double husimi_marginal(const TwoModeFockState& psi, Mode mode, Complex point);

/// <O(alpha)> with O(alpha) = 1 - 2 |-alpha><-alpha|.
double onoff_expectation(const FockState& psi, Complex alpha);
/// <O_a(x) O_b(y)>, computed from the projectors directly.
double onoff_correlation(const TwoModeFockState& psi, Complex x, Complex y);

/// Builds the state through its preparation pipeline:
///   SCS     cat(g)
///   SSCS    S(s) cat(g)
///   ESS     B (S(s) cat(sqrt2 g) x |0>)
///   ECS     B (cat(sqrt2 g) x |0>), followed by (-1)^{n_b} for Phi
///   SECS    S_ab(s) ECS
/// and truncates to n_max per mode (TruncationError if the tail is too big).
AnyFockState build_state(const StateSpec& spec, const TruncationPolicy& policy);

/// <m|D(alpha)|k> for m < rows, k < cols.
Eigen::MatrixXcd displacement_matrix(Complex alpha, int rows, int cols);

/// Square quadrature grid in the alpha plane for density reconstruction.
struct PhaseSpaceGrid {
  double half_width = 6.0;
  int points_per_axis = 121;
};

/// rho_mn = 2 Int W(alpha) <m|D(alpha) Pi D^dag(alpha)|n> d^2 alpha on levels
/// 0..dim-1, by the trapezoid rule on the grid. w uses the alpha-plane
/// normalisation (integral over d^2 alpha equals one).
DensityMatrix density_from_wigner(const std::function<double(Complex)>& w,
                                  int dim, const PhaseSpaceGrid& grid);

double husimi(const DensityMatrix& rho, Complex alpha);
/// <psi|rho|psi> (psi zero-padded or cut to rho's dimension).
double expectation(const DensityMatrix& rho, const FockState& psi);
/// Weight of rho on odd photon numbers.
double odd_weight(const DensityMatrix& rho);

// ---------------------------------------------------------------------------
// Equivalence check between the closed forms and this engine.

struct OracleCheckConfig {
  std::vector<double> gammas = {0.5, 1.0, 1.5};
  std::vector<double> squeezes = {-0.5, 0.3};
  /// Single-mode points, and two-mode points (alpha, beta).
  std::vector<Complex> points = {{0.0, 0.0}, {0.3, -0.2}, {-0.7, 0.45}, {1.1, 0.6}};
  std::vector<std::pair<Complex, Complex>> pairs = {
      {{0.0, 0.0}, {0.0, 0.0}},
      {{0.2, 0.1}, {-0.3, 0.25}},
      {{-0.6, 0.4}, {0.5, -0.35}},
      {{1.0, -0.2}, {0.9, 0.3}}};
  double tolerance = 1e-8;
  /// Anti-squeezing along a cat's own axis fattens the photon-number tail
  /// well beyond the default n_max, hence the larger cutoff here.
  TruncationPolicy policy{100, 1e-12, 400};
  /// Test hook: added to the closed-form value of every quantity of this
  /// family, so a failing comparison can be exercised end to end.
  std::optional<Family> perturb_family;
  double perturbation = 0.0;
};

struct OracleMismatch {
  Family family;
  double gamma;
  double s;
  std::string quantity;  // "W", "Q", "Qa", "Qb"
  Complex alpha;
  Complex beta;
  double analytic;
  double oracle;
};

struct OracleReport {
  int comparisons = 0;
  double max_abs_error = 0.0;
  std::vector<OracleMismatch> mismatches;

  bool passed() const { return mismatches.empty(); }
};

/// Compares W, Q and both Husimi marginals for every family on the grid.
OracleReport oracle_check(const OracleCheckConfig& config);

}  // namespace catbell
