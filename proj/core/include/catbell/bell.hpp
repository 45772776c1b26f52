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

// Bell functionals evaluated from phase-space quasiprobabilities.

#include <optional>
#include <string_view>

#include "catbell/phasespace.hpp"
#include "catbell/states.hpp"

namespace catbell {

/// The four displacement settings alpha, alpha', beta, beta'.
struct DisplacementSettings {
  Complex a;
  Complex a_prime;
  Complex b;
  Complex b_prime;

  friend bool operator==(const DisplacementSettings&,
                         const DisplacementSettings&) = default;
};

DisplacementSettings negated(const DisplacementSettings& settings);

enum class Scheme { ParityChsh, Ch, OnOffChsh };

std::string_view scheme_name(Scheme scheme);
/// Accepts "parity", "ch", "onoff".
std::optional<Scheme> parse_scheme(std::string_view name);

/// Two-mode state seen through its Wigner function, Husimi function and
/// single-mode Husimi marginals. Implementations must be thread-safe for
/// concurrent const calls.
class PhaseSpaceModel {
 public:
  virtual ~PhaseSpaceModel() = default;
  virtual double wigner(Complex a, Complex b) const = 0;
  virtual double husimi(Complex a, Complex b) const = 0;
  virtual double husimi_marginal(Mode mode, Complex point) const = 0;
};

/// Adapter for the analytic cat-state families. Throws DomainError for
/// single-mode specs.
class StateModel final : public PhaseSpaceModel {
 public:
  explicit StateModel(StateSpec spec);
  const StateSpec& spec() const { return spec_; }

  double wigner(Complex a, Complex b) const override;
  double husimi(Complex a, Complex b) const override;
  double husimi_marginal(Mode mode, Complex point) const override;

 private:
  StateSpec spec_;
};

/// (pi/2)^2 [W(a,b) + W(a',b) + W(a,b') - W(a',b')], signed.
double chsh_parity(const PhaseSpaceModel& model,
                   const DisplacementSettings& settings);

/// pi^2 [Q(a,b) + Q(a',b) + Q(a,b') - Q(a',b')] - pi [Q_a(a) + Q_b(b)].
double ch_value(const PhaseSpaceModel& model,
                const DisplacementSettings& settings);

/// Correlation of displaced on/off detections:
/// 1 - 2 pi Q_a(-x) - 2 pi Q_b(-y) + 4 pi^2 Q(-x, -y).
double onoff_correlation(const PhaseSpaceModel& model, Complex x, Complex y);

/// A(a,b) + A(a',b) + A(a,b') - A(a',b'), signed.
double chsh_onoff(const PhaseSpaceModel& model,
                  const DisplacementSettings& settings);

double bell_value(const PhaseSpaceModel& model, Scheme scheme,
                  const DisplacementSettings& settings);

// StateSpec conveniences; throw DomainError for single-mode specs.
double chsh_parity(const StateSpec& spec, const DisplacementSettings& settings);
double ch_value(const StateSpec& spec, const DisplacementSettings& settings);
double chsh_onoff(const StateSpec& spec, const DisplacementSettings& settings);

}  // namespace catbell
