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

// Wigner and Husimi functions of cat-state families.
//
// Single-mode families take the state's own coherent amplitude:
//   ScsEven/ScsOdd    N (|g> +/- |-g>)
//   SscsEven/SscsOdd  S(s) N (|g> +/- |-g>)
// Two-mode families take the per-arm amplitude g; the single-mode cat that
// feeds the 50:50 beam splitter has amplitude sqrt(2) g:
//   EssPlus/EssMinus  B (S(s)|SCS+/-(sqrt2 g)> |0>)       ("psi+/-")
//   EcsPhi+/-         N (|g,g> +/- |-g,-g>)
//   EcsPsi+/-         N (|g,-g> +/- |-g,g>)
//   SecsPhi+/-, SecsPsi+/-   S_ab(s) applied to the ECS above.

#include <array>
#include <optional>
#include <string_view>

#include "catbell/phasespace.hpp"

namespace catbell {

enum class Family {
  ScsEven,
  ScsOdd,
  SscsEven,
  SscsOdd,
  EssPlus,
  EssMinus,
  EcsPhiPlus,
  EcsPhiMinus,
  EcsPsiPlus,
  EcsPsiMinus,
  SecsPhiPlus,
  SecsPhiMinus,
  SecsPsiPlus,
  SecsPsiMinus,
};

inline constexpr std::array<Family, 14> kAllFamilies = {
    Family::ScsEven,     Family::ScsOdd,       Family::SscsEven,
    Family::SscsOdd,     Family::EssPlus,      Family::EssMinus,
    Family::EcsPhiPlus,  Family::EcsPhiMinus,  Family::EcsPsiPlus,
    Family::EcsPsiMinus, Family::SecsPhiPlus,  Family::SecsPhiMinus,
    Family::SecsPsiPlus, Family::SecsPsiMinus,
};

bool is_two_mode(Family family);
bool is_squeezed_family(Family family);
/// +1 for even / "+" families, -1 for odd / "-" families.
int family_sign(Family family);

/// Command-line style name, e.g. "ecs-phi-minus".
std::string_view family_name(Family family);
std::optional<Family> parse_family(std::string_view name);

/// A validated state description. Invariants: gamma finite and >= 0; s finite
/// and exactly 0 for unsqueezed families; gamma > 0 for odd / "-" families.
class StateSpec {
 public:
  /// Throws DomainError when an invariant is violated.
  static StateSpec make(Family family, double gamma, double s = 0.0);

  Family family() const { return family_; }
  double gamma() const { return gamma_; }
  double s() const { return s_; }
  bool two_mode() const { return is_two_mode(family_); }
  int sign() const { return family_sign(family_); }

 private:
  StateSpec(Family f, double g, double s) : family_(f), gamma_(g), s_(s) {}

  Family family_;
  double gamma_;
  double s_;
};

enum class Mode { A, B };

/// Wigner function of a single-mode family. Throws DomainError for two-mode
/// families or non-finite points.
double wigner_scs(const StateSpec& spec, Complex point);

/// Two-mode Wigner function W(a, b).
double wigner_two_mode(const StateSpec& spec, Complex a, Complex b);

/// Husimi function of a single-mode family.
double husimi_single(const StateSpec& spec, Complex point);

/// Two-mode Husimi function Q(a, b) = <a,b|rho|a,b> / pi^2.
double husimi_two_mode(const StateSpec& spec, Complex a, Complex b);

/// Marginal Husimi function of one mode, i.e. husimi_two_mode integrated over
/// the other mode's plane, evaluated in closed form.
double husimi_marginal(const StateSpec& spec, Mode mode, Complex point);

}  // namespace catbell
