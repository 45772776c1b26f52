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


#include "catbell/bell.hpp"

#include <string>

#include "catbell/error.hpp"

namespace catbell {

DisplacementSettings negated(const DisplacementSettings& s) {
  return {-s.a, -s.a_prime, -s.b, -s.b_prime};
}

std::string_view scheme_name(Scheme scheme) {
  switch (scheme) {
    case Scheme::ParityChsh:
      return "parity";
    case Scheme::Ch:
      return "ch";
    case Scheme::OnOffChsh:
      return "onoff";
  }
  return "?";
}

std::optional<Scheme> parse_scheme(std::string_view name) {
  if (name == "parity") return Scheme::ParityChsh;
  if (name == "ch") return Scheme::Ch;
  if (name == "onoff") return Scheme::OnOffChsh;
  return std::nullopt;
}

StateModel::StateModel(StateSpec spec) : spec_(spec) {
  if (!spec_.two_mode()) {
    throw DomainError("Bell functionals need a two-mode state, got '" +
                      std::string(family_name(spec_.family())) + "'");
  }
}

double StateModel::wigner(Complex a, Complex b) const {
  return wigner_two_mode(spec_, a, b);
}

double StateModel::husimi(Complex a, Complex b) const {
  return husimi_two_mode(spec_, a, b);
}

double StateModel::husimi_marginal(Mode mode, Complex point) const {
  return catbell::husimi_marginal(spec_, mode, point);
}

double chsh_parity(const PhaseSpaceModel& m, const DisplacementSettings& s) {
  constexpr double k = (kPi / 2.0) * (kPi / 2.0);
  return k * (m.wigner(s.a, s.b) + m.wigner(s.a_prime, s.b) +
              m.wigner(s.a, s.b_prime) - m.wigner(s.a_prime, s.b_prime));
}

double ch_value(const PhaseSpaceModel& m, const DisplacementSettings& s) {
  const double joint = m.husimi(s.a, s.b) + m.husimi(s.a_prime, s.b) +
                       m.husimi(s.a, s.b_prime) -
                       m.husimi(s.a_prime, s.b_prime);
  const double single =
      m.husimi_marginal(Mode::A, s.a) + m.husimi_marginal(Mode::B, s.b);
  return kPi * kPi * joint - kPi * single;
}

double onoff_correlation(const PhaseSpaceModel& m, Complex x, Complex y) {
  return 1.0 - 2.0 * kPi * m.husimi_marginal(Mode::A, -x) -
         2.0 * kPi * m.husimi_marginal(Mode::B, -y) +
         4.0 * kPi * kPi * m.husimi(-x, -y);
}

double chsh_onoff(const PhaseSpaceModel& m, const DisplacementSettings& s) {
  // Same combination as summing onoff_correlation four times, with each
  // marginal evaluated once.
  const double qa = m.husimi_marginal(Mode::A, -s.a);
  const double qa_p = m.husimi_marginal(Mode::A, -s.a_prime);
  const double qb = m.husimi_marginal(Mode::B, -s.b);
  const double qb_p = m.husimi_marginal(Mode::B, -s.b_prime);
  auto corr = [&](double q_x, double q_y, Complex x, Complex y) {
    return 1.0 - 2.0 * kPi * q_x - 2.0 * kPi * q_y +
           4.0 * kPi * kPi * m.husimi(-x, -y);
  };
  return corr(qa, qb, s.a, s.b) + corr(qa_p, qb, s.a_prime, s.b) +
         corr(qa, qb_p, s.a, s.b_prime) - corr(qa_p, qb_p, s.a_prime, s.b_prime);
}

double bell_value(const PhaseSpaceModel& model, Scheme scheme,
                  const DisplacementSettings& settings) {
  switch (scheme) {
    case Scheme::ParityChsh:
      return chsh_parity(model, settings);
    case Scheme::Ch:
      return ch_value(model, settings);
    case Scheme::OnOffChsh:
      return chsh_onoff(model, settings);
  }
  return 0.0;
}

double chsh_parity(const StateSpec& spec, const DisplacementSettings& s) {
  return chsh_parity(StateModel(spec), s);
}

double ch_value(const StateSpec& spec, const DisplacementSettings& s) {
  return ch_value(StateModel(spec), s);
}

double chsh_onoff(const StateSpec& spec, const DisplacementSettings& s) {
  return chsh_onoff(StateModel(spec), s);
}

}  // namespace catbell
