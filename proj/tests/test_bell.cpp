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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "catbell/bell.hpp"
#include "catbell/error.hpp"
#include "catbell/fock_oracle.hpp"

namespace catbell {
namespace {

DisplacementSettings random_settings(std::mt19937_64& rng, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  return {Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
          Complex(u(rng), u(rng))};
}

std::vector<StateSpec> two_mode_specs() {
  std::vector<StateSpec> specs;
  for (const Family f : kAllFamilies) {
    if (!is_two_mode(f)) continue;
    specs.push_back(StateSpec::make(f, 0.9, is_squeezed_family(f) ? 0.35 : 0.0));
    specs.push_back(StateSpec::make(f, 1.4, is_squeezed_family(f) ? -0.6 : 0.0));
  }
  return specs;
}

TEST(Scheme, Names) {
  for (const Scheme s : {Scheme::ParityChsh, Scheme::Ch, Scheme::OnOffChsh}) {
    EXPECT_EQ(parse_scheme(scheme_name(s)), s);
  }
  EXPECT_FALSE(parse_scheme("chsh"));
}

TEST(ChshParity, DegenerateSettings) {
  const StateSpec spec = StateSpec::make(Family::EcsPhiMinus, 1.1);
  const Complex a(0.2, -0.1);
  const Complex b(-0.3, 0.05);
  const double v = chsh_parity(spec, {a, a, b, b});
  EXPECT_NEAR(v, 2.0 * kPi * kPi / 4.0 * wigner_two_mode(spec, a, b), 1e-15);
  EXPECT_LE(std::abs(v), 2.0);
}

TEST(ChshParity, SingleModeRejected) {
  EXPECT_THROW(chsh_parity(StateSpec::make(Family::ScsEven, 1.0), {}), DomainError);
  EXPECT_THROW(chsh_onoff(StateSpec::make(Family::SscsOdd, 1.0, 0.2), {}), DomainError);
  EXPECT_THROW(ch_value(StateSpec::make(Family::ScsOdd, 1.0), {}), DomainError);
}

TEST(ChValue, FarSettingsVanish) {
  const StateSpec spec = StateSpec::make(Family::SecsPhiPlus, 1.0, 0.3);
  const Complex far(25.0, -20.0);
  EXPECT_NEAR(ch_value(spec, {far, far, far, far}), 0.0, 1e-12);
}

TEST(ChshOnoff, FarSettingsGiveTwo) {
  const StateSpec spec = StateSpec::make(Family::EssPlus, 1.0, 0.4);
  const Complex far(25.0, -20.0);
  const double v = chsh_onoff(spec, {far, far, far, far});
  EXPECT_NEAR(v, 2.0, 1e-12);
  EXPECT_LE(v, 2.0);
}

TEST(Bell, OnoffChIdentityAtRandomSettings) {
  std::mt19937_64 rng(2024);
  for (const StateSpec& spec : two_mode_specs()) {
    for (int i = 0; i < 20; ++i) {
      const DisplacementSettings s = random_settings(rng, 2.5);
      EXPECT_NEAR(chsh_onoff(spec, s), 4.0 * ch_value(spec, negated(s)) + 2.0, 1e-10)
          << family_name(spec.family());
    }
  }
}

TEST(Bell, CorrelationTermsBounded) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (const StateSpec& spec : two_mode_specs()) {
    const StateModel model(spec);
    for (int i = 0; i < 50; ++i) {
      const Complex a(u(rng), u(rng));
      const Complex b(u(rng), u(rng));
      const double p = kPi * kPi / 4.0 * wigner_two_mode(spec, a, b);
      EXPECT_LE(std::abs(p), 1.0 + 1e-12);
      EXPECT_LE(std::abs(onoff_correlation(model, a, b)), 1.0 + 1e-12);
    }
  }
}

// Both CHSH functionals rebuilt term by term from Fock-space expectations.
TEST(Bell, FunctionalsMatchOracleExpectations) {
  const TruncationPolicy policy{70, 1e-12, 400};
  std::mt19937_64 rng(5);
  for (const Family f : {Family::EcsPsiMinus, Family::EssPlus, Family::SecsPhiMinus}) {
    const StateSpec spec = StateSpec::make(f, 1.0, is_squeezed_family(f) ? 0.4 : 0.0);
    const auto psi = std::get<TwoModeFockState>(build_state(spec, policy));
    const StateModel model(spec);
    for (int i = 0; i < 4; ++i) {
      const DisplacementSettings s = random_settings(rng, 1.5);
      auto par = [&](Complex x, Complex y) { return displaced_parity(psi, x, y, policy); };
      const double parity_oracle =
          par(s.a, s.b) + par(s.a_prime, s.b) + par(s.a, s.b_prime) - par(s.a_prime, s.b_prime);
      EXPECT_NEAR(chsh_parity(spec, s), parity_oracle, 1e-8);
      auto oo = [&](Complex x, Complex y) { return onoff_correlation(psi, x, y); };
      const double onoff_oracle =
          oo(s.a, s.b) + oo(s.a_prime, s.b) + oo(s.a, s.b_prime) - oo(s.a_prime, s.b_prime);
      EXPECT_NEAR(chsh_onoff(spec, s), onoff_oracle, 1e-8);
      EXPECT_NEAR(onoff_correlation(model, s.a, s.b), oo(s.a, s.b), 1e-8);
    }
  }
}

}  // namespace
}  // namespace catbell
