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

#include "catbell/error.hpp"
#include "catbell/experiment.hpp"
#include "catbell/fock_oracle.hpp"
#include "test_util.hpp"

namespace catbell {
namespace {

using test::plane_quadrature;

std::vector<double> gain_grid(int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(1.0 + std::pow(10.0, -4.0 + 3.0 * i / (n - 1)));
  return g;
}

TEST(ReduceParams, Substitution) {
  const ExperimentModel m = reduce_params(1.5);
  EXPECT_DOUBLE_EQ(m.a_w, 1.5);
  EXPECT_DOUBLE_EQ(m.b_w, 1.5 - 1.0 / 6.0);
  EXPECT_DOUBLE_EQ(m.nu, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(m.delta, 1.0);
  EXPECT_THROW(reduce_params(1.0), DomainError);
  EXPECT_THROW(reduce_params(0.5), DomainError);
  for (const double g : gain_grid(50)) {
    const ExperimentModel r = reduce_params(g);
    EXPECT_GT(r.b_w, 0.0);
    EXPECT_EQ(r.delta, 1.0);
  }
}

TEST(WExp, DecayAndNormalisation) {
  for (const double g : {1.001, 1.03, 1.1}) {
    const ExperimentModel m = reduce_params(g);
    EXPECT_LT(std::abs(w_exp(15.0, 0.0, m)), 1e-30);
    EXPECT_LT(std::abs(w_exp(0.0, -15.0, m)), 1e-30);
    // Over dx dp with x = sqrt2 Re z: dx dp = 2 d^2 z.
    const double norm = plane_quadrature(
        [&](Complex z) { return 2.0 * w_exp(std::sqrt(2.0) * z.real(), std::sqrt(2.0) * z.imag(), m); });
    EXPECT_NEAR(norm, 1.0, 1e-3);
    const EvenGaussianQuartic f = alpha_plane_density(m);
    const Complex z(0.4, -0.7);
    EXPECT_NEAR(f(z), 2.0 * w_exp(std::sqrt(2.0) * z.real(), std::sqrt(2.0) * z.imag(), m),
                1e-15);
  }
}

TEST(QParams, PositiveNormalisedAndSmoothedWigner) {
  for (const double g : {1.001, 1.05}) {
    const ExperimentModel m = reduce_params(g);
    const ExperimentModel mq = to_q_params(m);
    EXPECT_DOUBLE_EQ(mq.a_w, m.a_w + 1.0);
    EXPECT_DOUBLE_EQ(mq.delta, m.a_w / (m.a_w + 1.0));
    const EvenGaussianQuartic q = alpha_plane_density(mq);
    const EvenGaussianQuartic w = alpha_plane_density(m);
    EXPECT_NEAR(plane_quadrature(q), 1.0, 1e-3);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) EXPECT_GE(q(Complex(u(rng), u(rng))), 0.0);
    // Q is W smoothed by the vacuum Wigner function.
    for (const Complex z : {Complex(0.0, 0.0), Complex(0.5, -0.2), Complex(-1.1, 0.8)}) {
      const double conv = plane_quadrature(
          [&](Complex x) { return w(x) * 2.0 / kPi * std::exp(-2.0 * std::norm(z - x)); });
      EXPECT_NEAR(q(z), conv, 1e-9);
    }
  }
}

// Reconstruct rho_exp in Fock space from w_exp samples and compare the
// Husimi function, the odd-photon weight and the phi2 fidelity.
TEST(ExperimentModel, FockReconstructionAgrees) {
  for (const double g : {1.01, 1.05}) {
    const ExperimentModel m = reduce_params(g);
    const EvenGaussianQuartic w = alpha_plane_density(m);
    const EvenGaussianQuartic q = alpha_plane_density(to_q_params(m));
    const DensityMatrix rho = density_from_wigner(w, 40, {6.0, 121});
    EXPECT_NEAR(rho.trace().real(), 1.0, 1e-8);
    // Even in z removes odd coherences only; a mixed state keeps odd populations.
    for (int m = 0; m < 6; ++m) {
      for (int n = m + 1; n < 6; n += 2) EXPECT_LT(std::abs(rho(m, n)), 1e-10);
    }
    EXPECT_GT(odd_weight(rho), 0.0);
    for (const Complex z : {Complex(0.0, 0.0), Complex(0.7, 0.3), Complex(-0.2, 1.1)}) {
      EXPECT_NEAR(husimi(rho, z), q(z), 1e-8);
    }
    const TruncationPolicy policy{40, 1e-12, 400};
    const FockState phi = fock_superposition({phi2::kC0, 0.0, phi2::kC2}, policy);
    EXPECT_NEAR(expectation(rho, phi), fidelity_phi2(g), 1e-8);
  }
}

TEST(Phi2, FormsMatchFockState) {
  const TruncationPolicy policy{20, 1e-12, 400};
  const FockState phi = fock_superposition({phi2::kC0, 0.0, phi2::kC2}, policy);
  EXPECT_NEAR(phi2::kC0 * phi2::kC0 + phi2::kC2 * phi2::kC2, 1.0, 1e-15);
  for (const Complex z : {Complex(0.0, 0.0), Complex(0.4, 0.9), Complex(-1.3, 0.2)}) {
    EXPECT_NEAR(phi2::wigner(z), wigner(phi, z, policy), 1e-13);
    EXPECT_NEAR(phi2::husimi(z), husimi(phi, z), 1e-13);
  }
  // The reduced model tends to phi2 linearly in g - 1. Below g - 1 ~ 1e-5 the
  // closed form loses digits to a_w - b_w = -(g - 1)^2 / g.
  for (const double e : {1e-2, 1e-3, 1e-4}) {
    const EvenGaussianQuartic w = alpha_plane_density(reduce_params(1.0 + e));
    EXPECT_NEAR(w({0.3, -0.5}), phi2::wigner({0.3, -0.5}), 2.0 * e);
  }
}

TEST(Overlap, SelfOverlapPinsNormalisation) {
  OverlapOptions o;
  auto vac = [](Complex z) { return 2.0 / kPi * std::exp(-2.0 * std::norm(z)); };
  EXPECT_NEAR(wigner_overlap(vac, vac, o), 1.0, 1e-8);
  EXPECT_NEAR(wigner_overlap(phi2::wigner, phi2::wigner, o), 1.0, 1e-8);
  const StateSpec sscs = StateSpec::make(Family::SscsEven, std::sqrt(2.6), 0.4);
  auto ws = [&](Complex z) { return wigner_scs(sscs, z); };
  o.half_width = 8.0;
  o.initial_step = 0.05;
  EXPECT_NEAR(wigner_overlap(ws, ws, o), 1.0, 1e-8);
}

TEST(Overlap, PhiTwoSqueezedCatTwoRoutes) {
  const StateSpec sscs = StateSpec::make(Family::SscsEven, std::sqrt(2.6), 0.4);
  OverlapOptions o;
  o.half_width = 8.0;
  o.initial_step = 0.05;
  const double phase_space =
      wigner_overlap([&](Complex z) { return wigner_scs(sscs, z); }, phi2::wigner, o);
  const TruncationPolicy policy{80, 1e-12, 400};
  const FockState psi = std::get<FockState>(build_state(sscs, policy));
  const FockState phi = fock_superposition({phi2::kC0, 0.0, phi2::kC2}, policy);
  const double fock = std::norm(inner(phi, psi));
  EXPECT_NEAR(phase_space, fock, 1e-8);
  EXPECT_NEAR(fock, 0.98992, 1e-5);
}

TEST(Fidelity, RangeAndMonotonicity) {
  double prev = 2.0;
  double lo = 1.0;
  double hi = 0.0;
  for (const double g : gain_grid(50)) {
    const FidelityResult r = fidelity_phi2_detail(g);
    EXPECT_FALSE(r.renormalized);
    EXPECT_NEAR(r.normalization, 1.0, 1e-3);
    EXPECT_GE(r.value, 0.0);
    EXPECT_LE(r.value, 1.0 + 1e-6);
    EXPECT_LT(r.value, prev);
    prev = r.value;
    lo = std::min(lo, r.value);
    hi = std::max(hi, r.value);
  }
  EXPECT_LE(lo, 0.85);
  EXPECT_GE(hi, 0.999);
  EXPECT_THROW(fidelity_phi2(1.0), DomainError);
}

TEST(SplitSource, MatchesBeamSplitterFormAndQuadrature) {
  const SplitSourceModel model = split_experimental(1.02);
  const ExperimentModel m = reduce_params(1.02);
  const EvenGaussianQuartic w = alpha_plane_density(m);
  const EvenGaussianQuartic q = alpha_plane_density(to_q_params(m));
  const Complex a(0.4, -0.3);
  const Complex b(-0.2, 0.6);
  const double r2 = std::sqrt(2.0);
  EXPECT_NEAR(model.wigner(a, b),
              w((a - b) / r2) * 2.0 / kPi * std::exp(-2.0 * std::norm((a + b) / r2)), 1e-15);
  EXPECT_NEAR(model.husimi(a, b), q((a - b) / r2) * std::exp(-std::norm((a + b) / r2)) / kPi,
              1e-15);
  for (const Mode mode : {Mode::A, Mode::B}) {
    const double numeric = plane_quadrature([&](Complex x) {
      return mode == Mode::A ? model.husimi(a, x) : model.husimi(x, a);
    });
    EXPECT_NEAR(model.husimi_marginal(mode, a), numeric, 1e-12);
  }
}

TEST(SplitSource, OnoffChIdentity) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (const double g : {1.001, 1.04}) {
    const SplitSourceModel model = split_experimental(g);
    for (int i = 0; i < 20; ++i) {
      const DisplacementSettings s{Complex(u(rng), u(rng)), Complex(u(rng), u(rng)),
                                   Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
      EXPECT_NEAR(chsh_onoff(model, s), 4.0 * ch_value(model, negated(s)) + 2.0, 1e-10);
    }
  }
}

TEST(IdealBell, PhiTwoAndSqueezedCat) {
  const OptimizerConfig c;
  EXPECT_NEAR(ideal_bell(IdealSource::Phi2, Scheme::ParityChsh, c).value, 2.401, 0.005);
  EXPECT_NEAR(ideal_bell(IdealSource::Phi2, Scheme::OnOffChsh, c).value, 2.006, 0.005);
  EXPECT_NEAR(ideal_bell(IdealSource::Sscs, Scheme::ParityChsh, c).value, 2.419, 0.005);
  EXPECT_NEAR(ideal_bell(IdealSource::Sscs, Scheme::OnOffChsh, c).value, 2.033, 0.005);
}

TEST(SplitAndBell, AtFidelityNinetyFive) {
  // F(g) = 0.95 near g = 1.0213 (see Fidelity.RangeAndMonotonicity).
  const double g = 1.0213;
  EXPECT_NEAR(fidelity_phi2(g), 0.95, 0.002);
  const OptimizerConfig c;
  const double parity = split_and_bell(g, Scheme::ParityChsh, c).value;
  const double onoff = split_and_bell(g, Scheme::OnOffChsh, c).value;
  EXPECT_GT(parity, 2.0);
  // On/off values never drop below 2 (far displacements give every O -> 1);
  // the mixed state shows no violation beyond that limit.
  EXPECT_LE(onoff, 2.0 + 1e-6);
  EXPECT_GE(parity, onoff);
}

TEST(ThresholdSweep, CrossingsAndDiagnostics) {
  OptimizerConfig c;
  const auto grid = gain_grid(12);
  const ThresholdResult parity = threshold_sweep(grid, Scheme::ParityChsh, c);
  EXPECT_EQ(parity.status, "ok");
  EXPECT_TRUE(parity.fidelity_monotone);
  EXPECT_TRUE(parity.bell_monotone);
  ASSERT_TRUE(parity.f_star);
  EXPECT_NEAR(*parity.f_star, 0.916, 0.005);
  // B(F -> 1) approaches the ideal phi2 value.
  EXPECT_NEAR(parity.rows.front().bell, 2.401, 0.005);

  const ThresholdResult none = threshold_sweep({1.05, 1.08, 1.1}, Scheme::ParityChsh, c);
  EXPECT_EQ(none.status, "no crossing");
  EXPECT_FALSE(none.f_star);

  EXPECT_THROW(threshold_sweep({1.01}, Scheme::ParityChsh, c), DomainError);
  EXPECT_THROW(threshold_sweep({1.01, 1.03, 1.02}, Scheme::ParityChsh, c), DomainError);
}

}  // namespace
}  // namespace catbell
