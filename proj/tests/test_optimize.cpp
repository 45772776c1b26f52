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

#include "catbell/error.hpp"
#include "catbell/nelder_mead.hpp"
#include "catbell/optimize.hpp"

namespace catbell {
namespace {

const double kTsirelson = 2.0 * std::sqrt(2.0);
// Split S(0.4)|SCS+(sqrt 2.6)>: the per-arm amplitude is sqrt(2.6)/sqrt(2).
const double kGammaSscs = std::sqrt(1.3);

TEST(NelderMead, Rosenbrock) {
  const Objective f = [](std::span<const double> x) {
    return 100.0 * std::pow(x[1] - x[0] * x[0], 2) + std::pow(1.0 - x[0], 2);
  };
  NelderMeadOptions opt;
  opt.f_tol = 1e-14;
  opt.x_tol = 1e-8;
  opt.max_iter = 20000;
  const std::vector<double> x0 = {-1.2, 1.0};
  const NelderMeadResult r = nelder_mead(f, x0, opt);
  EXPECT_TRUE(r.converged);
  EXPECT_NEAR(r.x[0], 1.0, 1e-5);
  EXPECT_NEAR(r.x[1], 1.0, 1e-5);
}

TEST(NelderMead, NeverWorseThanStartAndReportsBudget) {
  const Objective f = [](std::span<const double> x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::cos(3.0 * x[i]) + 0.1 * x[i] * x[i];
    return s;
  };
  for (double shift : {-2.0, 0.3, 1.7}) {
    const std::vector<double> x0(8, shift);
    const NelderMeadResult r = nelder_mead(f, x0, {});
    EXPECT_LE(r.f, f(x0));
  }
  NelderMeadOptions tight;
  tight.max_iter = 3;
  EXPECT_FALSE(nelder_mead(f, std::vector<double>(8, 0.5), tight).converged);
}

TEST(OptimizerConfig, Validation) {
  OptimizerConfig c;
  EXPECT_NO_THROW(c.validate());
  c.n_starts = 0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.box_halfwidth = -1.0;
  EXPECT_THROW(c.validate(), DomainError);
  c = {};
  c.local_tol = 0.0;
  EXPECT_THROW(c.validate(), DomainError);
}

TEST(Optimizer, StartPointsStayInNestedBoxes) {
  const double h = 4.0;
  const int levels = start_levels(h);
  EXPECT_EQ(levels, 5);
  for (int i = 0; i < 40; ++i) {
    const double scale = std::ldexp(h, -(i % levels));
    for (const double x : pack(start_point(7, i, h))) {
      EXPECT_LE(std::abs(x), scale);
    }
  }
  EXPECT_EQ(start_point(7, 3, h), start_point(7, 3, h));
  EXPECT_NE(start_point(7, 3, h), start_point(8, 3, h));
}

TEST(Optimizer, SqueezedCatValues) {
  const StateSpec spec = StateSpec::make(Family::EssPlus, kGammaSscs, 0.4);
  const OptimizerConfig c;
  EXPECT_NEAR(maximize_bell(spec, Scheme::ParityChsh, c).value, 2.419964, 1e-5);
  EXPECT_NEAR(maximize_bell(spec, Scheme::OnOffChsh, c).value, 2.033670, 1e-5);
}

TEST(Optimizer, UnsqueezedNeighbour) {
  const StateSpec spec = StateSpec::make(Family::EcsPsiMinus, std::sqrt(2.6) / 2.0);
  const double v = maximize_bell(spec, Scheme::ParityChsh, {}).value;
  EXPECT_GT(v, 2.2);
  EXPECT_LT(v, kTsirelson);
}

TEST(Optimizer, ProductStateDoesNotViolate) {
  const StateSpec vac = StateSpec::make(Family::EssPlus, 0.0, 0.0);
  for (const Scheme s : {Scheme::ParityChsh, Scheme::OnOffChsh}) {
    EXPECT_LE(maximize_bell(vac, s, {}).value, 2.0 + 1e-6);
  }
  EXPECT_LE(maximize_bell(vac, Scheme::Ch, {}).value, 1e-6);
}

TEST(Optimizer, DeterministicAndStable) {
  const StateSpec spec = StateSpec::make(Family::SecsPhiMinus, 1.0, 0.3);
  OptimizerConfig c;
  const BellOutcome a = maximize_bell(spec, Scheme::OnOffChsh, c);
  const BellOutcome b = maximize_bell(spec, Scheme::OnOffChsh, c);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.settings, b.settings);
  EXPECT_EQ(a.best_start_index, b.best_start_index);

  OptimizerConfig doubled = c;
  doubled.n_starts *= 2;
  doubled.n_anchor_starts *= 2;
  EXPECT_LE(maximize_bell(spec, Scheme::OnOffChsh, doubled).value - a.value, 1e-4);

  OptimizerConfig reseeded = c;
  reseeded.seed = 12345;
  EXPECT_NEAR(maximize_bell(spec, Scheme::OnOffChsh, reseeded).value, a.value, 1e-4);
}

TEST(Optimizer, DoubledStartsParity) {
  for (const auto& [f, g, s] : {std::tuple{Family::EssMinus, 1.0, -0.3},
                                std::tuple{Family::EcsPhiMinus, 1.5, 0.0}}) {
    const StateSpec spec = StateSpec::make(f, g, s);
    OptimizerConfig c;
    const double v = maximize_bell(spec, Scheme::ParityChsh, c).value;
    c.n_starts *= 2;
    c.n_anchor_starts *= 2;
    EXPECT_LE(maximize_bell(spec, Scheme::ParityChsh, c).value - v, 1e-4);
  }
}

TEST(Optimizer, OnoffAndChOptimaAgree) {
  // The squeezed cat's on/off optimum sits on the positive branch, which maps
  // onto the CH maximum.
  const StateSpec spec = StateSpec::make(Family::EssPlus, kGammaSscs, 0.4);
  const BellOutcome onoff = maximize_bell(spec, Scheme::OnOffChsh, {});
  ASSERT_GT(onoff.signed_value, 0.0);
  OptimizerConfig c;
  c.warm_starts.push_back(negated(onoff.settings));
  const BellOutcome ch = maximize_bell(spec, Scheme::Ch, c);
  EXPECT_NEAR(onoff.value, 4.0 * ch.value + 2.0, 1e-6);
}

TEST(Optimizer, NegativeOnoffBranchIsACHViolationBelowMinusOne) {
  // For ecs-phi-minus the best |B_onoff| is on the negative branch:
  // B = 4 CH + 2 < -2 means CH < -1.
  const StateSpec spec = StateSpec::make(Family::EcsPhiMinus, 1.0);
  const BellOutcome onoff = maximize_bell(spec, Scheme::OnOffChsh, {});
  ASSERT_LT(onoff.signed_value, -2.0);
  const double ch = ch_value(spec, negated(onoff.settings));
  EXPECT_NEAR(onoff.signed_value, 4.0 * ch + 2.0, 1e-10);
  EXPECT_LT(ch, -1.0);
}

TEST(Optimizer, RelabelledSettingsKeepTheMaximum) {
  const StateSpec spec = StateSpec::make(Family::EcsPhiMinus, 1.0);
  const BellOutcome best = maximize_bell(spec, Scheme::ParityChsh, {});
  const DisplacementSettings& s = best.settings;
  // Swapping a <-> a' turns the CHSH combination into another one; relabelling
  // b <-> b' as well restores the same four terms with the minus sign moved.
  const DisplacementSettings swapped{s.a_prime, s.a, s.b_prime, s.b};
  const double relabelled = chsh_parity(spec, swapped);
  EXPECT_LE(std::abs(relabelled), best.value + 1e-9);
  OptimizerConfig c;
  c.warm_starts.push_back(swapped);
  EXPECT_NEAR(maximize_bell(spec, Scheme::ParityChsh, c).value, best.value, 1e-6);
}

TEST(Optimizer, CatParityLimitBelowTsirelson) {
  double prev = 0.0;
  for (const double g : {0.5, 1.0, 1.5, 2.0}) {
    const double v = maximize_bell(StateSpec::make(Family::EcsPhiMinus, g), Scheme::ParityChsh, {})
                         .value;
    EXPECT_GE(v, prev - 1e-6);
    EXPECT_LE(v, kTsirelson + 1e-6);
    prev = v;
  }
}

TEST(Optimizer, Errors) {
  EXPECT_THROW(maximize_bell(StateSpec::make(Family::ScsEven, 1.0), Scheme::ParityChsh, {}),
               DomainError);
  OptimizerConfig starved;
  starved.n_starts = 2;
  starved.n_anchor_starts = 0;
  starved.max_iter = 1;
  EXPECT_THROW(maximize_bell(StateSpec::make(Family::EcsPhiPlus, 1.0), Scheme::ParityChsh,
                             starved),
               ConvergenceError);
}

TEST(Sweep, OrderingWarmStartsAndPerPointErrors) {
  OptimizerConfig c;
  c.n_starts = 16;
  c.n_anchor_starts = 16;
  const auto rows = sweep(Family::EssMinus, {0.0, 1.0}, {-0.2, 0.0, 0.2}, Scheme::ParityChsh, c);
  ASSERT_EQ(rows.size(), 6u);
  // gamma = 0 is not a valid odd cat: those rows carry the diagnostic.
  for (int i = 0; i < 3; ++i) {
    EXPECT_FALSE(rows[i].outcome);
    EXPECT_FALSE(rows[i].error.empty());
  }
  for (int i = 3; i < 6; ++i) {
    ASSERT_TRUE(rows[i].outcome);
    EXPECT_EQ(rows[i].gamma, 1.0);
    EXPECT_LE(rows[i].outcome->value, kTsirelson + 1e-6);
  }
  EXPECT_EQ(rows[3].s, -0.2);
  EXPECT_EQ(rows[5].s, 0.2);
  // Later points see one extra (warm) start.
  EXPECT_EQ(rows[4].outcome->starts_total, rows[3].outcome->starts_total + 1);

  EXPECT_THROW(sweep(Family::EssMinus, {1.0, 0.5, 2.0}, {0.0}, Scheme::ParityChsh, c),
               DomainError);
  EXPECT_THROW(sweep(Family::EssMinus, {}, {0.0}, Scheme::ParityChsh, c), DomainError);
}

TEST(Sweep, SqueezedPsiMinusOnoffHasAnImprovingSign) {
  const auto rows = sweep(Family::SecsPsiMinus, {1.0}, {-0.3, 0.0, 0.3}, Scheme::OnOffChsh, {});
  ASSERT_EQ(rows.size(), 3u);
  const double v0 = rows[1].outcome->value;
  EXPECT_GT(std::max(rows[0].outcome->value, rows[2].outcome->value), v0);
}

}  // namespace
}  // namespace catbell
