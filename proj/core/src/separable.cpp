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


#include "separable.hpp"

#include <cmath>

namespace catbell::detail {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

std::vector<SeparableTerm> cat_husimi_terms(double c, double s, int sign) {
  const SqueezeFrame f = q_squeeze_frame(s);
  const double n = scs_norm(c, sign);
  const double n2 = n * n;
  const double plus = f.cos_half + f.sin_half;    // stretch of Re in z_s
  const double minus = f.cos_half - f.sin_half;   // stretch of Im in z_s
  const double px = plus * plus;
  const double py = minus * minus;
  const double pref = f.cos_theta / kPi;
  const double x0 = c * minus / plus;
  const double c_minus_s = c * minus;
  return {
      {n2 * pref, px, x0, py, 0.0},
      {n2 * pref, px, -x0, py, 0.0},
      {2.0 * sign * n2 * pref * std::exp(-c_minus_s * c_minus_s), px, 0.0, py,
       2.0 * c * f.cos_theta},
  };
}

std::vector<SeparableTerm> squeezed_vacuum_husimi_terms(double s) {
  const SqueezeFrame f = q_squeeze_frame(s);
  const double plus = f.cos_half + f.sin_half;
  const double minus = f.cos_half - f.sin_half;
  return {{f.cos_theta / kPi, plus * plus, 0.0, minus * minus, 0.0}};
}

double evaluate_terms(const std::vector<SeparableTerm>& terms, Complex z) {
  double sum = 0.0;
  for (const auto& t : terms) {
    const double dx = z.real() - t.x0;
    const double y = z.imag();
    sum += t.weight * std::exp(-t.px * dx * dx - t.py * y * y) *
           std::cos(t.ky * y);
  }
  return sum;
}

double marginal_of_rotated_product(const std::vector<SeparableTerm>& f_terms,
                                   const std::vector<SeparableTerm>& g_terms,
                                   bool keep_mode_a, Complex point) {
  // u = (a - b)/sqrt2 feeds f, v = (a + b)/sqrt2 feeds g; t is the
  // integrated coordinate (x_b for mode A kept, x_a for mode B kept).
  const double lam_u = keep_mode_a ? -kInvSqrt2 : kInvSqrt2;
  const double lam_v = kInvSqrt2;
  const double sgn_u = keep_mode_a ? 1.0 : -1.0;
  const double mu_ux = sgn_u * point.real() * kInvSqrt2;
  const double mu_vx = point.real() * kInvSqrt2;
  const double mu_uy = sgn_u * point.imag() * kInvSqrt2;
  const double mu_vy = point.imag() * kInvSqrt2;

  double total = 0.0;
  for (const auto& f : f_terms) {
    for (const auto& g : g_terms) {
      GaussianIntegrand ix;
      ix.add_square(f.px, lam_u, mu_ux - f.x0);
      ix.add_square(g.px, lam_v, mu_vx - g.x0);
      const double x_part = ix.integrate().real();

      // cos(kf u) cos(kg v) = [cos(kf u + kg v) + cos(kf u - kg v)] / 2
      double y_part = 0.0;
      for (const double branch : {1.0, -1.0}) {
        GaussianIntegrand iy;
        iy.add_square(f.py, lam_u, mu_uy);
        iy.add_square(g.py, lam_v, mu_vy);
        iy.add_phase(f.ky, lam_u, mu_uy);
        iy.add_phase(branch * g.ky, lam_v, mu_vy);
        y_part += 0.5 * iy.integrate().real();
      }
      total += f.weight * g.weight * x_part * y_part;
    }
  }
  return total;
}

}  // namespace catbell::detail
