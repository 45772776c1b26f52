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

// Separable Gaussian terms and one-dimensional Gaussian integrals used to
// marginalise two-mode Husimi functions in closed form.

#include <cmath>
#include <vector>

#include "catbell/phasespace.hpp"

namespace catbell::detail {

/// weight * exp(-px (X - x0)^2) * exp(-py Y^2) * cos(ky Y), with X, Y the real
/// and imaginary parts of a single-mode phase-space coordinate.
struct SeparableTerm {
  double weight;
  double px;
  double x0;
  double py;
  double ky;
};

/// exp(-a t^2 + b t + c) accumulated factor by factor; integrate() returns
/// the integral over the real line (a > 0 required).
class GaussianIntegrand {
 public:
  /// Multiplies by exp(-p (lambda t + mu)^2).
  void add_square(double p, double lambda, double mu) {
    a_ += p * lambda * lambda;
    b_ += -2.0 * p * lambda * mu;
    c_ += -p * mu * mu;
  }

  /// Multiplies by exp(i k (lambda t + mu)).
  void add_phase(double k, double lambda, double mu) {
    b_ += Complex(0.0, k * lambda);
    c_ += Complex(0.0, k * mu);
  }

  Complex integrate() const {
    return std::sqrt(kPi / a_) * std::exp(b_ * b_ / (4.0 * a_) + c_);
  }

 private:
  double a_ = 0.0;
  Complex b_ = 0.0;
  Complex c_ = 0.0;
};

/// Husimi function of the cat S(s) N (|c> + sign|-c>) (real c >= 0) as a sum
/// of separable terms.
std::vector<SeparableTerm> cat_husimi_terms(double c, double s, int sign);

/// Husimi function of the squeezed vacuum S(s)|0>.
std::vector<SeparableTerm> squeezed_vacuum_husimi_terms(double s);

double evaluate_terms(const std::vector<SeparableTerm>& terms, Complex z);

/// Integral over the partner mode of F((x_a - x_b)/sqrt2) G((x_a + x_b)/sqrt2),
/// where F, G are separable-term sums. keep = Mode A integrates over b,
/// keep = Mode B integrates over a.
double marginal_of_rotated_product(const std::vector<SeparableTerm>& f_terms,
                                   const std::vector<SeparableTerm>& g_terms,
                                   bool keep_mode_a, Complex point);

}  // namespace catbell::detail
