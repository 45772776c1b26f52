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


#include "catbell/phasespace.hpp"

#include <cmath>
#include <string>

#include "catbell/error.hpp"

namespace catbell {

namespace {
constexpr double kTwoOverPi = 2.0 / kPi;
}

double w_coherent_kernel(Complex point, Complex center) {
  return kTwoOverPi * std::exp(-2.0 * std::norm(point - center));
}

double x_kernel(Complex point, Complex center) {
  const double phase = 4.0 * (std::conj(point) * center).imag();
  return kTwoOverPi * std::exp(-2.0 * std::norm(point)) * std::cos(phase);
}

double y_kernel(Complex point, Complex center) {
  const double phase = 4.0 * (std::conj(point) * center).imag();
  return kTwoOverPi * std::exp(-2.0 * std::norm(point)) * std::sin(phase);
}

Complex squeeze_coord(Complex point, double s) {
  return {std::exp(s) * point.real(), std::exp(-s) * point.imag()};
}

std::pair<Complex, Complex> two_mode_squeeze_coords(Complex a, Complex b,
                                                    double s) {
  const double ch = std::cosh(s);
  const double sh = std::sinh(s);
  return {a * ch + std::conj(b) * sh, b * ch + std::conj(a) * sh};
}

double q_coherent_kernel(Complex point, Complex center) {
  return std::exp(-std::norm(point - center)) / kPi;
}

SqueezeFrame q_squeeze_frame(double s) {
  SqueezeFrame f;
  f.s = s;
  const double half = std::atan(std::tanh(0.5 * s));
  f.theta = 2.0 * half;
  f.cos_half = std::cos(half);
  f.sin_half = std::sin(half);
  // cos(theta) = 1/cosh(s) exactly; avoids cancellation in cos^2 - sin^2.
  f.cos_theta = 1.0 / std::cosh(s);
  return f;
}

Complex q_frame_coord(Complex point, const SqueezeFrame& frame) {
  return point * frame.cos_half + std::conj(point) * frame.sin_half;
}

double scs_norm(double gamma, int sign) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw DomainError("scs_norm: amplitude must be finite and >= 0, got " +
                      std::to_string(gamma));
  }
  if (sign != 1 && sign != -1) {
    throw DomainError("scs_norm: sign must be +1 or -1");
  }
  if (sign == -1 && gamma == 0.0) {
    throw DomainError("scs_norm: odd cat state is undefined at zero amplitude");
  }
  const double x = -2.0 * gamma * gamma;
  // 1 + sign e^{x}; expm1 keeps precision for the odd state at small gamma.
  const double denom = sign == 1 ? 2.0 + std::expm1(x) : -std::expm1(x);
  return 1.0 / std::sqrt(2.0 * denom);
}

}  // namespace catbell
