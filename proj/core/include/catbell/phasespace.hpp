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

// Elementary phase-space kernels.
//
// Conventions used throughout the library: a phase-space point is a complex
// number alpha in dimensionless quadrature units with alpha = <a> for a
// coherent state |alpha>. Wigner functions are normalised so that
// W(alpha) = (2/pi) Tr[rho D(alpha) Pi D^dag(alpha)] and integrate to one
// over d^2 alpha; Husimi functions are Q(alpha) = <alpha|rho|alpha>/pi.
// The squeeze parameter s is real; s > 0 squeezes along the real axis.

#include <complex>
#include <utility>

namespace catbell {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// Squeezed-frame rotation used by the Husimi functions of squeezed states.
/// theta/2 = atan(tanh(s/2)), so that tan(theta) = sinh(s) and
/// cos(theta) = 1/cosh(s).
struct SqueezeFrame {
  double s = 0.0;
  double theta = 0.0;
  double cos_theta = 1.0;
  double cos_half = 1.0;  // cos(theta/2)
  double sin_half = 0.0;  // sin(theta/2)
};

/// Wigner function of the coherent state |center>: (2/pi) exp(-2|p - c|^2).
double w_coherent_kernel(Complex point, Complex center);

/// Interference kernel (2/pi) exp(-2|p|^2) cos(4 Im(p^* c)).
double x_kernel(Complex point, Complex center);

/// Quadrature-odd interference kernel (2/pi) exp(-2|p|^2) sin(4 Im(p^* c)).
double y_kernel(Complex point, Complex center);

/// p^s = e^s Re(p) + i e^{-s} Im(p). W of S(s) rho S^dag(s) at p equals W of
/// rho at p^s.
Complex squeeze_coord(Complex point, double s);

/// (a cosh s + b^* sinh s, b cosh s + a^* sinh s): the two-mode squeezing
/// coordinate map.
std::pair<Complex, Complex> two_mode_squeeze_coords(Complex a, Complex b,
                                                    double s);

/// Husimi function of |center>: exp(-|p - c|^2)/pi.
double q_coherent_kernel(Complex point, Complex center);

SqueezeFrame q_squeeze_frame(double s);

/// p cos(theta/2) + p^* sin(theta/2).
Complex q_frame_coord(Complex point, const SqueezeFrame& frame);

/// Normalisation N of (|gamma> + sign |-gamma>), i.e.
/// N^2 = 1 / (2 (1 + sign e^{-2 gamma^2})). Throws DomainError for
/// gamma < 0, |sign| != 1, or sign = -1 with gamma = 0.
double scs_norm(double gamma, int sign);

}  // namespace catbell
