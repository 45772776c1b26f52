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


#include "catbell/states.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "catbell/error.hpp"
#include "separable.hpp"

namespace catbell {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kInvSqrt2 = 0.70710678118654752440;

struct FamilyInfo {
  Family family;
  std::string_view name;
  bool two_mode;
  bool squeezed;
  int sign;
};

constexpr std::array<FamilyInfo, 14> kFamilyTable = {{
    {Family::ScsEven, "scs-even", false, false, +1},
    {Family::ScsOdd, "scs-odd", false, false, -1},
    {Family::SscsEven, "sscs-even", false, true, +1},
    {Family::SscsOdd, "sscs-odd", false, true, -1},
    {Family::EssPlus, "ess-plus", true, true, +1},
    {Family::EssMinus, "ess-minus", true, true, -1},
    {Family::EcsPhiPlus, "ecs-phi-plus", true, false, +1},
    {Family::EcsPhiMinus, "ecs-phi-minus", true, false, -1},
    {Family::EcsPsiPlus, "ecs-psi-plus", true, false, +1},
    {Family::EcsPsiMinus, "ecs-psi-minus", true, false, -1},
    {Family::SecsPhiPlus, "secs-phi-plus", true, true, +1},
    {Family::SecsPhiMinus, "secs-phi-minus", true, true, -1},
    {Family::SecsPsiPlus, "secs-psi-plus", true, true, +1},
    {Family::SecsPsiMinus, "secs-psi-minus", true, true, -1},
}};

const FamilyInfo& info(Family f) {
  return kFamilyTable[static_cast<std::size_t>(f)];
}

enum class Kind { SingleCat, Ess, EcsPhi, EcsPsi, SecsPhi, SecsPsi };

Kind kind_of(Family f) {
  switch (f) {
    case Family::ScsEven:
    case Family::ScsOdd:
    case Family::SscsEven:
    case Family::SscsOdd:
      return Kind::SingleCat;
    case Family::EssPlus:
    case Family::EssMinus:
      return Kind::Ess;
    case Family::EcsPhiPlus:
    case Family::EcsPhiMinus:
      return Kind::EcsPhi;
    case Family::EcsPsiPlus:
    case Family::EcsPsiMinus:
      return Kind::EcsPsi;
    case Family::SecsPhiPlus:
    case Family::SecsPhiMinus:
      return Kind::SecsPhi;
    case Family::SecsPsiPlus:
    case Family::SecsPsiMinus:
      return Kind::SecsPsi;
  }
  return Kind::SingleCat;
}

void require_finite(Complex z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError(std::string(what) + ": non-finite phase-space point");
  }
}

void require_single(const StateSpec& spec, const char* what) {
  if (spec.two_mode()) {
    throw DomainError(std::string(what) + ": family '" +
                      std::string(family_name(spec.family())) +
                      "' is two-mode");
  }
}

void require_two_mode(const StateSpec& spec, const char* what) {
  if (!spec.two_mode()) {
    throw DomainError(std::string(what) + ": family '" +
                      std::string(family_name(spec.family())) +
                      "' is single-mode");
  }
}

// W of S(s) N(|c> + sign|-c>) at point (c real).
double cat_wigner(double c, double s, int sign, Complex point) {
  const double n = scs_norm(c, sign);
  const Complex z = squeeze_coord(point, s);
  return n * n *
         (w_coherent_kernel(z, c) + w_coherent_kernel(z, -c) +
          2.0 * sign * x_kernel(z, c));
}

// Q of S(s) N(|c> + sign|-c>): three terms built in the squeezed frame.
double cat_husimi(double c, double s, int sign, Complex point) {
  const SqueezeFrame f = q_squeeze_frame(s);
  const double n = scs_norm(c, sign);
  const Complex zs = q_frame_coord(point, f);
  const Complex gamma(c, 0.0);
  const Complex gamma_minus_s =
      gamma * f.cos_half - std::conj(gamma) * f.sin_half;
  const Complex gamma_s = q_frame_coord(gamma, f);
  const double direct = f.cos_theta * (q_coherent_kernel(zs, gamma_minus_s) +
                                       q_coherent_kernel(zs, -gamma_minus_s));
  const double cross = f.cos_theta * q_coherent_kernel(zs, 0.0) *
                       std::exp(-std::norm(gamma_minus_s)) *
                       std::cos(2.0 * (std::conj(zs) * gamma_s).imag());
  return n * n * (direct + 2.0 * sign * cross);
}

// Four-term ECS Wigner function with per-arm amplitude g.
double ecs_wigner(bool phi, double g, int sign, Complex a, Complex b) {
  const double n = scs_norm(kSqrt2 * g, sign);
  const double xx = x_kernel(a, g) * x_kernel(b, g);
  const double yy = y_kernel(a, g) * y_kernel(b, g);
  if (phi) {
    return n * n *
           (w_coherent_kernel(a, g) * w_coherent_kernel(b, g) +
            w_coherent_kernel(a, -g) * w_coherent_kernel(b, -g) +
            2.0 * sign * xx - 2.0 * sign * yy);
  }
  return n * n *
         (w_coherent_kernel(a, g) * w_coherent_kernel(b, -g) +
          w_coherent_kernel(a, -g) * w_coherent_kernel(b, g) +
          2.0 * sign * xx + 2.0 * sign * yy);
}

// Q of S_ab(s) applied to an ECS. The direct terms sit at +/- gamma_{-s}
// (Phi) and +/- gamma_{+s} (Psi) in the tilde coordinates.
double secs_husimi(bool phi, double g, double s, int sign, Complex a,
                   Complex b) {
  const SqueezeFrame f = q_squeeze_frame(s);
  const double n = scs_norm(kSqrt2 * g, sign);
  const double cos2 = f.cos_theta * f.cos_theta;
  const Complex at = a * f.cos_half + std::conj(b) * f.sin_half;
  const Complex bt = b * f.cos_half + std::conj(a) * f.sin_half;
  const Complex as = q_frame_coord(a, f);
  const Complex bs = q_frame_coord(b, f);
  const Complex gamma(g, 0.0);
  const Complex gamma_s = q_frame_coord(gamma, f);
  const Complex gamma_minus_s =
      gamma * f.cos_half - std::conj(gamma) * f.sin_half;

  if (phi) {
    const Complex c = gamma_minus_s;
    const double q_pp =
        cos2 * q_coherent_kernel(at, c) * q_coherent_kernel(bt, c);
    const double q_mm =
        cos2 * q_coherent_kernel(at, -c) * q_coherent_kernel(bt, -c);
    const double q_xy =
        cos2 * q_coherent_kernel(at, 0.0) * q_coherent_kernel(bt, 0.0) *
        std::exp(-2.0 * std::norm(c)) *
        std::cos(2.0 * (std::conj(as) * gamma_s + std::conj(bs) * gamma_s)
                           .imag());
    return n * n * (q_pp + q_mm + 2.0 * sign * q_xy);
  }
  const Complex c = gamma_s;
  const double q_pm =
      cos2 * q_coherent_kernel(at, c) * q_coherent_kernel(bt, -c);
  const double q_mp =
      cos2 * q_coherent_kernel(at, -c) * q_coherent_kernel(bt, c);
  const double q_xy =
      cos2 * q_coherent_kernel(at, 0.0) * q_coherent_kernel(bt, 0.0) *
      std::exp(-2.0 * std::norm(c)) *
      std::cos(
          2.0 * (std::conj(as) * gamma_s - std::conj(bs) * gamma_s).imag());
  return n * n * (q_pm + q_mp + 2.0 * sign * q_xy);
}

// Each two-mode family factorises as F(u) G(v) with u = (a - b)/sqrt2 and
// v = (a + b)/sqrt2: the beam splitter puts the cat in u (Psi, ESS) or in v
// (Phi), and S_ab(s) = S_v(s) S_u(-s).
std::pair<std::vector<detail::SeparableTerm>,
          std::vector<detail::SeparableTerm>>
rotated_husimi_factors(const StateSpec& spec) {
  const double c = kSqrt2 * spec.gamma();
  const double s = spec.s();
  const int sign = spec.sign();
  switch (kind_of(spec.family())) {
    case Kind::Ess:
      return {detail::cat_husimi_terms(c, s, sign),
              detail::squeezed_vacuum_husimi_terms(0.0)};
    case Kind::EcsPsi:
    case Kind::SecsPsi:
      return {detail::cat_husimi_terms(c, -s, sign),
              detail::squeezed_vacuum_husimi_terms(s)};
    case Kind::EcsPhi:
    case Kind::SecsPhi:
      return {detail::squeezed_vacuum_husimi_terms(-s),
              detail::cat_husimi_terms(c, s, sign)};
    case Kind::SingleCat:
      break;
  }
  throw DomainError("rotated_husimi_factors: single-mode family");
}

}  // namespace

bool is_two_mode(Family family) { return info(family).two_mode; }
bool is_squeezed_family(Family family) { return info(family).squeezed; }
int family_sign(Family family) { return info(family).sign; }
std::string_view family_name(Family family) { return info(family).name; }

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& entry : kFamilyTable) {
    if (entry.name == name) return entry.family;
  }
  return std::nullopt;
}

StateSpec StateSpec::make(Family family, double gamma, double s) {
  if (!std::isfinite(gamma) || gamma < 0.0) {
    throw DomainError("StateSpec: gamma must be finite and >= 0");
  }
  if (!std::isfinite(s)) {
    throw DomainError("StateSpec: s must be finite");
  }
  if (!is_squeezed_family(family) && s != 0.0) {
    throw DomainError("StateSpec: family '" + std::string(family_name(family)) +
                      "' is unsqueezed; s must be 0");
  }
  if (family_sign(family) == -1 && gamma == 0.0) {
    throw DomainError("StateSpec: family '" + std::string(family_name(family)) +
                      "' is undefined at gamma = 0");
  }
  return StateSpec(family, gamma, s);
}

double wigner_scs(const StateSpec& spec, Complex point) {
  require_single(spec, "wigner_scs");
  require_finite(point, "wigner_scs");
  return cat_wigner(spec.gamma(), spec.s(), spec.sign(), point);
}

double wigner_two_mode(const StateSpec& spec, Complex a, Complex b) {
  require_two_mode(spec, "wigner_two_mode");
  require_finite(a, "wigner_two_mode");
  require_finite(b, "wigner_two_mode");
  const double g = spec.gamma();
  const double s = spec.s();
  const int sign = spec.sign();
  switch (kind_of(spec.family())) {
    case Kind::Ess: {
      const Complex u = (squeeze_coord(a, s) - squeeze_coord(b, s)) * kInvSqrt2;
      const Complex v = (a + b) * kInvSqrt2;
      return cat_wigner(kSqrt2 * g, 0.0, sign, u) * w_coherent_kernel(v, 0.0);
    }
    case Kind::EcsPhi:
      return ecs_wigner(true, g, sign, a, b);
    case Kind::EcsPsi:
      return ecs_wigner(false, g, sign, a, b);
    case Kind::SecsPhi:
    case Kind::SecsPsi: {
      const auto [at, bt] = two_mode_squeeze_coords(a, b, s);
      return ecs_wigner(kind_of(spec.family()) == Kind::SecsPhi, g, sign, at,
                        bt);
    }
    case Kind::SingleCat:
      break;
  }
  throw DomainError("wigner_two_mode: unreachable family");
}

double husimi_single(const StateSpec& spec, Complex point) {
  require_single(spec, "husimi_single");
  require_finite(point, "husimi_single");
  return cat_husimi(spec.gamma(), spec.s(), spec.sign(), point);
}

double husimi_two_mode(const StateSpec& spec, Complex a, Complex b) {
  require_two_mode(spec, "husimi_two_mode");
  require_finite(a, "husimi_two_mode");
  require_finite(b, "husimi_two_mode");
  const double g = spec.gamma();
  const double s = spec.s();
  const int sign = spec.sign();
  switch (kind_of(spec.family())) {
    case Kind::Ess: {
      const Complex u = (a - b) * kInvSqrt2;
      const Complex v = (a + b) * kInvSqrt2;
      return cat_husimi(kSqrt2 * g, s, sign, u) * q_coherent_kernel(v, 0.0);
    }
    case Kind::EcsPhi:
    case Kind::SecsPhi:
      return secs_husimi(true, g, s, sign, a, b);
    case Kind::EcsPsi:
    case Kind::SecsPsi:
      return secs_husimi(false, g, s, sign, a, b);
    case Kind::SingleCat:
      break;
  }
  throw DomainError("husimi_two_mode: unreachable family");
}

double husimi_marginal(const StateSpec& spec, Mode mode, Complex point) {
  require_two_mode(spec, "husimi_marginal");
  require_finite(point, "husimi_marginal");
  const auto [f, g] = rotated_husimi_factors(spec);
  return detail::marginal_of_rotated_product(f, g, mode == Mode::A, point);
}

}  // namespace catbell
