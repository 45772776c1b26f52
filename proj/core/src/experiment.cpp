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


#include "catbell/experiment.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "catbell/error.hpp"
#include "catbell/states.hpp"

namespace catbell {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// Four-point Gauss-Hermite rule (weight e^{-t^2}), exact to degree 7.
constexpr std::array<double, 4> kGhNodes = {-1.65068012388578455588, -0.52464762327529031788,
                                            0.52464762327529031788, 1.65068012388578455588};
constexpr std::array<double, 4> kGhWeights = {0.08131283544724517714, 0.80491409000551283651,
                                              0.80491409000551283651, 0.08131283544724517714};

EvenGaussianQuartic vacuum_wigner_form() {
  EvenGaussianQuartic f;
  f.kx = f.kp = 2.0;
  f.c0 = 2.0 / kPi;
  return f;
}

EvenGaussianQuartic vacuum_husimi_form() {
  EvenGaussianQuartic f;
  f.kx = f.kp = 1.0;
  f.c0 = 1.0 / kPi;
  return f;
}

bool is_monotone(const std::vector<double>& v, double tol) {
  bool up = true;
  bool down = true;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i] < v[i - 1] - tol) up = false;
    if (v[i] > v[i - 1] + tol) down = false;
  }
  return up || down;
}

}  // namespace

void ExperimentModel::validate() const {
  if (!(a_w > 0.0) || !(b_w > 0.0) || !std::isfinite(a_w) || !std::isfinite(b_w)) {
    throw DomainError("ExperimentModel: a_w and b_w must be finite and > 0");
  }
  if (a_w == b_w) throw DomainError("ExperimentModel: a_w must differ from b_w");
  if (!std::isfinite(nu) || !std::isfinite(delta)) {
    throw DomainError("ExperimentModel: nu and delta must be finite");
  }
}

ExperimentModel reduce_params(double g) {
  if (!(g > 1.0) || !std::isfinite(g)) {
    throw DomainError("reduce_params: gain must be finite and > 1");
  }
  ExperimentModel m;
  m.g = g;
  m.a_w = g;
  m.b_w = g - (g - 1.0) * (g - 1.0) / g;
  m.nu = 1.0 / g;
  m.delta = 1.0;
  return m;
}

ExperimentModel to_q_params(const ExperimentModel& model) {
  model.validate();
  ExperimentModel q = model;
  q.delta = model.a_w / (model.a_w + 1.0) * model.delta;
  q.a_w = model.a_w + 1.0;
  q.b_w = model.b_w + 1.0;
  return q;
}

double w_exp(double x, double p, const ExperimentModel& m) {
  m.validate();
  const double A = m.a_w;
  const double B = m.b_w;
  const double d = m.delta;
  const double t = d * A * (1.0 - m.nu) * (1.0 - m.nu) / (2.0 * (A - B));
  const double k = (A * m.nu - B) * (A * m.nu - B) / (2.0 * B * (A - B));
  const double e = 1.0 - d * (1.0 + k);
  const double u = x * x / A + A * m.nu * m.nu * p * p / (B * B);
  const double v = x * x / A - A * m.nu * m.nu * p * p / (B * B);
  const double denom =
      kPi * std::sqrt(A * B) * ((1.0 - t) * (1.0 - t) + 0.5 * t * t);
  const double braces = 0.5 * d * d * u * u + 2.0 * d * e * u + d * d * k * v +
                        e * e + 0.5 * d * d * k * k;
  return std::exp(-x * x / A - p * p / B) / denom * braces;
}

double EvenGaussianQuartic::polynomial(Complex z) const {
  const double X = z.real() * z.real();
  const double P = z.imag() * z.imag();
  return c0 + cx * X + cp * P + cxx * X * X + cxp * X * P + cpp * P * P;
}

double EvenGaussianQuartic::operator()(Complex z) const {
  const double X = z.real() * z.real();
  const double P = z.imag() * z.imag();
  return std::exp(-kx * X - kp * P) * polynomial(z);
}

EvenGaussianQuartic alpha_plane_density(const ExperimentModel& m) {
  m.validate();
  const double A = m.a_w;
  const double B = m.b_w;
  const double d = m.delta;
  const double t = d * A * (1.0 - m.nu) * (1.0 - m.nu) / (2.0 * (A - B));
  const double k = (A * m.nu - B) * (A * m.nu - B) / (2.0 * B * (A - B));
  const double e = 1.0 - d * (1.0 + k);
  const double denom =
      kPi * std::sqrt(A * B) * ((1.0 - t) * (1.0 - t) + 0.5 * t * t);
  // x^2 = 2X and p^2 = 2P, so u = ux X + up P and v = ux X - up P.
  const double ux = 2.0 / A;
  const double up = 2.0 * A * m.nu * m.nu / (B * B);
  const double scale = 2.0 / denom;  // dx dp = 2 d^2 z

  EvenGaussianQuartic f;
  f.kx = 2.0 / A;
  f.kp = 2.0 / B;
  f.c0 = scale * (e * e + 0.5 * d * d * k * k);
  f.cx = scale * (2.0 * d * e + d * d * k) * ux;
  f.cp = scale * (2.0 * d * e - d * d * k) * up;
  f.cxx = scale * 0.5 * d * d * ux * ux;
  f.cxp = scale * d * d * ux * up;
  f.cpp = scale * 0.5 * d * d * up * up;
  return f;
}

namespace phi2 {

// W = (2/pi) e^{-2|z|^2} [1 - (16/3)|z|^2 + (16/3)|z|^4 + (8/3) Re z^2].
EvenGaussianQuartic wigner_form() {
  const double n = 2.0 / kPi;
  EvenGaussianQuartic f;
  f.kx = f.kp = 2.0;
  f.c0 = n;
  f.cx = n * (-16.0 / 3.0 + 8.0 / 3.0);
  f.cp = n * (-16.0 / 3.0 - 8.0 / 3.0);
  f.cxx = n * 16.0 / 3.0;
  f.cxp = n * 32.0 / 3.0;
  f.cpp = n * 16.0 / 3.0;
  return f;
}

// Q = e^{-|z|^2} |c0 + c2 z^{*2}/sqrt2|^2 / pi
//   = e^{-|z|^2} [1 + |z|^4 + 2 Re z^2] / (3 pi).
EvenGaussianQuartic husimi_form() {
  const double n = 1.0 / (3.0 * kPi);
  EvenGaussianQuartic f;
  f.kx = f.kp = 1.0;
  f.c0 = n;
  f.cx = 2.0 * n;
  f.cp = -2.0 * n;
  f.cxx = n;
  f.cxp = 2.0 * n;
  f.cpp = n;
  return f;
}

double wigner(Complex z) { return wigner_form()(z); }
double husimi(Complex z) { return husimi_form()(z); }

}  // namespace phi2

namespace {

double trapezoid(const std::function<double(Complex)>& f, double h, double step) {
  const int n = static_cast<int>(std::ceil(2.0 * h / step));
  const double dz = 2.0 * h / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double wi = (i == 0 || i == n) ? 0.5 : 1.0;
    const double x = -h + i * dz;
    for (int j = 0; j <= n; ++j) {
      const double wj = (j == 0 || j == n) ? 0.5 : 1.0;
      sum += wi * wj * f(Complex(x, -h + j * dz));
    }
  }
  return sum * dz * dz;
}

double refined_integral(const std::function<double(Complex)>& f,
                        const OverlapOptions& opt, const char* who) {
  if (!(opt.half_width > 0.0) || !(opt.initial_step > 0.0) || !(opt.tol > 0.0) ||
      opt.max_refinements < 1) {
    throw DomainError(std::string(who) + ": invalid quadrature options");
  }
  double step = opt.initial_step;
  double prev = trapezoid(f, opt.half_width, step);
  for (int r = 0; r < opt.max_refinements; ++r) {
    step /= 2.0;
    const double next = trapezoid(f, opt.half_width, step);
    if (std::abs(next - prev) <= opt.tol) return next;
    prev = next;
  }
  throw ConvergenceError(std::string(who) + ": trapezoid rule did not settle within " +
                         std::to_string(opt.max_refinements) + " refinements");
}

}  // namespace

double wigner_overlap(const std::function<double(Complex)>& f,
                      const std::function<double(Complex)>& g,
                      const OverlapOptions& options) {
  return kPi * refined_integral([&](Complex z) { return f(z) * g(z); }, options,
                                "wigner_overlap");
}

double plane_integral(const std::function<double(Complex)>& f,
                      const OverlapOptions& options) {
  return refined_integral(f, options, "plane_integral");
}

FidelityResult fidelity_phi2_detail(double g) {
  const ExperimentModel m = reduce_params(g);
  const EvenGaussianQuartic w = alpha_plane_density(m);
  const EvenGaussianQuartic w_phi2 = phi2::wigner_form();

  // +/-(6 sqrt(max/2) + 1) in x and p, which is 1/sqrt2 of that in z.
  OverlapOptions opt;
  opt.half_width = (6.0 * std::sqrt(std::max(m.a_w, m.b_w) / 2.0) + 1.0) / kSqrt2;
  opt.initial_step = 0.05;

  FidelityResult r;
  r.normalization = plane_integral(w, opt);
  r.value = wigner_overlap(w, w_phi2, opt);
  if (std::abs(r.normalization - 1.0) > 1e-3) {
    r.value /= r.normalization;
    r.renormalized = true;
  }
  return r;
}

double fidelity_phi2(double g) { return fidelity_phi2_detail(g).value; }

SplitSourceModel::SplitSourceModel(EvenGaussianQuartic w_src,
                                   EvenGaussianQuartic q_src)
    : w_src_(w_src), q_src_(q_src) {}

double SplitSourceModel::wigner(Complex a, Complex b) const {
  return w_src_((a - b) / kSqrt2) * vacuum_wigner_form()((a + b) / kSqrt2);
}

double SplitSourceModel::husimi(Complex a, Complex b) const {
  return q_src_((a - b) / kSqrt2) * vacuum_husimi_form()((a + b) / kSqrt2);
}

// Q_a(z) = (2/pi) Int Q_src(sqrt2 z - w) e^{-|w|^2} d^2 w, and Q_b the same
// with the source argument negated, which the even source ignores. Completing
// the square per axis puts all Gaussian factors in front of the quadrature.
double SplitSourceModel::husimi_marginal(Mode, Complex point) const {
  const double cr = kSqrt2 * point.real();
  const double ci = kSqrt2 * point.imag();
  const double lr = 1.0 + q_src_.kx;
  const double li = 1.0 + q_src_.kp;
  const double sr = 1.0 / std::sqrt(lr);
  const double si = 1.0 / std::sqrt(li);
  double sum = 0.0;
  for (std::size_t j = 0; j < kGhNodes.size(); ++j) {
    const double zr = cr / lr - kGhNodes[j] * sr;
    for (std::size_t k = 0; k < kGhNodes.size(); ++k) {
      const double zi = ci / li - kGhNodes[k] * si;
      sum += kGhWeights[j] * kGhWeights[k] * q_src_.polynomial(Complex(zr, zi));
    }
  }
  const double envelope =
      std::exp(-q_src_.kx * cr * cr / lr - q_src_.kp * ci * ci / li) * sr * si;
  return 2.0 / kPi * envelope * sum;
}

SplitSourceModel split_experimental(double g) {
  const ExperimentModel m = reduce_params(g);
  return SplitSourceModel(alpha_plane_density(m), alpha_plane_density(to_q_params(m)));
}

SplitSourceModel split_phi2() {
  return SplitSourceModel(phi2::wigner_form(), phi2::husimi_form());
}

BellOutcome split_and_bell(double g, Scheme scheme, const OptimizerConfig& config) {
  return maximize_bell(split_experimental(g), scheme, config);
}

BellOutcome ideal_bell(IdealSource source, Scheme scheme,
                       const OptimizerConfig& config) {
  switch (source) {
    case IdealSource::Phi2:
      return maximize_bell(split_phi2(), scheme, config);
    case IdealSource::Sscs:
      return maximize_bell(StateSpec::make(Family::EssPlus, std::sqrt(1.3), 0.4),
                           scheme, config);
  }
  throw DomainError("ideal_bell: unknown source");
}

ThresholdResult threshold_sweep(const std::vector<double>& g_grid, Scheme scheme,
                                const OptimizerConfig& config,
                                const ThresholdOptions& options) {
  if (g_grid.size() < 2) throw DomainError("threshold_sweep: need at least two gains");
  if (!is_monotone(g_grid, 0.0)) throw DomainError("threshold_sweep: grid must be monotone");
  for (std::size_t i = 1; i < g_grid.size(); ++i) {
    if (g_grid[i] == g_grid[i - 1]) {
      throw DomainError("threshold_sweep: grid must be strictly monotone");
    }
  }
  config.validate();

  ThresholdResult out;
  out.rows.reserve(g_grid.size());
  std::optional<DisplacementSettings> previous;
  for (const double g : g_grid) {
    ThresholdRow row;
    row.g = g;
    const FidelityResult f = fidelity_phi2_detail(g);
    row.fidelity = f.value;
    row.normalization = f.normalization;
    OptimizerConfig c = config;
    if (previous) c.warm_starts.push_back(*previous);
    const BellOutcome b = split_and_bell(g, scheme, c);
    row.bell = b.value;
    row.settings = b.settings;
    previous = b.settings;
    out.rows.push_back(row);
  }

  std::vector<double> fs, bs;
  for (const auto& r : out.rows) {
    fs.push_back(r.fidelity);
    bs.push_back(r.bell);
  }
  out.fidelity_monotone = is_monotone(fs, options.monotone_tol);
  out.bell_monotone = is_monotone(bs, options.monotone_tol);
  if (!out.fidelity_monotone || !out.bell_monotone) {
    std::ostringstream msg;
    msg << "not monotone:";
    if (!out.fidelity_monotone) msg << " fidelity";
    if (!out.bell_monotone) msg << " bell";
    out.status = msg.str();
    return out;
  }

  const double level = 2.0 + options.margin;
  for (std::size_t i = 1; i < out.rows.size(); ++i) {
    const double b0 = bs[i - 1] - level;
    const double b1 = bs[i] - level;
    if ((b0 > 0.0) == (b1 > 0.0)) continue;
    const double w = b0 / (b0 - b1);
    out.f_star = fs[i - 1] + w * (fs[i] - fs[i - 1]);
    out.status = "ok";
    return out;
  }
  out.status = "no crossing";
  return out;
}

}  // namespace catbell
