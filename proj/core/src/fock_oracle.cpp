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


#include "catbell/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "catbell/error.hpp"

namespace catbell {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;

// Mass allowed in the upper half of the padding after an evolution, and the
// mass that trimming may drop afterwards.
constexpr double kEdgeMass = 1e-24;
constexpr double kTrimMass = 1e-26;

// Product c * L_di(i) * L_dj(j) of ladder factors, with L_1(n) = sqrt(n+1),
// L_-1(n) = sqrt(n), L_2(n) = sqrt((n+1)(n+2)), L_-2(n) = sqrt(n(n-1)).
struct Term {
  int di;
  int dj;
  Complex c;
};

double ladder(int n, int d) {
  const double x = n;
  switch (d) {
    case 0:
      return 1.0;
    case 1:
      return std::sqrt(x + 1.0);
    case 2:
      return std::sqrt((x + 1.0) * (x + 2.0));
    case -1:
      return std::sqrt(x);
    case -2:
      return std::sqrt(x * (x - 1.0));
  }
  return 0.0;
}

// y = G x on a dim_a x dim_b array; generator terms that leave the space are
// dropped.
void apply_generator(const std::vector<Term>& terms, int da, int db,
                     const std::vector<Complex>& x, std::vector<Complex>& y) {
  std::fill(y.begin(), y.end(), Complex(0.0, 0.0));
  for (const Term& t : terms) {
    const int i_lo = std::max(0, -t.di);
    const int i_hi = std::min(da, da - t.di);
    const int j_lo = std::max(0, -t.dj);
    const int j_hi = std::min(db, db - t.dj);
    for (int i = i_lo; i < i_hi; ++i) {
      const Complex ci = t.c * ladder(i, t.di);
      const std::size_t row_in = static_cast<std::size_t>(i) * db;
      const std::size_t row_out = static_cast<std::size_t>(i + t.di) * db;
      for (int j = j_lo; j < j_hi; ++j) {
        y[row_out + j + t.dj] += ci * ladder(j, t.dj) * x[row_in + j];
      }
    }
  }
}

double sum_norm(const std::vector<Complex>& v) {
  double s = 0.0;
  for (const Complex& z : v) s += std::norm(z);
  return s;
}

// exp(G) x by a Taylor series in substeps of norm at most one.
std::vector<Complex> expm_action(const std::vector<Term>& terms, int da, int db,
                                 std::vector<Complex> x) {
  double bound = 0.0;
  for (const Term& t : terms) {
    bound += std::abs(t.c) * ladder(da, std::abs(t.di)) * ladder(db, std::abs(t.dj));
  }
  const int steps = std::max(1, static_cast<int>(std::ceil(bound)));
  std::vector<Term> scaled = terms;
  for (Term& t : scaled) t.c /= static_cast<double>(steps);

  std::vector<Complex> term(x.size()), next(x.size());
  for (int step = 0; step < steps; ++step) {
    term = x;
    const double scale = std::sqrt(sum_norm(x));
    for (int k = 1; k < 80; ++k) {
      apply_generator(scaled, da, db, term, next);
      const double inv_k = 1.0 / k;
      for (auto& z : next) z *= inv_k;
      term.swap(next);
      for (std::size_t n = 0; n < x.size(); ++n) x[n] += term[n];
      if (std::sqrt(sum_norm(term)) <= 1e-18 * scale) break;
    }
  }
  return x;
}

TwoModeFockState embed(const TwoModeFockState& psi, int da, int db) {
  TwoModeFockState out{da, db, std::vector<Complex>(static_cast<std::size_t>(da) * db)};
  for (int i = 0; i < std::min(da, psi.dim_a); ++i) {
    for (int j = 0; j < std::min(db, psi.dim_b); ++j) out.at(i, j) = psi.at(i, j);
  }
  return out;
}

double mass_a_from(const TwoModeFockState& psi, int from) {
  double m = 0.0;
  for (int i = std::max(0, from); i < psi.dim_a; ++i) {
    for (int j = 0; j < psi.dim_b; ++j) m += std::norm(psi.at(i, j));
  }
  return m;
}

double mass_b_from(const TwoModeFockState& psi, int from) {
  double m = 0.0;
  for (int i = 0; i < psi.dim_a; ++i) {
    for (int j = std::max(0, from); j < psi.dim_b; ++j) m += std::norm(psi.at(i, j));
  }
  return m;
}

// Drops top levels whose total mass is at most `mass`.
TwoModeFockState trim(const TwoModeFockState& psi, double mass) {
  int da = psi.dim_a;
  int db = psi.dim_b;
  double dropped = 0.0;
  while (da > 1) {
    double row = 0.0;
    for (int j = 0; j < db; ++j) row += std::norm(psi.at(da - 1, j));
    if (dropped + row > mass) break;
    dropped += row;
    --da;
  }
  while (db > 1) {
    double col = 0.0;
    for (int i = 0; i < da; ++i) col += std::norm(psi.at(i, db - 1));
    if (dropped + col > mass) break;
    dropped += col;
    --db;
  }
  return embed(psi, da, db);
}

// exp(G) psi with modes grown until the evolved amplitude stays clear of the
// working-space edge.
TwoModeFockState evolve(const TwoModeFockState& psi, const std::vector<Term>& terms,
                        const TruncationPolicy& policy, const char* what) {
  bool touches_a = false;
  bool touches_b = false;
  for (const Term& t : terms) {
    touches_a = touches_a || t.di != 0;
    touches_b = touches_b || t.dj != 0;
  }
  int pad = 16;
  for (;;) {
    const int da = touches_a ? psi.dim_a + pad : psi.dim_a;
    const int db = touches_b ? psi.dim_b + pad : psi.dim_b;
    if (da > policy.max_work_dim || db > policy.max_work_dim) {
      throw TruncationError(std::string(what) +
                            ": working dimension exceeds max_work_dim = " +
                            std::to_string(policy.max_work_dim));
    }
    TwoModeFockState out = embed(psi, da, db);
    out.amp = expm_action(terms, da, db, std::move(out.amp));
    double edge = 0.0;
    if (touches_a) edge += mass_a_from(out, da - pad / 2);
    if (touches_b) edge += mass_b_from(out, db - pad / 2);
    if (edge <= kEdgeMass) return trim(out, kTrimMass);
    pad *= 2;
  }
}

TwoModeFockState as_two_mode(const FockState& psi) {
  return {psi.dim(), 1, psi.amp};
}

FockState as_single(const TwoModeFockState& psi) {
  FockState out;
  out.amp.resize(static_cast<std::size_t>(psi.dim_a));
  for (int i = 0; i < psi.dim_a; ++i) out.amp[i] = psi.at(i, 0);
  return out;
}

// Cuts (or zero-pads) to n_max + 1 levels per mode and renormalises.
TwoModeFockState truncate(const TwoModeFockState& psi, const TruncationPolicy& policy,
                          const char* what) {
  const double tail = tail_mass(psi, policy.n_max);
  if (tail > policy.tail_bound) {
    throw TruncationError(std::string(what) + ": mass " + std::to_string(tail) +
                          " above n_max = " + std::to_string(policy.n_max) +
                          " exceeds tail_bound");
  }
  TwoModeFockState out = embed(psi, std::min(psi.dim_a, policy.n_max + 1),
                               std::min(psi.dim_b, policy.n_max + 1));
  const double n = std::sqrt(norm_squared(out));
  for (auto& z : out.amp) z /= n;
  return out;
}

// e^{-|z|^2/2} z^n / sqrt(n!) for n < dim.
std::vector<Complex> coherent_amplitudes(Complex z, int dim) {
  std::vector<Complex> c(static_cast<std::size_t>(dim));
  if (dim == 0) return c;
  c[0] = std::exp(-0.5 * std::norm(z));
  for (int n = 1; n < dim; ++n) c[n] = c[n - 1] * z / std::sqrt(static_cast<double>(n));
  return c;
}

// Levels needed before the Poisson tail of |z> is below 1e-32.
int coherent_extent(Complex z) {
  const double mean = std::norm(z);
  return static_cast<int>(std::ceil(mean + 12.0 * std::sqrt(mean) + 40.0));
}

}  // namespace

void TruncationPolicy::validate() const {
  if (n_max < 1) throw DomainError("TruncationPolicy: n_max must be >= 1");
  if (!(tail_bound > 0.0)) throw DomainError("TruncationPolicy: tail_bound must be > 0");
  if (max_work_dim <= n_max) {
    throw DomainError("TruncationPolicy: max_work_dim must exceed n_max");
  }
}

double norm_squared(const FockState& psi) { return sum_norm(psi.amp); }
double norm_squared(const TwoModeFockState& psi) { return sum_norm(psi.amp); }

double tail_mass(const FockState& psi, int n_max) {
  double m = 0.0;
  for (int n = n_max + 1; n < psi.dim(); ++n) m += std::norm(psi.amp[n]);
  return m;
}

double tail_mass(const TwoModeFockState& psi, int n_max) {
  double m = 0.0;
  for (int i = 0; i < psi.dim_a; ++i) {
    for (int j = 0; j < psi.dim_b; ++j) {
      if (i > n_max || j > n_max) m += std::norm(psi.at(i, j));
    }
  }
  return m;
}

Complex inner(const FockState& phi, const FockState& psi) {
  Complex s = 0.0;
  const int d = std::min(phi.dim(), psi.dim());
  for (int n = 0; n < d; ++n) s += std::conj(phi.amp[n]) * psi.amp[n];
  return s;
}

Complex inner(const TwoModeFockState& phi, const TwoModeFockState& psi) {
  Complex s = 0.0;
  const int da = std::min(phi.dim_a, psi.dim_a);
  const int db = std::min(phi.dim_b, psi.dim_b);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < db; ++j) s += std::conj(phi.at(i, j)) * psi.at(i, j);
  }
  return s;
}

FockState fock_superposition(const std::vector<Complex>& amplitudes,
                             const TruncationPolicy& policy) {
  policy.validate();
  if (static_cast<int>(amplitudes.size()) > policy.n_max + 1) {
    throw TruncationError("fock_superposition: more levels than n_max + 1");
  }
  FockState out{std::vector<Complex>(static_cast<std::size_t>(policy.n_max) + 1)};
  std::copy(amplitudes.begin(), amplitudes.end(), out.amp.begin());
  const double n = std::sqrt(norm_squared(out));
  if (!(n > 0.0)) throw DomainError("fock_superposition: zero vector");
  for (auto& z : out.amp) z /= n;
  return out;
}

FockState coherent(Complex gamma, const TruncationPolicy& policy) {
  return cat(gamma, 0, policy);
}

// sign = 0 is the plain coherent state.
FockState cat(Complex gamma, int sign, const TruncationPolicy& policy) {
  policy.validate();
  if (!std::isfinite(gamma.real()) || !std::isfinite(gamma.imag())) {
    throw DomainError("cat: non-finite amplitude");
  }
  if (sign != 0 && sign != 1 && sign != -1) throw DomainError("cat: sign must be +/-1");
  const int ext = std::max(policy.n_max + 1, coherent_extent(gamma));
  FockState full{coherent_amplitudes(gamma, ext)};
  if (sign != 0) {
    for (int n = 0; n < ext; ++n) {
      const double p = (n % 2 == 0) ? 1.0 : -1.0;
      full.amp[n] *= 1.0 + sign * p;
    }
  }
  const double total = norm_squared(full);
  if (!(total > 0.0)) throw DomainError("cat: odd cat at zero amplitude");
  const double tail = tail_mass(full, policy.n_max) / total;
  if (tail > policy.tail_bound) {
    throw TruncationError("coherent amplitude " + std::to_string(std::abs(gamma)) +
                          ": tail mass " + std::to_string(tail) + " above n_max = " +
                          std::to_string(policy.n_max));
  }
  full.amp.resize(static_cast<std::size_t>(policy.n_max) + 1);
  const double n = std::sqrt(norm_squared(full));
  for (auto& z : full.amp) z /= n;
  return full;
}

TwoModeFockState tensor(const FockState& a, const FockState& b) {
  TwoModeFockState out{a.dim(), b.dim(),
                       std::vector<Complex>(static_cast<std::size_t>(a.dim()) * b.dim())};
  for (int i = 0; i < a.dim(); ++i) {
    for (int j = 0; j < b.dim(); ++j) out.at(i, j) = a.amp[i] * b.amp[j];
  }
  return out;
}

FockState apply_single_squeeze(const FockState& psi, double s,
                               const TruncationPolicy& policy) {
  if (s == 0.0) return psi;
  const std::vector<Term> g = {{-2, 0, Complex(0.5 * s, 0.0)},
                               {2, 0, Complex(-0.5 * s, 0.0)}};
  return as_single(evolve(as_two_mode(psi), g, policy, "apply_single_squeeze"));
}

TwoModeFockState apply_two_mode_squeeze(const TwoModeFockState& psi, double s,
                                        const TruncationPolicy& policy) {
  if (s == 0.0) return psi;
  const std::vector<Term> g = {{-1, -1, Complex(s, 0.0)}, {1, 1, Complex(-s, 0.0)}};
  return evolve(psi, g, policy, "apply_two_mode_squeeze");
}

TwoModeFockState apply_beam_splitter(const TwoModeFockState& psi,
                                     const TruncationPolicy& policy) {
  const std::vector<Term> g = {{1, -1, Complex(kPi / 4.0, 0.0)},
                               {-1, 1, Complex(-kPi / 4.0, 0.0)}};
  return evolve(psi, g, policy, "apply_beam_splitter");
}

TwoModeFockState apply_parity_b(const TwoModeFockState& psi) {
  TwoModeFockState out = psi;
  for (int i = 0; i < out.dim_a; ++i) {
    for (int j = 1; j < out.dim_b; j += 2) out.at(i, j) = -out.at(i, j);
  }
  return out;
}

FockState displace(const FockState& psi, Complex alpha,
                   const TruncationPolicy& policy) {
  if (alpha == 0.0) return psi;
  const std::vector<Term> g = {{1, 0, alpha}, {-1, 0, -std::conj(alpha)}};
  return as_single(evolve(as_two_mode(psi), g, policy, "displace"));
}

TwoModeFockState displace(const TwoModeFockState& psi, Complex alpha,
                          Complex beta, const TruncationPolicy& policy) {
  std::vector<Term> g;
  if (alpha != 0.0) {
    g.push_back({1, 0, alpha});
    g.push_back({-1, 0, -std::conj(alpha)});
  }
  if (beta != 0.0) {
    g.push_back({0, 1, beta});
    g.push_back({0, -1, -std::conj(beta)});
  }
  if (g.empty()) return psi;
  return evolve(psi, g, policy, "displace");
}

double parity(const FockState& psi) {
  double p = 0.0;
  for (int n = 0; n < psi.dim(); ++n) p += (n % 2 == 0 ? 1.0 : -1.0) * std::norm(psi.amp[n]);
  return p;
}

double parity(const TwoModeFockState& psi) {
  double p = 0.0;
  for (int i = 0; i < psi.dim_a; ++i) {
    for (int j = 0; j < psi.dim_b; ++j) {
      p += ((i + j) % 2 == 0 ? 1.0 : -1.0) * std::norm(psi.at(i, j));
    }
  }
  return p;
}

// D(alpha) Pi D^dag(alpha) = D(2 alpha) Pi, so on a truncated state only the
// dim x dim block of D(2 alpha) is needed, and that block is exact.
namespace {
Eigen::MatrixXcd parity_displacement(Complex alpha, int dim) {
  Eigen::MatrixXcd m = displacement_matrix(2.0 * alpha, dim, dim);
  for (int k = 1; k < dim; k += 2) m.col(k) *= -1.0;
  return m;
}
}  // namespace

double displaced_parity(const FockState& psi, Complex alpha,
                        const TruncationPolicy& policy) {
  policy.validate();
  const Eigen::Map<const Eigen::VectorXcd> v(psi.amp.data(), psi.dim());
  const Eigen::MatrixXcd m = parity_displacement(alpha, psi.dim());
  return v.dot(m * v).real() / norm_squared(psi);
}

double displaced_parity(const TwoModeFockState& psi, Complex alpha,
                        Complex beta, const TruncationPolicy& policy) {
  policy.validate();
  // amp is row-major: Psi(i, j) = amp[i * dim_b + j].
  using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMajor> p(psi.amp.data(), psi.dim_a, psi.dim_b);
  const Eigen::MatrixXcd x =
      parity_displacement(alpha, psi.dim_a) * p * parity_displacement(beta, psi.dim_b).transpose();
  return (p.conjugate().cwiseProduct(x)).sum().real() / norm_squared(psi);
}

double wigner(const FockState& psi, Complex alpha, const TruncationPolicy& policy) {
  return (2.0 / kPi) * displaced_parity(psi, alpha, policy);
}

double wigner(const TwoModeFockState& psi, Complex alpha, Complex beta,
              const TruncationPolicy& policy) {
  return (4.0 / (kPi * kPi)) * displaced_parity(psi, alpha, beta, policy);
}

double husimi(const FockState& psi, Complex alpha) {
  const auto c = coherent_amplitudes(alpha, psi.dim());
  Complex s = 0.0;
  for (int n = 0; n < psi.dim(); ++n) s += std::conj(c[n]) * psi.amp[n];
  return std::norm(s) / kPi;
}

double husimi(const TwoModeFockState& psi, Complex alpha, Complex beta) {
  const auto ca = coherent_amplitudes(alpha, psi.dim_a);
  const auto cb = coherent_amplitudes(beta, psi.dim_b);
  Complex s = 0.0;
  for (int i = 0; i < psi.dim_a; ++i) {
    Complex row = 0.0;
    for (int j = 0; j < psi.dim_b; ++j) row += std::conj(cb[j]) * psi.at(i, j);
    s += std::conj(ca[i]) * row;
  }
  return std::norm(s) / (kPi * kPi);
}

double husimi_marginal(const TwoModeFockState& psi, Mode mode, Complex point) {
  double total = 0.0;
  if (mode == Mode::A) {
    const auto c = coherent_amplitudes(point, psi.dim_a);
    for (int j = 0; j < psi.dim_b; ++j) {
      Complex s = 0.0;
      for (int i = 0; i < psi.dim_a; ++i) s += std::conj(c[i]) * psi.at(i, j);
      total += std::norm(s);
    }
  } else {
    const auto c = coherent_amplitudes(point, psi.dim_b);
    for (int i = 0; i < psi.dim_a; ++i) {
      Complex s = 0.0;
      for (int j = 0; j < psi.dim_b; ++j) s += std::conj(c[j]) * psi.at(i, j);
      total += std::norm(s);
    }
  }
  return total / kPi;
}

double onoff_expectation(const FockState& psi, Complex alpha) {
  return 1.0 - 2.0 * kPi * husimi(psi, -alpha);
}

double onoff_correlation(const TwoModeFockState& psi, Complex x, Complex y) {
  const double pa = kPi * husimi_marginal(psi, Mode::A, -x);
  const double pb = kPi * husimi_marginal(psi, Mode::B, -y);
  const double pab = kPi * kPi * husimi(psi, -x, -y);
  return 1.0 - 2.0 * pa - 2.0 * pb + 4.0 * pab;
}

AnyFockState build_state(const StateSpec& spec, const TruncationPolicy& policy) {
  policy.validate();
  const double g = spec.gamma();
  const double s = spec.s();
  const int sign = spec.sign();
  const Family f = spec.family();

  if (!spec.two_mode()) {
    FockState psi = cat(Complex(g, 0.0), sign, policy);
    psi = apply_single_squeeze(psi, s, policy);
    return as_single(truncate(as_two_mode(psi), policy, "build_state"));
  }

  const FockState vacuum = coherent(0.0, policy);
  FockState source = cat(Complex(kSqrt2 * g, 0.0), sign, policy);
  const bool ess = f == Family::EssPlus || f == Family::EssMinus;
  if (ess) source = apply_single_squeeze(source, s, policy);
  // Split in a space wide enough to hold every photon in either arm.
  TwoModeFockState psi = apply_beam_splitter(tensor(source, vacuum), policy);
  const bool phi = f == Family::EcsPhiPlus || f == Family::EcsPhiMinus ||
                   f == Family::SecsPhiPlus || f == Family::SecsPhiMinus;
  if (phi) psi = apply_parity_b(psi);
  if (!ess) psi = apply_two_mode_squeeze(psi, s, policy);
  return truncate(psi, policy, "build_state");
}

Eigen::MatrixXcd displacement_matrix(Complex alpha, int rows, int cols) {
  // For m = n + k: <m|D|n> = f_n^k e^{ik arg alpha}, and for n = m + k:
  // <m|D|n> = f_m^k (-e^{-i arg alpha})^k, where
  //   f_n^k = sqrt(n!/(n+k)!) x^{k/2} e^{-x/2} L_n^k(x),  x = |alpha|^2.
  // f_n^k is advanced in n with the normalised Laguerre recurrence; the seed
  // f_0^k is formed in log space so large |alpha| neither over- nor underflows.
  Eigen::MatrixXcd out(rows, cols);
  const double x = std::norm(alpha);
  const double theta = std::arg(alpha);
  const int kmax = std::max(rows, cols);
  std::vector<double> f;
  for (int k = 0; k < kmax; ++k) {
    const int len = std::min(k < rows ? rows - k : 0, cols) ;
    const int len_up = std::min(k < cols ? cols - k : 0, rows);
    const int n_len = std::max(len, len_up);
    if (n_len == 0) continue;
    f.assign(static_cast<std::size_t>(n_len), 0.0);
    const double log_f0 =
        (x > 0.0 ? 0.5 * k * std::log(x) : (k == 0 ? 0.0 : -INFINITY)) - 0.5 * x -
        0.5 * std::lgamma(k + 1.0);
    f[0] = std::exp(log_f0);
    if (n_len > 1) f[1] = f[0] * (1.0 + k - x) / std::sqrt(k + 1.0);
    for (int n = 1; n + 1 < n_len; ++n) {
      f[n + 1] = ((2.0 * n + 1.0 + k - x) * f[n] - std::sqrt(n * (n + static_cast<double>(k))) * f[n - 1]) /
                 std::sqrt((n + 1.0) * (n + k + 1.0));
    }
    const Complex down = std::polar(1.0, k * theta);
    const Complex up = std::polar(1.0, -k * theta) * ((k % 2 == 0) ? 1.0 : -1.0);
    for (int n = 0; n < len; ++n) out(n + k, n) = f[n] * down;
    if (k > 0) {
      for (int m = 0; m < len_up; ++m) out(m, m + k) = f[m] * up;
    }
  }
  return out;
}

DensityMatrix density_from_wigner(const std::function<double(Complex)>& w,
                                  int dim, const PhaseSpaceGrid& grid) {
  if (dim < 1 || grid.points_per_axis < 2 || !(grid.half_width > 0.0)) {
    throw DomainError("density_from_wigner: bad grid or dimension");
  }
  const int n = grid.points_per_axis;
  const double h = 2.0 * grid.half_width / (n - 1);
  DensityMatrix rho = DensityMatrix::Zero(dim, dim);
  for (int ix = 0; ix < n; ++ix) {
    const double x = -grid.half_width + ix * h;
    const double wx = (ix == 0 || ix == n - 1) ? 0.5 : 1.0;
    for (int iy = 0; iy < n; ++iy) {
      const double y = -grid.half_width + iy * h;
      const double wy = (iy == 0 || iy == n - 1) ? 0.5 : 1.0;
      const Complex alpha(x, y);
      const double value = w(alpha);
      if (value == 0.0) continue;
      rho += (2.0 * value * h * h * wx * wy) * parity_displacement(alpha, dim);
    }
  }
  return rho;
}

double husimi(const DensityMatrix& rho, Complex alpha) {
  const auto c = coherent_amplitudes(alpha, static_cast<int>(rho.rows()));
  Eigen::VectorXcd v(rho.rows());
  for (int n = 0; n < rho.rows(); ++n) v[n] = c[n];
  return (v.adjoint() * rho * v)(0, 0).real() / kPi;
}

double expectation(const DensityMatrix& rho, const FockState& psi) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(rho.rows());
  for (int n = 0; n < std::min<int>(psi.dim(), static_cast<int>(rho.rows())); ++n) {
    v[n] = psi.amp[n];
  }
  return (v.adjoint() * rho * v)(0, 0).real();
}

double odd_weight(const DensityMatrix& rho) {
  double m = 0.0;
  for (int n = 1; n < rho.rows(); n += 2) m += rho(n, n).real();
  return m;
}

OracleReport oracle_check(const OracleCheckConfig& config) {
  OracleReport report;
  const TruncationPolicy& policy = config.policy;

  auto record = [&](const StateSpec& spec, const char* quantity, Complex a,
                    Complex b, double analytic, double oracle) {
    if (config.perturb_family && *config.perturb_family == spec.family()) {
      analytic += config.perturbation;
    }
    ++report.comparisons;
    const double err = std::abs(analytic - oracle);
    report.max_abs_error = std::max(report.max_abs_error, err);
    if (!(err <= config.tolerance)) {
      report.mismatches.push_back(
          {spec.family(), spec.gamma(), spec.s(), quantity, a, b, analytic, oracle});
    }
  };

  for (const Family family : kAllFamilies) {
    std::vector<double> squeezes = {0.0};
    if (is_squeezed_family(family)) squeezes = config.squeezes;
    for (const double gamma : config.gammas) {
      for (const double s : squeezes) {
        const StateSpec spec = StateSpec::make(family, gamma, s);
        const AnyFockState built = build_state(spec, policy);
        if (!spec.two_mode()) {
          const auto& psi = std::get<FockState>(built);
          for (const Complex p : config.points) {
            record(spec, "W", p, 0.0, wigner_scs(spec, p), wigner(psi, p, policy));
            record(spec, "Q", p, 0.0, husimi_single(spec, p), husimi(psi, p));
          }
          continue;
        }
        const auto& psi = std::get<TwoModeFockState>(built);
        for (const auto& [a, b] : config.pairs) {
          record(spec, "W", a, b, wigner_two_mode(spec, a, b), wigner(psi, a, b, policy));
          record(spec, "Q", a, b, husimi_two_mode(spec, a, b), husimi(psi, a, b));
          record(spec, "Qa", a, 0.0, catbell::husimi_marginal(spec, Mode::A, a),
                 husimi_marginal(psi, Mode::A, a));
          record(spec, "Qb", 0.0, b, catbell::husimi_marginal(spec, Mode::B, b),
                 husimi_marginal(psi, Mode::B, b));
        }
      }
    }
  }
  return report;
}

}  // namespace catbell
