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


#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "catbell/bell.hpp"
#include "catbell/error.hpp"
#include "catbell/experiment.hpp"
#include "catbell/fock_oracle.hpp"
#include "catbell/optimize.hpp"
#include "catbell/states.hpp"

namespace catbell::cli {

namespace {

constexpr const char* kConventions =
    "dimensionless quadrature units, alpha = <a>; W = (2/pi) Tr[rho D Pi D^dag], "
    "Q = <alpha|rho|alpha>/pi; s > 0 squeezes along Re alpha";

// Usage problems found after CLI11 has parsed the flags.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string family_list() {
  std::string s;
  for (const Family f : kAllFamilies) {
    if (!s.empty()) s += ", ";
    s += family_name(f);
  }
  return s;
}

Family require_family(const std::string& name) {
  const auto f = parse_family(name);
  if (!f) throw UsageError("unknown family '" + name + "'; valid: " + family_list());
  return *f;
}

Scheme require_scheme(const std::string& name) {
  const auto s = parse_scheme(name);
  if (!s) throw UsageError("unknown scheme '" + name + "'; valid: parity, ch, onoff");
  return *s;
}

double parse_double(const std::string& s) {
  double v = 0.0;
  const char* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw UsageError("not a finite decimal number: '" + s + "'");
  }
  return v;
}

std::vector<double> split_numbers(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_double(item));
  return out;
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  if (const auto* i = std::get_if<std::int64_t>(&c)) return std::to_string(*i);
  return std::get<std::string>(c);
}

nlohmann::ordered_json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return *i;
  return std::get<std::string>(c);
}

void push_settings(std::vector<Cell>& row, const DisplacementSettings& s) {
  for (const Complex z : {s.a, s.a_prime, s.b, s.b_prime}) {
    row.emplace_back(z.real());
    row.emplace_back(z.imag());
  }
}

const std::vector<std::string> kSettingColumns = {
    "a_re", "a_im", "ap_re", "ap_im", "b_re", "b_im", "bp_re", "bp_im"};

struct OptimizerFlags {
  int n_starts = OptimizerConfig{}.n_starts;
  int n_anchor_starts = OptimizerConfig{}.n_anchor_starts;
  std::uint64_t seed = OptimizerConfig{}.seed;
  std::optional<double> box;
  int max_iter = OptimizerConfig{}.max_iter;

  void attach(CLI::App* app) {
    app->add_option("--n-starts", n_starts, "Box multistart count");
    app->add_option("--n-anchor-starts", n_anchor_starts, "Husimi-anchored start count");
    app->add_option("--seed", seed, "Start-point seed");
    app->add_option("--box", box, "Start box half-width");
    app->add_option("--max-iter", max_iter, "Nelder-Mead iterations per start");
  }

  OptimizerConfig config() const {
    OptimizerConfig c;
    c.n_starts = n_starts;
    c.n_anchor_starts = n_anchor_starts;
    c.seed = seed;
    c.box_halfwidth = box;
    c.max_iter = max_iter;
    try {
      c.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    return c;
  }
};

StateSpec make_spec(Family f, double gamma, double s) {
  try {
    return StateSpec::make(f, gamma, s);
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
}

// --- subcommands -----------------------------------------------------------

struct EvalArgs {
  std::string family;
  double gamma = 0.0;
  double s = 0.0;
  std::vector<std::string> points;
  std::string grid;
  std::string beta = "0,0";
};

Table cmd_eval(const EvalArgs& a) {
  const StateSpec spec = make_spec(require_family(a.family), a.gamma, a.s);
  const bool two = spec.two_mode();
  if (a.points.empty() == a.grid.empty()) {
    throw UsageError("eval: give exactly one of --points or --grid");
  }

  std::vector<std::pair<Complex, Complex>> pts;
  if (!a.points.empty()) {
    for (const auto& p : a.points) {
      const auto v = split_numbers(p);
      if (v.size() != (two ? 4u : 2u)) {
        throw UsageError("eval: point '" + p + "' needs " + (two ? "4" : "2") +
                         " comma-separated numbers");
      }
      pts.emplace_back(Complex(v[0], v[1]), two ? Complex(v[2], v[3]) : Complex());
    }
  } else {
    const auto axis = parse_grid(a.grid);
    Complex beta;
    if (two) {
      const auto v = split_numbers(a.beta);
      if (v.size() != 2) throw UsageError("eval: --beta needs re,im");
      beta = Complex(v[0], v[1]);
    }
    for (const double re : axis) {
      for (const double im : axis) pts.emplace_back(Complex(re, im), beta);
    }
  }

  Table t;
  t.command = "eval";
  t.columns = two ? std::vector<std::string>{"a_re", "a_im", "b_re", "b_im", "W", "Q"}
                  : std::vector<std::string>{"a_re", "a_im", "W", "Q"};
  for (const auto& [x, y] : pts) {
    std::vector<Cell> row{x.real(), x.imag()};
    if (two) {
      row.emplace_back(y.real());
      row.emplace_back(y.imag());
      row.emplace_back(wigner_two_mode(spec, x, y));
      row.emplace_back(husimi_two_mode(spec, x, y));
    } else {
      row.emplace_back(wigner_scs(spec, x));
      row.emplace_back(husimi_single(spec, x));
    }
    t.rows.push_back(std::move(row));
  }
  t.summary = {{"family", std::string(family_name(spec.family()))},
               {"gamma", spec.gamma()},
               {"s", spec.s()}};
  return t;
}

struct BellArgs {
  std::string family;
  double gamma = 0.0;
  double s = 0.0;
  std::string scheme = "parity";
  OptimizerFlags opt;
};

const std::vector<std::string> kBellColumns = [] {
  std::vector<std::string> c = {"family", "gamma", "s", "scheme", "B", "B_signed"};
  c.insert(c.end(), kSettingColumns.begin(), kSettingColumns.end());
  c.insert(c.end(), {"starts_converged", "starts_total", "error"});
  return c;
}();

std::vector<Cell> bell_row(Family f, double gamma, double s, Scheme scheme,
                           const std::optional<BellOutcome>& o,
                           const std::string& error) {
  std::vector<Cell> row{std::string(family_name(f)), gamma, s,
                        std::string(scheme_name(scheme))};
  const BellOutcome b = o.value_or(BellOutcome{});
  row.emplace_back(o ? b.value : std::nan(""));
  row.emplace_back(o ? b.signed_value : std::nan(""));
  push_settings(row, b.settings);
  row.emplace_back(static_cast<std::int64_t>(b.starts_converged));
  row.emplace_back(static_cast<std::int64_t>(b.starts_total));
  row.emplace_back(error);
  return row;
}

Table cmd_bell(const BellArgs& a) {
  const Family f = require_family(a.family);
  const Scheme scheme = require_scheme(a.scheme);
  const StateSpec spec = make_spec(f, a.gamma, a.s);
  if (!spec.two_mode()) throw UsageError("bell: family must be a two-mode family");
  const BellOutcome o = maximize_bell(spec, scheme, a.opt.config());
  Table t;
  t.command = "bell";
  t.columns = kBellColumns;
  t.rows.push_back(bell_row(f, spec.gamma(), spec.s(), scheme, o, ""));
  return t;
}

struct SweepArgs {
  std::string family;
  std::string gammas;
  std::string s_grid = "0";
  std::string scheme = "parity";
  OptimizerFlags opt;
};

Table cmd_sweep(const SweepArgs& a, bool& any_failed) {
  const Family f = require_family(a.family);
  const Scheme scheme = require_scheme(a.scheme);
  if (!is_two_mode(f)) throw UsageError("sweep: family must be a two-mode family");
  const auto gs = parse_grid(a.gammas);
  const auto ss = parse_grid(a.s_grid);
  std::vector<SweepRow> rows;
  try {
    rows = sweep(f, gs, ss, scheme, a.opt.config());
  } catch (const DomainError& e) {
    throw UsageError(e.what());
  }
  Table t;
  t.command = "sweep";
  t.columns = kBellColumns;
  any_failed = false;
  for (const auto& r : rows) {
    if (!r.outcome) any_failed = true;
    t.rows.push_back(bell_row(f, r.gamma, r.s, scheme, r.outcome, r.error));
  }
  return t;
}

struct ExperimentArgs {
  std::string scheme = "parity";
  double g_min = 1.0001;
  double g_max = 1.1;
  int g_points = 50;
  double margin = ThresholdOptions{}.margin;
  std::string ideal;
  OptimizerFlags opt;
};

Table cmd_experiment(const ExperimentArgs& a, bool& failed) {
  const Scheme scheme = require_scheme(a.scheme);
  const OptimizerConfig config = a.opt.config();
  failed = false;
  Table t;
  t.command = "experiment";

  if (!a.ideal.empty()) {
    IdealSource src;
    if (a.ideal == "phi2") {
      src = IdealSource::Phi2;
    } else if (a.ideal == "sscs") {
      src = IdealSource::Sscs;
    } else {
      throw UsageError("experiment: --ideal must be phi2 or sscs");
    }
    const BellOutcome o = ideal_bell(src, scheme, config);
    t.columns = {"source", "scheme", "B", "B_signed"};
    t.columns.insert(t.columns.end(), kSettingColumns.begin(), kSettingColumns.end());
    std::vector<Cell> row{a.ideal, std::string(scheme_name(scheme)), o.value,
                          o.signed_value};
    push_settings(row, o.settings);
    t.rows.push_back(std::move(row));
    return t;
  }

  if (!(a.g_min > 1.0) || !(a.g_max > a.g_min) || a.g_points < 2) {
    throw UsageError("experiment: need 1 < g-min < g-max and g-points >= 2");
  }
  // Log-spaced in g - 1: fidelity loss is roughly linear in g - 1 and the
  // on/off crossing sits within 1e-2 of g = 1.
  std::vector<double> grid;
  const double l0 = std::log10(a.g_min - 1.0);
  const double l1 = std::log10(a.g_max - 1.0);
  for (int i = 0; i < a.g_points; ++i) {
    grid.push_back(1.0 + std::pow(10.0, l0 + (l1 - l0) * i / (a.g_points - 1)));
  }
  ThresholdOptions topt;
  topt.margin = a.margin;
  const ThresholdResult r = threshold_sweep(grid, scheme, config, topt);

  t.columns = {"g", "fidelity", "normalization", "B"};
  t.columns.insert(t.columns.end(), kSettingColumns.begin(), kSettingColumns.end());
  for (const auto& row : r.rows) {
    std::vector<Cell> cells{row.g, row.fidelity, row.normalization, row.bell};
    push_settings(cells, row.settings);
    t.rows.push_back(std::move(cells));
  }
  t.summary = {{"scheme", std::string(scheme_name(scheme))},
               {"status", r.status},
               {"f_star", r.f_star ? Cell(*r.f_star) : Cell(std::string("none"))},
               {"margin", a.margin},
               {"fidelity_monotone", std::int64_t{r.fidelity_monotone}},
               {"bell_monotone", std::int64_t{r.bell_monotone}}};
  failed = !r.fidelity_monotone || !r.bell_monotone;
  return t;
}

struct OracleArgs {
  std::string perturb_family;
  double perturbation = 0.0;
};

Table cmd_oracle_check(const OracleArgs& a, bool& mismatch) {
  OracleCheckConfig c;
  if (!a.perturb_family.empty()) {
    c.perturb_family = require_family(a.perturb_family);
    c.perturbation = a.perturbation;
  }
  const OracleReport r = oracle_check(c);
  Table t;
  t.command = "oracle-check";
  t.columns = {"family", "gamma", "s", "quantity", "a_re", "a_im",
               "b_re",   "b_im",  "analytic", "oracle"};
  for (const auto& m : r.mismatches) {
    t.rows.push_back({std::string(family_name(m.family)), m.gamma, m.s, m.quantity,
                      m.alpha.real(), m.alpha.imag(), m.beta.real(), m.beta.imag(),
                      m.analytic, m.oracle});
  }
  t.summary = {{"comparisons", static_cast<std::int64_t>(r.comparisons)},
               {"max_abs_error", r.max_abs_error},
               {"tolerance", c.tolerance},
               {"passed", std::int64_t{r.passed()}}};
  mismatch = !r.passed();
  return t;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (const char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void write_csv(const Table& t, std::ostream& out) {
  out << "# catbell " << t.command << " table v" << kTableVersion << "; "
      << kConventions << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    out << (i ? "," : "") << csv_field(t.columns[i]);
  }
  out << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << csv_field(cell_text(row[i]));
    }
    out << "\n";
  }
  for (const auto& [k, v] : t.summary) out << "# " << k << "=" << cell_text(v) << "\n";
}

void write_json(const Table& t, std::ostream& out) {
  nlohmann::ordered_json j;
  j["format"] = "catbell-table";
  j["version"] = kTableVersion;
  j["command"] = t.command;
  j["conventions"] = kConventions;
  j["columns"] = t.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r;
    for (std::size_t i = 0; i < row.size(); ++i) {
      // JSON has no NaN; failed sweep rows carry null instead.
      const auto* d = std::get_if<double>(&row[i]);
      r[t.columns[i]] = (d && !std::isfinite(*d)) ? nlohmann::ordered_json() : cell_json(row[i]);
    }
    rows.push_back(std::move(r));
  }
  j["rows"] = std::move(rows);
  auto summary = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.summary) summary[k] = cell_json(v);
  j["summary"] = std::move(summary);
  out << j.dump(2) << "\n";
}

void write_atomically(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << contents;
    f.flush();
    if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw std::runtime_error("rename to " + path + " failed: " + ec.message());
  }
}

std::vector<double> parse_grid(const std::string& spec) {
  if (spec.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream in(spec);
    std::string item;
    while (std::getline(in, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw UsageError("grid '" + spec + "' is not lo:hi:n");
    const double lo = parse_double(parts[0]);
    const double hi = parse_double(parts[1]);
    const double n = parse_double(parts[2]);
    if (n < 1 || n != std::floor(n)) throw UsageError("grid '" + spec + "': n must be a positive integer");
    const int count = static_cast<int>(n);
    if (count == 1) return {lo};
    std::vector<double> v;
    for (int i = 0; i < count; ++i) v.push_back(lo + (hi - lo) * i / (count - 1));
    return v;
  }
  auto v = split_numbers(spec);
  if (v.empty()) throw UsageError("empty grid");
  return v;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bell tests with squeezed and entangled cat states"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "key = value file; flags given on the command line win");

  std::string format = "csv";
  std::string output;
  app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("-o,--output", output, "Output file (written atomically); stdout if unset");

  EvalArgs eval_a;
  auto* eval = app.add_subcommand("eval", "Wigner and Husimi values of a state");
  eval->add_option("--family", eval_a.family, "State family")->required();
  eval->add_option("--gamma", eval_a.gamma, "Amplitude (per arm for two-mode families)")->required();
  eval->add_option("--s", eval_a.s, "Squeeze parameter");
  eval->add_option("--points", eval_a.points, "Points re,im (two-mode: re,im,re,im)");
  eval->add_option("--grid", eval_a.grid, "lo:hi:n axis for a square grid over mode a");
  eval->add_option("--beta", eval_a.beta, "Fixed mode-b point re,im for --grid");

  BellArgs bell_a;
  auto* bell = app.add_subcommand("bell", "Optimised Bell value of a two-mode state");
  bell->add_option("--family", bell_a.family, "State family")->required();
  bell->add_option("--gamma", bell_a.gamma, "Per-arm amplitude")->required();
  bell->add_option("--s", bell_a.s, "Squeeze parameter");
  bell->add_option("--scheme", bell_a.scheme, "parity, ch or onoff");
  bell_a.opt.attach(bell);

  SweepArgs sweep_a;
  auto* sw = app.add_subcommand("sweep", "Optimised Bell values over a (gamma, s) grid");
  sw->add_option("--family", sweep_a.family, "State family")->required();
  sw->add_option("--gammas", sweep_a.gammas, "lo:hi:n or comma list")->required();
  sw->add_option("--s-grid", sweep_a.s_grid, "lo:hi:n or comma list");
  sw->add_option("--scheme", sweep_a.scheme, "parity, ch or onoff");
  sweep_a.opt.attach(sw);

  ExperimentArgs exp_a;
  auto* ex = app.add_subcommand("experiment", "Fidelity thresholds for the realistic source");
  ex->add_option("--scheme", exp_a.scheme, "parity or onoff");
  ex->add_option("--g-min", exp_a.g_min, "Smallest gain (> 1)");
  ex->add_option("--g-max", exp_a.g_max, "Largest gain");
  ex->add_option("--g-points", exp_a.g_points, "Number of gains, log-spaced in g - 1");
  ex->add_option("--margin", exp_a.margin, "Crossing level above 2");
  ex->add_option("--ideal", exp_a.ideal, "phi2 or sscs: Bell value of the ideal state only");
  exp_a.opt.attach(ex);

  OracleArgs or_a;
  auto* oc = app.add_subcommand("oracle-check", "Compare closed forms with the Fock engine");
  oc->add_option("--perturb-family", or_a.perturb_family, "Test hook: family to perturb");
  oc->add_option("--perturbation", or_a.perturbation, "Test hook: offset added");

  std::vector<std::string> argv_store{"catbell"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : argv_store) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    err << "catbell: " << e.what() << "\n";
    return kUsage;
  }

  int code = kOk;
  Table table;
  try {
    if (*eval) {
      table = cmd_eval(eval_a);
    } else if (*bell) {
      table = cmd_bell(bell_a);
    } else if (*sw) {
      bool failed = false;
      table = cmd_sweep(sweep_a, failed);
      if (failed) code = kNumerical;
    } else if (*ex) {
      bool failed = false;
      table = cmd_experiment(exp_a, failed);
      if (failed) code = kNumerical;
    } else if (*oc) {
      bool mismatch = false;
      table = cmd_oracle_check(or_a, mismatch);
      if (mismatch) code = kOracleMismatch;
    }
  } catch (const UsageError& e) {
    err << "catbell: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "catbell: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "catbell: numerical failure: " << e.what() << "\n";
    return kNumerical;
  }

  std::ostringstream buf;
  if (format == "json") {
    write_json(table, buf);
  } else {
    write_csv(table, buf);
  }
  if (output.empty()) {
    out << buf.str();
  } else {
    try {
      write_atomically(output, buf.str());
    } catch (const std::exception& e) {
      err << "catbell: " << e.what() << "\n";
      return kUsage;
    }
  }
  if (code == kNumerical) err << "catbell: some points failed; see the error column\n";
  if (code == kOracleMismatch) err << "catbell: oracle mismatch\n";
  return code;
}

}  // namespace catbell::cli
