#include "pdmdirac/cli_app.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "pdmdirac/dirac_system.hpp"
#include "pdmdirac/errors.hpp"
#include "pdmdirac/foldy_wouthuysen.hpp"
#include "pdmdirac/harmonic.hpp"
#include "pdmdirac/heun.hpp"
#include "pdmdirac/output.hpp"
#include "pdmdirac/potentials.hpp"
#include "pdmdirac/profiles.hpp"

namespace pdmdirac {

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class FieldType { Number, Integer, String, Object };

// The validation tables mirror docs/cli-config.schema.json; unknown keys are
// rejected, known keys are type-checked.
const std::map<std::string, std::map<std::string, FieldType>>& schema() {
  static const std::map<std::string, std::map<std::string, FieldType>> s = {
      {"profile",
       {{"profile", FieldType::Object},
        {"n", FieldType::Integer},
        {"xlo", FieldType::Number},
        {"xhi", FieldType::Number},
        {"out_dir", FieldType::String}}},
      {"potential",
       {{"profile", FieldType::Object},
        {"n", FieldType::Integer},
        {"xlo", FieldType::Number},
        {"xhi", FieldType::Number},
        {"energy", FieldType::Number},
        {"out_dir", FieldType::String}}},
      {"spectrum",
       {{"profile", FieldType::Object},
        {"n", FieldType::Integer},
        {"xhi", FieldType::Number},
        {"k", FieldType::Integer},
        {"out_dir", FieldType::String}}},
      {"scatter",
       {{"m0", FieldType::Number},
        {"a", FieldType::Number},
        {"emin", FieldType::Number},
        {"emax", FieldType::Number},
        {"steps", FieldType::Integer},
        {"out_dir", FieldType::String}}},
      {"heun",
       {{"m0", FieldType::Number},
        {"a", FieldType::Number},
        {"energy", FieldType::Number},
        {"order", FieldType::Integer},
        {"xi", FieldType::Number},
        {"out_dir", FieldType::String}}},
      {"fw-check",
       {{"profile", FieldType::Object},
        {"n", FieldType::Integer},
        {"xlo", FieldType::Number},
        {"xhi", FieldType::Number},
        {"window_lo", FieldType::Number},
        {"window_hi", FieldType::Number},
        {"sweep_doublings", FieldType::Integer},
        {"out_dir", FieldType::String}}},
      {"pt-check",
       {{"profile", FieldType::Object},
        {"n", FieldType::Integer},
        {"xhi", FieldType::Number},
        {"operator", FieldType::String},
        {"gamma", FieldType::String},
        {"out_dir", FieldType::String}}},
      {"figures", {{"out_dir", FieldType::String}}},
  };
  return s;
}

const std::map<std::string, std::map<std::string, FieldType>>& profile_schema() {
  static const std::map<std::string, std::map<std::string, FieldType>> s = {
      {"linear", {{"mu", FieldType::Number}, {"xhi", FieldType::Number}}},
      {"hyperbolic",
       {{"m0", FieldType::Number},
        {"a", FieldType::Number},
        {"xlo", FieldType::Number},
        {"xhi", FieldType::Number}}},
  };
  return s;
}

void check_field_type(const std::string& key, const json& value, FieldType type) {
  switch (type) {
    case FieldType::Number:
      if (!value.is_number()) throw ConfigError("config key '" + key + "' must be a number");
      break;
    case FieldType::Integer:
      if (!value.is_number_integer())
        throw ConfigError("config key '" + key + "' must be an integer");
      break;
    case FieldType::String:
      if (!value.is_string()) throw ConfigError("config key '" + key + "' must be a string");
      break;
    case FieldType::Object:
      if (!value.is_object()) throw ConfigError("config key '" + key + "' must be an object");
      break;
  }
}

void validate_profile_spec(const json& p) {
  if (!p.is_object() || !p.contains("kind") || !p.at("kind").is_string())
    throw ConfigError("profile spec: missing string key 'kind'");
  const std::string kind = p.at("kind").get<std::string>();
  const auto it = profile_schema().find(kind);
  if (it == profile_schema().end()) throw ConfigError("profile spec: unknown kind '" + kind + "'");
  for (const auto& [key, value] : p.items()) {
    if (key == "kind") continue;
    const auto f = it->second.find(key);
    if (f == it->second.end())
      throw ConfigError("profile spec: unknown key '" + key + "' for kind '" + kind + "'");
    check_field_type("profile." + key, value, f->second);
  }
  for (const auto& [key, type] : it->second) {
    (void)type;
    if (!p.contains(key)) throw ConfigError("profile spec: missing key '" + key + "'");
  }
}

void validate_config(const std::string& subcommand, const json& cfg) {
  const auto it = schema().find(subcommand);
  if (it == schema().end()) throw ConfigError("unknown subcommand '" + subcommand + "'");
  for (const auto& [key, value] : cfg.items()) {
    const auto f = it->second.find(key);
    if (f == it->second.end())
      throw ConfigError("config key '" + key + "' is not valid for subcommand '" + subcommand +
                        "'");
    check_field_type(key, value, f->second);
  }
  if (cfg.contains("profile")) validate_profile_spec(cfg.at("profile"));
}

MassProfile profile_from_config(const json& p) { return MassProfile::from_json_text(p.dump()); }

std::filesystem::path out_dir_from_config(const json& cfg) {
  if (cfg.contains("out_dir")) return std::filesystem::path(cfg.at("out_dir").get<std::string>());
  if (const char* env = std::getenv("PDMDIRAC_OUT_DIR")) return std::filesystem::path(env);
  return std::filesystem::path(".");
}

Grid grid_from_config(const json& cfg, const MassProfile& profile, int default_n) {
  const int n = cfg.contains("n") ? cfg.at("n").get<int>() : default_n;
  double xlo = cfg.contains("xlo") ? cfg.at("xlo").get<double>() : profile.x_lo();
  double xhi = cfg.contains("xhi") ? cfg.at("xhi").get<double>() : profile.x_hi();
  return Grid(xlo, xhi, n);
}

void report_written(const std::filesystem::path& p) { std::cout << p.string() << "\n"; }

// ---------------------------------------------------------------- profile --

int run_profile(const json& cfg) {
  const MassProfile profile = profile_from_config(cfg.at("profile"));
  const Grid grid = grid_from_config(cfg, profile, 2001);
  CsvTable table;
  table.header = {"x", "m", "dm_dx", "d2m_dx2"};
  for (int i = 0; i < grid.n; ++i) {
    const double x = grid.node(i);
    table.rows.push_back({x, profile.mass_at(x), profile.dmass_at(x), profile.d2mass_at(x)});
  }
  const auto path = out_dir_from_config(cfg) / "profile.csv";
  write_file_atomic(path, table.to_string());
  report_written(path);
  return kExitOk;
}

// -------------------------------------------------------------- potential --

int run_potential(const json& cfg) {
  const MassProfile profile = profile_from_config(cfg.at("profile"));
  const double energy = cfg.contains("energy") ? cfg.at("energy").get<double>() : 0.0;
  Grid grid = grid_from_config(cfg, profile, 2001);
  if (profile.kind() == ProfileKind::Linear && !cfg.contains("xlo") && grid.x_lo == 0.0) {
    // keep clear of the declared boundary singularity at x = 0
    grid = Grid(grid.x_hi / grid.n, grid.x_hi, grid.n);
  }
  const auto V = schrodingerizing_potential(profile, grid);
  const auto veff = effective_potential_general(profile, V, energy);
  CsvTable table;
  table.header = {"x", "re_V", "im_V", "re_V_eff", "im_V_eff"};
  for (int i = 0; i < grid.n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    table.rows.push_back({grid.node(i), V.values[k].real(), V.values[k].imag(),
                          veff.values[k].real(), veff.values[k].imag()});
  }
  const auto path = out_dir_from_config(cfg) / "potential.csv";
  write_file_atomic(path, table.to_string());
  report_written(path);
  return kExitOk;
}

// --------------------------------------------------------------- spectrum --

int run_spectrum(const json& cfg) {
  const MassProfile profile = profile_from_config(cfg.at("profile"));
  if (profile.kind() != ProfileKind::Linear)
    throw ConfigError("spectrum: only the linear profile has bound states");
  const double mu = profile.mu();
  const int k = cfg.contains("k") ? cfg.at("k").get<int>() : 4;
  const int n = cfg.contains("n") ? cfg.at("n").get<int>() : 4000;
  const double xhi = cfg.contains("xhi") ? cfg.at("xhi").get<double>() : profile.x_hi();
  const Grid grid(0.0, xhi, n);

  const Spectrum numeric = numeric_energies(mu, grid, k);
  std::vector<int> n_list;
  for (int j = 0; j < k; ++j) n_list.push_back(2 * j + 1);
  const auto analytic = analytic_energies(mu, n_list);

  CsvTable table;
  table.header = {"n", "E_analytic", "E_numeric", "abs_err"};
  for (int j = 0; j < k; ++j) {
    const double ea = analytic[static_cast<std::size_t>(j)];
    const double en = numeric.eigenvalues[static_cast<std::size_t>(j)].real();
    table.rows.push_back({static_cast<double>(n_list[static_cast<std::size_t>(j)]), ea, en,
                          std::abs(ea - en)});
  }
  const auto dir = out_dir_from_config(cfg);
  const auto csv_path = dir / "spectrum.csv";
  write_file_atomic(csv_path, table.to_string());
  report_written(csv_path);

  // First four analytic eigenfunctions, the content of the eigenstate figure.
  std::vector<SvgSeries> series;
  const Grid plot_grid(0.0, std::min(xhi, 8.0 / std::sqrt(mu)), 601);
  for (int j = 0; j < 4; ++j) {
    const int nq = 2 * j + 1;
    const auto field = analytic_eigenfunction(mu, nq, plot_grid);
    SvgSeries s;
    s.name = "n = " + std::to_string(nq);
    for (int i = 0; i < plot_grid.n; ++i) {
      s.x.push_back(plot_grid.node(i));
      s.y.push_back(field.values[static_cast<std::size_t>(i)].real());
    }
    series.push_back(std::move(s));
  }
  const auto svg_path = dir / "eigenfunctions.svg";
  write_file_atomic(svg_path, svg_line_chart("Linear-mass eigenfunctions", "x", "phi1", series));
  report_written(svg_path);
  return kExitOk;
}

// ---------------------------------------------------------------- scatter --

int run_scatter(const json& cfg) {
  const double m0 = cfg.contains("m0") ? cfg.at("m0").get<double>() : 1.0;
  const double a = cfg.contains("a") ? cfg.at("a").get<double>() : 1.0;
  const double emin = cfg.contains("emin") ? cfg.at("emin").get<double>() : 0.2;
  const double emax = cfg.contains("emax") ? cfg.at("emax").get<double>() : 5.0;
  const int steps = cfg.contains("steps") ? cfg.at("steps").get<int>() : 25;
  if (!(emax > emin) || steps < 2) throw ConfigError("scatter: need emax > emin and steps >= 2");

  CsvTable table;
  table.header = {"E", "T", "R"};
  for (int i = 0; i < steps; ++i) {
    const double e = emin + (emax - emin) * i / (steps - 1.0);
    const auto tr = transmission(m0, a, e);
    table.rows.push_back({e, tr.transmission, tr.reflection});
  }
  const auto path = out_dir_from_config(cfg) / "scatter.csv";
  write_file_atomic(path, table.to_string());
  report_written(path);
  return kExitOk;
}

// ------------------------------------------------------------------- heun --

int run_heun(const json& cfg) {
  const double m0 = cfg.contains("m0") ? cfg.at("m0").get<double>() : 1.0;
  const double a = cfg.contains("a") ? cfg.at("a").get<double>() : 1.0;
  const double energy = cfg.contains("energy") ? cfg.at("energy").get<double>() : 1.0;
  const int order = cfg.contains("order") ? cfg.at("order").get<int>() : 40;
  const double xi = cfg.contains("xi") ? cfg.at("xi").get<double>() : 1.2;

  const HeunParameters params = map_to_heun(m0, a, energy);
  json out;
  out["config"] = cfg;
  out["parameters"] = {{"gamma", params.gamma},
                       {"delta", params.delta},
                       {"epsilon", params.epsilon},
                       {"d", params.d},
                       {"q", params.q},
                       {"alpha", {params.alpha.real(), params.alpha.imag()}},
                       {"beta", {params.beta.real(), params.beta.imag()}},
                       {"fuchsian_residual", params.fuchsian_residual()}};
  for (double s : {0.0, 0.5}) {
    const auto series = frobenius_at_one(m0, a, energy, s, order);
    json branch;
    branch["exponent"] = s;
    json coeffs = json::array();
    for (const auto& c : series.coefficients) coeffs.push_back({c.real(), c.imag()});
    branch["coefficients"] = coeffs;
    const Complex v = series.value(xi);
    branch["value_at_xi"] = {v.real(), v.imag()};
    branch["recurrence_residual"] = series.recurrence_residual();
    out["branches"].push_back(branch);
  }
  const auto path = out_dir_from_config(cfg) / "heun.json";
  write_file_atomic(path, out.dump(2) + "\n");
  report_written(path);
  return kExitOk;
}

// --------------------------------------------------------------- fw-check --

int run_fw_check(const json& cfg) {
  json pspec = cfg.contains("profile")
                   ? cfg.at("profile")
                   : json{{"kind", "hyperbolic"}, {"m0", 5.0}, {"a", 1.0}, {"xlo", -8.0}, {"xhi", 8.0}};
  validate_profile_spec(pspec);
  if (pspec.at("kind").get<std::string>() != "hyperbolic")
    throw ConfigError("fw-check: the mass-scale sweep needs the hyperbolic profile");
  const double window_lo = cfg.contains("window_lo") ? cfg.at("window_lo").get<double>() : -2.0;
  const double window_hi = cfg.contains("window_hi") ? cfg.at("window_hi").get<double>() : 2.0;
  const int n = cfg.contains("n") ? cfg.at("n").get<int>() : 801;
  const int doublings = cfg.contains("sweep_doublings") ? cfg.at("sweep_doublings").get<int>() : 2;

  const double m0 = pspec.at("m0").get<double>();
  const double a = pspec.at("a").get<double>();
  const double xlo = cfg.contains("xlo") ? cfg.at("xlo").get<double>() : pspec.at("xlo").get<double>();
  const double xhi = cfg.contains("xhi") ? cfg.at("xhi").get<double>() : pspec.at("xhi").get<double>();
  const Grid grid(xlo, xhi, n);

  json out;
  out["config"] = cfg;
  json sweep = json::array();
  for (int d = 0; d <= doublings; ++d) {
    const double scale = static_cast<double>(1 << d);
    const auto profile = MassProfile::hyperbolic(m0 * scale, a, xlo, xhi);
    const auto rep = commutator_checks(profile, grid, window_lo, window_hi);
    json row = {{"m0", m0 * scale},
                {"c1_deviation", rep.c1_deviation},
                {"c2_deviation", rep.c2_deviation},
                {"c1_full_h_deviation", rep.c1_full_h_deviation}};
    if (d == 0) {
      out["c1_deviation"] = rep.c1_deviation;
      out["c2_deviation"] = rep.c2_deviation;
      out["c1_full_h_deviation"] = rep.c1_full_h_deviation;
      out["window"] = {window_lo, window_hi};
    }
    sweep.push_back(row);
  }
  out["mass_scale_sweep"] = sweep;
  const auto path = out_dir_from_config(cfg) / "fw_check.json";
  write_file_atomic(path, out.dump(2) + "\n");
  report_written(path);
  return kExitOk;
}

// --------------------------------------------------------------- pt-check --

int run_pt_check(const json& cfg) {
  json pspec = cfg.contains("profile")
                   ? cfg.at("profile")
                   : json{{"kind", "hyperbolic"}, {"m0", 1.0}, {"a", 1.0}, {"xlo", -12.0}, {"xhi", 12.0}};
  validate_profile_spec(pspec);
  const std::string kind = pspec.at("kind").get<std::string>();
  const int n = cfg.contains("n") ? cfg.at("n").get<int>() : 802;
  const std::string op_kind =
      cfg.contains("operator") ? cfg.at("operator").get<std::string>() : "decoupled";
  std::string gamma = cfg.contains("gamma") ? cfg.at("gamma").get<std::string>() : "";

  PtSymmetryReport report;
  if (kind == "hyperbolic") {
    const double m0 = pspec.at("m0").get<double>();
    const double a = pspec.at("a").get<double>();
    const double xhi = cfg.contains("xhi") ? cfg.at("xhi").get<double>()
                                           : std::max(std::abs(pspec.at("xlo").get<double>()),
                                                      std::abs(pspec.at("xhi").get<double>()));
    const Grid grid(-xhi, xhi, n);
    const auto profile = MassProfile::hyperbolic(m0, a, -xhi, xhi);
    if (gamma.empty()) gamma = "identity";
    const PtInvolution inv = gamma == "sigma3" ? PtInvolution::Sigma3 : PtInvolution::Identity;
    if (op_kind == "coupled") {
      const auto V = schrodingerizing_potential(profile, grid);
      report = pt_symmetry_check(build_coupled_operator(profile, V, grid, Boundary::Dirichlet), inv);
    } else if (op_kind == "decoupled") {
      report = pt_symmetry_check(build_decoupled_operator(profile, grid, Boundary::Dirichlet), inv);
    } else {
      throw ConfigError("pt-check: operator must be 'coupled' or 'decoupled'");
    }
  } else {
    // Half-line linear profile: matrix check on the odd mass extension over a
    // symmetric grid (physical solving stays on [0, x_hi] with Dirichlet).
    const double mu = pspec.at("mu").get<double>();
    const double xhi = cfg.contains("xhi") ? cfg.at("xhi").get<double>() : pspec.at("xhi").get<double>();
    if (n % 2 != 0)
      throw ConfigError("pt-check: linear profile needs even n so the grid skips x = 0");
    const Grid grid(-xhi, xhi, n);
    std::vector<double> mass(static_cast<std::size_t>(grid.n));
    std::vector<Complex> V(static_cast<std::size_t>(grid.n));
    for (int i = 0; i < grid.n; ++i) {
      const double x = grid.node(i);
      mass[static_cast<std::size_t>(i)] = mu * x;  // odd extension
      V[static_cast<std::size_t>(i)] = Complex(0.0, 1.0 / (2.0 * x));
    }
    if (gamma.empty()) gamma = "sigma3";
    const PtInvolution inv = gamma == "sigma3" ? PtInvolution::Sigma3 : PtInvolution::Identity;
    report = pt_symmetry_check(build_coupled_operator(mass, V, grid, Boundary::Dirichlet), inv);
  }

  json out;
  out["config"] = cfg;
  out["delta"] = report.delta;
  out["n_eigenvalues"] = report.n_eigenvalues;
  out["n_real"] = report.n_real;
  out["n_conjugate_pairs"] = report.n_conjugate_pairs;
  out["max_im_eig"] = report.max_im_eig;
  out["conjugation_closed"] = report.conjugation_closed;
  out["gamma"] = gamma;
  out["operator"] = op_kind;
  const auto path = out_dir_from_config(cfg) / "pt_check.json";
  write_file_atomic(path, out.dump(2) + "\n");
  report_written(path);
  return kExitOk;
}

// ---------------------------------------------------------------- figures --

void emit_xy_figure(const std::filesystem::path& dir, const std::string& stem,
                    const std::string& title, const std::string& xlabel,
                    const std::string& ylabel, const std::vector<SvgSeries>& series) {
  write_file_atomic(dir / (stem + ".svg"), svg_line_chart(title, xlabel, ylabel, series));
  CsvTable table;
  table.header.push_back(xlabel);
  for (const auto& s : series) table.header.push_back(s.name);
  for (std::size_t i = 0; i < series.front().x.size(); ++i) {
    std::vector<double> row{series.front().x[i]};
    for (const auto& s : series) row.push_back(s.y[i]);
    table.rows.push_back(std::move(row));
  }
  write_file_atomic(dir / (stem + ".csv"), table.to_string());
  report_written(dir / (stem + ".svg"));
  report_written(dir / (stem + ".csv"));
}

int run_figures(const json& cfg) {
  const auto dir = out_dir_from_config(cfg);
  const std::vector<double> mus = {0.5, 1.0, 2.0};
  const std::vector<double> m0s = {0.5, 1.0, 2.0};
  const std::vector<double> as = {0.5, 1.0, 2.0};

  {  // linear mass profiles
    const Grid g(0.0, 5.0, 401);
    std::vector<SvgSeries> series;
    for (double mu : mus) {
      SvgSeries s;
      s.name = "mu = " + format_number(mu).substr(0, 3);
      for (int i = 0; i < g.n; ++i) {
        s.x.push_back(g.node(i));
        s.y.push_back(mu * g.node(i));
      }
      series.push_back(std::move(s));
    }
    emit_xy_figure(dir, "fig_mass_linear", "Linear mass profile", "x", "m", series);
  }
  {  // V(x)^2 for the linear profile: -1/(4 x^2)
    const Grid g(0.2, 5.0, 401);
    std::vector<SvgSeries> series(1);
    series[0].name = "V^2";
    for (int i = 0; i < g.n; ++i) {
      const double x = g.node(i);
      series[0].x.push_back(x);
      series[0].y.push_back(-1.0 / (4.0 * x * x));
    }
    emit_xy_figure(dir, "fig_v2_linear", "Squared potential, linear mass", "x", "V^2", series);
  }
  {  // effective potential mu^2 x^2
    const Grid g(0.0, 5.0, 401);
    std::vector<SvgSeries> series;
    for (double mu : mus) {
      SvgSeries s;
      s.name = "mu = " + format_number(mu).substr(0, 3);
      for (int i = 0; i < g.n; ++i) {
        const double x = g.node(i);
        s.x.push_back(x);
        s.y.push_back(mu * mu * x * x);
      }
      series.push_back(std::move(s));
    }
    emit_xy_figure(dir, "fig_veff_linear", "Effective potential, linear mass", "x", "V_eff",
                   series);
  }
  {  // first four eigenfunctions at mu = 1
    const Grid g(0.0, 8.0, 601);
    std::vector<SvgSeries> series;
    for (int j = 0; j < 4; ++j) {
      const int nq = 2 * j + 1;
      const auto f = analytic_eigenfunction(1.0, nq, g);
      SvgSeries s;
      s.name = "n = " + std::to_string(nq);
      for (int i = 0; i < g.n; ++i) {
        s.x.push_back(g.node(i));
        s.y.push_back(f.values[static_cast<std::size_t>(i)].real());
      }
      series.push_back(std::move(s));
    }
    emit_xy_figure(dir, "fig_eigenfunctions_linear", "Linear-mass eigenfunctions", "x", "phi1",
                   series);
  }
  {  // hyperbolic mass vs m0 and vs a
    const Grid g(-8.0, 8.0, 801);
    std::vector<SvgSeries> series;
    for (double m0 : m0s) {
      SvgSeries s;
      s.name = "m0 = " + format_number(m0).substr(0, 3);
      for (int i = 0; i < g.n; ++i) {
        s.x.push_back(g.node(i));
        s.y.push_back(m0 * std::sqrt(1.0 / std::cosh(g.node(i))));
      }
      series.push_back(std::move(s));
    }
    emit_xy_figure(dir, "fig_mass_hyperbolic_m0", "Hyperbolic mass profile (a = 1)", "x", "m",
                   series);
    series.clear();
    for (double a : as) {
      SvgSeries s;
      s.name = "a = " + format_number(a).substr(0, 3);
      for (int i = 0; i < g.n; ++i) {
        s.x.push_back(g.node(i));
        s.y.push_back(std::sqrt(1.0 / std::cosh(a * g.node(i))));
      }
      series.push_back(std::move(s));
    }
    emit_xy_figure(dir, "fig_mass_hyperbolic_a", "Hyperbolic mass profile (m0 = 1)", "x", "m",
                   series);
  }
  {  // hyperbolic effective potential m0^2 sech(ax) and V^2
    const Grid g(-8.0, 8.0, 801);
    std::vector<SvgSeries> series;
    for (double m0 : m0s) {
      SvgSeries s;
      s.name = "m0 = " + format_number(m0).substr(0, 3);
      for (int i = 0; i < g.n; ++i) {
        s.x.push_back(g.node(i));
        s.y.push_back(m0 * m0 / std::cosh(g.node(i)));
      }
      series.push_back(std::move(s));
    }
    emit_xy_figure(dir, "fig_veff_hyperbolic", "Effective potential barrier, hyperbolic mass",
                   "x", "V_eff", series);
    series.clear();
    for (double a : as) {
      SvgSeries s;
      s.name = "a = " + format_number(a).substr(0, 3);
      for (int i = 0; i < g.n; ++i) {
        const double t = std::tanh(a * g.node(i));
        s.x.push_back(g.node(i));
        s.y.push_back(-(a * a / 16.0) * t * t);
      }
      series.push_back(std::move(s));
    }
    emit_xy_figure(dir, "fig_v2_hyperbolic", "Squared potential, hyperbolic mass", "x", "V^2",
                   series);
  }
  {  // free scattering state at E = 1
    const Grid g(-12.0, 12.0, 961);
    const auto f = free_state(1.0, 1.0, 1.0, g);
    std::vector<SvgSeries> series(2);
    series[0].name = "Re phi1";
    series[1].name = "|phi1|";
    for (int i = 0; i < g.n; ++i) {
      series[0].x.push_back(g.node(i));
      series[0].y.push_back(f.values[static_cast<std::size_t>(i)].real());
      series[1].x.push_back(g.node(i));
      series[1].y.push_back(std::abs(f.values[static_cast<std::size_t>(i)]));
    }
    emit_xy_figure(dir, "fig_free_state", "Free state above the barrier (E = 1)", "x", "phi1",
                   series);
  }
  return kExitOk;
}

int dispatch(const std::string& subcommand, const json& cfg) {
  validate_config(subcommand, cfg);
  if (subcommand == "profile") return run_profile(cfg);
  if (subcommand == "potential") return run_potential(cfg);
  if (subcommand == "spectrum") return run_spectrum(cfg);
  if (subcommand == "scatter") return run_scatter(cfg);
  if (subcommand == "heun") return run_heun(cfg);
  if (subcommand == "fw-check") return run_fw_check(cfg);
  if (subcommand == "pt-check") return run_pt_check(cfg);
  if (subcommand == "figures") return run_figures(cfg);
  throw ConfigError("unknown subcommand '" + subcommand + "'");
}

void emit_error(int code, const std::string& type, const std::string& message) {
  json err;
  err["error"] = {{"code", code}, {"type", type}, {"message", message}};
  std::cerr << err.dump() << "\n";
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Non-Hermitian position-dependent-mass Dirac toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  json cfg = json::object();
  json pspec = json::object();

  struct SubSetup {
    CLI::App* sub = nullptr;
  };
  std::map<std::string, CLI::App*> subs;
  for (const char* name :
       {"profile", "potential", "spectrum", "scatter", "heun", "fw-check", "pt-check", "figures"}) {
    subs[name] = app.add_subcommand(name);
  }

  auto add_num = [&](CLI::App* sub, const std::string& flag, const std::string& key) {
    sub->add_option_function<double>(
        flag, [&cfg, key](const double& v) { cfg[key] = v; });
  };
  auto add_int = [&](CLI::App* sub, const std::string& flag, const std::string& key) {
    sub->add_option_function<int>(flag, [&cfg, key](const int& v) { cfg[key] = v; });
  };
  auto add_profile_num = [&](CLI::App* sub, const std::string& flag, const std::string& key) {
    sub->add_option_function<double>(
        flag, [&pspec, key](const double& v) { pspec[key] = v; });
  };

  for (auto& [name, sub] : subs) {
    sub->add_option_function<std::string>(
        "--out-dir", [&cfg](const std::string& v) { cfg["out_dir"] = v; });
    sub->add_option("--config", config_path, "JSON config; overrides flags");
  }
  for (const char* name : {"profile", "potential", "spectrum", "fw-check", "pt-check"}) {
    CLI::App* sub = subs[name];
    sub->add_option_function<std::string>(
        "--kind", [&pspec](const std::string& v) { pspec["kind"] = v; });
    sub->add_option_function<std::string>(
        "--profile", [&pspec](const std::string& v) { pspec["kind"] = v; });
    add_profile_num(sub, "--mu", "mu");
    add_profile_num(sub, "--m0", "m0");
    add_profile_num(sub, "--a", "a");
    add_profile_num(sub, "--profile-xlo", "xlo");
    add_profile_num(sub, "--profile-xhi", "xhi");
    add_int(sub, "--n", "n");
  }
  add_num(subs["profile"], "--xlo", "xlo");
  add_num(subs["profile"], "--xhi", "xhi");
  add_num(subs["potential"], "--xlo", "xlo");
  add_num(subs["potential"], "--xhi", "xhi");
  add_num(subs["potential"], "--E", "energy");
  add_num(subs["spectrum"], "--xhi", "xhi");
  add_int(subs["spectrum"], "--k", "k");
  add_num(subs["scatter"], "--m0", "m0");
  add_num(subs["scatter"], "--a", "a");
  add_num(subs["scatter"], "--emin", "emin");
  add_num(subs["scatter"], "--emax", "emax");
  add_int(subs["scatter"], "--steps", "steps");
  add_num(subs["heun"], "--m0", "m0");
  add_num(subs["heun"], "--a", "a");
  add_num(subs["heun"], "--E", "energy");
  add_int(subs["heun"], "--order", "order");
  add_num(subs["heun"], "--xi", "xi");
  add_num(subs["fw-check"], "--window-lo", "window_lo");
  add_num(subs["fw-check"], "--window-hi", "window_hi");
  add_int(subs["fw-check"], "--sweep-doublings", "sweep_doublings");
  add_num(subs["fw-check"], "--xlo", "xlo");
  add_num(subs["fw-check"], "--xhi", "xhi");
  add_num(subs["pt-check"], "--xhi", "xhi");
  subs["pt-check"]->add_option_function<std::string>(
      "--operator", [&cfg](const std::string& v) { cfg["operator"] = v; });
  subs["pt-check"]->add_option_function<std::string>(
      "--gamma", [&cfg](const std::string& v) { cfg["gamma"] = v; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help
    emit_error(kExitConfig, "cli_parse", e.what());
    return kExitConfig;
  }

  const std::string subcommand = app.get_subcommands().front()->get_name();

  try {
    // Default profile specs per subcommand when flags gave none.
    if (!pspec.empty()) {
      if (!pspec.contains("kind")) throw ConfigError("profile flags given without --kind");
      const std::string kind = pspec.at("kind").get<std::string>();
      if (kind == "linear") {
        if (!pspec.contains("mu")) pspec["mu"] = 1.0;
        if (!pspec.contains("xhi")) pspec["xhi"] = 20.0;
        pspec.erase("xlo");
      } else if (kind == "hyperbolic") {
        if (!pspec.contains("m0")) pspec["m0"] = 1.0;
        if (!pspec.contains("a")) pspec["a"] = 1.0;
        if (!pspec.contains("xlo")) pspec["xlo"] = -12.0;
        if (!pspec.contains("xhi")) pspec["xhi"] = 12.0;
      }
      cfg["profile"] = pspec;
    }

    if (!config_path.empty()) {
      std::ifstream is(config_path);
      if (!is) throw ConfigError("cannot read config file " + config_path);
      json file_cfg;
      try {
        file_cfg = json::parse(is);
      } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
      }
      if (!file_cfg.is_object()) throw ConfigError("config file must hold a JSON object");
      for (const auto& [key, value] : file_cfg.items()) cfg[key] = value;  // config wins
    }

    return dispatch(subcommand, cfg);
  } catch (const ConfigError& e) {
    emit_error(kExitConfig, "config", e.what());
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    emit_error(kExitConfig, "config", e.what());
    return kExitConfig;
  } catch (const nlohmann::json::exception& e) {
    emit_error(kExitConfig, "config", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    emit_error(kExitNumerical, "numerical", e.what());
    return kExitNumerical;
  }
}

}  // namespace pdmdirac
