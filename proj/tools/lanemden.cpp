#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lanemden/angular.hpp"
#include "lanemden/energy.hpp"
#include "lanemden/errors.hpp"
#include "lanemden/exponents.hpp"
#include "lanemden/fractional.hpp"
#include "lanemden/gamma.hpp"
#include "lanemden/radial.hpp"
#include "lanemden/singular.hpp"
#include "lanemden/table_io.hpp"
#include "lanemden/verify.hpp"

using namespace lanemden;
using nlohmann::json;

namespace {

constexpr int kExitDomain = 2;
constexpr int kExitUsage = 64;
constexpr int kExitIo = 74;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Range parse_range(const std::string& text, const char* flag) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  try {
    if (parts.size() != 3) throw std::invalid_argument("shape");
    std::size_t used = 0;
    Range r{std::stod(parts[0], &used), 0.0, 0};
    if (used != parts[0].size()) throw std::invalid_argument("start");
    r.stop = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("stop");
    r.count = std::stoi(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("count");
    if (r.count < 2) throw std::invalid_argument("count");
    return r;
  } catch (const std::exception&) {
    throw UsageError(std::string(flag) + ": expected start:stop:count with count >= 2, got '" + text + "'");
  }
}

std::vector<double> expand(const Range& r) {
  std::vector<double> v;
  for (int i = 0; i < r.count; ++i) v.push_back(r.at(i));
  return v;
}

struct Output {
  std::string path;
  std::string format = "json";
  std::ostringstream buffer;

  void flush() {
    const std::string text = buffer.str();
    if (path.empty()) {
      std::cout << text;
      std::cout.flush();
      if (!std::cout) throw IoError("cannot write to standard output");
      return;
    }
    std::filesystem::path target(path);
    if (const char* dir = std::getenv("LANEMDEN_OUTPUT_DIR"); dir && *dir && target.is_relative())
      target = std::filesystem::path(dir) / target;
    std::ofstream out(target, std::ios::binary);
    if (!out) throw IoError("cannot open " + target.string());
    out << text;
    out.close();
    if (!out) throw IoError("cannot write " + target.string());
  }
  bool csv() const { return format == "csv"; }
  void emit(const json& j) { buffer << j.dump(2) << "\n"; }
};

struct Common {
  double n = 3.0;
  double s = 1.0;
  double p = 2.0;
  int m = 1;

  ProblemParams params() const {
    ProblemParams pp;
    pp.n = n;
    pp.s = s;
    pp.p = p;
    pp.m = m;
    pp.validate();
    return pp;
  }
};

void add_output(CLI::App* cmd, Output& out, const std::string& default_format) {
  out.format = default_format;
  cmd->add_option("--output,-o", out.path, "output file (relative paths resolve against LANEMDEN_OUTPUT_DIR)");
  cmd->add_option("--format", out.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

json exponents_json(double n, double s, const CLI::Option* p_opt, double p) {
  json j;
  j["n"] = n;
  j["s"] = s;
  j["p_S"] = json_number(sobolev_exponent(n, s));
  const double pc = (s == 1.0 || s == 2.0) ? jl_exponent_closed_form(n, s) : jl_exponent_root(n, s);
  j["p_c"] = json_number(pc);
  j["p_c_root"] = json_number(jl_exponent_root(n, s));
  j["hardy"] = json_number(hardy_constant(n, s));
  if (p_opt->count() > 0) {
    ProblemParams pp;
    pp.n = n;
    pp.s = s;
    pp.p = p;
    pp.validate();
    const auto regime = classify(pp);
    j["p"] = p;
    j["regime"] = std::string(to_string(regime.tag));
    j["margin"] = json_number(regime.margin);
    if (s == 1.0 && n == 12.0 && regime.tag == RegimeTag::SupercriticalTrivial)
      j["note"] = "n = 12 classified from the exponent formulas; the remark this reproduces states the range as n < 12";
  }
  return j;
}

void write_flat_csv(std::ostream& out, const json& j) {
  std::vector<std::string> header, cells;
  for (const auto& [key, value] : j.items()) {
    header.push_back(key);
    if (value.is_number()) cells.push_back(format_number(value.get<double>()));
    else if (value.is_string()) cells.push_back(value.get<std::string>());
    else cells.push_back(value.dump());
  }
  CsvWriter csv(out, header);
  csv.row_text(cells);
}

ShootingConfig shooting_config(const ProblemParams& pp, const std::vector<double>& a, const std::vector<double>& b,
                               double r_max, double rtol, double atol) {
  ShootingConfig cfg;
  if (static_cast<int>(a.size()) != pp.m) throw DomainError("--a needs one value per component");
  cfg.init_u = Eigen::Map<const Eigen::VectorXd>(a.data(), static_cast<Eigen::Index>(a.size()));
  if (!b.empty()) {
    if (static_cast<int>(b.size()) != pp.m) throw DomainError("--b needs one value per component");
    cfg.init_w = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  }
  cfg.r_max = r_max;
  cfg.rel_tol = rtol;
  cfg.abs_tol = atol;
  return cfg;
}

json matrix_json(const Eigen::MatrixXd& mtx) {
  json j = json::array();
  for (Eigen::Index c = 0; c < mtx.cols(); ++c) {
    std::vector<double> col(mtx.rows());
    for (Eigen::Index r = 0; r < mtx.rows(); ++r) col[r] = mtx(r, c);
    j.push_back(json_array(col));
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for supercritical Lane-Emden systems", "lanemden"};
  app.require_subcommand(1);
  Output out;
  Common c;

  // exponents
  auto* exp_cmd = app.add_subcommand("exponents", "critical exponents, Hardy constant and regime");
  exp_cmd->add_option("--n", c.n, "dimension")->required();
  exp_cmd->add_option("--s", c.s, "order")->required();
  auto* exp_p = exp_cmd->add_option("--p", c.p, "exponent (adds the regime)");
  add_output(exp_cmd, out, "json");

  // phase-diagram
  std::string n_range_text, p_range_text;
  auto* phase_cmd = app.add_subcommand("phase-diagram", "regime on an (n, p) grid");
  phase_cmd->add_option("--n", n_range_text, "n range start:stop:count")->required();
  phase_cmd->add_option("--p", p_range_text, "p range start:stop:count")->required();
  phase_cmd->add_option("--s", c.s, "order")->required();
  add_output(phase_cmd, out, "csv");

  // singular
  std::string r_range_text = "0.1:10:100";
  auto* sing_cmd = app.add_subcommand("singular", "homogeneous singular solution");
  sing_cmd->add_option("--n", c.n)->required();
  sing_cmd->add_option("--s", c.s)->required();
  sing_cmd->add_option("--p", c.p)->required();
  sing_cmd->add_option("--m", c.m);
  sing_cmd->add_option("--r", r_range_text, "radii start:stop:count");
  add_output(sing_cmd, out, "json");

  // shoot
  std::vector<double> init_a, init_b;
  double r_max = 10.0, rtol = 1e-12, atol = 1e-20;
  std::string growth_text;
  auto* shoot_cmd = app.add_subcommand("shoot", "radial shooting from regular data");
  shoot_cmd->add_option("--n", c.n)->required();
  shoot_cmd->add_option("--s", c.s)->required();
  shoot_cmd->add_option("--p", c.p)->required();
  shoot_cmd->add_option("--m", c.m);
  shoot_cmd->add_option("--a", init_a, "u(0) per component")->required();
  shoot_cmd->add_option("--b", init_b, "Delta u(0) per component (s = 2)");
  shoot_cmd->add_option("--r-max", r_max);
  shoot_cmd->add_option("--rtol", rtol)->check(CLI::PositiveNumber);
  shoot_cmd->add_option("--atol", atol)->check(CLI::PositiveNumber);
  shoot_cmd->add_option("--growth", growth_text, "radii start:stop:count for growth slopes (json only)");
  add_output(shoot_cmd, out, "csv");

  // energy-scan
  std::string lambda_text;
  std::string variant_text = "sum-of-squares";
  bool use_singular = false;
  auto* energy_cmd = app.add_subcommand("energy-scan", "monotonicity functional along a radial solution");
  energy_cmd->add_option("--n", c.n)->required();
  energy_cmd->add_option("--s", c.s)->required();
  energy_cmd->add_option("--p", c.p)->required();
  energy_cmd->add_option("--m", c.m);
  energy_cmd->add_option("--a", init_a, "u(0) per component");
  energy_cmd->add_option("--b", init_b, "Delta u(0) per component (s = 2)");
  energy_cmd->add_option("--lambda", lambda_text, "radii start:stop:count")->required();
  energy_cmd->add_flag("--singular", use_singular, "scan the singular solution instead of shooting");
  energy_cmd->add_option("--variant", variant_text, "E_2 boundary coefficient")
      ->check(CLI::IsMember({"sum-of-squares", "as-printed"}));
  energy_cmd->add_option("--rtol", rtol)->check(CLI::PositiveNumber);
  energy_cmd->add_option("--atol", atol)->check(CLI::PositiveNumber);
  add_output(energy_cmd, out, "csv");

  // angular
  double epsilon = 1e-3;
  std::string profile_text = "smoothstep";
  int probe_s = 2;
  auto* ang_cmd = app.add_subcommand("angular", "angular coefficients, stability coefficients and instability probe");
  ang_cmd->add_option("--n", c.n)->required();
  ang_cmd->add_option("--p", c.p)->required();
  ang_cmd->add_option("--s", probe_s, "1 or 2")->check(CLI::IsMember({1, 2}));
  ang_cmd->add_option("--epsilon", epsilon, "cutoff scale");
  ang_cmd->add_option("--profile", profile_text)->check(CLI::IsMember({"smoothstep", "linear"}));
  add_output(ang_cmd, out, "json");

  // kernel
  std::string what = "K";
  double alpha = 0.0, inner = 0.0;
  QuadratureSpec quad;
  bool no_folding = false;
  auto* kern_cmd = app.add_subcommand("kernel", "sphere kernel and principal-value constants");
  kern_cmd->add_option("--what", what)->check(CLI::IsMember({"K", "gap", "A", "hardy"}));
  kern_cmd->add_option("--n", c.n)->required();
  kern_cmd->add_option("--s", c.s)->required();
  kern_cmd->add_option("--p", c.p);
  kern_cmd->add_option("--alpha", alpha);
  kern_cmd->add_option("--c", inner, "inner product in [-1, 1)");
  kern_cmd->add_option("--rtol", quad.rel_tol)->check(CLI::PositiveNumber);
  kern_cmd->add_option("--max-subdivisions", quad.max_subdivisions)->check(CLI::PositiveNumber);
  kern_cmd->add_flag("--no-folding", no_folding);
  add_output(kern_cmd, out, "json");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "run the invariant suite");
  verify_cmd->add_option("--output,-o", out.path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  int status = 0;
  try {
    if (exp_cmd->parsed()) {
      const json j = exponents_json(c.n, c.s, exp_p, c.p);
      if (out.csv()) write_flat_csv(out.buffer, j);
      else out.emit(j);
    } else if (phase_cmd->parsed()) {
      const auto diagram = phase_diagram(parse_range(n_range_text, "--n"), parse_range(p_range_text, "--p"), c.s);
      if (out.csv()) {
        CsvWriter csv(out.buffer, {"n", "p", "regime", "margin"});
        for (std::size_t r = 0; r < diagram.p_values.size(); ++r)
          for (std::size_t k = 0; k < diagram.n_values.size(); ++k)
            csv.row_text({format_number(diagram.n_values[k]), format_number(diagram.p_values[r]),
                          std::string(to_string(diagram.at(r, k).tag)), format_number(diagram.at(r, k).margin)});
      } else {
        json j;
        j["s"] = c.s;
        j["n"] = json_array(diagram.n_values);
        j["p"] = json_array(diagram.p_values);
        json cells = json::array();
        for (const auto& cell : diagram.cells)
          cells.push_back({{"regime", std::string(to_string(cell.tag))}, {"margin", json_number(cell.margin)}});
        j["cells"] = cells;
        out.emit(j);
      }
    } else if (sing_cmd->parsed()) {
      const auto pp = c.params();
      const auto sol = make_singular(pp);
      const auto verdict = is_singular_stable(pp);
      const auto radii = expand(parse_range(r_range_text, "--r"));
      const bool local = pp.s == 1.0 || pp.s == 2.0;
      std::vector<double> u, res;
      for (double r : radii) {
        u.push_back(sol.value(r)[0]);
        res.push_back(local ? residual_local(sol, r).lpNorm<Eigen::Infinity>() : std::nan(""));
      }
      if (out.csv()) {
        CsvWriter csv(out.buffer, {"r", "u", "residual"});
        for (std::size_t k = 0; k < radii.size(); ++k) csv.row({radii[k], u[k], res[k]});
      } else {
        json j;
        j["amplitude"] = sol.amplitude;
        j["beta"] = sol.beta;
        j["stable"] = verdict.stable;
        j["stability_margin"] = json_number(verdict.margin);
        json growth;
        for (auto [name, kind] : {std::pair{"lp1", GrowthKind::Lp1}, {"l2", GrowthKind::L2}, {"grad_sq", GrowthKind::GradSq}})
          growth[name] = json_number(growth_exponent(sol, kind));
        j["growth_exponent"] = growth;
        j["r"] = json_array(radii);
        j["u"] = json_array(u);
        j["residual"] = json_array(res);
        out.emit(j);
      }
    } else if (shoot_cmd->parsed()) {
      const auto pp = c.params();
      const auto sol = solve_radial(pp, shooting_config(pp, init_a, init_b, r_max, rtol, atol));
      if (out.csv()) {
        write_trajectory_csv(out.buffer, sol);
      } else {
        json j;
        std::vector<double> grid(sol.grid.data(), sol.grid.data() + sol.grid.size());
        j["r"] = json_array(grid);
        j["u"] = matrix_json(sol.u);
        j["du"] = matrix_json(sol.du);
        if (sol.fourth_order()) {
          j["w"] = matrix_json(sol.w);
          j["dw"] = matrix_json(sol.dw);
        }
        j["blowup_radius"] = sol.blowup_radius ? json_number(*sol.blowup_radius) : json(nullptr);
        if (!growth_text.empty()) {
          const auto radii = expand(parse_range(growth_text, "--growth"));
          for (auto [name, kind] : {std::pair{"lp1", GrowthKind::Lp1}, {"l2", GrowthKind::L2}}) {
            const auto fit = growth_slope(sol, radii, kind);
            j["growth_slope"][name] = fit.degenerate ? json(nullptr) : json_number(fit.slope);
          }
        }
        out.emit(j);
      }
    } else if (energy_cmd->parsed()) {
      const auto pp = c.params();
      const auto lambdas = expand(parse_range(lambda_text, "--lambda"));
      double lo = lambdas.front(), hi = lambdas.front();
      for (double x : lambdas) {
        lo = std::min(lo, x);
        hi = std::max(hi, x);
      }
      if (!(lo > 0.0)) throw DomainError("--lambda: radii must be positive");
      const double reach = hi * 1.001;
      RadialSolution sol;
      if (use_singular) {
        sol = sample_singular(make_singular(pp), 1e-3 * lo, reach, 4000);
      } else {
        if (init_a.empty()) throw UsageError("energy-scan: --a is required unless --singular is given");
        sol = solve_radial(pp, shooting_config(pp, init_a, init_b, reach, rtol, atol));
        if (sol.blowup_radius) throw DomainError("energy-scan: the solution blows up before the last radius");
      }
      const auto variant = variant_text == "as-printed" ? E2Variant::AsPrinted : E2Variant::SumOfSquares;
      auto curve = energy_scan(sol, lambdas, pp.s);
      if (pp.s == 2.0 && variant == E2Variant::AsPrinted) {
        for (std::size_t k = 0; k < lambdas.size(); ++k) curve.values[k] = energy_E2(sol, lambdas[k], variant);
        curve.violations.clear();
        for (std::size_t k = 0; k + 1 < curve.values.size(); ++k)
          if (curve.values[k + 1] < curve.values[k] - 1e-8 * (1.0 + std::abs(curve.values[k]))) curve.violations.push_back(k);
      }
      if (out.csv()) {
        write_energy_csv(out.buffer, curve);
      } else {
        json j = energy_json(curve);
        if (pp.s == 2.0) {
          double worst = 0.0;
          for (double lam : lambdas) worst = std::max(worst, energy_E2_crosscheck(sol, lam, 1e-4 * lam, variant).relative_difference);
          j["bracket_crosscheck"] = json_number(worst);
          j["monotonicity_constant"] = json_number(e2_monotonicity_constant(pp.n, pp.p));
        }
        const double r = 0.5;
        j["scale_invariance"] = json_number(scale_invariance_check(sol, lambdas.back() / r * 0.999, r, pp.s));
        out.emit(j);
      }
    } else if (ang_cmd->parsed()) {
      const int n = static_cast<int>(c.n);
      if (static_cast<double>(n) != c.n) throw DomainError("angular: n must be an integer");
      json j;
      j["n"] = n;
      j["p"] = c.p;
      if (probe_s == 2) {
        const auto co = angular_coefficients(n, c.p);
        const auto tr = stability_triple(n, c.p);
        j["q"] = co.q;
        j["alpha"] = co.alpha;
        j["beta"] = co.beta;
        j["stability"] = {{"c1", tr.c1}, {"c2", tr.c2}, {"c3", tr.c3}, {"all_positive", tr.all_positive()}};
        if (c.p > sobolev_exponent(n, 2.0)) j["constant_amplitude"] = constant_solution_check(n, c.p);
      } else {
        const auto pr = stability_pair(n, c.p);
        j["stability"] = {{"c1", pr.c1}, {"c2", pr.c2}, {"all_positive", pr.all_positive()}};
      }
      if (c.p > sobolev_exponent(n, probe_s)) {
        CutoffSpec cut{epsilon, profile_text == "linear" ? CutoffProfile::LogLinear : CutoffProfile::LogSmoothstep};
        const auto probe = singular_instability_probe(n, probe_s, c.p, cut);
        j["probe"] = {{"epsilon", epsilon}, {"value", probe.value}, {"potential_integral", probe.potential_integral},
                      {"ratio", probe.ratio}};
      }
      if (out.csv()) {
        json flat;
        for (const auto& [k, v] : j.items()) {
          if (v.is_object())
            for (const auto& [k2, v2] : v.items()) flat[k + "_" + k2] = v2;
          else
            flat[k] = v;
        }
        write_flat_csv(out.buffer, flat);
      } else {
        out.emit(j);
      }
    } else if (kern_cmd->parsed()) {
      quad.folding = !no_folding;
      json j;
      j["what"] = what;
      j["n"] = c.n;
      j["s"] = c.s;
      double value = 0.0, oracle = std::nan("");
      if (what == "K") {
        j["alpha"] = alpha;
        j["c"] = inner;
        value = kernel_K({c.n, c.s, alpha, inner, quad});
      } else if (what == "gap") {
        j["p"] = c.p;
        j["c"] = inner;
        value = kernel_monotonicity_gap(c.n, c.s, c.p, inner, quad);
      } else {
        const int n = static_cast<int>(c.n);
        if (static_cast<double>(n) != c.n) throw DomainError("kernel: n must be an integer");
        if (what == "A") {
          j["p"] = c.p;
          value = A_constant_quadrature(n, c.s, c.p, quad);
          oracle = power_law_multiplier(c.n, c.s, 2.0 * c.s / (c.p - 1.0));
        } else {
          value = hardy_integral_quadrature(n, c.s, quad);
          oracle = hardy_constant(c.n, c.s);
        }
      }
      j["value"] = value;
      if (!std::isnan(oracle)) {
        j["closed_form"] = oracle;
        j["relative_error"] = std::abs(value - oracle) / std::abs(oracle);
      }
      if (out.csv()) write_flat_csv(out.buffer, j);
      else out.emit(j);
    } else if (verify_cmd->parsed()) {
      const auto report = run_verify();
      write_verify_report(out.buffer, report);
      status = report.all_passed() ? 0 : 1;
    }
    out.flush();
  } catch (const UsageError& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    std::cerr << "error: io: " << e.what() << "\n";
    return kExitIo;
  } catch (const DomainError& e) {
    std::cerr << "error: domain: " << e.what() << "\n";
    return kExitDomain;
  } catch (const UnsupportedError& e) {
    std::cerr << "error: unsupported: " << e.what() << "\n";
    return kExitDomain;
  } catch (const ConvergenceError& e) {
    std::cerr << "error: convergence: " << e.what() << "\n";
    return kExitDomain;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: range: " << e.what() << "\n";
    return kExitDomain;
  }
  return status;
}
