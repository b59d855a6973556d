#include "sqdeph/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sqdeph/config.hpp"
#include "sqdeph/dephasing.hpp"
#include "sqdeph/discrete_bath.hpp"
#include "sqdeph/emit.hpp"
#include "sqdeph/error.hpp"
#include "sqdeph/parallel.hpp"
#include "sqdeph/qfi.hpp"
#include "sqdeph/sweep.hpp"
#include "sqdeph/verify.hpp"

namespace sqdeph {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitNumerical = 2;

std::string number(double v, int digits = 15) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

// Model parameters shared by gamma, qfi, discrete and sweep. Each flag maps
// one-to-one onto a sweep config key ([fixed] or [sweep]).
struct ModelFlags {
  double t = 0.0;
  double eta = 0.0;
  double s = 0.0;
  double omega_c = 1.0;
  double r = 0.0;
  double theta = 0.0;
  double temperature = 0.0;
  double omega0 = 1.0;
  double boltzmann = 1.0;
  double alpha = std::numbers::pi / 2.0;
  double phi = 0.0;
  std::string method = "analytic";
  double tol = kDefaultQuadratureTolerance;
  std::size_t modes = 4000;
  double omega_max = 40.0;

  std::map<std::string, CLI::Option*> options;

  void add_to(CLI::App& app, bool require_core, bool probe) {
    auto* t_opt = app.add_option("--t", t, "Evolution time (units of 1/omega_c)")->check(CLI::NonNegativeNumber);
    auto* eta_opt = app.add_option("--eta", eta, "Dimensionless coupling eta")->check(CLI::PositiveNumber);
    auto* s_opt = app.add_option("--s", s, "Ohmicity exponent s")->check(CLI::PositiveNumber);
    if (require_core) {
      t_opt->required();
      eta_opt->required();
      s_opt->required();
    }
    options["t"] = t_opt;
    options["eta"] = eta_opt;
    options["s"] = s_opt;
    options["omega_c"] =
        app.add_option("--omega-c", omega_c, "Cutoff frequency omega_c")->check(CLI::PositiveNumber)->capture_default_str();
    options["r"] = app.add_option("--r", r, "Squeeze magnitude r")->check(CLI::NonNegativeNumber)->capture_default_str();
    options["theta"] = app.add_option("--theta", theta, "Squeeze reference phase theta (rad)")->capture_default_str();
    options["temperature"] = app.add_option("--temperature", temperature, "Reservoir temperature (0 = squeezed vacuum)")
                                 ->check(CLI::NonNegativeNumber)
                                 ->capture_default_str();
    options["omega0"] =
        app.add_option("--omega0", omega0, "Qubit transition frequency")->check(CLI::PositiveNumber)->capture_default_str();
    options["boltzmann"] =
        app.add_option("--boltzmann", boltzmann, "Boltzmann constant")->check(CLI::PositiveNumber)->capture_default_str();
    if (probe) {
      options["alpha"] = app.add_option("--alpha", alpha, "Probe amplitude parameter alpha in [0, pi]")
                             ->check(CLI::Range(0.0, std::numbers::pi))
                             ->capture_default_str();
      options["phi"] = app.add_option("--phi", phi, "Probe phase parameter phi (rad)")->capture_default_str();
    }
    options["method"] = app.add_option("--method", method, "Dephasing route")
                            ->check(CLI::IsMember({"analytic", "quadrature", "discrete"}))
                            ->capture_default_str();
    options["rel_tol"] = app.add_option("--tol", tol, "Quadrature relative tolerance")
                             ->check(CLI::Range(1e-13, 1e-3))
                             ->capture_default_str();
    options["modes"] = app.add_option("--modes", modes, "Discrete bath mode count")
                           ->check(CLI::PositiveNumber)
                           ->capture_default_str();
    options["omega_max"] = app.add_option("--omega-max", omega_max, "Discrete bath cutoff (units of omega_c)")
                               ->check(CLI::PositiveNumber)
                               ->capture_default_str();
  }

  bool given(const std::string& key) const {
    const auto it = options.find(key);
    return it != options.end() && it->second->count() > 0;
  }

  std::map<std::string, double> bindings() const {
    return {{"t", t},           {"eta", eta},       {"s", s},
            {"omega_c", omega_c}, {"r", r},         {"theta", theta},
            {"temperature", temperature}, {"omega0", omega0}, {"boltzmann", boltzmann},
            {"alpha", alpha},   {"phi", phi}};
  }

  /// Only the parameter flags actually present on the command line.
  std::map<std::string, double> given_bindings() const {
    std::map<std::string, double> out;
    for (const auto& [key, value] : bindings()) {
      if (given(key)) out[key] = value;
    }
    return out;
  }

  EvaluationOptions evaluation() const {
    EvaluationOptions opts;
    opts.method = parse_gamma_method(method);
    opts.rel_tol = tol;
    opts.discrete_modes = modes;
    opts.omega_max_factor = omega_max;
    return opts;
  }

  ModelPoint point() const { return ModelPoint::from_bindings(bindings()); }
};

Axis parse_axis_flag(const std::string& text, const std::string& flag) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 4 && parts.size() != 5) {
    throw DomainError(flag + " expects NAME:MIN:MAX:POINTS[:open], got '" + text + "'");
  }
  Axis axis;
  axis.name = parts[0];
  try {
    std::size_t used = 0;
    axis.min = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument(parts[1]);
    axis.max = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument(parts[2]);
    const long points = std::stol(parts[3], &used);
    if (used != parts[3].size() || points < 0) throw std::invalid_argument(parts[3]);
    axis.points = static_cast<std::size_t>(points);
  } catch (const std::logic_error&) {
    throw DomainError(flag + " has a non-numeric field in '" + text + "'");
  }
  if (parts.size() == 5) {
    if (parts[4] != "open") throw DomainError(flag + " accepts only 'open' as fifth field, got '" + parts[4] + "'");
    axis.endpoint = false;
  }
  return axis;
}

int run_gamma(const ModelFlags& flags, std::ostream& out) {
  out << number(point_gamma(flags.point(), flags.evaluation())) << '\n';
  return kExitOk;
}

int run_qfi(const ModelFlags& flags, const std::string& param, long long nu, const std::string& derivative,
            double step, std::ostream& out) {
  const ModelPoint point = flags.point();
  const double gamma = point_gamma(point, flags.evaluation());
  const QfiParameter which = parse_qfi_parameter(param);
  const auto family = evolved_family(which, point.probe, gamma);
  const double xi0 = which == QfiParameter::Alpha ? point.probe.alpha() : point.probe.phi();
  DerivativeMode mode = AnalyticDerivative{};
  if (derivative == "central") mode = CentralDifference{step};
  const QfiReport report = qfi_general(family, xi0, mode);
  out << number(report.value) << '\n'
      << "gamma " << number(gamma) << '\n'
      << "cramer_rao_bound " << number(cramer_rao_bound(report.value, nu)) << " (nu=" << nu << ")\n";
  return kExitOk;
}

int run_discrete(const ModelFlags& flags, std::ostream& out) {
  const ModelPoint point = flags.point();
  const auto bath = discretize_spectrum(point.spec, flags.modes, flags.omega_max * point.spec.omega_c());
  const double factor = 2.0 * mean_occupation(point.thermal) + 1.0;
  const double discrete = factor * gamma_discrete(bath, point.t, point.squeeze);
  const double analytic = factor * gamma_analytic(point.t, point.spec, point.squeeze);
  const double abs_dev = std::abs(discrete - analytic);
  out << "discrete " << number(discrete) << '\n'
      << "analytic " << number(analytic) << '\n'
      << "abs_deviation " << number(abs_dev, 6) << '\n'
      << "rel_deviation " << number(abs_dev / std::max(analytic, 1e-6), 6) << '\n';
  return kExitOk;
}

int run_verify(unsigned jobs, double threshold, std::ostream& out) {
  const OracleReport report = run_oracle_grid(OracleGrid{}, jobs);
  out << "oracle grid points " << report.points << '\n'
      << "max relative deviation analytic vs quadrature " << number(report.max_relative_deviation, 6) << " (s="
      << report.worst_s << ", r=" << report.worst_r << ", theta=" << report.worst_theta << ", t=" << report.worst_t
      << ")\n"
      << "max deviation analytic(r=0) vs vacuum closed form " << number(report.vacuum_max_deviation, 6) << '\n';
  const bool ok = report.max_relative_deviation <= threshold && report.vacuum_max_deviation <= 1e-12;
  out << (ok ? "PASS" : "FAIL") << " (threshold " << number(threshold, 3) << ")\n";
  return ok ? kExitOk : kExitNumerical;
}

int run_sweep_command(const ModelFlags& flags, const std::string& config_path, const std::string& quantity,
                      const std::string& axis1, const std::string& axis2, const std::string& out_path,
                      const std::string& format, const std::string& dump_path, unsigned jobs, std::ostream& out) {
  SweepSpec spec;
  if (!config_path.empty()) spec = load_sweep_config(config_path);
  for (const auto& [key, value] : flags.given_bindings()) spec.fixed[key] = value;
  if (!quantity.empty()) spec.quantity = parse_quantity(quantity);
  if (flags.given("method")) spec.options.method = parse_gamma_method(flags.method);
  if (flags.given("rel_tol")) spec.options.rel_tol = flags.tol;
  if (flags.given("modes")) spec.options.discrete_modes = flags.modes;
  if (flags.given("omega_max")) spec.options.omega_max_factor = flags.omega_max;
  if (!axis1.empty()) spec.axis1 = parse_axis_flag(axis1, "--axis1");
  if (!axis2.empty()) spec.axis2 = parse_axis_flag(axis2, "--axis2");
  if (config_path.empty() && (axis1.empty() || axis2.empty())) {
    throw DomainError("sweep needs --config or both --axis1 and --axis2");
  }
  // an axis overrides a fixed binding of the same name
  spec.fixed.erase(spec.axis1.name);
  spec.fixed.erase(spec.axis2.name);
  spec.validate();

  if (!dump_path.empty()) save_sweep_config(spec, dump_path);

  const SweepResult result = run_sweep(spec, jobs);
  OutputFormat fmt = OutputFormat::Csv;
  if (!format.empty()) {
    fmt = parse_output_format(format);
  } else if (!out_path.empty()) {
    const auto ext = std::filesystem::path(out_path).extension().string();
    if (ext == ".json") fmt = OutputFormat::Json;
    if (ext == ".svg") fmt = OutputFormat::SvgHeatmap;
  }
  if (out_path.empty() || out_path == "-") {
    write_result(result, fmt, out);
  } else {
    emit(result, fmt, out_path);
  }
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dephasing factor and quantum Fisher information of a qubit in a squeezed Ohmic reservoir", "sqdeph"};
  app.require_subcommand(1);

  ModelFlags gamma_flags;
  auto* gamma_cmd = app.add_subcommand("gamma", "Evaluate the dephasing factor gamma(t)");
  gamma_flags.add_to(*gamma_cmd, true, false);

  ModelFlags qfi_flags;
  std::string qfi_param = "phi";
  long long nu = 1;
  std::string derivative = "analytic";
  double step = 1e-6;
  auto* qfi_cmd = app.add_subcommand("qfi", "Quantum Fisher information of the evolved probe and its Cramer-Rao bound");
  qfi_flags.add_to(*qfi_cmd, true, true);
  qfi_cmd->add_option("--param", qfi_param, "Estimated parameter")
      ->check(CLI::IsMember({"alpha", "phi"}))
      ->capture_default_str();
  qfi_cmd->add_option("--nu", nu, "Number of repetitions for the Cramer-Rao bound")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  qfi_cmd->add_option("--derivative", derivative, "State derivative: analytic or central difference")
      ->check(CLI::IsMember({"analytic", "central"}))
      ->capture_default_str();
  qfi_cmd->add_option("--step", step, "Central-difference step")->check(CLI::Range(1e-8, 1e-3))->capture_default_str();

  ModelFlags sweep_flags;
  std::string config_path, quantity, axis1, axis2, out_path, format, dump_path;
  unsigned sweep_jobs = default_jobs();
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate a quantity on a two-axis parameter grid");
  sweep_flags.add_to(*sweep_cmd, false, true);
  sweep_cmd->add_option("--config", config_path, "Sweep config file (INI, or JSON by extension)")
      ->check(CLI::ExistingFile);
  sweep_cmd->add_option("--quantity", quantity, "gamma, qfi_phi, qfi_alpha or delta_qfi_vs_vacuum")
      ->check(CLI::IsMember({"gamma", "qfi_phi", "qfi_alpha", "delta_qfi_vs_vacuum"}));
  sweep_cmd->add_option("--axis1", axis1, "First axis NAME:MIN:MAX:POINTS[:open]");
  sweep_cmd->add_option("--axis2", axis2, "Second axis NAME:MIN:MAX:POINTS[:open]");
  sweep_cmd->add_option("--out", out_path, "Output file (stdout if omitted)");
  sweep_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json", "svg-heatmap", "svg-lines"}));
  sweep_cmd->add_option("--dump-config", dump_path, "Also write the effective sweep config to this file");
  sweep_cmd->add_option("--jobs", sweep_jobs, "Worker threads (default: SQDEPH_JOBS or hardware threads)")
      ->check(CLI::PositiveNumber);

  ModelFlags discrete_flags;
  auto* discrete_cmd = app.add_subcommand("discrete", "Compare the finite-mode bath sum with the closed form");
  discrete_flags.add_to(*discrete_cmd, true, false);

  unsigned verify_jobs = default_jobs();
  double verify_threshold = 1e-7;
  auto* verify_cmd = app.add_subcommand("verify", "Run the closed-form vs quadrature oracle grid");
  verify_cmd->add_option("--jobs", verify_jobs, "Worker threads")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--threshold", verify_threshold, "Maximum tolerated relative deviation")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*gamma_cmd) return run_gamma(gamma_flags, out);
    if (*qfi_cmd) return run_qfi(qfi_flags, qfi_param, nu, derivative, step, out);
    if (*discrete_cmd) return run_discrete(discrete_flags, out);
    if (*verify_cmd) return run_verify(verify_jobs, verify_threshold, out);
    if (*sweep_cmd) {
      return run_sweep_command(sweep_flags, config_path, quantity, axis1, axis2, out_path, format, dump_path,
                               sweep_jobs, out);
    }
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const EvaluationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const DegeneracyError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace sqdeph
