#include "sqdeph/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sqdeph/discrete_bath.hpp"
#include "sqdeph/error.hpp"
#include "sqdeph/parallel.hpp"

namespace sqdeph {

namespace {

double binding_or(const std::map<std::string, double>& b, const std::string& key, double fallback) {
  const auto it = b.find(key);
  return it == b.end() ? fallback : it->second;
}

double required_binding(const std::map<std::string, double>& b, const std::string& key) {
  const auto it = b.find(key);
  if (it == b.end()) throw DomainError("parameter '" + key + "' is not bound");
  return it->second;
}

std::string coordinates(const Axis& a1, double v1, const Axis& a2, double v2) {
  std::ostringstream out;
  out.precision(17);
  out << a1.name << "=" << v1 << ", " << a2.name << "=" << v2;
  return out.str();
}

bool same_options(const EvaluationOptions& a, const EvaluationOptions& b) {
  return a.method == b.method && a.rel_tol == b.rel_tol && a.discrete_modes == b.discrete_modes &&
         a.omega_max_factor == b.omega_max_factor;
}

}  // namespace

bool is_parameter_name(std::string_view name) {
  return std::find(std::begin(kParameterNames), std::end(kParameterNames), name) != std::end(kParameterNames);
}

ModelPoint ModelPoint::from_bindings(const std::map<std::string, double>& b) {
  for (const auto& [key, value] : b) {
    if (!is_parameter_name(key)) throw DomainError("unknown model parameter '" + key + "'");
    if (!std::isfinite(value)) throw DomainError("parameter '" + key + "' is not finite");
  }
  return ModelPoint{
      required_binding(b, "t"),
      OhmicSpectrum(required_binding(b, "eta"), required_binding(b, "s"), binding_or(b, "omega_c", 1.0)),
      SqueezeParams(binding_or(b, "r", 0.0), binding_or(b, "theta", 0.0)),
      ThermalParams(binding_or(b, "temperature", 0.0), binding_or(b, "omega0", 1.0), binding_or(b, "boltzmann", 1.0)),
      ProbeState(binding_or(b, "alpha", std::numbers::pi / 2.0), binding_or(b, "phi", 0.0)),
  };
}

std::string_view to_string(Quantity q) {
  switch (q) {
    case Quantity::Gamma: return "gamma";
    case Quantity::QfiPhi: return "qfi_phi";
    case Quantity::QfiAlpha: return "qfi_alpha";
    case Quantity::DeltaQfiVsVacuum: return "delta_qfi_vs_vacuum";
  }
  return "";
}

Quantity parse_quantity(std::string_view name) {
  if (name == "gamma") return Quantity::Gamma;
  if (name == "qfi_phi") return Quantity::QfiPhi;
  if (name == "qfi_alpha") return Quantity::QfiAlpha;
  if (name == "delta_qfi_vs_vacuum") return Quantity::DeltaQfiVsVacuum;
  throw DomainError("unknown quantity '" + std::string(name) +
                    "' (expected gamma, qfi_phi, qfi_alpha or delta_qfi_vs_vacuum)");
}

double point_gamma(const ModelPoint& point, const EvaluationOptions& opts) {
  GammaSeriesOptions series_opts;
  series_opts.method = opts.method;
  series_opts.rel_tol = opts.rel_tol;
  series_opts.discrete_modes = opts.discrete_modes;
  series_opts.omega_max_factor = opts.omega_max_factor;
  if (!point.thermal.is_vacuum()) series_opts.thermal = point.thermal;
  return gamma_with(point.t, point.spec, point.squeeze, series_opts);
}

double evaluate_quantity(const ModelPoint& point, Quantity quantity, const EvaluationOptions& opts) {
  switch (quantity) {
    case Quantity::Gamma:
      return point_gamma(point, opts);
    case Quantity::QfiPhi: {
      const auto family = evolved_family(QfiParameter::Phi, point.probe, point_gamma(point, opts));
      return qfi_general(family, point.probe.phi()).value;
    }
    case Quantity::QfiAlpha: {
      const auto family = evolved_family(QfiParameter::Alpha, point.probe, point_gamma(point, opts));
      return qfi_general(family, point.probe.alpha()).value;
    }
    case Quantity::DeltaQfiVsVacuum: {
      ModelPoint vacuum = point;
      vacuum.squeeze = SqueezeParams::vacuum();
      return qfi_phi(point_gamma(point, opts)) - qfi_phi(point_gamma(vacuum, opts));
    }
  }
  throw DomainError("unknown quantity");
}

std::vector<double> Axis::values() const {
  std::vector<double> v(points);
  const double divisions = endpoint ? static_cast<double>(points - 1) : static_cast<double>(points);
  for (std::size_t i = 0; i < points; ++i) v[i] = min + (max - min) * static_cast<double>(i) / divisions;
  if (endpoint && points > 1) v.back() = max;
  return v;
}

void SweepSpec::validate() const {
  for (const Axis* axis : {&axis1, &axis2}) {
    if (!is_parameter_name(axis->name)) throw DomainError("axis parameter '" + axis->name + "' is not a model parameter");
    if (axis->points < 2) throw DomainError("axis '" + axis->name + "' needs at least 2 points");
    if (!std::isfinite(axis->min) || !std::isfinite(axis->max)) throw DomainError("axis '" + axis->name + "' range is not finite");
    if (!(axis->max > axis->min)) throw DomainError("axis '" + axis->name + "' needs max > min");
    if (fixed.contains(axis->name)) throw DomainError("axis parameter '" + axis->name + "' is also bound in fixed");
  }
  if (axis1.name == axis2.name) throw DomainError("axis1 and axis2 must name different parameters");
  for (const auto& [key, value] : fixed) {
    if (!is_parameter_name(key)) throw DomainError("unknown fixed parameter '" + key + "'");
    if (!std::isfinite(value)) throw DomainError("fixed parameter '" + key + "' is not finite");
  }
  for (const char* required : {"t", "eta", "s"}) {
    if (!fixed.contains(required) && axis1.name != required && axis2.name != required) {
      throw DomainError(std::string("parameter '") + required + "' must be fixed or swept");
    }
  }
  if (!(options.rel_tol >= 1e-13 && options.rel_tol <= 1e-3)) throw DomainError("rel_tol must lie in [1e-13, 1e-3]");
  if (options.discrete_modes < 1) throw DomainError("modes must be >= 1");
  if (!(options.omega_max_factor > 0.0)) throw DomainError("omega_max must be > 0");
}

bool operator==(const SweepSpec& a, const SweepSpec& b) {
  return a.fixed == b.fixed && a.axis1 == b.axis1 && a.axis2 == b.axis2 && a.quantity == b.quantity &&
         same_options(a.options, b.options);
}

bool operator==(const SweepResult& a, const SweepResult& b) {
  return a.spec == b.spec && a.grid == b.grid && a.metadata == b.metadata;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned jobs) {
  spec.validate();
  const auto start = std::chrono::steady_clock::now();
  const auto v1 = spec.axis1.values();
  const auto v2 = spec.axis2.values();

  SweepResult result;
  result.spec = spec;
  result.grid.resize(v1.size() * v2.size());

  parallel_for(result.grid.size(), jobs, [&](std::size_t k) {
    const double a = v1[k / v2.size()];
    const double b = v2[k % v2.size()];
    auto bindings = spec.fixed;
    bindings[spec.axis1.name] = a;
    bindings[spec.axis2.name] = b;
    double value = 0.0;
    try {
      value = evaluate_quantity(ModelPoint::from_bindings(bindings), spec.quantity, spec.options);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("sweep point (" + coordinates(spec.axis1, a, spec.axis2, b) + "): " + e.what(), e.value(),
                             e.error_estimate());
    } catch (const DomainError& e) {
      throw DomainError("sweep point (" + coordinates(spec.axis1, a, spec.axis2, b) + "): " + e.what());
    } catch (const std::exception& e) {
      throw EvaluationError("sweep point (" + coordinates(spec.axis1, a, spec.axis2, b) + "): " + e.what());
    }
    if (!std::isfinite(value)) {
      throw EvaluationError("sweep point (" + coordinates(spec.axis1, a, spec.axis2, b) + ") is not finite");
    }
    result.grid[k] = {a, b, value};
  });

  result.metadata.method = std::string(to_string(spec.options.method));
  result.metadata.rel_tol = spec.options.rel_tol;
  result.metadata.discrete_modes = spec.options.discrete_modes;
  result.metadata.omega_max_factor = spec.options.omega_max_factor;
  result.metadata.jobs = std::max(1u, jobs);
  result.metadata.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace sqdeph
