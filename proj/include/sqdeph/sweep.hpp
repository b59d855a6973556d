#pragma once

// Two-axis parameter sweeps over the model, used to regenerate figure data.

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sqdeph/dephasing.hpp"
#include "sqdeph/qfi.hpp"
#include "sqdeph/spectral.hpp"

namespace sqdeph {

/// Names accepted as sweep axes or fixed bindings.
inline constexpr std::string_view kParameterNames[] = {"t",           "eta",    "s",         "omega_c",
                                                       "r",           "theta",  "temperature", "omega0",
                                                       "boltzmann",   "alpha",  "phi"};

bool is_parameter_name(std::string_view name);

/// One fully bound model instance. Unbound optional parameters take their
/// defaults: omega_c = 1, r = 0, theta = 0, temperature = 0, omega0 = 1,
/// boltzmann = 1, alpha = pi/2, phi = 0. t, eta and s are required.
struct ModelPoint {
  double t;
  OhmicSpectrum spec;
  SqueezeParams squeeze;
  ThermalParams thermal;
  ProbeState probe;

  static ModelPoint from_bindings(const std::map<std::string, double>& bindings);
};

enum class Quantity { Gamma, QfiPhi, QfiAlpha, DeltaQfiVsVacuum };

std::string_view to_string(Quantity q);
Quantity parse_quantity(std::string_view name);

struct EvaluationOptions {
  GammaMethod method = GammaMethod::Analytic;
  double rel_tol = kDefaultQuadratureTolerance;
  std::size_t discrete_modes = 4000;
  double omega_max_factor = 40.0;
};

/// Dephasing factor at the point, including the thermal factor (2<n>+1).
double point_gamma(const ModelPoint& point, const EvaluationOptions& opts);

/// gamma: the dephasing factor. qfi_phi / qfi_alpha: the general spectral QFI
/// of the evolved probe. delta_qfi_vs_vacuum: e^{-2 gamma} with squeezing
/// minus e^{-2 gamma} at r = 0, everything else equal.
double evaluate_quantity(const ModelPoint& point, Quantity quantity, const EvaluationOptions& opts);

struct Axis {
  std::string name;
  double min = 0.0;
  double max = 1.0;
  std::size_t points = 2;
  bool endpoint = true;  // false: half-open [min, max), e.g. a periodic angle

  std::vector<double> values() const;
  friend bool operator==(const Axis&, const Axis&) = default;
};

struct SweepSpec {
  std::map<std::string, double> fixed;
  Axis axis1;
  Axis axis2;
  Quantity quantity = Quantity::QfiPhi;
  EvaluationOptions options;

  /// Throws DomainError naming the offending field.
  void validate() const;

  friend bool operator==(const SweepSpec& a, const SweepSpec& b);
};

struct SweepPoint {
  double axis1;
  double axis2;
  double value;
  friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

struct SweepMetadata {
  std::string method;
  double rel_tol = 0.0;
  std::size_t discrete_modes = 0;
  double omega_max_factor = 0.0;
  double wall_time_seconds = 0.0;
  unsigned jobs = 1;
  friend bool operator==(const SweepMetadata&, const SweepMetadata&) = default;
};

/// Row-major grid: axis1 outer, axis2 inner.
struct SweepResult {
  SweepSpec spec;
  std::vector<SweepPoint> grid;
  SweepMetadata metadata;
  friend bool operator==(const SweepResult& a, const SweepResult& b);
};

/// Evaluate the sweep on `jobs` workers. Points are written to preallocated
/// slots so the grid is identical for any job count. A failing point aborts
/// the sweep with its coordinates in the message (exception type preserved).
SweepResult run_sweep(const SweepSpec& spec, unsigned jobs);

}  // namespace sqdeph
