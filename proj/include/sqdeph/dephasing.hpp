#pragma once

// Dephasing factor gamma(t) of a qubit coupled through sigma_z to a squeezed
// (optionally thermal) Ohmic-family reservoir:
//
//   gamma(t) = int_0^inf J(w) (1 - cos wt)/w^2 [cosh 2r - cos(wt - theta) sinh 2r] dw
//
// The integration domain is (0, inf). Three independent routes are provided:
// the Gamma-function closed form, direct adaptive quadrature, and a finite
// mode sum (see discrete_bath.hpp).

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sqdeph/quadrature.hpp"
#include "sqdeph/spectral.hpp"

namespace sqdeph {

enum class GammaMethod { Analytic, Quadrature, Discrete };

std::string_view to_string(GammaMethod method);
GammaMethod parse_gamma_method(std::string_view name);

/// Negative results down to this magnitude are rounding noise and clamp to 0.
inline constexpr double kNegativeClampTolerance = 1e-12;
/// Largest imaginary residue tolerated in the closed form.
inline constexpr double kImaginaryResidueTolerance = 1e-10;
inline constexpr double kDefaultQuadratureTolerance = 1e-10;

/// The closed-form braces before the imaginary part is discarded, at
/// tau = omega_c * t. Complex powers use the principal branch; the bases
/// 1 +- i tau and 1 +- 2i tau have real part 1 so no cut is crossed.
/// The Ohmic pole of Gamma(s - 1) at s = 1 is removed analytically: each
/// Gamma(s - 1)(1 - z^(1-s)) term tends to Log z.
std::complex<double> gamma_analytic_complex(double t, const OhmicSpectrum& spec, const SqueezeParams& sq);

/// Closed-form gamma(t) for the squeezed vacuum reservoir.
double gamma_analytic(double t, const OhmicSpectrum& spec, const SqueezeParams& sq);

/// Unsqueezed vacuum: eta [1 - cos((s-1) atan tau) / (1+tau^2)^((s-1)/2)] Gamma(s-1),
/// and (eta/2) ln(1 + tau^2) at s = 1.
double gamma_vacuum(double t, const OhmicSpectrum& spec);

/// Integrand of the definition at frequency w > 0. Behaves like
/// J(w) t^2/2 [cosh 2r - cos(theta) sinh 2r] as w -> 0, finite for all s > 0.
double dephasing_integrand(double w, double t, const OhmicSpectrum& spec, const SqueezeParams& sq);

/// Adaptive Gauss-Kronrod quadrature of the integral definition, with panel
/// breaks at multiples of pi/t on [0, U], U = omega_c * max(40, 40 + ln(1/rel_tol)).
/// The truncated tail bound is included in error_estimate.
QuadratureResult gamma_quadrature(double t, const OhmicSpectrum& spec, const SqueezeParams& sq,
                                  double rel_tol = kDefaultQuadratureTolerance);

/// Squeezed thermal reservoir: (2<n> + 1) * gamma_analytic.
double gamma_thermal(double t, const OhmicSpectrum& spec, const SqueezeParams& sq, const ThermalParams& thermal);

struct GammaSeries {
  std::vector<double> times;
  std::vector<double> values;
  GammaMethod method = GammaMethod::Analytic;
};

struct GammaSeriesOptions {
  GammaMethod method = GammaMethod::Analytic;
  std::optional<ThermalParams> thermal;
  double rel_tol = kDefaultQuadratureTolerance;
  std::size_t discrete_modes = 4000;
  double omega_max_factor = 40.0;  // discrete cutoff in units of omega_c
  unsigned jobs = 1;
};

/// gamma(t) on a strictly increasing grid of nonnegative times. Output does
/// not depend on opts.jobs. Failures are rethrown with the time attached.
GammaSeries gamma_series(std::span<const double> times, const OhmicSpectrum& spec, const SqueezeParams& sq,
                         const GammaSeriesOptions& opts = {});

/// Single-point evaluation with the series' method selection (and the
/// thermal factor when opts.thermal is set).
double gamma_with(double t, const OhmicSpectrum& spec, const SqueezeParams& sq, const GammaSeriesOptions& opts);

}  // namespace sqdeph
