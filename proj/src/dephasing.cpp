#include "sqdeph/dephasing.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "sqdeph/discrete_bath.hpp"
#include "sqdeph/error.hpp"
#include "sqdeph/parallel.hpp"
#include "sqdeph/special.hpp"

namespace sqdeph {

namespace {

void require_time(double t, const char* who) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << who << " requires finite t >= 0, got " << t;
    throw DomainError(msg.str());
  }
}

double clamp_nonnegative(double value, const char* who) {
  if (!std::isfinite(value)) throw EvaluationError(std::string(who) + " produced a non-finite value");
  if (value < -kNegativeClampTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << who << " produced a negative dephasing factor " << value;
    throw EvaluationError(msg.str());
  }
  return value < 0.0 ? 0.0 : value;
}

// Gamma(s - 1) * (1 - z^(1-s)), continued to Log z at s = 1. expm1 keeps the
// product accurate for s close to 1 where Gamma(s - 1) blows up.
class PowerDifference {
 public:
  explicit PowerDifference(double s) : s_(s), ohmic_(s == 1.0), gamma_(ohmic_ ? 0.0 : gamma_function(s - 1.0)) {}

  std::complex<double> operator()(std::complex<double> base) const {
    if (!(base.real() > 0.0)) throw EvaluationError("complex power base left the right half-plane");
    const std::complex<double> log_base = std::log(base);
    if (ohmic_) return log_base;
    return -gamma_ * expm1((1.0 - s_) * log_base);
  }

 private:
  double s_;
  bool ohmic_;
  double gamma_;
};

}  // namespace

std::string_view to_string(GammaMethod method) {
  switch (method) {
    case GammaMethod::Analytic: return "analytic";
    case GammaMethod::Quadrature: return "quadrature";
    case GammaMethod::Discrete: return "discrete";
  }
  return "";
}

GammaMethod parse_gamma_method(std::string_view name) {
  if (name == "analytic") return GammaMethod::Analytic;
  if (name == "quadrature") return GammaMethod::Quadrature;
  if (name == "discrete") return GammaMethod::Discrete;
  throw DomainError("unknown gamma method '" + std::string(name) + "' (expected analytic, quadrature or discrete)");
}

std::complex<double> gamma_analytic_complex(double t, const OhmicSpectrum& spec, const SqueezeParams& sq) {
  require_time(t, "gamma_analytic");
  using namespace std::complex_literals;
  const double tau = spec.omega_c() * t;
  const PowerDifference diff(spec.s());
  const auto d_plus = diff(1.0 + 1i * tau);
  const auto d_minus = diff(1.0 - 1i * tau);
  const auto d2_plus = diff(1.0 + 2i * tau);
  const auto d2_minus = diff(1.0 - 2i * tau);

  const double cosh2r = std::cosh(2.0 * sq.r());
  const double sinh2r = std::sinh(2.0 * sq.r());
  const auto phase = std::polar(1.0, sq.theta());

  const auto braces = 2.0 * cosh2r * (d_plus + d_minus) + std::conj(phase) * sinh2r * (2.0 * d_minus - d2_minus) +
                      phase * sinh2r * (2.0 * d_plus - d2_plus);
  return spec.eta() / 4.0 * braces;
}

double gamma_analytic(double t, const OhmicSpectrum& spec, const SqueezeParams& sq) {
  const auto value = gamma_analytic_complex(t, spec, sq);
  if (!(std::abs(value.imag()) < kImaginaryResidueTolerance)) {
    std::ostringstream msg;
    msg << "closed-form dephasing factor has imaginary residue " << value.imag() << " at t=" << t;
    throw EvaluationError(msg.str());
  }
  return clamp_nonnegative(value.real(), "gamma_analytic");
}

double gamma_vacuum(double t, const OhmicSpectrum& spec) {
  require_time(t, "gamma_vacuum");
  const double tau = spec.omega_c() * t;
  const double s = spec.s();
  if (s == 1.0) return clamp_nonnegative(0.5 * spec.eta() * std::log1p(tau * tau), "gamma_vacuum");
  const double ratio = std::cos((s - 1.0) * std::atan(tau)) / std::pow(1.0 + tau * tau, 0.5 * (s - 1.0));
  return clamp_nonnegative(spec.eta() * (1.0 - ratio) * gamma_function(s - 1.0), "gamma_vacuum");
}

double dephasing_integrand(double w, double t, const OhmicSpectrum& spec, const SqueezeParams& sq) {
  if (w <= 0.0) return 0.0;
  const double wt = w * t;
  // 2 sin^2(wt/2)/w^2 = (1 - cos wt)/w^2
  const double sinc = std::sin(0.5 * wt) / w;
  // e^{-2r} + 2 sin^2((wt - theta)/2) sinh 2r = cosh 2r - cos(wt - theta) sinh 2r, without cancellation
  const double shifted = std::sin(0.5 * (wt - sq.theta()));
  const double bracket = std::exp(-2.0 * sq.r()) + 2.0 * shifted * shifted * std::sinh(2.0 * sq.r());
  return spectral_density(w, spec) * 2.0 * sinc * sinc * bracket;
}

QuadratureResult gamma_quadrature(double t, const OhmicSpectrum& spec, const SqueezeParams& sq, double rel_tol) {
  require_time(t, "gamma_quadrature");
  if (!(rel_tol >= 1e-13 && rel_tol <= 1e-3)) throw DomainError("gamma_quadrature rel_tol must lie in [1e-13, 1e-3]");
  if (t == 0.0) return {};

  const double wc = spec.omega_c();
  const double cutoff = wc * std::max(40.0, 40.0 + std::log(1.0 / rel_tol));
  auto integrand = [&](double w) { return dephasing_integrand(w, t, spec, sq); };

  constexpr std::size_t kMaxPanels = 4096;
  const double period = std::numbers::pi / t;
  std::vector<double> breaks;
  const double natural = std::ceil(cutoff / period);
  if (natural <= static_cast<double>(kMaxPanels)) {
    const auto n = static_cast<std::size_t>(natural);
    breaks.reserve(n + 1);
    for (std::size_t k = 0; k < n; ++k) breaks.push_back(static_cast<double>(k) * period);
    if (breaks.back() < cutoff) breaks.push_back(cutoff);
  } else {
    breaks.reserve(kMaxPanels + 1);
    for (std::size_t k = 0; k <= kMaxPanels; ++k) breaks.push_back(cutoff * static_cast<double>(k) / kMaxPanels);
  }

  QuadratureOptions opts;
  opts.rel_tol = rel_tol;
  QuadratureResult result;
  try {
    result = integrate_adaptive(integrand, breaks, opts);
  } catch (const ConvergenceError& e) {
    std::ostringstream msg;
    msg << "gamma_quadrature at t=" << t << ": " << e.what();
    throw ConvergenceError(msg.str(), e.value(), e.error_estimate());
  }

  // Tail beyond U in scaled units x = w/wc: integrand <= 2 eta e^{2r} x^{s-2} e^{-x},
  // and int_X^inf x^{a} e^{-x} dx <= X^a e^{-X} / (1 - max(a, 0)/X).
  const double x_cut = cutoff / wc;
  const double a = spec.s() - 2.0;
  const double tail = 2.0 * spec.eta() * std::exp(2.0 * sq.r()) * std::exp(a * std::log(x_cut) - x_cut) /
                      (1.0 - std::max(a, 0.0) / x_cut);
  result.error_estimate += tail;
  result.value = clamp_nonnegative(result.value, "gamma_quadrature");
  return result;
}

double gamma_thermal(double t, const OhmicSpectrum& spec, const SqueezeParams& sq, const ThermalParams& thermal) {
  return (2.0 * mean_occupation(thermal) + 1.0) * gamma_analytic(t, spec, sq);
}

namespace {

template <typename Eval>
double tagged(double t, Eval&& eval) {
  try {
    return eval();
  } catch (const ConvergenceError& e) {
    throw;
  } catch (const DomainError& e) {
    std::ostringstream msg;
    msg << "at t=" << t << ": " << e.what();
    throw DomainError(msg.str());
  } catch (const EvaluationError& e) {
    std::ostringstream msg;
    msg << "at t=" << t << ": " << e.what();
    throw EvaluationError(msg.str());
  }
}

double thermal_factor(const GammaSeriesOptions& opts) {
  return opts.thermal ? 2.0 * mean_occupation(*opts.thermal) + 1.0 : 1.0;
}

}  // namespace

double gamma_with(double t, const OhmicSpectrum& spec, const SqueezeParams& sq, const GammaSeriesOptions& opts) {
  switch (opts.method) {
    case GammaMethod::Analytic:
      return opts.thermal ? gamma_thermal(t, spec, sq, *opts.thermal) : gamma_analytic(t, spec, sq);
    case GammaMethod::Quadrature:
      return thermal_factor(opts) * gamma_quadrature(t, spec, sq, opts.rel_tol).value;
    case GammaMethod::Discrete: {
      const auto bath = discretize_spectrum(spec, opts.discrete_modes, opts.omega_max_factor * spec.omega_c());
      return thermal_factor(opts) * gamma_discrete(bath, t, sq);
    }
  }
  throw DomainError("unknown gamma method");
}

GammaSeries gamma_series(std::span<const double> times, const OhmicSpectrum& spec, const SqueezeParams& sq,
                         const GammaSeriesOptions& opts) {
  for (std::size_t i = 0; i < times.size(); ++i) {
    require_time(times[i], "gamma_series");
    if (i > 0 && !(times[i] > times[i - 1])) throw DomainError("gamma_series times must be strictly increasing");
  }

  GammaSeries series;
  series.method = opts.method;
  series.times.assign(times.begin(), times.end());
  series.values.assign(times.size(), 0.0);

  std::optional<DiscreteBath> bath;
  if (opts.method == GammaMethod::Discrete) {
    bath.emplace(discretize_spectrum(spec, opts.discrete_modes, opts.omega_max_factor * spec.omega_c()));
  }
  const double factor = thermal_factor(opts);

  parallel_for(times.size(), opts.jobs, [&](std::size_t i) {
    const double t = times[i];
    series.values[i] = tagged(t, [&] {
      switch (opts.method) {
        case GammaMethod::Analytic: return factor * gamma_analytic(t, spec, sq);
        case GammaMethod::Quadrature: return factor * gamma_quadrature(t, spec, sq, opts.rel_tol).value;
        case GammaMethod::Discrete: return factor * gamma_discrete(*bath, t, sq);
      }
      return 0.0;
    });
  });
  return series;
}

}  // namespace sqdeph
