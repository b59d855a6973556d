#pragma once

// Physical parameter types for the squeezed dephasing model and the
// Ohmic-family bath spectral density J(w) = eta * w^s / wc^(s-1) * exp(-w/wc).

#include <cmath>
#include <numbers>
#include <string_view>

#include "sqdeph/error.hpp"

namespace sqdeph {

/// Reduce an angle to [0, 2*pi).
template <typename Scalar>
Scalar wrap_two_pi(Scalar angle) {
  constexpr Scalar two_pi = 2 * std::numbers::pi_v<Scalar>;
  Scalar reduced = std::fmod(angle, two_pi);
  if (reduced < 0) reduced += two_pi;
  // fmod of a tiny negative number can round up to exactly 2*pi
  if (reduced >= two_pi) reduced = 0;
  return reduced;
}

/// Reservoir squeezing S(r, theta): magnitude r >= 0 and reference phase
/// theta, stored reduced to [0, 2*pi).
class SqueezeParams {
 public:
  SqueezeParams() = default;
  SqueezeParams(double r, double theta) : r_(r), theta_(wrap_two_pi(theta)) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw DomainError("squeeze magnitude r must be finite and >= 0");
    if (!std::isfinite(theta)) throw DomainError("squeeze phase theta must be finite");
  }

  double r() const noexcept { return r_; }
  double theta() const noexcept { return theta_; }

  static SqueezeParams vacuum() { return {}; }

  friend bool operator==(const SqueezeParams&, const SqueezeParams&) = default;

 private:
  double r_ = 0.0;
  double theta_ = 0.0;
};

enum class OhmicClass { SubOhmic, Ohmic, SuperOhmic };

constexpr std::string_view to_string(OhmicClass c) {
  switch (c) {
    case OhmicClass::SubOhmic: return "sub-Ohmic";
    case OhmicClass::Ohmic: return "Ohmic";
    case OhmicClass::SuperOhmic: return "super-Ohmic";
  }
  return "";
}

/// Ohmic-family spectrum with exponential (soft) cutoff.
class OhmicSpectrum {
 public:
  OhmicSpectrum(double eta, double s, double omega_c = 1.0) : eta_(eta), s_(s), omega_c_(omega_c) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw DomainError("coupling eta must be finite and > 0");
    if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("Ohmicity s must be finite and > 0");
    if (!(omega_c > 0.0) || !std::isfinite(omega_c)) throw DomainError("cutoff omega_c must be finite and > 0");
  }

  double eta() const noexcept { return eta_; }
  double s() const noexcept { return s_; }
  double omega_c() const noexcept { return omega_c_; }

  OhmicClass classify() const noexcept {
    if (s_ < 1.0) return OhmicClass::SubOhmic;
    if (s_ > 1.0) return OhmicClass::SuperOhmic;
    return OhmicClass::Ohmic;
  }

  friend bool operator==(const OhmicSpectrum&, const OhmicSpectrum&) = default;

 private:
  double eta_;
  double s_;
  double omega_c_;
};

/// Temperature of a squeezed thermal reservoir. temperature == 0 is the
/// squeezed vacuum. Natural units by default (boltzmann == 1).
///
/// The occupation <n> is evaluated at the single qubit frequency omega0
/// rather than per bath mode; this is the simplification the model makes.
class ThermalParams {
 public:
  ThermalParams() = default;
  ThermalParams(double temperature, double omega0, double boltzmann = 1.0)
      : temperature_(temperature), omega0_(omega0), boltzmann_(boltzmann) {
    if (!(temperature >= 0.0) || !std::isfinite(temperature)) throw DomainError("temperature must be finite and >= 0");
    if (!(omega0 > 0.0) || !std::isfinite(omega0)) throw DomainError("omega0 must be finite and > 0");
    if (!(boltzmann > 0.0) || !std::isfinite(boltzmann)) throw DomainError("boltzmann constant must be finite and > 0");
  }

  double temperature() const noexcept { return temperature_; }
  double omega0() const noexcept { return omega0_; }
  double boltzmann() const noexcept { return boltzmann_; }
  bool is_vacuum() const noexcept { return temperature_ == 0.0; }

  /// Inverse temperature 1/(k T); only defined for T > 0.
  double beta() const {
    if (is_vacuum()) throw DomainError("beta is undefined at zero temperature");
    return 1.0 / (boltzmann_ * temperature_);
  }

  friend bool operator==(const ThermalParams&, const ThermalParams&) = default;

 private:
  double temperature_ = 0.0;
  double omega0_ = 1.0;
  double boltzmann_ = 1.0;
};

/// J(omega) for omega > 0.
template <typename Scalar>
Scalar spectral_density(Scalar omega, const OhmicSpectrum& spec) {
  if (!(omega > 0)) throw DomainError("spectral_density requires omega > 0");
  const Scalar x = omega / Scalar(spec.omega_c());
  // eta * wc * x^s * exp(-x) avoids overflow of wc^(s-1) for extreme cutoffs
  return Scalar(spec.eta()) * Scalar(spec.omega_c()) * std::exp(Scalar(spec.s()) * std::log(x) - x);
}

/// Bose-Einstein occupation 1/(exp(beta*omega0) - 1); 0 for the vacuum.
double mean_occupation(const ThermalParams& thermal);

}  // namespace sqdeph
