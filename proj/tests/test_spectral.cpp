#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sqdeph/spectral.hpp"

using namespace sqdeph;

TEST_CASE("squeeze phase is reduced to [0, 2pi)") {
  const double two_pi = 2.0 * std::numbers::pi;
  CHECK(SqueezeParams(0.3, 7.0).theta() == doctest::Approx(7.0 - two_pi).epsilon(1e-15));
  CHECK(SqueezeParams(0.3, -1.0).theta() == doctest::Approx(two_pi - 1.0).epsilon(1e-15));
  CHECK(SqueezeParams(0.3, two_pi).theta() == 0.0);
  CHECK(SqueezeParams(0.3, -1e-18).theta() < two_pi);
  CHECK_THROWS_AS(SqueezeParams(-0.1, 0.0), DomainError);
  CHECK_THROWS_AS(SqueezeParams(0.1, NAN), DomainError);
}

TEST_CASE("spectrum validation and classification") {
  CHECK_THROWS_AS(OhmicSpectrum(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(OhmicSpectrum(0.6, 0.0), DomainError);
  CHECK_THROWS_AS(OhmicSpectrum(0.6, 1.0, -1.0), DomainError);
  CHECK(OhmicSpectrum(0.6, 0.8).classify() == OhmicClass::SubOhmic);
  CHECK(OhmicSpectrum(0.6, 1.0).classify() == OhmicClass::Ohmic);
  CHECK(OhmicSpectrum(0.6, 2.0).classify() == OhmicClass::SuperOhmic);
  CHECK(to_string(OhmicClass::SubOhmic) == "sub-Ohmic");
  CHECK(to_string(OhmicClass::Ohmic) == "Ohmic");
  CHECK(to_string(OhmicClass::SuperOhmic) == "super-Ohmic");
}

TEST_CASE("spectral density values") {
  CHECK(spectral_density(1e-300, OhmicSpectrum(0.6, 2.0)) < 1e-100);
  // 0.6 e^{-1} and 2 e^{-2}
  CHECK(spectral_density(1.0, OhmicSpectrum(0.6, 2.0)) == doctest::Approx(0.6 * std::exp(-1.0)).epsilon(1e-15));
  CHECK(spectral_density(1.0, OhmicSpectrum(0.6, 2.0)) == doctest::Approx(0.220728).epsilon(1e-6));
  CHECK(spectral_density(2.0, OhmicSpectrum(1.0, 1.0)) == doctest::Approx(0.270671).epsilon(1e-6));
  // wc^(1-s) factor: eta w^s / wc^(s-1) e^{-w/wc}
  CHECK(spectral_density(3.0, OhmicSpectrum(0.5, 2.5, 2.0)) ==
        doctest::Approx(0.5 * std::pow(3.0, 2.5) / std::pow(2.0, 1.5) * std::exp(-1.5)).epsilon(1e-14));
  CHECK_THROWS_AS(spectral_density(0.0, OhmicSpectrum(0.6, 2.0)), DomainError);
  CHECK_THROWS_AS(spectral_density(-1.0, OhmicSpectrum(0.6, 2.0)), DomainError);
}

TEST_CASE("spectral density is positive and finite on a log grid") {
  for (double s : {0.3, 0.8, 1.0, 2.0, 3.0}) {
    const OhmicSpectrum spec(0.6, s);
    double max_value = 0.0;
    for (int k = 0; k <= 180; ++k) {
      const double w = std::pow(10.0, -6.0 + 9.0 * k / 180.0);
      const double j = spectral_density(w, spec);
      CHECK(std::isfinite(j));
      if (w < 700.0) CHECK(j > 0.0);
      max_value = std::max(max_value, j);
    }
    CHECK(std::isfinite(max_value));
  }
}

TEST_CASE("cutoff scaling J(w; wc=c)/c = J(w/c; wc=1)") {
  for (double s : {0.5, 1.0, 2.0, 2.7}) {
    for (double c : {0.3, 1.7, 25.0}) {
      for (double w : {0.01, 0.5, 3.0, 40.0}) {
        const double lhs = spectral_density(w, OhmicSpectrum(0.6, s, c)) / c;
        const double rhs = spectral_density(w / c, OhmicSpectrum(0.6, s, 1.0));
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("mean occupation") {
  CHECK(mean_occupation(ThermalParams(0.0, 1.0)) == 0.0);
  // beta*omega0 = ln 2 gives <n> = 1, ln(3/2) gives <n> = 2
  CHECK(mean_occupation(ThermalParams(1.0 / std::log(2.0), 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mean_occupation(ThermalParams(1.0 / std::log(1.5), 1.0)) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(mean_occupation(ThermalParams(2.0 / std::log(2.0), 2.0)) == doctest::Approx(1.0).epsilon(1e-14));
  // k != 1: beta = 1/(kT)
  CHECK(mean_occupation(ThermalParams(0.5 / std::log(2.0), 1.0, 2.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(ThermalParams(0.0, 1.0).beta(), DomainError);
  CHECK_THROWS_AS(ThermalParams(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(ThermalParams(1.0, 0.0), DomainError);
}

TEST_CASE("mean occupation increases with temperature") {
  double previous = -1.0;
  for (int k = 0; k < 20; ++k) {
    const double n = mean_occupation(ThermalParams(0.05 + 0.5 * k, 1.3));
    CHECK(n > previous);
    previous = n;
  }
}
