// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "trend_claims.hpp"
#include "sqdeph/cli.hpp"
#include "sqdeph/dephasing.hpp"
#include "sqdeph/discrete_bath.hpp"
#include "sqdeph/emit.hpp"
#include "sqdeph/parallel.hpp"
#include "sqdeph/qfi.hpp"
#include "sqdeph/sweep.hpp"
#include "sqdeph/verify.hpp"

using namespace sqdeph;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Outcome oracle_equivalence(unsigned jobs) {
  const auto start = std::chrono::steady_clock::now();
  const auto report = run_oracle_grid(OracleGrid{}, jobs);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {report.points == 3 * 3 * 4 * 50 && report.max_relative_deviation <= 1e-7 && seconds <= 60.0,
          fmt("max rel dev %.3g over 1800 points in %.1f s", report.max_relative_deviation, seconds)};
}

Outcome vacuum_closed_form() {
  const double v = gamma_vacuum(1.0, OhmicSpectrum(0.6, 2.0, 1.0));
  const double ohmic = gamma_vacuum(1.0, OhmicSpectrum(0.6, 1.0, 1.0));
  const double quad = gamma_quadrature(1.0, OhmicSpectrum(0.6, 1.0, 1.0), SqueezeParams()).value;
  const bool pass = std::abs(v - 0.3) <= 1e-12 && std::abs(ohmic - 0.3 * std::log(2.0)) <= 1e-6 &&
                    std::abs(ohmic - quad) <= 1e-6;
  return {pass, fmt("s=2: |v-0.3|=%.2g, s=1: |v-quadrature|=%.2g", std::abs(v - 0.3), std::abs(ohmic - quad))};
}

Outcome qfi_identities() {
  double worst_alpha = 0.0, worst_phi = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double gamma = 3.0 * i / 19.0;
    for (int j = 0; j < 20; ++j) {
      const ProbeState probe(kPi / 2, 2.0 * kPi * j / 20.0);
      const double fa = qfi_general(evolved_family(QfiParameter::Alpha, probe, gamma), probe.alpha()).value;
      const double fp = qfi_general(evolved_family(QfiParameter::Phi, probe, gamma), probe.phi()).value;
      worst_alpha = std::max(worst_alpha, std::abs(fa - 1.0));
      worst_phi = std::max(worst_phi, std::abs(fp - std::exp(-2.0 * gamma)));
    }
  }
  return {worst_alpha <= 1e-9 && worst_phi <= 1e-8,
          fmt("max |F_alpha-1|=%.2g, max |F_phi-e^-2g|=%.2g", worst_alpha, worst_phi)};
}

Outcome thermal_scaling() {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> s_dist(0.3, 3.0), r_dist(0.0, 1.5), th_dist(0.0, 2 * kPi),
      t_dist(0.1, 10.0), temp_dist(0.05, 10.0), w0_dist(0.1, 5.0);
  double worst = 0.0;
  for (int k = 0; k < 20; ++k) {
    const OhmicSpectrum spec(0.6, s_dist(rng));
    const SqueezeParams sq(r_dist(rng), th_dist(rng));
    const double t = t_dist(rng);
    const ThermalParams thermal(temp_dist(rng), w0_dist(rng));
    const double expected = 2.0 / std::expm1(thermal.beta() * thermal.omega0()) + 1.0;
    worst = std::max(worst, rel(gamma_thermal(t, spec, sq, thermal) / gamma_analytic(t, spec, sq), expected));
  }
  return {worst <= 1e-12, fmt("max rel dev of ratio from 2<n>+1: %.2g over 20 draws", worst)};
}

Outcome discrete_continuum() {
  const OhmicSpectrum spec(0.6, 2.0);
  double worst = 0.0;
  const auto bath = discretize_spectrum(spec, 4000, 40.0);
  for (double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    for (double t : {0.5, 1.0, 2.0, 5.0, 10.0}) {
      const SqueezeParams sq(r, 0.0);
      worst = std::max(worst, rel(gamma_discrete(bath, t, sq), gamma_analytic(t, spec, sq)));
    }
  }
  const SqueezeParams sq(0.8, 0.0);
  const double exact = gamma_analytic(2.0, spec, sq);
  std::vector<double> errors;
  for (std::size_t n : {1000, 2000, 4000}) {
    errors.push_back(std::abs(gamma_discrete(discretize_spectrum(spec, n, 40.0), 2.0, sq) - exact));
  }
  const bool halving = errors[1] <= 0.5 * errors[0] && errors[2] <= 0.5 * errors[1];
  return {worst <= 1e-3 && halving, fmt("max rel dev %.2g at N=4000; error ratios %.3f, %.3f", worst,
                                        errors[1] / errors[0], errors[2] / errors[1])};
}

Outcome trend_claims(unsigned jobs) {
  const std::vector<std::pair<std::string, claims::ClaimResult>> results = {
      {"a", claims::squeezing_lowers_qfi(jobs)},  {"b", claims::phase_pi_preserves_qfi(jobs)},
      {"c", claims::weak_squeezing_enhances(jobs)}, {"d", claims::late_enhancement(jobs)},
      {"e", claims::temperature_degrades(jobs)},
  };
  bool pass = true;
  std::string detail;
  for (const auto& [label, r] : results) {
    pass = pass && r.pass;
    detail += "(" + label + ") " + (r.pass ? "ok" : "FAILED: " + r.detail) + "; ";
  }
  return {pass, detail};
}

Outcome properties(unsigned jobs) {
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> s_dist(0.3, 3.0), r_dist(0.0, 1.5), th_dist(0.0, 2 * kPi), t_dist(0.0, 20.0),
      eta_dist(0.05, 1.0), wc_dist(0.5, 2.0);
  std::size_t bad_gamma = 0, bad_fphi = 0;
  for (int k = 0; k < 1000; ++k) {
    const OhmicSpectrum spec(eta_dist(rng), s_dist(rng), wc_dist(rng));
    const SqueezeParams sq(r_dist(rng), th_dist(rng));
    const double t = t_dist(rng);
    const auto z = gamma_analytic_complex(t, spec, sq);
    const double g = gamma_analytic(t, spec, sq);
    if (!(g >= 0.0) || !(std::abs(z.imag()) < 1e-10)) ++bad_gamma;
    const ProbeState probe(kPi / 2, th_dist(rng));
    const double f = qfi_general(evolved_family(QfiParameter::Phi, probe, g), probe.phi()).value;
    if (!(f > 0.0 && f <= 1.0 + 1e-12)) ++bad_fphi;
  }

  SweepSpec spec;
  spec.quantity = Quantity::QfiPhi;
  spec.fixed = {{"s", 2.0}, {"eta", 0.6}, {"theta", 0.0}};
  spec.axis1 = {"r", 0.0, 1.0, 11};
  spec.axis2 = {"t", 0.0, 10.0, 21};
  std::ostringstream first, second;
  write_csv(run_sweep(spec, jobs), first);
  write_csv(run_sweep(spec, 1), second);
  const bool csv_same = first.str() == second.str();

  double worst_fd = 0.0;
  for (double gamma : {0.0, 0.3, 1.0, 3.0}) {
    for (double alpha : {0.3, kPi / 2, 2.8}) {
      const ProbeState probe(alpha, 1.1);
      for (QfiParameter which : {QfiParameter::Alpha, QfiParameter::Phi}) {
        const auto family = evolved_family(which, probe, gamma);
        const double xi = which == QfiParameter::Alpha ? alpha : probe.phi();
        worst_fd = std::max(worst_fd,
                            std::abs(qfi_general(family, xi, CentralDifference{}).value - qfi_general(family, xi).value));
      }
    }
  }
  const bool pass = bad_gamma == 0 && bad_fphi == 0 && csv_same && worst_fd <= 1e-6;
  return {pass, fmt("gamma violations %.0f, F_phi violations %.0f, max FD dev %.2g", static_cast<double>(bad_gamma),
                    static_cast<double>(bad_fphi), worst_fd) +
                    (csv_same ? ", CSV identical" : ", CSV differs")};
}

Outcome cli_smoke() {
  auto call = [](std::vector<const char*> argv, std::string& out) {
    std::ostringstream o, e;
    const int code = run_cli(static_cast<int>(argv.size()), argv.data(), o, e);
    out = o.str();
    return code;
  };
  std::string verify_out, gamma_out;
  const int verify_code = call({"sqdeph", "verify"}, verify_out);
  const int gamma_code =
      call({"sqdeph", "gamma", "--t", "1", "--eta", "0.6", "--s", "2", "--r", "0", "--theta", "0"}, gamma_out);
  const double printed = gamma_code == 0 ? std::stod(gamma_out) : -1.0;
  const bool pass = verify_code == 0 && gamma_code == 0 && std::abs(printed - 0.3) <= 1e-10;
  return {pass, "verify exit " + std::to_string(verify_code) + ", gamma printed " +
                    gamma_out.substr(0, gamma_out.find('\n'))};
}

}  // namespace

int main() {
  const unsigned jobs = default_jobs();
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"1 oracle equivalence", [&] { return oracle_equivalence(jobs); }},
      {"2 vacuum closed form", vacuum_closed_form},
      {"3 QFI identities", qfi_identities},
      {"4 thermal scaling", thermal_scaling},
      {"5 discrete to continuum", discrete_continuum},
      {"6 qualitative trends", [&] { return trend_claims(jobs); }},
      {"7 property suites", [&] { return properties(jobs); }},
      {"8 CLI smoke", cli_smoke},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Outcome outcome{false, ""};
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    if (!outcome.pass) ++failures;
    std::printf("%s criterion %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(), outcome.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
