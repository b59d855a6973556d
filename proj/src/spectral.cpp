#include "sqdeph/spectral.hpp"

#include <cmath>

namespace sqdeph {

double mean_occupation(const ThermalParams& thermal) {
  if (thermal.is_vacuum()) return 0.0;
  const double x = thermal.beta() * thermal.omega0();
  // expm1 keeps <n> accurate in the classical limit x -> 0
  return 1.0 / std::expm1(x);
}

}  // namespace sqdeph
