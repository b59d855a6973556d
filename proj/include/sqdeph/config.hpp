#pragma once

// Sweep configuration files. The primary format is INI-style:
//
//   [sweep]
//   ; gamma | qfi_phi | qfi_alpha | delta_qfi_vs_vacuum
//   quantity = qfi_phi
//   ; analytic | quadrature | discrete
//   method = analytic
//   rel_tol = 1e-10
//   ; discrete bath size and cutoff (units of omega_c)
//   modes = 4000
//   omega_max = 40
//
//   [fixed]
//   eta = 0.6
//   s = 2
//
//   [axis1]
//   name = r
//   min = 0
//   max = 1
//   points = 41
//   ; optional, false samples [min, max)
//   endpoint = true
//
//   [axis2]
//   ...
//
// Comments must sit on their own line. Every key of [sweep] is optional.
// A JSON mirror with the same sections as objects is accepted as well.

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "sqdeph/sweep.hpp"

namespace sqdeph {

enum class ConfigFormat { Ini, Json };

/// Json for *.json paths, Ini otherwise.
ConfigFormat config_format_for(const std::filesystem::path& path);

SweepSpec parse_sweep_config(std::string_view text, ConfigFormat format);
std::string format_sweep_config(const SweepSpec& spec, ConfigFormat format);

SweepSpec load_sweep_config(const std::filesystem::path& path);
void save_sweep_config(const SweepSpec& spec, const std::filesystem::path& path);

nlohmann::json sweep_spec_to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

}  // namespace sqdeph
