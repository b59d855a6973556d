#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include <json.hpp>

#include "sqdeph/sweep.hpp"

namespace sqdeph {

enum class OutputFormat { Csv, Json, SvgHeatmap, SvgLines };

std::string_view to_string(OutputFormat f);
OutputFormat parse_output_format(std::string_view name);

/// Header `axis1,axis2,value`, one row per grid point, 17 significant digits.
void write_csv(const SweepResult& result, std::ostream& out);

nlohmann::json sweep_result_to_json(const SweepResult& result);
SweepResult sweep_result_from_json(const nlohmann::json& j);

/// Color map of the grid, axis1 horizontal and axis2 vertical.
void write_svg_heatmap(const SweepResult& result, std::ostream& out);

/// Value against axis1, one line per axis2 value (at most 8, evenly picked).
void write_svg_lines(const SweepResult& result, std::ostream& out);

void write_result(const SweepResult& result, OutputFormat format, std::ostream& out);

/// Write to a file; failures raise IoError naming the path.
void emit(const SweepResult& result, OutputFormat format, const std::filesystem::path& path);

}  // namespace sqdeph
