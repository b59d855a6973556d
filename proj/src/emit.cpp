#include "sqdeph/emit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "sqdeph/config.hpp"
#include "sqdeph/error.hpp"

namespace sqdeph {

namespace {

std::string full_precision(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Rgb {
  double r, g, b;
};

// Piecewise-linear viridis.
std::string viridis(double x) {
  static constexpr std::array<Rgb, 6> stops = {{{68, 1, 84},
                                                {65, 68, 135},
                                                {42, 120, 142},
                                                {34, 168, 132},
                                                {122, 209, 81},
                                                {253, 231, 37}}};
  x = std::clamp(x, 0.0, 1.0) * static_cast<double>(stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(x), stops.size() - 2);
  const double f = x - static_cast<double>(i);
  const Rgb& a = stops[i];
  const Rgb& b = stops[i + 1];
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", static_cast<int>(std::lround(a.r + f * (b.r - a.r))),
                static_cast<int>(std::lround(a.g + f * (b.g - a.g))), static_cast<int>(std::lround(a.b + f * (b.b - a.b))));
  return buf;
}

constexpr std::array<const char*, 8> kLineColors = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

struct Frame {
  double width = 640, height = 480;
  double left = 70, right = 130, top = 40, bottom = 60;
  double x0() const { return left; }
  double x1() const { return width - right; }
  double y0() const { return height - bottom; }  // bottom edge in SVG coordinates
  double y1() const { return top; }
};

std::pair<double, double> value_range(const SweepResult& result) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& p : result.grid) {
    lo = std::min(lo, p.value);
    hi = std::max(hi, p.value);
  }
  if (!(hi > lo)) {
    const double pad = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
    lo -= pad;
    hi += pad;
  }
  return {lo, hi};
}

void svg_open(std::ostream& out, const Frame& f, const SweepResult& result) {
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << f.width << "\" height=\"" << f.height
      << "\" viewBox=\"0 0 " << f.width << ' ' << f.height << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << f.width << "\" height=\"" << f.height << "\" fill=\"white\"/>\n"
      << "<text x=\"" << (f.x0() + f.x1()) / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
      << xml_escape(to_string(result.spec.quantity)) << " (" << xml_escape(result.metadata.method) << ")</text>\n";
}

void svg_axes(std::ostream& out, const Frame& f, const std::string& xlabel, double xmin, double xmax,
              const std::string& ylabel, double ymin, double ymax) {
  out << "<rect x=\"" << f.x0() << "\" y=\"" << f.y1() << "\" width=\"" << f.x1() - f.x0() << "\" height=\""
      << f.y0() - f.y1() << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double u = k / 4.0;
    const double x = f.x0() + u * (f.x1() - f.x0());
    const double y = f.y0() - u * (f.y0() - f.y1());
    out << "<line x1=\"" << x << "\" y1=\"" << f.y0() << "\" x2=\"" << x << "\" y2=\"" << f.y0() + 5
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << x << "\" y=\"" << f.y0() + 18 << "\" text-anchor=\"middle\">"
        << short_number(xmin + u * (xmax - xmin)) << "</text>\n"
        << "<line x1=\"" << f.x0() - 5 << "\" y1=\"" << y << "\" x2=\"" << f.x0() << "\" y2=\"" << y
        << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << f.x0() - 8 << "\" y=\"" << y + 4 << "\" text-anchor=\"end\">"
        << short_number(ymin + u * (ymax - ymin)) << "</text>\n";
  }
  out << "<text x=\"" << (f.x0() + f.x1()) / 2 << "\" y=\"" << f.height - 18 << "\" text-anchor=\"middle\">"
      << xml_escape(xlabel) << "</text>\n"
      << "<text x=\"18\" y=\"" << (f.y0() + f.y1()) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (f.y0() + f.y1()) / 2 << ")\">" << xml_escape(ylabel) << "</text>\n";
}

}  // namespace

std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::SvgHeatmap: return "svg-heatmap";
    case OutputFormat::SvgLines: return "svg-lines";
  }
  return "";
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  if (name == "svg-heatmap") return OutputFormat::SvgHeatmap;
  if (name == "svg-lines") return OutputFormat::SvgLines;
  throw DomainError("unknown output format '" + std::string(name) + "' (expected csv, json, svg-heatmap or svg-lines)");
}

void write_csv(const SweepResult& result, std::ostream& out) {
  out << "axis1,axis2,value\n";
  for (const auto& p : result.grid) {
    out << full_precision(p.axis1) << ',' << full_precision(p.axis2) << ',' << full_precision(p.value) << '\n';
  }
}

nlohmann::json sweep_result_to_json(const SweepResult& result) {
  nlohmann::json grid = nlohmann::json::array();
  for (const auto& p : result.grid) grid.push_back({p.axis1, p.axis2, p.value});
  return {
      {"spec", sweep_spec_to_json(result.spec)},
      {"grid", grid},
      {"metadata",
       {{"method", result.metadata.method},
        {"rel_tol", result.metadata.rel_tol},
        {"modes", result.metadata.discrete_modes},
        {"omega_max", result.metadata.omega_max_factor},
        {"wall_time_seconds", result.metadata.wall_time_seconds},
        {"jobs", result.metadata.jobs}}},
  };
}

SweepResult sweep_result_from_json(const nlohmann::json& j) {
  try {
    SweepResult result;
    result.spec = sweep_spec_from_json(j.at("spec"));
    for (const auto& row : j.at("grid")) {
      result.grid.push_back({row.at(0).get<double>(), row.at(1).get<double>(), row.at(2).get<double>()});
    }
    const auto& m = j.at("metadata");
    result.metadata.method = m.at("method").get<std::string>();
    result.metadata.rel_tol = m.at("rel_tol").get<double>();
    result.metadata.discrete_modes = m.at("modes").get<std::size_t>();
    result.metadata.omega_max_factor = m.at("omega_max").get<double>();
    result.metadata.wall_time_seconds = m.at("wall_time_seconds").get<double>();
    result.metadata.jobs = m.at("jobs").get<unsigned>();
    if (result.grid.size() != result.spec.axis1.points * result.spec.axis2.points) {
      throw DomainError("sweep result grid size does not match its axes");
    }
    return result;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("invalid sweep result JSON: ") + e.what());
  }
}

void write_svg_heatmap(const SweepResult& result, std::ostream& out) {
  const Frame f;
  const auto& a1 = result.spec.axis1;
  const auto& a2 = result.spec.axis2;
  const auto v1 = a1.values();
  const auto v2 = a2.values();
  const auto [lo, hi] = value_range(result);
  const double cell_w = (f.x1() - f.x0()) / static_cast<double>(v1.size());
  const double cell_h = (f.y0() - f.y1()) / static_cast<double>(v2.size());

  svg_open(out, f, result);
  out << "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t i = 0; i < v1.size(); ++i) {
    for (std::size_t j = 0; j < v2.size(); ++j) {
      const double value = result.grid[i * v2.size() + j].value;
      const double x = f.x0() + static_cast<double>(i) * cell_w;
      const double y = f.y0() - static_cast<double>(j + 1) * cell_h;
      out << "<rect x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w + 0.5 << "\" height=\"" << cell_h + 0.5
          << "\" fill=\"" << viridis((value - lo) / (hi - lo)) << "\"/>\n";
    }
  }
  out << "</g>\n";
  svg_axes(out, f, a1.name, v1.front(), v1.back(), a2.name, v2.front(), v2.back());

  // color bar
  const double bar_x = f.x1() + 25;
  const int steps = 64;
  const double step_h = (f.y0() - f.y1()) / steps;
  for (int k = 0; k < steps; ++k) {
    out << "<rect x=\"" << bar_x << "\" y=\"" << f.y0() - (k + 1) * step_h << "\" width=\"18\" height=\""
        << step_h + 0.5 << "\" fill=\"" << viridis((k + 0.5) / steps) << "\"/>\n";
  }
  out << "<rect x=\"" << bar_x << "\" y=\"" << f.y1() << "\" width=\"18\" height=\"" << f.y0() - f.y1()
      << "\" fill=\"none\" stroke=\"black\"/>\n"
      << "<text x=\"" << bar_x + 24 << "\" y=\"" << f.y1() + 4 << "\">" << short_number(hi) << "</text>\n"
      << "<text x=\"" << bar_x + 24 << "\" y=\"" << f.y0() + 4 << "\">" << short_number(lo) << "</text>\n"
      << "</svg>\n";
}

void write_svg_lines(const SweepResult& result, std::ostream& out) {
  const Frame f;
  const auto& a1 = result.spec.axis1;
  const auto& a2 = result.spec.axis2;
  const auto v1 = a1.values();
  const auto v2 = a2.values();
  const auto [lo, hi] = value_range(result);

  std::vector<std::size_t> picks;
  const std::size_t n_lines = std::min<std::size_t>(kLineColors.size(), v2.size());
  for (std::size_t k = 0; k < n_lines; ++k) {
    picks.push_back(n_lines == 1 ? 0 : k * (v2.size() - 1) / (n_lines - 1));
  }

  svg_open(out, f, result);
  svg_axes(out, f, a1.name, v1.front(), v1.back(), std::string(to_string(result.spec.quantity)), lo, hi);
  for (std::size_t k = 0; k < picks.size(); ++k) {
    const std::size_t j = picks[k];
    out << "<polyline fill=\"none\" stroke=\"" << kLineColors[k] << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < v1.size(); ++i) {
      const double u = (v1[i] - v1.front()) / (v1.back() - v1.front());
      const double w = (result.grid[i * v2.size() + j].value - lo) / (hi - lo);
      if (i) out << ' ';
      out << f.x0() + u * (f.x1() - f.x0()) << ',' << f.y0() - w * (f.y0() - f.y1());
    }
    out << "\"/>\n";
    const double ly = f.y1() + 10 + 18.0 * static_cast<double>(k);
    out << "<line x1=\"" << f.x1() + 12 << "\" y1=\"" << ly << "\" x2=\"" << f.x1() + 32 << "\" y2=\"" << ly
        << "\" stroke=\"" << kLineColors[k] << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << f.x1() + 36 << "\" y=\"" << ly + 4 << "\">" << xml_escape(a2.name) << " = "
        << short_number(v2[j]) << "</text>\n";
  }
  out << "</svg>\n";
}

void write_result(const SweepResult& result, OutputFormat format, std::ostream& out) {
  switch (format) {
    case OutputFormat::Csv: write_csv(result, out); break;
    case OutputFormat::Json: out << sweep_result_to_json(result).dump(2) << '\n'; break;
    case OutputFormat::SvgHeatmap: write_svg_heatmap(result, out); break;
    case OutputFormat::SvgLines: write_svg_lines(result, out); break;
  }
}

void emit(const SweepResult& result, OutputFormat format, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_result(result, format, out);
  out.flush();
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

}  // namespace sqdeph
