#include "sqdeph/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "sqdeph/error.hpp"

namespace sqdeph {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kSweepKeys = {"quantity", "method", "rel_tol", "modes", "omega_max"};
const std::set<std::string> kAxisKeys = {"name", "min", "max", "points", "endpoint"};
const std::set<std::string> kSections = {"sweep", "fixed", "axis1", "axis2"};

std::string trim(std::string s) {
  auto not_space = [](unsigned char c) { return !std::isspace(c); };
  s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
  s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  return s;
}

double parse_number(const std::string& raw, const std::string& where) {
  const std::string text = trim(raw);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw DomainError("config value for '" + where + "' is not a number: '" + text + "'");
  }
  return value;
}

std::size_t parse_count(const std::string& raw, const std::string& where) {
  const std::string text = trim(raw);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw DomainError("config value for '" + where + "' is not a nonnegative integer: '" + text + "'");
  }
  return value;
}

bool parse_bool(const std::string& raw, const std::string& where) {
  const std::string text = trim(raw);
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw DomainError("config value for '" + where + "' is not a boolean: '" + text + "'");
}

void check_keys(const pt::ptree& section, const std::set<std::string>& allowed, const std::string& name) {
  for (const auto& [key, _] : section) {
    if (!allowed.contains(key)) throw DomainError("unknown key '" + key + "' in [" + name + "]");
  }
}

Axis axis_from_ini(const pt::ptree& root, const std::string& section) {
  const auto node = root.get_child_optional(section);
  if (!node) throw DomainError("config is missing the [" + section + "] section");
  check_keys(*node, kAxisKeys, section);
  auto get = [&](const std::string& key) {
    const auto v = node->get_optional<std::string>(key);
    if (!v) throw DomainError("config is missing '" + key + "' in [" + section + "]");
    return *v;
  };
  Axis axis;
  axis.name = trim(get("name"));
  axis.min = parse_number(get("min"), section + ".min");
  axis.max = parse_number(get("max"), section + ".max");
  axis.points = parse_count(get("points"), section + ".points");
  if (const auto e = node->get_optional<std::string>("endpoint")) axis.endpoint = parse_bool(*e, section + ".endpoint");
  return axis;
}

void write_axis(std::ostream& out, const std::string& section, const Axis& axis) {
  out << "\n[" << section << "]\n"
      << "name = " << axis.name << "\n"
      << "min = " << format_double(axis.min) << "\n"
      << "max = " << format_double(axis.max) << "\n"
      << "points = " << axis.points << "\n";
  if (!axis.endpoint) out << "endpoint = false\n";
}

nlohmann::json axis_to_json(const Axis& axis) {
  nlohmann::json j = {{"name", axis.name}, {"min", axis.min}, {"max", axis.max}, {"points", axis.points}};
  if (!axis.endpoint) j["endpoint"] = false;
  return j;
}

Axis axis_from_json(const nlohmann::json& j, const std::string& section) {
  if (!j.is_object()) throw DomainError("config section '" + section + "' must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!kAxisKeys.contains(key)) throw DomainError("unknown key '" + key + "' in " + section);
  }
  try {
    Axis axis;
    axis.name = j.at("name").get<std::string>();
    axis.min = j.at("min").get<double>();
    axis.max = j.at("max").get<double>();
    axis.points = j.at("points").get<std::size_t>();
    if (j.contains("endpoint")) axis.endpoint = j.at("endpoint").get<bool>();
    return axis;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("invalid " + section + " in config: " + e.what());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

ConfigFormat config_format_for(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  return ext == ".json" ? ConfigFormat::Json : ConfigFormat::Ini;
}

nlohmann::json sweep_spec_to_json(const SweepSpec& spec) {
  nlohmann::json fixed = nlohmann::json::object();
  for (const auto& [key, value] : spec.fixed) fixed[key] = value;
  return {
      {"sweep",
       {{"quantity", std::string(to_string(spec.quantity))},
        {"method", std::string(to_string(spec.options.method))},
        {"rel_tol", spec.options.rel_tol},
        {"modes", spec.options.discrete_modes},
        {"omega_max", spec.options.omega_max_factor}}},
      {"fixed", fixed},
      {"axis1", axis_to_json(spec.axis1)},
      {"axis2", axis_to_json(spec.axis2)},
  };
}

SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw DomainError("config root must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!kSections.contains(key)) throw DomainError("unknown config section '" + key + "'");
  }
  SweepSpec spec;
  try {
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      for (const auto& [key, _] : s.items()) {
        if (!kSweepKeys.contains(key)) throw DomainError("unknown key '" + key + "' in sweep");
      }
      if (s.contains("quantity")) spec.quantity = parse_quantity(s.at("quantity").get<std::string>());
      if (s.contains("method")) spec.options.method = parse_gamma_method(s.at("method").get<std::string>());
      if (s.contains("rel_tol")) spec.options.rel_tol = s.at("rel_tol").get<double>();
      if (s.contains("modes")) spec.options.discrete_modes = s.at("modes").get<std::size_t>();
      if (s.contains("omega_max")) spec.options.omega_max_factor = s.at("omega_max").get<double>();
    }
    if (j.contains("fixed")) {
      for (const auto& [key, value] : j.at("fixed").items()) spec.fixed[key] = value.get<double>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("invalid config: ") + e.what());
  }
  if (!j.contains("axis1") || !j.contains("axis2")) throw DomainError("config needs axis1 and axis2");
  spec.axis1 = axis_from_json(j.at("axis1"), "axis1");
  spec.axis2 = axis_from_json(j.at("axis2"), "axis2");
  spec.validate();
  return spec;
}

SweepSpec parse_sweep_config(std::string_view text, ConfigFormat format) {
  if (format == ConfigFormat::Json) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw DomainError(std::string("config is not valid JSON: ") + e.what());
    }
    return sweep_spec_from_json(j);
  }

  pt::ptree root;
  try {
    std::istringstream in{std::string(text)};
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw DomainError(std::string("config is not valid INI: ") + e.what());
  }
  for (const auto& [key, node] : root) {
    if (!kSections.contains(key)) throw DomainError("unknown config section [" + key + "]");
  }

  SweepSpec spec;
  if (const auto sweep = root.get_child_optional("sweep")) {
    check_keys(*sweep, kSweepKeys, "sweep");
    if (auto v = sweep->get_optional<std::string>("quantity")) spec.quantity = parse_quantity(trim(*v));
    if (auto v = sweep->get_optional<std::string>("method")) spec.options.method = parse_gamma_method(trim(*v));
    if (auto v = sweep->get_optional<std::string>("rel_tol")) spec.options.rel_tol = parse_number(*v, "sweep.rel_tol");
    if (auto v = sweep->get_optional<std::string>("modes")) spec.options.discrete_modes = parse_count(*v, "sweep.modes");
    if (auto v = sweep->get_optional<std::string>("omega_max")) {
      spec.options.omega_max_factor = parse_number(*v, "sweep.omega_max");
    }
  }
  if (const auto fixed = root.get_child_optional("fixed")) {
    for (const auto& [key, node] : *fixed) spec.fixed[key] = parse_number(node.data(), "fixed." + key);
  }
  spec.axis1 = axis_from_ini(root, "axis1");
  spec.axis2 = axis_from_ini(root, "axis2");
  spec.validate();
  return spec;
}

std::string format_sweep_config(const SweepSpec& spec, ConfigFormat format) {
  if (format == ConfigFormat::Json) return sweep_spec_to_json(spec).dump(2) + "\n";
  std::ostringstream out;
  out << "[sweep]\n"
      << "quantity = " << to_string(spec.quantity) << "\n"
      << "method = " << to_string(spec.options.method) << "\n"
      << "rel_tol = " << format_double(spec.options.rel_tol) << "\n"
      << "modes = " << spec.options.discrete_modes << "\n"
      << "omega_max = " << format_double(spec.options.omega_max_factor) << "\n";
  out << "\n[fixed]\n";
  for (const auto& [key, value] : spec.fixed) out << key << " = " << format_double(value) << "\n";
  write_axis(out, "axis1", spec.axis1);
  write_axis(out, "axis2", spec.axis2);
  return out.str();
}

SweepSpec load_sweep_config(const std::filesystem::path& path) {
  try {
    return parse_sweep_config(read_file(path), config_format_for(path));
  } catch (const DomainError& e) {
    throw DomainError(path.string() + ": " + e.what());
  }
}

void save_sweep_config(const SweepSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write config file '" + path.string() + "'");
  out << format_sweep_config(spec, config_format_for(path));
  if (!out) throw IoError("error writing config file '" + path.string() + "'");
}

}  // namespace sqdeph
