#include "mutdense/config.hpp"

#include <charconv>
#include <fmt/format.h>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace mutdense {

using Kind = ConfigError::Kind;

OperatorSet Config::operator_set() const {
  try {
    return OperatorSet(families, enabled_operator_ids);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(Kind::BadFlag, e.what());
  }
}

namespace {

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

Family parse_family(const std::string& name, Kind kind) {
  if (name == "traditional") return Family::Traditional;
  if (name == "null-type" || name == "nullType") return Family::NullType;
  throw ConfigError(kind, fmt::format("unknown operator family '{}'", name));
}

std::size_t parse_count(const std::string& text, const char* what,
                        Kind kind) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(kind, fmt::format("{} must be a non-negative integer, "
                                        "got '{}'",
                                        what, text));
  }
  return value;
}

Rational parse_threshold(const std::string& text, Kind kind) {
  try {
    return parse_decimal(text);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(kind, fmt::format("bad threshold: {}", e.what()));
  }
}

std::vector<std::string> string_list(const nlohmann::json& value,
                                     const std::string& key) {
  if (!value.is_array()) {
    throw ConfigError(Kind::BadConfigKey,
                      fmt::format("'{}' must be an array of strings", key));
  }
  std::vector<std::string> out;
  for (const auto& v : value) {
    if (!v.is_string()) {
      throw ConfigError(Kind::BadConfigKey,
                        fmt::format("'{}' must be an array of strings", key));
    }
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string string_value(const nlohmann::json& value, const std::string& key) {
  if (!value.is_string()) {
    throw ConfigError(Kind::BadConfigKey,
                      fmt::format("'{}' must be a string", key));
  }
  return value.get<std::string>();
}

HeatmapStyle heatmap_style(const nlohmann::json& value) {
  if (!value.is_object()) {
    throw ConfigError(Kind::BadConfigKey, "'heatmap' must be an object");
  }
  HeatmapStyle style;
  for (const auto& [key, v] : value.items()) {
    if (key == "grayColor") {
      style.gray_color = string_value(v, "heatmap.grayColor");
    } else if (key == "colorStops") {
      if (!v.is_array()) {
        throw ConfigError(Kind::BadConfigKey,
                          "'heatmap.colorStops' must be an array");
      }
      style.stops.clear();
      for (const auto& stop : v) {
        if (!stop.is_object() || !stop.contains("threshold") ||
            !stop.contains("color") || !stop["threshold"].is_number() ||
            !stop["color"].is_string() || stop.size() != 2) {
          throw ConfigError(Kind::BadConfigKey,
                            "color stops need a numeric 'threshold' and a "
                            "string 'color'");
        }
        style.stops.push_back(
            {stop["threshold"].get<double>(), stop["color"].get<std::string>()});
      }
    } else {
      throw ConfigError(Kind::BadConfigKey,
                        fmt::format("unknown heatmap key '{}'", key));
    }
  }
  try {
    style.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(Kind::BadConfigKey, e.what());
  }
  return style;
}

void apply_file(Config& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(Kind::UnreadableConfig,
                      fmt::format("cannot read config file '{}'",
                                  path.string()));
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(Kind::UnreadableConfig,
                      fmt::format("config file '{}' is not valid JSON: {}",
                                  path.string(), e.what()));
  }
  if (!doc.is_object()) {
    throw ConfigError(Kind::UnreadableConfig,
                      "config file must hold a JSON object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key == "roots") {
      config.roots.clear();
      for (auto& r : string_list(value, key)) config.roots.emplace_back(r);
    } else if (key == "includeGlobs") {
      config.include_globs = string_list(value, key);
    } else if (key == "excludeGlobs") {
      config.exclude_globs = string_list(value, key);
    } else if (key == "families") {
      config.families.clear();
      for (auto& f : string_list(value, key)) {
        config.families.insert(parse_family(f, Kind::BadConfigKey));
      }
    } else if (key == "enabledOperatorIds") {
      auto ids = string_list(value, key);
      config.enabled_operator_ids = std::set<std::string>(ids.begin(), ids.end());
    } else if (key == "outputDir") {
      config.output_dir = string_value(value, key);
    } else if (key == "formats") {
      config.formats.clear();
      for (auto& f : string_list(value, key)) {
        const auto parsed = parse_formats(f);
        config.formats.insert(parsed.begin(), parsed.end());
      }
    } else if (key == "threshold") {
      if (value.is_null()) {
        config.threshold.reset();
      } else if (value.is_number() || value.is_string()) {
        config.threshold = parse_threshold(
            value.is_string() ? value.get<std::string>() : value.dump(),
            Kind::BadConfigKey);
      } else {
        throw ConfigError(Kind::BadConfigKey, "'threshold' must be a number");
      }
    } else if (key == "topLines" || key == "jobs") {
      if (!value.is_number_unsigned()) {
        throw ConfigError(Kind::BadConfigKey,
                          fmt::format("'{}' must be a non-negative integer",
                                      key));
      }
      (key == "jobs" ? config.jobs : config.top_lines) =
          value.get<std::size_t>();
    } else if (key == "heatmap") {
      config.heatmap = heatmap_style(value);
    } else {
      throw ConfigError(Kind::BadConfigKey,
                        fmt::format("unknown config key '{}'", key));
    }
  }
}

}  // namespace

std::set<Family> parse_families(const std::string& text) {
  if (text == "all") return {Family::Traditional, Family::NullType};
  if (text == "traditional") return {Family::Traditional};
  if (text == "null-type") return {Family::NullType};
  throw ConfigError(Kind::BadFlag,
                    fmt::format("--operators expects traditional, null-type "
                                "or all, got '{}'",
                                text));
}

std::set<Format> parse_formats(const std::string& text) {
  std::set<Format> out;
  for (const auto& name : split_list(text)) {
    if (name == "json") out.insert(Format::Json);
    else if (name == "html") out.insert(Format::Html);
    else if (name == "svg") out.insert(Format::Svg);
    else if (name == "text") out.insert(Format::Text);
    else if (name == "all") out = {Format::Json, Format::Html, Format::Svg, Format::Text};
    else throw ConfigError(Kind::BadFlag, fmt::format("unknown format '{}'", name));
  }
  if (out.empty()) throw ConfigError(Kind::BadFlag, "no output format given");
  return out;
}

Rational parse_decimal(const std::string& text) {
  std::size_t i = 0;
  std::int64_t num = 0;
  std::int64_t den = 1;
  bool digits = false;
  bool point = false;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c >= '0' && c <= '9') {
      if (num > (INT64_MAX - 9) / 10 || den > INT64_MAX / 10) {
        throw std::invalid_argument("too many digits in '" + text + "'");
      }
      num = num * 10 + (c - '0');
      if (point) den *= 10;
      digits = true;
    } else if (c == '.' && !point) {
      point = true;
    } else {
      break;
    }
  }
  if (!digits) throw std::invalid_argument("not a number: '" + text + "'");
  Rational value(num, den);
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    int exponent = 0;
    const char* begin = text.data() + i + 1;
    if (*begin == '+') ++begin;
    const auto [ptr, ec] =
        std::from_chars(begin, text.data() + text.size(), exponent);
    if (ec != std::errc() || ptr != text.data() + text.size() ||
        exponent > 12 || exponent < -12) {
      throw std::invalid_argument("bad exponent in '" + text + "'");
    }
    for (int k = 0; k < std::abs(exponent); ++k) {
      value = exponent > 0 ? value * 10 : value / 10;
    }
    i = text.size();
  }
  if (i != text.size()) {
    throw std::invalid_argument("not a non-negative decimal: '" + text + "'");
  }
  return value;
}

Config load_config(const CliOverrides& cli,
                   const std::optional<std::filesystem::path>& config_file) {
  Config config;
  if (cli.jobs_env && !cli.jobs_env->empty()) {
    config.jobs = parse_count(*cli.jobs_env, "MUTDENSE_JOBS", Kind::BadFlag);
  }
  if (config_file) apply_file(config, *config_file);

  if (!cli.roots.empty()) {
    config.roots.assign(cli.roots.begin(), cli.roots.end());
  }
  if (cli.operators) config.families = parse_families(*cli.operators);
  if (cli.enable) {
    const auto ids = split_list(*cli.enable);
    config.enabled_operator_ids = std::set<std::string>(ids.begin(), ids.end());
  }
  if (cli.formats) config.formats = parse_formats(*cli.formats);
  if (cli.out) config.output_dir = *cli.out;
  if (cli.threshold) config.threshold = parse_threshold(*cli.threshold, Kind::BadFlag);
  if (cli.top_lines) {
    config.top_lines = parse_count(*cli.top_lines, "--top-lines", Kind::BadFlag);
  }
  if (!cli.include.empty()) config.include_globs = cli.include;
  if (!cli.exclude.empty()) config.exclude_globs = cli.exclude;
  if (cli.jobs) config.jobs = parse_count(*cli.jobs, "--jobs", Kind::BadFlag);

  if (config.families.empty()) {
    throw ConfigError(Kind::BadConfigKey, "at least one family is required");
  }
  // Validates enabled ids against the families.
  (void)config.operator_set();
  return config;
}

}  // namespace mutdense
