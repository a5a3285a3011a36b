#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "mutdense/fault_model.hpp"
#include "mutdense/metrics.hpp"
#include "mutdense/reporting.hpp"

namespace mutdense {

enum class Format { Json, Html, Svg, Text };

struct Config {
  std::vector<std::filesystem::path> roots;
  std::vector<std::string> include_globs = {"**/*.java"};
  std::vector<std::string> exclude_globs;
  std::set<Family> families = {Family::Traditional, Family::NullType};
  std::optional<std::set<std::string>> enabled_operator_ids;
  std::filesystem::path output_dir = "mutdense-out";
  std::set<Format> formats = {Format::Json, Format::Text};
  std::optional<Rational> threshold;  // gate on per-unit combined average
  std::size_t top_lines = 10;
  std::size_t jobs = 0;  // 0: one worker per hardware thread
  HeatmapStyle heatmap;

  OperatorSet operator_set() const;
};

class ConfigError : public std::runtime_error {
 public:
  enum class Kind { BadFlag, BadConfigKey, UnreadableConfig };

  ConfigError(Kind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

// Raw command-line values; anything unset falls back to the config file and
// then to the defaults.
struct CliOverrides {
  std::vector<std::string> roots;
  std::optional<std::string> operators;  // traditional | null-type | all
  std::optional<std::string> enable;     // comma-separated operator ids
  std::optional<std::string> formats;    // comma-separated
  std::optional<std::string> out;
  std::optional<std::string> threshold;
  std::optional<std::string> top_lines;
  std::vector<std::string> include;
  std::vector<std::string> exclude;
  std::optional<std::string> jobs;
  std::optional<std::string> jobs_env;  // MUTDENSE_JOBS
};

Config load_config(const CliOverrides& cli,
                   const std::optional<std::filesystem::path>& config_file);

std::set<Family> parse_families(const std::string& text);
std::set<Format> parse_formats(const std::string& text);
// Exact value of a non-negative decimal such as "2", "0.5" or "1e-2".
Rational parse_decimal(const std::string& text);

}  // namespace mutdense
