#include <gtest/gtest.h>

#include <fstream>
#include <string>

#include "mutdense/config.hpp"
#include "test_support.hpp"

namespace mutdense {
namespace {

using testing::scratch_dir;

std::filesystem::path write_config(const std::string& name,
                                   const std::string& body) {
  const auto path = scratch_dir(name) / "mutdense.json";
  std::ofstream(path) << body;
  return path;
}

ConfigError::Kind error_kind(const CliOverrides& cli,
                             const std::optional<std::filesystem::path>& file = {}) {
  try {
    load_config(cli, file);
  } catch (const ConfigError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected ConfigError";
  return ConfigError::Kind::BadFlag;
}

TEST(Config, Defaults) {
  const Config c = load_config({}, std::nullopt);
  EXPECT_EQ(c.include_globs, std::vector<std::string>{"**/*.java"});
  EXPECT_TRUE(c.exclude_globs.empty());
  EXPECT_EQ(c.families, (std::set<Family>{Family::Traditional, Family::NullType}));
  EXPECT_FALSE(c.enabled_operator_ids);
  EXPECT_EQ(c.output_dir, "mutdense-out");
  EXPECT_EQ(c.formats, (std::set<Format>{Format::Json, Format::Text}));
  EXPECT_FALSE(c.threshold);
  EXPECT_EQ(c.top_lines, 10u);
  EXPECT_EQ(c.jobs, 0u);
  EXPECT_EQ(c.operator_set().operators().size(), 12u);
}

TEST(Config, NullTypeFamilyOnly) {
  CliOverrides cli;
  cli.operators = "null-type";
  const OperatorSet set = load_config(cli, std::nullopt).operator_set();
  EXPECT_EQ(set.operators().size(), 4u);
  for (const auto& op : set.operators()) EXPECT_EQ(op.family, Family::NullType);
}

TEST(Config, EnableSubset) {
  CliOverrides cli;
  cli.enable = "ROR, NNC";
  const OperatorSet set = load_config(cli, std::nullopt).operator_set();
  EXPECT_TRUE(set.enables("ROR"));
  EXPECT_TRUE(set.enables("NNC"));
  EXPECT_FALSE(set.enables("AOR-B"));
}

TEST(Config, FlagOverridesFile) {
  const auto file = write_config(
      "precedence", R"({"threshold": 2.0, "topLines": 4, "outputDir": "o"})");
  CliOverrides cli;
  cli.threshold = "3.0";
  const Config c = load_config(cli, file);
  EXPECT_EQ(*c.threshold, Rational(3));
  EXPECT_EQ(c.top_lines, 4u);
  EXPECT_EQ(c.output_dir, "o");
  EXPECT_EQ(*load_config({}, file).threshold, Rational(2));
}

TEST(Config, FileOverridesEnvironment) {
  CliOverrides cli;
  cli.jobs_env = "3";
  EXPECT_EQ(load_config(cli, std::nullopt).jobs, 3u);
  const auto file = write_config("env", R"({"jobs": 5})");
  EXPECT_EQ(load_config(cli, file).jobs, 5u);
  cli.jobs = "7";
  EXPECT_EQ(load_config(cli, file).jobs, 7u);
}

TEST(Config, FullFile) {
  const auto file = write_config("full", R"({
    "roots": ["src"], "includeGlobs": ["*.java"], "excludeGlobs": ["gen/**"],
    "families": ["traditional"], "enabledOperatorIds": ["ROR"],
    "formats": ["json", "svg"], "threshold": "0.25",
    "heatmap": {"colorStops": [{"threshold": 2, "color": "#112233"}],
                "grayColor": "#eeeeee"}})");
  const Config c = load_config({}, file);
  EXPECT_EQ(c.roots, std::vector<std::filesystem::path>{"src"});
  EXPECT_EQ(c.include_globs, std::vector<std::string>{"*.java"});
  EXPECT_EQ(c.exclude_globs, std::vector<std::string>{"gen/**"});
  EXPECT_EQ(c.families, std::set<Family>{Family::Traditional});
  EXPECT_EQ(c.formats, (std::set<Format>{Format::Json, Format::Svg}));
  EXPECT_EQ(*c.threshold, Rational(1, 4));
  ASSERT_EQ(c.heatmap.stops.size(), 1u);
  EXPECT_EQ(c.heatmap.color_for(2), "#112233");
  EXPECT_EQ(c.heatmap.color_for(1), "#ffffff");
  EXPECT_EQ(c.heatmap.gray_color, "#eeeeee");
}

TEST(Config, BadFlags) {
  CliOverrides cli;
  cli.operators = "mutants";
  EXPECT_EQ(error_kind(cli), ConfigError::Kind::BadFlag);
  cli = {};
  cli.threshold = "-1";
  EXPECT_EQ(error_kind(cli), ConfigError::Kind::BadFlag);
  cli = {};
  cli.formats = "pdf";
  EXPECT_EQ(error_kind(cli), ConfigError::Kind::BadFlag);
  cli = {};
  cli.top_lines = "ten";
  EXPECT_EQ(error_kind(cli), ConfigError::Kind::BadFlag);
  cli = {};
  cli.enable = "XYZ";
  EXPECT_EQ(error_kind(cli), ConfigError::Kind::BadFlag);
  cli = {};
  cli.operators = "traditional";
  cli.enable = "NNC";
  EXPECT_EQ(error_kind(cli), ConfigError::Kind::BadFlag);
  cli = {};
  cli.jobs_env = "many";
  EXPECT_EQ(error_kind(cli), ConfigError::Kind::BadFlag);
}

TEST(Config, BadConfigKey) {
  EXPECT_EQ(error_kind({}, write_config("key", R"({"colour": "red"})")),
            ConfigError::Kind::BadConfigKey);
  EXPECT_EQ(error_kind({}, write_config("type", R"({"topLines": -1})")),
            ConfigError::Kind::BadConfigKey);
  EXPECT_EQ(error_kind({}, write_config("fam", R"({"families": []})")),
            ConfigError::Kind::BadConfigKey);
  EXPECT_EQ(error_kind({}, write_config(
                               "stops", R"({"heatmap": {"colorStops": [
                 {"threshold": 3, "color": "#000"},
                 {"threshold": 1, "color": "#fff"}]}})")),
            ConfigError::Kind::BadConfigKey);
}

TEST(Config, UnreadableConfig) {
  EXPECT_EQ(error_kind({}, scratch_dir("missing") / "none.json"),
            ConfigError::Kind::UnreadableConfig);
  EXPECT_EQ(error_kind({}, write_config("syntax", "{roots: ")),
            ConfigError::Kind::UnreadableConfig);
}

TEST(ParseDecimal, Exact) {
  EXPECT_EQ(parse_decimal("2"), Rational(2));
  EXPECT_EQ(parse_decimal("0.5"), Rational(1, 2));
  EXPECT_EQ(parse_decimal("1e-2"), Rational(1, 100));
  EXPECT_EQ(parse_decimal("1.25E1"), Rational(25, 2));
  EXPECT_THROW(parse_decimal(""), std::invalid_argument);
  EXPECT_THROW(parse_decimal("1.2.3"), std::invalid_argument);
  EXPECT_THROW(parse_decimal("-0.5"), std::invalid_argument);
}

TEST(ParseFormats, AllAndLists) {
  EXPECT_EQ(parse_formats("all").size(), 4u);
  EXPECT_EQ(parse_formats("html, text"),
            (std::set<Format>{Format::Html, Format::Text}));
}

}  // namespace
}  // namespace mutdense
