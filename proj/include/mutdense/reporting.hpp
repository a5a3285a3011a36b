#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "mutdense/metrics.hpp"
#include "mutdense/source_model.hpp"

namespace mutdense {

struct ColorStop {
  double threshold = 1;  // applies to densities >= threshold
  std::string color;
};

struct HeatmapStyle {
  std::vector<ColorStop> stops = {
      {1, "#fff2b3"}, {3, "#ffc266"}, {5, "#ff7a59"}};
  std::string gray_color = "#d9d9d9";
  std::string white_color = "#ffffff";

  // Throws std::invalid_argument unless thresholds are positive and
  // strictly increasing.
  void validate() const;
  // Background for a relevant line of the given density.
  const std::string& color_for(std::int64_t density) const;
};

class EmptyProjectError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Compact JSON with a fixed key order and a trailing newline.
std::string emit_json(const ProjectReport& report);

std::string render_heatmap(const SourceUnit& unit, const UnitReport& report,
                           const HeatmapStyle& style = {});

// Throws EmptyProjectError when the report has no units.
std::string render_barchart(const ProjectReport& report);

std::string render_text(const ProjectReport& report, std::size_t top_n);

// Output file name for a unit's heatmap: separators become '_'.
std::string heatmap_file_name(const std::string& unit_path);

std::string escape_markup(std::string_view text);

}  // namespace mutdense
