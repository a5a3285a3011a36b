#include "mutdense/reporting.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <map>
#include <nlohmann/json.hpp>

namespace mutdense {

using ordered_json = nlohmann::ordered_json;

void HeatmapStyle::validate() const {
  double prev = 0;
  for (const ColorStop& stop : stops) {
    if (!(stop.threshold > prev)) {
      throw std::invalid_argument(
          "heatmap thresholds must be positive and strictly increasing");
    }
    if (stop.color.empty()) {
      throw std::invalid_argument("heatmap color stop without a color");
    }
    prev = stop.threshold;
  }
}

const std::string& HeatmapStyle::color_for(std::int64_t density) const {
  const std::string* color = &white_color;
  for (const ColorStop& stop : stops) {
    if (static_cast<double>(density) >= stop.threshold) color = &stop.color;
  }
  return *color;
}

std::string escape_markup(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&#39;"; break;
      default: out += c;
    }
  }
  return out;
}

namespace {

ordered_json json_average(const Rational& value) {
  return std::stod(format_average(value));
}

ordered_json unit_json(const UnitReport& u) {
  ordered_json j;
  j["path"] = u.path;
  j["physicalLineCount"] = u.physical_line_count;
  j["relevantLineCount"] = u.relevant_line_count;
  ordered_json mutants = ordered_json::array();
  for (const Mutant& m : u.mutants) {
    ordered_json e;
    e["operatorId"] = m.operator_id;
    e["family"] = to_string(m.family);
    e["line"] = m.line;
    e["column"] = m.column;
    e["original"] = m.original;
    e["replacement"] = m.replacement;
    mutants.push_back(std::move(e));
  }
  j["mutants"] = std::move(mutants);
  ordered_json lines = ordered_json::array();
  for (const LineDensity& d : u.lines) {
    ordered_json e;
    e["line"] = d.line;
    e["relevant"] = d.relevant;
    e["traditional"] = d.counts.traditional;
    e["nullType"] = d.counts.null_type;
    e["total"] = d.total();
    lines.push_back(std::move(e));
  }
  j["lines"] = std::move(lines);
  ordered_json avg;
  avg["traditional"] = json_average(u.avg_traditional);
  avg["nullType"] = json_average(u.avg_null_type);
  avg["combined"] = json_average(u.avg_combined());
  j["avg"] = std::move(avg);
  j["empty"] = u.empty;
  return j;
}

}  // namespace

std::string emit_json(const ProjectReport& report) {
  ordered_json root;
  root["toolVersion"] = report.tool_version;
  ordered_json ops = ordered_json::array();
  for (const MutationOperator& op : report.operators) {
    ops.push_back({{"id", op.id},
                   {"family", to_string(op.family)},
                   {"description", op.description}});
  }
  root["operators"] = std::move(ops);
  ordered_json units = ordered_json::array();
  for (const UnitReport& u : report.units) units.push_back(unit_json(u));
  root["units"] = std::move(units);
  ordered_json diags = ordered_json::array();
  for (const Diagnostic& d : report.diagnostics) {
    ordered_json e;
    e["path"] = d.path;
    e["kind"] = to_string(d.kind);
    e["message"] = d.message;
    e["line"] = d.line;
    e["column"] = d.column;
    diags.push_back(std::move(e));
  }
  root["diagnostics"] = std::move(diags);
  return root.dump() + "\n";
}

std::string heatmap_file_name(const std::string& unit_path) {
  std::string name = unit_path;
  std::replace(name.begin(), name.end(), '/', '_');
  std::replace(name.begin(), name.end(), '\\', '_');
  return name + ".html";
}

std::string render_heatmap(const SourceUnit& unit, const UnitReport& report,
                           const HeatmapStyle& style) {
  std::map<int, std::vector<const Mutant*>> by_line;
  for (const Mutant& m : report.mutants) by_line[m.line].push_back(&m);

  std::string out;
  out += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
  out += fmt::format("<title>Mutant density: {}</title>\n",
                     escape_markup(report.path));
  out +=
      "<style>\n"
      "body { font-family: sans-serif; margin: 1em; }\n"
      "table.source { border-collapse: collapse; font-size: 13px; }\n"
      "table.source td { padding: 1px 6px; vertical-align: top; }\n"
      "td.num { color: #666; text-align: right; }\n"
      "td.density { text-align: center; white-space: nowrap; }\n"
      "td.code pre { margin: 0; font-family: monospace; }\n"
      ".badge { display: inline-block; min-width: 1.5em; border-radius: 3px; "
      "border: 1px solid #555; font-size: 11px; }\n"
      "details { font-size: 11px; }\n"
      "</style>\n</head>\n<body>\n";
  out += fmt::format("<h1>{}</h1>\n", escape_markup(report.path));
  out += fmt::format(
      "<p class=\"summary\">relevant lines: {} | traditional: {} | "
      "null-type: {} | combined: {}</p>\n",
      report.relevant_line_count, format_average(report.avg_traditional),
      format_average(report.avg_null_type),
      format_average(report.avg_combined()));
  out += "<table class=\"source\">\n";
  for (const LineDensity& d : report.lines) {
    const std::string& text =
        unit.lines[static_cast<std::size_t>(d.line) - 1];
    if (!d.relevant) {
      out += fmt::format(
          "<tr class=\"line non-relevant\" style=\"background-color:{}\">"
          "<td class=\"num\">{}</td><td class=\"density\"></td>"
          "<td class=\"code\"><pre>{}</pre></td></tr>\n",
          style.gray_color, d.line, escape_markup(text));
      continue;
    }
    out += fmt::format(
        "<tr class=\"line relevant\" data-density=\"{}\" "
        "style=\"background-color:{}\"><td class=\"num\">{}</td>",
        d.total(), style.color_for(d.total()), d.line);
    if (d.total() > 0) {
      out += fmt::format(
          "<td class=\"density\"><span class=\"badge\" title=\"traditional "
          "{0}, null-type {1}\">{2}</span> <small>T{0} N{1}</small></td>",
          d.counts.traditional, d.counts.null_type, d.total());
    } else {
      out += "<td class=\"density\"></td>";
    }
    out += fmt::format("<td class=\"code\"><pre>{}</pre>",
                       escape_markup(text));
    if (auto it = by_line.find(d.line); it != by_line.end()) {
      out += fmt::format("<details><summary>{} mutant{}</summary><ul>",
                         it->second.size(),
                         it->second.size() == 1 ? "" : "s");
      for (const Mutant* m : it->second) {
        out += fmt::format("<li>{} ({}): <code>{}</code> &#8594; <code>{}</code></li>",
                           escape_markup(m->operator_id),
                           to_string(m->family), escape_markup(m->original),
                           escape_markup(m->replacement));
      }
      out += "</ul></details>";
    }
    out += "</td></tr>\n";
  }
  out += "</table>\n</body>\n</html>\n";
  return out;
}

std::string render_barchart(const ProjectReport& report) {
  if (report.units.empty()) {
    throw EmptyProjectError("cannot chart a project without units");
  }
  const auto ranked = rank_units(report, DensityKey::Combined);
  std::map<std::string, const UnitReport*> by_path;
  for (const UnitReport& u : report.units) by_path[u.path] = &u;

  std::size_t longest = 0;
  double max_value = 0;
  for (const UnitReport& u : report.units) {
    longest = std::max(longest, u.path.size());
    max_value = std::max({max_value, boost::rational_cast<double>(u.avg_traditional),
                          boost::rational_cast<double>(u.avg_null_type)});
  }
  constexpr double kBarHeight = 14;
  constexpr double kGroupGap = 12;
  constexpr double kPlotWidth = 480;
  constexpr double kTop = 56;
  const double label_width = std::max(80.0, 7.0 * static_cast<double>(longest) + 16);
  const double scale = max_value > 0 ? kPlotWidth / max_value : 0;
  const double group = 2 * kBarHeight + kGroupGap;
  const double width = label_width + kPlotWidth + 70;
  const double height = kTop + group * static_cast<double>(ranked.size()) + 10;

  std::string out;
  out += fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" "
      "height=\"{:.0f}\" viewBox=\"0 0 {:.0f} {:.0f}\" "
      "font-family=\"sans-serif\" font-size=\"11\">\n",
      width, height, width, height);
  out += fmt::format("<rect width=\"{:.0f}\" height=\"{:.0f}\" fill=\"#ffffff\"/>\n",
                     width, height);
  out +=
      "<text x=\"8\" y=\"18\" font-size=\"14\">Average mutant density per "
      "compilation unit</text>\n";
  out += fmt::format(
      "<g class=\"legend\"><rect x=\"{0:.0f}\" y=\"28\" width=\"12\" "
      "height=\"12\" fill=\"#999999\"/><text x=\"{1:.0f}\" y=\"38\">"
      "traditional</text><rect x=\"{2:.0f}\" y=\"28\" width=\"12\" "
      "height=\"12\" fill=\"#000000\"/><text x=\"{3:.0f}\" y=\"38\">"
      "null-type</text></g>\n",
      label_width, label_width + 16, label_width + 100, label_width + 116);

  double y = kTop;
  for (const RankedUnit& r : ranked) {
    const UnitReport& u = *by_path.at(r.path);
    const std::string label = escape_markup(u.path);
    out += fmt::format("<g class=\"unit\" data-unit=\"{}\">\n", label);
    out += fmt::format(
        "<text class=\"label\" x=\"{:.2f}\" y=\"{:.2f}\" "
        "text-anchor=\"end\">{}</text>\n",
        label_width - 8, y + kBarHeight + 4, label);
    const std::pair<const char*, const Rational*> bars[] = {
        {"traditional", &u.avg_traditional},
        {"null-type", &u.avg_null_type}};
    for (const auto& [family, value] : bars) {
      const bool gray = std::string_view(family) == "traditional";
      const std::string json_value = format_average(*value);
      const double len = boost::rational_cast<double>(*value) * scale;
      out += fmt::format(
          "<rect class=\"bar {}\" x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" "
          "height=\"{:.0f}\" fill=\"{}\" data-value=\"{}\"/>\n",
          family, label_width, y, len, kBarHeight,
          gray ? "#999999" : "#000000", json_value);
      out += fmt::format(
          "<text class=\"value {}\" x=\"{:.2f}\" y=\"{:.2f}\">{}</text>\n",
          family, label_width + len + 4, y + kBarHeight - 3,
          round_decimal_text(json_value, 2));
      y += kBarHeight;
    }
    y += kGroupGap;
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_text(const ProjectReport& report, std::size_t top_n) {
  std::string out = fmt::format("mutdense {} mutant density report\n\n",
                                report.tool_version);
  std::size_t path_width = 4;
  for (const UnitReport& u : report.units) {
    path_width = std::max(path_width, u.path.size());
  }
  out += fmt::format("{:<{}}  {:>8}  {:>11}  {:>9}  {:>8}\n", "path",
                     path_width, "relevant", "traditional", "null-type",
                     "combined");
  if (report.units.empty()) {
    out += "no units analyzed\n";
  }
  for (const RankedUnit& r : rank_units(report, DensityKey::Combined)) {
    const auto it = std::find_if(
        report.units.begin(), report.units.end(),
        [&](const UnitReport& u) { return u.path == r.path; });
    out += fmt::format("{:<{}}  {:>8}  {:>11}  {:>9}  {:>8}{}\n", it->path,
                       path_width, it->relevant_line_count,
                       format_average(it->avg_traditional),
                       format_average(it->avg_null_type),
                       format_average(it->avg_combined()),
                       it->empty ? "  (empty)" : "");
  }
  if (!report.diagnostics.empty()) {
    out += "\ndiagnostics\n";
    for (const Diagnostic& d : report.diagnostics) {
      out += fmt::format("  {}: {}: {}\n", d.path, to_string(d.kind),
                         d.message);
    }
  }
  if (top_n > 0) {
    out += fmt::format("\ntop {} lines\n", top_n);
    const auto top = top_lines(report, top_n, DensityKey::Combined);
    if (top.empty()) out += "  none\n";
    for (const TopLine& t : top) {
      out += fmt::format("  {}:{}  {}\n", t.path, t.line, t.density);
    }
  }
  return out;
}

}  // namespace mutdense
