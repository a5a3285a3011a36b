#include "mutdense/metrics.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <set>
#include <stdexcept>

namespace mutdense {

std::int64_t FamilyCounts::get(DensityKey key) const {
  switch (key) {
    case DensityKey::Traditional: return traditional;
    case DensityKey::NullType: return null_type;
    case DensityKey::Combined: return total();
  }
  return 0;
}

void FamilyCounts::add(Family family, std::int64_t n) {
  (family == Family::Traditional ? traditional : null_type) += n;
}

Rational UnitReport::average(DensityKey key) const {
  switch (key) {
    case DensityKey::Traditional: return avg_traditional;
    case DensityKey::NullType: return avg_null_type;
    case DensityKey::Combined: return avg_combined();
  }
  return {};
}

std::vector<LineDensity> line_densities(const SourceUnit& unit,
                                        const LineSet& relevant,
                                        const std::vector<Mutant>& mutants) {
  std::vector<LineDensity> lines(unit.line_count());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    lines[i].line = static_cast<int>(i) + 1;
    lines[i].relevant = relevant.contains(lines[i].line);
  }
  for (const Mutant& m : mutants) {
    if (m.line < 1 || m.line > static_cast<int>(lines.size()) ||
        !lines[m.line - 1].relevant) {
      throw SourceError(ErrorKind::MutantOnIrrelevantLine,
                        fmt::format("{} mutant on non-relevant line {}",
                                    m.operator_id, m.line),
                        m.line, m.column);
    }
    lines[m.line - 1].counts.add(m.family);
  }
  return lines;
}

Rational average_density(const std::vector<LineDensity>& lines,
                         DensityKey key) {
  std::int64_t sum = 0;
  std::int64_t count = 0;
  for (const LineDensity& d : lines) {
    if (!d.relevant) continue;
    sum += d.counts.get(key);
    ++count;
  }
  if (count == 0) return Rational(0);
  return Rational(sum, count);
}

UnitReport make_unit_report(const SourceUnit& unit, const LineSet& relevant,
                            std::vector<Mutant> mutants) {
  UnitReport r;
  r.path = unit.path;
  r.physical_line_count = unit.line_count();
  r.relevant_line_count = relevant.size();
  r.lines = line_densities(unit, relevant, mutants);
  for (const Mutant& m : mutants) r.mutant_counts.add(m.family);
  r.mutants = std::move(mutants);
  r.avg_traditional = average_density(r.lines, DensityKey::Traditional);
  r.avg_null_type = average_density(r.lines, DensityKey::NullType);
  r.empty = r.relevant_line_count == 0;
  return r;
}

ProjectReport aggregate_project(std::vector<UnitReport> units,
                                std::vector<Diagnostic> diagnostics,
                                std::vector<MutationOperator> operators) {
  std::sort(units.begin(), units.end(),
            [](const UnitReport& a, const UnitReport& b) {
              return a.path < b.path;
            });
  for (std::size_t i = 1; i < units.size(); ++i) {
    if (units[i].path == units[i - 1].path) {
      throw std::invalid_argument(
          fmt::format("duplicate unit path '{}'", units[i].path));
    }
  }
  std::stable_sort(diagnostics.begin(), diagnostics.end(),
                   [](const Diagnostic& a, const Diagnostic& b) {
                     return a.path < b.path;
                   });
  ProjectReport report;
  report.units = std::move(units);
  report.diagnostics = std::move(diagnostics);
  report.operators = std::move(operators);
  return report;
}

std::vector<RankedUnit> rank_units(const ProjectReport& report,
                                   DensityKey key) {
  std::vector<RankedUnit> out;
  out.reserve(report.units.size());
  for (const UnitReport& u : report.units) {
    out.push_back({u.path, u.average(key)});
  }
  std::sort(out.begin(), out.end(),
            [](const RankedUnit& a, const RankedUnit& b) {
              if (a.value != b.value) return a.value > b.value;
              return a.path < b.path;
            });
  return out;
}

std::vector<TopLine> top_lines(const ProjectReport& report, std::size_t n,
                               DensityKey key) {
  std::vector<TopLine> all;
  for (const UnitReport& u : report.units) {
    for (const LineDensity& d : u.lines) {
      const auto density = d.counts.get(key);
      if (d.relevant && density > 0) all.push_back({u.path, d.line, density});
    }
  }
  std::sort(all.begin(), all.end(), [](const TopLine& a, const TopLine& b) {
    if (a.density != b.density) return a.density > b.density;
    if (a.path != b.path) return a.path < b.path;
    return a.line < b.line;
  });
  if (all.size() > n) all.resize(n);
  return all;
}

namespace {

std::string insert_point(std::string digits, int places, bool negative) {
  if (places > 0) {
    if (static_cast<int>(digits.size()) <= places) {
      digits.insert(0, static_cast<std::size_t>(places) + 1 - digits.size(),
                    '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(places), ".");
  }
  return negative ? "-" + digits : digits;
}

}  // namespace

std::string format_decimal(const Rational& value, int places) {
  std::int64_t scale = 1;
  for (int i = 0; i < places; ++i) scale *= 10;
  const bool negative = value.numerator() < 0;
  const std::int64_t num =
      negative ? -value.numerator() : value.numerator();
  const std::int64_t den = value.denominator();
  // num * scale may overflow for huge numerators; split into whole and
  // fractional parts first.
  const std::int64_t whole = num / den;
  const std::int64_t frac = num % den;
  std::int64_t q = frac * scale / den;
  const std::int64_t rem = frac * scale % den;
  if (2 * rem > den || (2 * rem == den && q % 2 != 0)) ++q;
  const std::int64_t scaled = whole * scale + q;
  return insert_point(std::to_string(scaled), places,
                      negative && scaled != 0);
}

std::string format_average(const Rational& value) {
  return format_decimal(value, 4);
}

std::string round_decimal_text(const std::string& text, int places) {
  const bool negative = !text.empty() && text[0] == '-';
  const std::string body = negative ? text.substr(1) : text;
  const auto dot = body.find('.');
  const std::string whole = body.substr(0, dot);
  const std::string frac =
      dot == std::string::npos ? std::string() : body.substr(dot + 1);
  std::int64_t num = std::stoll(whole.empty() ? "0" : whole);
  std::int64_t den = 1;
  for (char c : frac) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  return format_decimal(Rational(negative ? -num : num, den), places);
}

}  // namespace mutdense
