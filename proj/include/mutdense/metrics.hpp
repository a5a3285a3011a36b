#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>
#include <vector>

#include "mutdense/fault_model.hpp"
#include "mutdense/source_model.hpp"

namespace mutdense {

inline constexpr const char* kToolVersion = "0.1.0";

using Rational = boost::rational<std::int64_t>;

// Which density a ranking or average is taken over.
enum class DensityKey { Traditional, NullType, Combined };

struct FamilyCounts {
  std::int64_t traditional = 0;
  std::int64_t null_type = 0;

  std::int64_t total() const { return traditional + null_type; }
  std::int64_t get(DensityKey key) const;
  void add(Family family, std::int64_t n = 1);
  friend bool operator==(const FamilyCounts&, const FamilyCounts&) = default;
};

struct LineDensity {
  int line = 0;
  bool relevant = false;
  FamilyCounts counts;

  std::int64_t total() const { return counts.total(); }
};

struct UnitReport {
  std::string path;
  std::size_t physical_line_count = 0;
  std::size_t relevant_line_count = 0;
  FamilyCounts mutant_counts;
  std::vector<LineDensity> lines;  // one per physical line
  std::vector<Mutant> mutants;
  Rational avg_traditional;
  Rational avg_null_type;
  bool empty = true;

  Rational avg_combined() const { return avg_traditional + avg_null_type; }
  Rational average(DensityKey key) const;
};

struct Diagnostic {
  std::string path;
  ErrorKind kind;
  std::string message;
  int line = 0;
  int column = 0;
};

struct ProjectReport {
  std::vector<UnitReport> units;  // sorted by path
  std::vector<Diagnostic> diagnostics;
  std::string tool_version = kToolVersion;
  std::vector<MutationOperator> operators;
};

// Throws SourceError(MutantOnIrrelevantLine) if a mutant sits on a line
// outside `relevant`.
std::vector<LineDensity> line_densities(const SourceUnit& unit,
                                        const LineSet& relevant,
                                        const std::vector<Mutant>& mutants);

// Sum over relevant lines divided by the relevant line count; 0 when there
// are no relevant lines.
Rational average_density(const std::vector<LineDensity>& lines,
                         DensityKey key);

UnitReport make_unit_report(const SourceUnit& unit, const LineSet& relevant,
                            std::vector<Mutant> mutants);

// Throws std::invalid_argument on duplicate unit paths.
ProjectReport aggregate_project(
    std::vector<UnitReport> units, std::vector<Diagnostic> diagnostics,
    std::vector<MutationOperator> operators = operator_catalog());

struct RankedUnit {
  std::string path;
  Rational value;
};

// Descending by value, ties by ascending path.
std::vector<RankedUnit> rank_units(const ProjectReport& report,
                                   DensityKey key);

struct TopLine {
  std::string path;
  int line = 0;
  std::int64_t density = 0;
};

// At most n relevant lines with non-zero density, densest first, ties by
// (path, line).
std::vector<TopLine> top_lines(const ProjectReport& report, std::size_t n,
                               DensityKey key);

// Fixed-point rendering with round-half-to-even.
std::string format_decimal(const Rational& value, int places);

// The value reports print: the exact average rounded to 4 places.
std::string format_average(const Rational& value);

// Rounds an already formatted decimal (as emitted in JSON) to fewer places,
// half-to-even.
std::string round_decimal_text(const std::string& text, int places);

}  // namespace mutdense
