#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mutdense/config.hpp"
#include "mutdense/metrics.hpp"
#include "mutdense/source_model.hpp"

namespace mutdense {

inline constexpr std::uintmax_t kMaxFileBytes = 10u * 1024u * 1024u;

// `*` and `?` stay within one path segment, `**` spans segments and `**/`
// also matches nothing. Patterns without '/' are matched against the file
// name only.
bool glob_match(std::string_view pattern, std::string_view path);

struct SourceFile {
  std::filesystem::path location;
  std::string unit_path;  // '/'-separated, relative to its root
};

struct Discovery {
  std::vector<SourceFile> files;  // sorted by unit_path
  std::vector<std::string> missing_roots;
};

// Walks the roots without following symbolic links.
Discovery discover_files(const Config& config);

struct UnitAnalysis {
  std::optional<SourceUnit> unit;
  std::optional<UnitReport> report;
  std::optional<Diagnostic> diagnostic;
};

// tokenize -> locate_bodies -> relevant_lines -> find_mutation_sites ->
// per-line metrics. Failures come back as a diagnostic.
UnitAnalysis analyze_source(std::string path, std::string text,
                            const OperatorSet& set);

UnitAnalysis analyze_file(const SourceFile& file, const OperatorSet& set);

// Results are in the order of `files`, whatever the worker count.
std::vector<UnitAnalysis> analyze_files(const std::vector<SourceFile>& files,
                                        const OperatorSet& set,
                                        std::size_t jobs);

enum ExitCode { kExitOk = 0, kExitFatal = 1, kExitThreshold = 2 };

// Full analysis run. Progress goes to `out`, errors and gate failures to
// `err`.
int run(const Config& config, std::ostream& out, std::ostream& err);

}  // namespace mutdense
