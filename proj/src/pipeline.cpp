#include "mutdense/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fmt/format.h>
#include <fmt/ostream.h>
#include <fstream>
#include <iterator>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "mutdense/fault_model.hpp"
#include "mutdense/reporting.hpp"

namespace mutdense {

namespace fs = std::filesystem;

namespace {

bool glob_impl(std::string_view p, std::string_view s) {
  while (!p.empty()) {
    if (p.substr(0, 2) == "**") {
      std::string_view rest = p.substr(2);
      if (!rest.empty() && rest.front() == '/') {
        rest.remove_prefix(1);
        if (glob_impl(rest, s)) return true;
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (s[i] == '/' && glob_impl(rest, s.substr(i + 1))) return true;
        }
        return false;
      }
      for (std::size_t i = 0; i <= s.size(); ++i) {
        if (glob_impl(rest, s.substr(i))) return true;
      }
      return false;
    }
    if (p.front() == '*') {
      p.remove_prefix(1);
      for (std::size_t i = 0; i <= s.size(); ++i) {
        if (glob_impl(p, s.substr(i))) return true;
        if (i < s.size() && s[i] == '/') break;
      }
      return false;
    }
    if (s.empty()) return false;
    if (p.front() == '?' ? s.front() == '/' : p.front() != s.front()) {
      return false;
    }
    p.remove_prefix(1);
    s.remove_prefix(1);
  }
  return s.empty();
}

bool matches_any(const std::vector<std::string>& globs,
                 std::string_view path) {
  return std::any_of(globs.begin(), globs.end(), [&](const std::string& g) {
    return glob_match(g, path);
  });
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view path) {
  if (pattern.find('/') == std::string_view::npos) {
    const auto slash = path.rfind('/');
    if (slash != std::string_view::npos) path.remove_prefix(slash + 1);
  }
  return glob_impl(pattern, path);
}

Discovery discover_files(const Config& config) {
  Discovery d;
  std::set<fs::path> seen;
  const bool prefix_root = config.roots.size() > 1;
  auto add = [&](const fs::path& file, const fs::path& root,
                 const std::string& relative) {
    if (!matches_any(config.include_globs, relative) ||
        matches_any(config.exclude_globs, relative)) {
      return;
    }
    std::error_code ec;
    const fs::path canonical = fs::weakly_canonical(file, ec);
    if (!seen.insert(ec ? file : canonical).second) return;
    std::string unit_path = relative;
    if (prefix_root) {
      unit_path = root.lexically_normal().generic_string();
      if (!unit_path.empty() && unit_path.back() != '/') unit_path += '/';
      unit_path += relative;
    }
    d.files.push_back({file, unit_path});
  };

  for (const fs::path& root : config.roots) {
    std::error_code ec;
    const auto status = fs::symlink_status(root, ec);
    if (ec || !fs::exists(status)) {
      d.missing_roots.push_back(root.string());
      continue;
    }
    if (fs::is_regular_file(status)) {
      add(root, root.parent_path(), root.filename().generic_string());
      continue;
    }
    if (!fs::is_directory(status)) continue;
    fs::recursive_directory_iterator it(
        root, fs::directory_options::skip_permission_denied, ec);
    for (; !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
      const auto entry_status = it->symlink_status(ec);
      if (ec || !fs::is_regular_file(entry_status)) continue;
      add(it->path(), root,
          it->path().lexically_relative(root).generic_string());
    }
  }
  std::sort(d.files.begin(), d.files.end(),
            [](const SourceFile& a, const SourceFile& b) {
              return a.unit_path < b.unit_path;
            });
  return d;
}

UnitAnalysis analyze_source(std::string path, std::string text,
                            const OperatorSet& set) {
  UnitAnalysis result;
  try {
    SourceUnit unit = make_unit(path, std::move(text));
    const auto spans = locate_bodies(unit);
    const auto relevant = relevant_lines(unit, spans);
    auto mutants = find_mutation_sites(unit, spans, set);
    result.report = make_unit_report(unit, relevant, std::move(mutants));
    result.unit = std::move(unit);
  } catch (const SourceError& e) {
    result.diagnostic =
        Diagnostic{std::move(path), e.kind(), e.what(), e.line(), e.column()};
  }
  return result;
}

UnitAnalysis analyze_file(const SourceFile& file, const OperatorSet& set) {
  std::error_code ec;
  const auto size = fs::file_size(file.location, ec);
  if (ec) {
    return {{}, {}, Diagnostic{file.unit_path, ErrorKind::ReadFailure,
                               ec.message(), 0, 0}};
  }
  if (size > kMaxFileBytes) {
    return {{}, {}, Diagnostic{file.unit_path, ErrorKind::FileTooLarge,
                               fmt::format("file has {} bytes; the limit is {}",
                                           size, kMaxFileBytes),
                               0, 0}};
  }
  std::ifstream in(file.location, std::ios::binary);
  std::string text{std::istreambuf_iterator<char>(in),
                   std::istreambuf_iterator<char>()};
  if (!in && !in.eof()) {
    return {{}, {}, Diagnostic{file.unit_path, ErrorKind::ReadFailure,
                               "cannot read file", 0, 0}};
  }
  return analyze_source(file.unit_path, std::move(text), set);
}

std::vector<UnitAnalysis> analyze_files(const std::vector<SourceFile>& files,
                                        const OperatorSet& set,
                                        std::size_t jobs) {
  std::vector<UnitAnalysis> results(files.size());
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, std::max<std::size_t>(files.size(), 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      results[i] = analyze_file(files[i], set);
    }
  };
  if (jobs <= 1) {
    worker();
    return results;
  }
  std::vector<std::jthread> pool;
  for (std::size_t k = 0; k < jobs; ++k) pool.emplace_back(worker);
  pool.clear();
  return results;
}

namespace {

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) {
    throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  }
}

}  // namespace

int run(const Config& config, std::ostream& out, std::ostream& err) {
  OperatorSet set;
  try {
    set = config.operator_set();
    config.heatmap.validate();
  } catch (const std::exception& e) {
    fmt::print(err, "mutdense: {}\n", e.what());
    return kExitFatal;
  }
  if (config.roots.empty()) {
    fmt::print(err, "mutdense: no input roots given\n");
    return kExitFatal;
  }
  const Discovery discovery = discover_files(config);
  if (!discovery.missing_roots.empty()) {
    for (const auto& root : discovery.missing_roots) {
      fmt::print(err, "mutdense: root '{}' does not exist\n", root);
    }
    return kExitFatal;
  }
  if (discovery.files.empty()) {
    fmt::print(err, "mutdense: no input files matched\n");
    return kExitFatal;
  }

  auto analyses = analyze_files(discovery.files, set, config.jobs);

  std::vector<UnitReport> units;
  std::vector<Diagnostic> diagnostics;
  std::map<std::string, const SourceUnit*> sources;
  for (auto& a : analyses) {
    if (a.report) units.push_back(*a.report);
    if (a.diagnostic) diagnostics.push_back(*a.diagnostic);
    if (a.unit) sources[a.unit->path] = &*a.unit;
  }
  ProjectReport report;
  try {
    report = aggregate_project(std::move(units), std::move(diagnostics),
                               set.operators());
  } catch (const std::invalid_argument& e) {
    fmt::print(err, "mutdense: {}\n", e.what());
    return kExitFatal;
  }

  std::vector<std::string> written;
  try {
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);
    if (ec) {
      throw std::runtime_error(fmt::format("cannot create output directory '{}': {}",
                                           config.output_dir.string(),
                                           ec.message()));
    }
    auto emit = [&](const std::string& name, const std::string& content) {
      write_file(config.output_dir / name, content);
      written.push_back(name);
    };
    if (config.formats.count(Format::Json)) {
      emit("project.json", emit_json(report));
    }
    if (config.formats.count(Format::Text)) {
      emit("project.txt", render_text(report, config.top_lines));
    }
    if (config.formats.count(Format::Svg)) {
      if (report.units.empty()) {
        fmt::print(err, "mutdense: no analyzable units; project.svg skipped\n");
      } else {
        emit("project.svg", render_barchart(report));
      }
    }
    if (config.formats.count(Format::Html)) {
      for (const UnitReport& u : report.units) {
        emit(heatmap_file_name(u.path),
             render_heatmap(*sources.at(u.path), u, config.heatmap));
      }
    }
  } catch (const std::exception& e) {
    fmt::print(err, "mutdense: {}\n", e.what());
    return kExitFatal;
  }

  fmt::print(out, "analyzed {} unit(s), {} diagnostic(s); wrote {} file(s) to {}\n",
             report.units.size(), report.diagnostics.size(), written.size(),
             config.output_dir.string());
  for (const Diagnostic& d : report.diagnostics) {
    fmt::print(err, "mutdense: {}: {}\n", d.path, d.message);
  }

  if (config.threshold) {
    std::vector<const UnitReport*> offending;
    for (const UnitReport& u : report.units) {
      if (u.avg_combined() > *config.threshold) offending.push_back(&u);
    }
    if (!offending.empty()) {
      fmt::print(err, "mutdense: {} unit(s) exceed combined density {}:\n",
                 offending.size(), format_average(*config.threshold));
      for (const UnitReport* u : offending) {
        fmt::print(err, "  {}  {}\n", u->path, format_average(u->avg_combined()));
      }
      return kExitThreshold;
    }
  }
  return kExitOk;
}

}  // namespace mutdense
