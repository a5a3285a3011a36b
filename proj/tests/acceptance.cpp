// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <fmt/format.h>
#include <functional>
#include <nlohmann/json.hpp>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "mutdense/pipeline.hpp"
#include "mutdense/reporting.hpp"
#include "test_support.hpp"

namespace mutdense {
namespace {

namespace fs = std::filesystem;
using testing::fixture;
using testing::in_method;
using testing::read_file;
using testing::scratch_dir;

struct Outcome {
  bool pass = true;
  std::string detail;

  void check(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

const OperatorSet kAll;
const OperatorSet kTraditional({Family::Traditional});
const OperatorSet kNullType({Family::NullType});

UnitAnalysis must_analyze(const std::string& path, const std::string& text,
                          const OperatorSet& set) {
  auto a = analyze_source(path, text, set);
  if (!a.report) {
    throw std::runtime_error(path + ": " + a.diagnostic->message);
  }
  return a;
}

std::vector<fs::path> fixture_files() {
  Config c;
  c.roots = {fixture("")};
  std::vector<fs::path> out;
  for (const auto& f : discover_files(c).files) out.push_back(f.location);
  return out;
}

int run_quiet(const Config& config) {
  std::ostringstream out;
  std::ostringstream err;
  return run(config, out, err);
}

// 1. The loop header carries exactly ROR `<` -> `>=` and AOR-S `++` -> `--`.
Outcome loop_header() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  Config c;
  c.roots = {fixture("for_loop")};
  c.output_dir = scratch_dir("acc1");
  c.formats = {Format::Json};
  o.check(run_quiet(c) == kExitOk, "run failed");
  const auto j = nlohmann::json::parse(read_file(c.output_dir / "project.json"));
  const auto elapsed = std::chrono::steady_clock::now() - start;

  const auto& line = j["units"][0]["lines"][4];
  o.check(line["line"] == 5 && line["total"] == 2 && line["traditional"] == 2,
          "line 5 density is not 2");
  std::vector<std::string> on_line;
  for (const auto& m : j["units"][0]["mutants"]) {
    if (m["line"] == 5) {
      on_line.push_back(m["operatorId"].get<std::string>() + ":" +
                        m["original"].get<std::string>() + "->" +
                        m["replacement"].get<std::string>());
    }
  }
  o.check(on_line == std::vector<std::string>{"ROR:<->>=", "AOR-S:++->--"},
          "unexpected mutants on line 5");

  const auto a = must_analyze("Facts.java",
                              read_file(fixture("for_loop/Facts.java")),
                              kTraditional);
  std::vector<std::string> mutated_lines;
  for (const Mutant& m : a.report->mutants) {
    if (m.line != 5) continue;
    std::istringstream in(apply_mutant(*a.unit, m));
    std::string text;
    for (int k = 0; k < 5; ++k) std::getline(in, text);
    mutated_lines.push_back(text);
  }
  o.check(mutated_lines.size() == 2 &&
              mutated_lines[0].find("i >= NUM_FACTS") != std::string::npos &&
              mutated_lines[1].find("i--)") != std::string::npos,
          "applied mutants do not read `i >= NUM_FACTS` and `i--`");
  const auto ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  o.check(ms < 1000, fmt::format("took {} ms", ms));
  if (o.pass) o.detail = fmt::format("2 mutants on line 5, {} ms", ms);
  return o;
}

// 2. avg x relevantLineCount == mutant count, exactly.
Outcome average_identity() {
  Outcome o;
  std::vector<UnitReport> reports;
  for (const auto& path : fixture_files()) {
    auto a = analyze_source(path.string(), read_file(path), kAll);
    if (a.report) reports.push_back(*a.report);
  }
  testing::StraightLineGenerator gen(2024);
  for (int k = 0; k < 30; ++k) {
    const std::string text =
        in_method(gen.body(1 + k % 7), "Object m(Object p, int a)") +
        "class U { U u; U f(U x) { if (x != null) return new U(); return x; } }\n";
    reports.push_back(*must_analyze("G" + std::to_string(k) + ".java", text, kAll).report);
  }
  for (const UnitReport& r : reports) {
    const auto n = static_cast<std::int64_t>(r.relevant_line_count);
    for (const DensityKey key :
         {DensityKey::Traditional, DensityKey::NullType, DensityKey::Combined}) {
      o.check(r.average(key) * n == Rational(r.mutant_counts.get(key)),
              r.path + ": identity broken");
    }
  }
  if (o.pass) o.detail = fmt::format("{} units", reports.size());
  return o;
}

// 3. all == traditional + null-type, as multisets and per line.
Outcome family_split() {
  Outcome o;
  std::size_t units = 0;
  for (const auto& path : fixture_files()) {
    const std::string text = read_file(path);
    auto all = analyze_source(path.string(), text, kAll);
    if (!all.report) continue;
    ++units;
    auto trad = must_analyze(path.string(), text, kTraditional);
    auto nulls = must_analyze(path.string(), text, kNullType);
    auto split = trad.report->mutants;
    split.insert(split.end(), nulls.report->mutants.begin(),
                 nulls.report->mutants.end());
    auto key = [](const Mutant& m) {
      return std::tie(m.line, m.column, m.operator_id, m.replacement);
    };
    std::sort(split.begin(), split.end(),
              [&](const Mutant& a, const Mutant& b) { return key(a) < key(b); });
    auto joined = all.report->mutants;
    std::sort(joined.begin(), joined.end(),
              [&](const Mutant& a, const Mutant& b) { return key(a) < key(b); });
    o.check(split == joined, path.filename().string() + ": multisets differ");
    for (std::size_t i = 0; i < all.report->lines.size(); ++i) {
      const auto& l = all.report->lines[i];
      o.check(l.counts.traditional == trad.report->lines[i].counts.traditional &&
                  l.counts.null_type == nulls.report->lines[i].counts.null_type &&
                  l.total() == l.counts.traditional + l.counts.null_type,
              fmt::format("{}:{}: family counts do not add up",
                          path.filename().string(), l.line));
    }
  }
  if (o.pass) o.detail = fmt::format("{} fixture units", units);
  return o;
}

// 4. Traditional mutant count equals the operator-token count.
Outcome oracle_equivalence() {
  Outcome o;
  testing::StraightLineGenerator gen(99);
  std::size_t total = 0;
  for (int k = 0; k < 100; ++k) {
    const std::string body = gen.body(6);
    const auto a = must_analyze("S.java", in_method(body), kTraditional);
    const std::size_t expected = testing::count_operator_tokens(tokenize(body));
    o.check(a.report->mutants.size() == expected,
            fmt::format("body {}: {} mutants, oracle {}", k,
                        a.report->mutants.size(), expected));
    total += expected;
  }
  if (o.pass) o.detail = fmt::format("100 bodies, {} operator sites", total);
  return o;
}

// 5. No ROR mutant on generic angle brackets.
Outcome generic_safety() {
  Outcome o;
  const auto decls = testing::generic_declarations();
  std::string body;
  for (const auto& d : decls) {
    body += "    " + d + "\n";
    const auto a = must_analyze("D.java", in_method("    " + d), kAll);
    for (const Mutant& m : a.report->mutants) {
      o.check(m.operator_id != "ROR", "ROR in: " + d);
    }
  }
  const auto a = must_analyze("D.java", in_method(body), kAll);
  for (const Mutant& m : a.report->mutants) {
    o.check(m.operator_id != "ROR", "ROR in combined corpus");
  }
  if (o.pass) o.detail = fmt::format("{} declarations", decls.size());
  return o;
}

// 6. Hand-computed ranking of the three-unit project, byte-stable JSON.
Outcome ranking() {
  Outcome o;
  Config c;
  c.roots = {fixture("mini_project")};
  c.formats = {Format::Json};
  c.output_dir = scratch_dir("acc6a");
  o.check(run_quiet(c) == kExitOk, "first run failed");
  const std::string first = read_file(c.output_dir / "project.json");
  c.output_dir = scratch_dir("acc6b");
  o.check(run_quiet(c) == kExitOk, "second run failed");
  const std::string second = read_file(c.output_dir / "project.json");
  o.check(!first.empty() && first == second, "project.json differs between runs");

  // Alpha 3/3, Gamma 9/5, Beta (1 + 5)/9.
  const std::vector<std::pair<std::string, double>> expected = {
      {"Gamma.java", 1.8}, {"Alpha.java", 1.0}, {"Beta.java", 0.6667}};
  const auto j = nlohmann::json::parse(first);
  std::vector<std::pair<std::string, double>> actual;
  for (const auto& u : j["units"]) {
    actual.emplace_back(u["path"], u["avg"]["combined"].get<double>());
  }
  std::stable_sort(actual.begin(), actual.end(), [](const auto& a, const auto& b) {
    return a.second > b.second || (a.second == b.second && a.first < b.first);
  });
  o.check(actual == expected, "ranking differs from hand computation");
  if (o.pass) o.detail = "Gamma 1.8 > Alpha 1.0 > Beta 0.6667, byte-identical";
  return o;
}

// 7. Interface-only unit.
Outcome degenerate() {
  Outcome o;
  Config c;
  c.roots = {fixture("interface_only")};
  c.formats = {Format::Json};
  c.output_dir = scratch_dir("acc7");
  const int code = run_quiet(c);
  o.check(code == kExitOk, fmt::format("exit code {}", code));
  const auto j = nlohmann::json::parse(read_file(c.output_dir / "project.json"));
  const auto& u = j["units"][0];
  o.check(u["relevantLineCount"] == 0, "relevant lines present");
  o.check(u["avg"]["combined"] == 0.0 && u["avg"]["traditional"] == 0.0 &&
              u["avg"]["nullType"] == 0.0,
          "non-zero average");
  o.check(u["empty"] == true, "not flagged empty");
  return o;
}

// 8. One gray and one black bar per unit, rank order, values match JSON.
Outcome barchart() {
  Outcome o;
  Config c;
  c.roots = {fixture("mini_project")};
  c.formats = {Format::Json, Format::Svg};
  c.output_dir = scratch_dir("acc8");
  o.check(run_quiet(c) == kExitOk, "run failed");
  const std::string svg = read_file(c.output_dir / "project.svg");
  const auto j = nlohmann::json::parse(read_file(c.output_dir / "project.json"));

  const std::regex group_re("<g class=\"unit\" data-unit=\"([^\"]+)\">([^]*?)</g>");
  const std::regex bar_re(
      "<rect class=\"bar ([a-z-]+)\"[^>]*fill=\"(#[0-9a-f]{6})\" "
      "data-value=\"([0-9.]+)\"/>\\s*<text class=\"value [a-z-]+\"[^>]*>([0-9.]+)</text>");
  std::vector<std::pair<std::string, double>> order;
  for (auto g = std::sregex_iterator(svg.begin(), svg.end(), group_re);
       g != std::sregex_iterator(); ++g) {
    const std::string path = (*g)[1];
    const std::string body = (*g)[2];
    const auto unit = std::find_if(j["units"].begin(), j["units"].end(),
                                   [&](const auto& u) { return u["path"] == path; });
    if (unit == j["units"].end()) {
      o.check(false, "unknown unit " + path);
      continue;
    }
    std::vector<std::string> fills;
    for (auto b = std::sregex_iterator(body.begin(), body.end(), bar_re);
         b != std::sregex_iterator(); ++b) {
      const std::string family = (*b)[1];
      fills.push_back((*b)[2]);
      const double json_value =
          (*unit)["avg"][family == "traditional" ? "traditional" : "nullType"];
      o.check(std::stod((*b)[3]) == json_value,
              path + ": bar value differs from JSON");
      o.check((*b)[4] == fmt::format("{:.2f}", json_value),
              path + ": bar label differs from rounded JSON");
    }
    o.check(fills == std::vector<std::string>{"#999999", "#000000"},
            path + ": expected one gray and one black bar");
    order.emplace_back(path, (*unit)["avg"]["combined"].get<double>());
  }
  o.check(order.size() == j["units"].size(), "unit count differs");
  for (std::size_t i = 1; i < order.size(); ++i) {
    o.check(order[i - 1].second > order[i].second ||
                (order[i - 1].second == order[i].second &&
                 order[i - 1].first < order[i].first),
            "bars not in descending combined order");
  }
  if (o.pass) o.detail = fmt::format("{} units", order.size());
  return o;
}

}  // namespace
}  // namespace mutdense

int main() {
  using mutdense::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"loop header example", mutdense::loop_header},
      {"average density identity", mutdense::average_identity},
      {"family split", mutdense::family_split},
      {"token-scan oracle equivalence", mutdense::oracle_equivalence},
      {"generic bracket safety", mutdense::generic_safety},
      {"ranking correctness and determinism", mutdense::ranking},
      {"interface-only unit", mutdense::degenerate},
      {"bar chart structure", mutdense::barchart},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.pass;
    fmt::print("[{}] criterion {}: {}{}\n", o.pass ? "PASS" : "FAIL", i + 1,
               criteria[i].first, o.detail.empty() ? "" : " (" + o.detail + ")");
  }
  return failures == 0 ? 0 : 1;
}
