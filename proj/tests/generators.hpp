#pragma once

#include <algorithm>
#include <array>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mutdense/source_model.hpp"

namespace mutdense::testing {

// Straight-line method bodies: no generics, no strings, no branches. Every
// binary expression is parenthesized so `a < b > c` never reads as a type
// argument list.
class StraightLineGenerator {
 public:
  explicit StraightLineGenerator(unsigned seed) : rng_(seed) {}

  std::string body(int statements) {
    std::string out;
    for (int k = 0; k < statements; ++k) out += "    " + statement() + "\n";
    return out;
  }

 private:
  std::string var() {
    static constexpr std::array<const char*, 6> kVars = {"a", "b", "c",
                                                         "i", "j", "n"};
    return kVars[pick(kVars.size())];
  }

  std::string atom() {
    switch (pick(4)) {
      case 0: return std::to_string(pick(10));
      case 1: return "-" + var();
      default: return var();
    }
  }

  std::string expr(int depth) {
    if (depth == 0 || pick(3) == 0) return atom();
    static constexpr std::array<const char*, 20> kBinary = {
        "+", "-", "*", "/", "%", "&", "|", "^", "<<", ">>",
        ">>>", "<", ">", "<=", ">=", "==", "!=", "&&", "||", "-"};
    return "(" + expr(depth - 1) + " " + kBinary[pick(kBinary.size())] +
           " " + expr(depth - 1) + ")";
  }

  std::string statement() {
    static constexpr std::array<const char*, 11> kAssign = {
        "=", "+=", "-=", "*=", "/=", "%=", "<<=", ">>=", "&=", "|=", "^="};
    switch (pick(5)) {
      case 0: return var() + "++;";
      case 1: return "--" + var() + ";";
      case 2: return "int v" + std::to_string(counter_++) + " = " + expr(3) + ";";
      default:
        return var() + " " + kAssign[pick(kAssign.size())] + " " + expr(3) +
               ";";
    }
  }

  std::size_t pick(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_);
  }

  std::mt19937 rng_;
  int counter_ = 0;
};

// Brute-force count of traditional operator tokens, independent of the site
// matching rules.
inline std::size_t count_operator_tokens(const std::vector<Token>& tokens) {
  static constexpr std::array<std::string_view, 31> kOps = {
      "+",  "-",  "*",  "/",  "%",  "++", "--", "<",   ">",   "<=", ">=",
      "==", "!=", "&&", "||", "&",  "|",  "^",  "<<",  ">>",  ">>>", "+=",
      "-=", "*=", "/=", "%=", "<<=", ">>=", "&=", "|=", "^="};
  std::size_t n = 0;
  for (const Token& t : tokens) {
    if (t.kind == TokenKind::Operator &&
        std::find(kOps.begin(), kOps.end(), t.text) != kOps.end()) {
      ++n;
    }
  }
  return n;
}

// Nested generic declarations; none of their angle brackets is an operator.
inline std::vector<std::string> generic_declarations() {
  return {
      "Map<String, List<Integer>> m0 = new HashMap<>();",
      "List<String> l1 = new ArrayList<String>();",
      "Map<String, Map<String, List<Integer>>> m2 = null;",
      "Set<? extends Number> s3 = Collections.emptySet();",
      "List<? super Integer> l4 = new ArrayList<>();",
      "Map.Entry<String, Integer> e5 = null;",
      "Optional<List<Map<String, Integer>>> o6 = Optional.empty();",
      "Function<Integer, List<String>> f7 = null;",
      "List<int[]> l8 = new LinkedList<>();",
      "Map<Class<?>, List<String[]>> m9 = new HashMap<>();",
      "Comparator<Map.Entry<String, Long>> c10 = null;",
      "BiFunction<String, Integer, Map<String, Integer>> b11 = null;",
      "List<List<List<String>>> l12 = new ArrayList<>();",
      "Map<String, Set<Long>> m13 = new TreeMap<String, Set<Long>>();",
      "Iterator<Map.Entry<K, V>> it14 = map.entrySet().iterator();",
      "Supplier<Deque<Integer>> s15 = ArrayDeque::new;",
      "Class<? extends List<String>> k16 = null;",
      "Pair<Map<A, B>, List<C>> p17 = Pair.<Map<A, B>, List<C>>of(x, y);",
      "Collection<? extends Map<String, ?>> c18 = java.util.List.of();",
      "Map<String, List<Map<String, Set<Integer>>>> m19 = new HashMap<>();",
  };
}

}  // namespace mutdense::testing
