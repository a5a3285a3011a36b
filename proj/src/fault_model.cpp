#include "mutdense/fault_model.hpp"

#include <algorithm>
#include <fmt/format.h>
#include <map>
#include <stdexcept>
#include <tuple>

namespace mutdense {

std::string_view to_string(Family family) {
  return family == Family::Traditional ? "traditional" : "nullType";
}

const std::vector<MutationOperator>& operator_catalog() {
  static const std::vector<MutationOperator> catalog = {
      {"AOR-B", Family::Traditional,
       "binary arithmetic replacement (+ -, - +, * /, / *, % *)"},
      {"AOR-S", Family::Traditional, "shortcut arithmetic replacement (++ --)"},
      {"AOR-U", Family::Traditional, "unary minus deletion"},
      {"ROR", Family::Traditional,
       "relational replacement (< >=, > <=, <= >, >= <, == !=, != ==)"},
      {"COR", Family::Traditional, "conditional replacement (&& ||)"},
      {"LOR", Family::Traditional, "bitwise replacement (& |, | &, ^ &)"},
      {"SOR", Family::Traditional, "shift replacement (<< >>, >> <<, >>> <<)"},
      {"ASR-S", Family::Traditional, "compound assignment replacement"},
      {"NOI", Family::NullType, "object creation replaced by null"},
      {"NIV", Family::NullType, "reference parameter set to null on entry"},
      {"NRV", Family::NullType, "reference return value replaced by null"},
      {"NNC", Family::NullType, "null check negated"},
  };
  return catalog;
}

std::vector<MutationOperator> list_operators(Family family) {
  std::vector<MutationOperator> out;
  for (const auto& op : operator_catalog()) {
    if (op.family == family) out.push_back(op);
  }
  return out;
}

const MutationOperator* find_operator(std::string_view id) {
  for (const auto& op : operator_catalog()) {
    if (op.id == id) return &op;
  }
  return nullptr;
}

OperatorSet::OperatorSet()
    : OperatorSet({Family::Traditional, Family::NullType}) {}

OperatorSet::OperatorSet(std::set<Family> families,
                         std::optional<std::set<std::string>> enabled_ids)
    : families_(std::move(families)) {
  if (families_.empty()) {
    throw std::invalid_argument("operator set needs at least one family");
  }
  if (!enabled_ids) {
    for (const auto& op : operator_catalog()) {
      if (families_.count(op.family)) enabled_ids_.insert(op.id);
    }
    return;
  }
  for (const auto& id : *enabled_ids) {
    const MutationOperator* op = find_operator(id);
    if (op == nullptr) {
      throw std::invalid_argument(fmt::format("unknown operator '{}'", id));
    }
    if (!families_.count(op->family)) {
      throw std::invalid_argument(fmt::format(
          "operator '{}' is not in the selected families", id));
    }
  }
  enabled_ids_ = std::move(*enabled_ids);
}

bool OperatorSet::enables(std::string_view id) const {
  return enabled_ids_.find(std::string(id)) != enabled_ids_.end();
}

std::vector<MutationOperator> OperatorSet::operators() const {
  std::vector<MutationOperator> out;
  for (const auto& op : operator_catalog()) {
    if (enables(op.id)) out.push_back(op);
  }
  return out;
}

namespace {

struct Replacement {
  const char* id;
  const char* to;
};

// Single-token operators: token text -> (operator id, replacement).
const std::map<std::string, Replacement, std::less<>>& token_rules() {
  static const std::map<std::string, Replacement, std::less<>> rules = {
      {"*", {"AOR-B", "/"}},    {"/", {"AOR-B", "*"}},
      {"%", {"AOR-B", "*"}},    {"++", {"AOR-S", "--"}},
      {"--", {"AOR-S", "++"}},  {"<", {"ROR", ">="}},
      {">", {"ROR", "<="}},     {"<=", {"ROR", ">"}},
      {">=", {"ROR", "<"}},     {"==", {"ROR", "!="}},
      {"!=", {"ROR", "=="}},    {"&&", {"COR", "||"}},
      {"||", {"COR", "&&"}},    {"<<", {"SOR", ">>"}},
      {">>", {"SOR", "<<"}},    {">>>", {"SOR", "<<"}},
      {"+=", {"ASR-S", "-="}},  {"-=", {"ASR-S", "+="}},
      {"*=", {"ASR-S", "/="}},  {"/=", {"ASR-S", "*="}},
      {"%=", {"ASR-S", "*="}},  {"<<=", {"ASR-S", ">>="}},
      {">>=", {"ASR-S", "<<="}}, {"&=", {"ASR-S", "|="}},
      {"|=", {"ASR-S", "&="}},  {"^=", {"ASR-S", "&="}},
  };
  return rules;
}

bool ends_operand(const Token& t) {
  switch (t.kind) {
    case TokenKind::Identifier:
    case TokenKind::NumberLiteral:
    case TokenKind::StringLiteral:
    case TokenKind::CharLiteral:
      return true;
    case TokenKind::Keyword:
      return t.text == "true" || t.text == "false" || t.text == "null" ||
             t.text == "this";
    default:
      return t.is(")") || t.is("]");
  }
}

class SiteFinder {
 public:
  SiteFinder(const SourceUnit& unit, const std::vector<BodySpan>& spans,
             const OperatorSet& set)
      : unit_(unit),
        toks_(unit.tokens),
        spans_(spans),
        set_(set),
        match_(match_brackets(unit.tokens)),
        generic_(generic_type_mask(unit.tokens)),
        in_body_(unit.tokens.size(), false) {
    for (const BodySpan& span : spans_) {
      for (std::size_t i = span.body_tokens.first;
           i < span.body_tokens.second; ++i) {
        in_body_[i] = true;
      }
    }
  }

  std::vector<Mutant> run() {
    for (std::size_t i = 0; i < toks_.size(); ++i) {
      if (!in_body_[i] || generic_[i]) continue;
      const Token& t = toks_[i];
      if (t.kind == TokenKind::Operator) {
        operator_token(i);
      } else if (t.kind == TokenKind::Keyword && t.text == "new") {
        object_creation(i);
      } else if (t.kind == TokenKind::Keyword && t.text == "return") {
        return_statement(i);
      }
    }
    input_parameters();
    std::sort(out_.begin(), out_.end(), [](const Mutant& a, const Mutant& b) {
      return std::tie(a.line, a.column, a.operator_id) <
             std::tie(b.line, b.column, b.operator_id);
    });
    return std::move(out_);
  }

 private:
  bool binary(std::size_t i) const {
    if (i == 0) return false;
    const Token& prev = toks_[i - 1];
    if (ends_operand(prev)) return true;
    // Postfix increment/decrement also ends an operand.
    return (prev.is("++") || prev.is("--")) && i >= 2 &&
           ends_operand(toks_[i - 2]);
  }

  void emit(const char* id, std::size_t first, ByteRange bytes,
            std::string replacement) {
    if (!set_.enables(id)) return;
    Mutant m;
    m.operator_id = id;
    m.family = find_operator(id)->family;
    m.unit_path = unit_.path;
    m.line = toks_[first].line;
    m.column = toks_[first].column;
    m.bytes = bytes;
    m.original = unit_.text.substr(bytes.begin, bytes.size());
    m.replacement = std::move(replacement);
    out_.push_back(std::move(m));
  }

  void emit_token(const char* id, std::size_t i, std::string replacement) {
    emit(id, i, toks_[i].bytes, std::move(replacement));
  }

  void operator_token(std::size_t i) {
    const Token& t = toks_[i];
    const bool is_binary = binary(i);
    if (t.text == "+") {
      if (!is_binary) return;
      const bool concat =
          toks_[i - 1].kind == TokenKind::StringLiteral ||
          (i + 1 < toks_.size() &&
           toks_[i + 1].kind == TokenKind::StringLiteral);
      if (!concat) emit_token("AOR-B", i, "-");
    } else if (t.text == "-") {
      if (is_binary) {
        emit_token("AOR-B", i, "+");
      } else {
        emit_token("AOR-U", i, "");
      }
    } else if (t.text == "&" || t.text == "|" || t.text == "^") {
      if (is_binary) emit_token("LOR", i, t.text == "&" ? "|" : "&");
    } else if (auto it = token_rules().find(t.text);
               it != token_rules().end()) {
      emit_token(it->second.id, i, it->second.to);
    }
    if ((t.text == "==" || t.text == "!=") && null_operand(i)) {
      emit_token("NNC", i, t.text == "==" ? "!=" : "==");
    }
  }

  bool null_operand(std::size_t i) const {
    return (i > 0 && toks_[i - 1].is("null")) ||
           (i + 1 < toks_.size() && toks_[i + 1].is("null"));
  }

  void object_creation(std::size_t i) {
    std::size_t j = i + 1;
    while (j < toks_.size() &&
           (toks_[j].kind == TokenKind::Identifier || toks_[j].is(".") ||
            generic_[j])) {
      ++j;
    }
    if (j == i + 1 || j >= toks_.size() || !toks_[j].is("(")) return;
    std::size_t last = match_[j];
    // An anonymous class body goes with its creation expression.
    if (last + 1 < toks_.size() && toks_[last + 1].is("{")) {
      last = match_[last + 1];
    }
    emit("NOI", i, {toks_[i].bytes.begin, toks_[last].bytes.end}, "null");
  }

  // Innermost span or lambda block around token i. Returns the span, or
  // nullptr when a lambda block is innermost or nothing encloses it.
  const BodySpan* owning_span(std::size_t i) const {
    const BodySpan* best = nullptr;
    std::size_t best_open = 0;
    for (const BodySpan& span : spans_) {
      if (i > span.open_brace() && i < span.close_brace() &&
          (best == nullptr || span.open_brace() > best_open)) {
        best = &span;
        best_open = span.open_brace();
      }
    }
    for (const auto& [open, close] : lambda_blocks()) {
      if (i > open && i < close && (best == nullptr || open > best_open)) {
        return nullptr;
      }
    }
    return best;
  }

  const std::vector<std::pair<std::size_t, std::size_t>>& lambda_blocks() const {
    if (!lambdas_cache_) lambdas_cache_ = locate_lambda_blocks(unit_);
    return *lambdas_cache_;
  }

  void return_statement(std::size_t i) {
    if (!set_.enables("NRV")) return;
    const BodySpan* owner = owning_span(i);
    if (owner == nullptr || owner->kind != BodyKind::Method ||
        !owner->return_type || is_primitive_type(*owner->return_type)) {
      return;
    }
    std::size_t j = i + 1;
    while (j < toks_.size() && !toks_[j].is(";")) {
      j = match_[j] != std::string::npos && j < match_[j] ? match_[j] + 1
                                                          : j + 1;
    }
    if (j >= toks_.size() || j == i + 1) return;
    if (j == i + 2 && toks_[i + 1].is("null")) return;
    emit("NRV", i, {toks_[i].bytes.begin, toks_[j].bytes.end},
         "return null;");
  }

  void input_parameters() {
    if (!set_.enables("NIV")) return;
    for (const BodySpan& span : spans_) {
      for (const Parameter& p : span.params) {
        if (is_primitive_type(p.type_text)) continue;
        emit("NIV", p.name_token, toks_[p.name_token].bytes,
             p.name + " = null");
        out_.back().insertion_offset = toks_[span.open_brace()].bytes.end;
      }
    }
  }

  const SourceUnit& unit_;
  const std::vector<Token>& toks_;
  const std::vector<BodySpan>& spans_;
  const OperatorSet& set_;
  std::vector<std::size_t> match_;
  std::vector<bool> generic_;
  std::vector<bool> in_body_;
  mutable std::optional<std::vector<std::pair<std::size_t, std::size_t>>>
      lambdas_cache_;
  std::vector<Mutant> out_;
};

}  // namespace

std::vector<Mutant> find_mutation_sites(const SourceUnit& unit,
                                        const std::vector<BodySpan>& spans,
                                        const OperatorSet& set) {
  return SiteFinder(unit, spans, set).run();
}

std::string apply_mutant(const SourceUnit& unit, const Mutant& mutant) {
  const ByteRange& r = mutant.bytes;
  if (r.end > unit.text.size() || r.begin > r.end ||
      unit.text.compare(r.begin, r.size(), mutant.original) != 0) {
    throw SourceError(ErrorKind::SiteMismatch,
                      fmt::format("{} mutant at {}:{} does not match the "
                                  "source text",
                                  mutant.operator_id, mutant.line,
                                  mutant.column),
                      mutant.line, mutant.column);
  }
  std::string out = unit.text;
  if (mutant.insertion_offset) {
    if (*mutant.insertion_offset > out.size()) {
      throw SourceError(ErrorKind::SiteMismatch,
                        "insertion point lies outside the source text",
                        mutant.line, mutant.column);
    }
    out.insert(*mutant.insertion_offset, " " + mutant.replacement + ";");
  } else {
    out.replace(r.begin, r.size(), mutant.replacement);
  }
  return out;
}

}  // namespace mutdense
