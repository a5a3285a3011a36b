#include "mutdense/source_model.hpp"

#include <algorithm>
#include <array>
#include <fmt/format.h>

namespace mutdense {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "Identifier";
    case TokenKind::Keyword: return "Keyword";
    case TokenKind::Operator: return "Operator";
    case TokenKind::Punctuation: return "Punctuation";
    case TokenKind::NumberLiteral: return "NumberLiteral";
    case TokenKind::StringLiteral: return "StringLiteral";
    case TokenKind::CharLiteral: return "CharLiteral";
  }
  return "?";
}

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnterminatedLiteral: return "UnterminatedLiteral";
    case ErrorKind::UnterminatedComment: return "UnterminatedComment";
    case ErrorKind::UnbalancedBraces: return "UnbalancedBraces";
    case ErrorKind::MutantOnIrrelevantLine: return "MutantOnIrrelevantLine";
    case ErrorKind::SiteMismatch: return "SiteMismatch";
    case ErrorKind::ReadFailure: return "ReadFailure";
    case ErrorKind::FileTooLarge: return "FileTooLarge";
  }
  return "?";
}

SourceError::SourceError(ErrorKind kind, std::string message, int line,
                         int column)
    : std::runtime_error(std::move(message)),
      kind_(kind),
      line_(line),
      column_(column) {}

namespace {

constexpr std::array<std::string_view, 53> kKeywords = {
    "abstract",   "assert",       "boolean",   "break",      "byte",
    "case",       "catch",        "char",      "class",      "const",
    "continue",   "default",      "do",        "double",     "else",
    "enum",       "extends",      "final",     "finally",    "float",
    "for",        "goto",         "if",        "implements", "import",
    "instanceof", "int",          "interface", "long",       "native",
    "new",        "package",      "private",   "protected",  "public",
    "return",     "short",        "static",    "strictfp",   "super",
    "switch",     "synchronized", "this",      "throw",      "throws",
    "transient",  "try",          "void",      "volatile",   "while",
    "true",       "false",        "null",
};

// Longest first so the first prefix hit is the maximal munch.
constexpr std::array<std::string_view, 37> kOperators = {
    ">>>=", ">>>", "<<=", ">>=", "...", "++", "--", "&&", "||", "<=",
    ">=",   "==",  "!=",  "+=",  "-=",  "*=", "/=", "%=", "&=", "|=",
    "^=",   "<<",  ">>",  "->",  "::",  "+",  "-",  "*",  "/",  "%",
    "<",    ">",   "=",   "!",   "~",   "?",  ":",
};

bool is_keyword(std::string_view word) {
  return std::find(kKeywords.begin(), kKeywords.end(), word) !=
         kKeywords.end();
}

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_ident_start(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' ||
         c == '$' || u >= 0x80;
}

bool is_ident_part(char c) { return is_ident_start(c) || is_digit(c); }

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (is_space(c)) {
        advance(1);
      } else if (starts_with("//")) {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (starts_with("/*")) {
        skip_block_comment();
      } else if (starts_with("\"\"\"")) {
        out.push_back(text_block());
      } else if (c == '"' || c == '\'') {
        out.push_back(quoted(c));
      } else if (is_digit(c) ||
                 (c == '.' && pos_ + 1 < text_.size() &&
                  is_digit(text_[pos_ + 1]))) {
        out.push_back(number());
      } else if (is_ident_start(c)) {
        out.push_back(word());
      } else {
        out.push_back(symbol());
      }
    }
    return out;
  }

 private:
  bool starts_with(std::string_view s) const {
    return text_.substr(pos_, s.size()) == s;
  }

  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n && pos_ < text_.size(); ++k, ++pos_) {
      const auto u = static_cast<unsigned char>(text_[pos_]);
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else if ((u & 0xC0) != 0x80) {
        ++column_;
      }
    }
  }

  Token begin(TokenKind kind) const {
    Token t;
    t.kind = kind;
    t.line = line_;
    t.column = column_;
    t.bytes.begin = pos_;
    return t;
  }

  Token finish(Token t) const {
    t.bytes.end = pos_;
    t.text = std::string(text_.substr(t.bytes.begin, t.bytes.size()));
    return t;
  }

  void skip_block_comment() {
    const int line = line_;
    const int column = column_;
    const auto end = text_.find("*/", pos_ + 2);
    if (end == std::string_view::npos) {
      throw SourceError(ErrorKind::UnterminatedComment,
                        fmt::format("unterminated comment at {}:{}", line,
                                    column),
                        line, column);
    }
    advance(end + 2 - pos_);
  }

  Token text_block() {
    Token t = begin(TokenKind::StringLiteral);
    advance(3);
    while (pos_ < text_.size()) {
      if (text_[pos_] == '\\') {
        advance(2);
      } else if (starts_with("\"\"\"")) {
        advance(3);
        return finish(std::move(t));
      } else {
        advance(1);
      }
    }
    throw unterminated(t);
  }

  Token quoted(char delim) {
    Token t = begin(delim == '"' ? TokenKind::StringLiteral
                                 : TokenKind::CharLiteral);
    advance(1);
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '\n') break;
      if (c == '\\') {
        if (pos_ + 1 < text_.size() && text_[pos_ + 1] == '\n') break;
        advance(2);
        continue;
      }
      advance(1);
      if (c == delim) return finish(std::move(t));
    }
    throw unterminated(t);
  }

  static SourceError unterminated(const Token& t) {
    return SourceError(
        ErrorKind::UnterminatedLiteral,
        fmt::format("unterminated literal at {}:{}", t.line, t.column),
        t.line, t.column);
  }

  Token number() {
    Token t = begin(TokenKind::NumberLiteral);
    const bool hex = starts_with("0x") || starts_with("0X");
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (is_ident_part(c) || c == '.') {
        advance(1);
        continue;
      }
      const char prev = text_[pos_ - 1];
      const bool exponent = hex ? (prev == 'p' || prev == 'P')
                                : (prev == 'e' || prev == 'E');
      if ((c == '+' || c == '-') && exponent) {
        advance(1);
        continue;
      }
      break;
    }
    return finish(std::move(t));
  }

  Token word() {
    Token t = begin(TokenKind::Identifier);
    while (pos_ < text_.size() && is_ident_part(text_[pos_])) advance(1);
    t = finish(std::move(t));
    if (is_keyword(t.text)) t.kind = TokenKind::Keyword;
    return t;
  }

  Token symbol() {
    for (std::string_view op : kOperators) {
      if (starts_with(op)) {
        const bool punct = op == "..." || op == "::";
        Token t = begin(punct ? TokenKind::Punctuation : TokenKind::Operator);
        advance(op.size());
        return finish(std::move(t));
      }
    }
    const char c = text_[pos_];
    const bool op_char = c == '&' || c == '|' || c == '^';
    Token t = begin(op_char ? TokenKind::Operator : TokenKind::Punctuation);
    advance(1);
    return finish(std::move(t));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

bool is_open(const Token& t) {
  return t.kind == TokenKind::Punctuation &&
         (t.text == "(" || t.text == "[" || t.text == "{");
}

bool is_close(const Token& t) {
  return t.kind == TokenKind::Punctuation &&
         (t.text == ")" || t.text == "]" || t.text == "}");
}

char closer_for(const std::string& open) {
  return open == "(" ? ')' : open == "[" ? ']' : '}';
}

}  // namespace

std::vector<std::size_t> match_brackets(const std::vector<Token>& toks) {
  std::vector<std::size_t> match(toks.size(), std::string::npos);
  std::vector<std::size_t> stack;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (is_open(toks[i])) {
      stack.push_back(i);
    } else if (is_close(toks[i])) {
      if (stack.empty() ||
          closer_for(toks[stack.back()].text) != toks[i].text[0]) {
        throw SourceError(
            ErrorKind::UnbalancedBraces,
            fmt::format("unexpected '{}' at {}:{}", toks[i].text,
                        toks[i].line, toks[i].column),
            toks[i].line, toks[i].column);
      }
      match[i] = stack.back();
      match[stack.back()] = i;
      stack.pop_back();
    }
  }
  if (!stack.empty()) {
    const Token& t = toks[stack.back()];
    throw SourceError(ErrorKind::UnbalancedBraces,
                      fmt::format("unclosed '{}' at {}:{}", t.text, t.line,
                                  t.column),
                      t.line, t.column);
  }
  return match;
}

namespace {

bool is_modifier(const Token& t) {
  static constexpr std::array<std::string_view, 12> kModifiers = {
      "public", "protected", "private",  "static",       "final",
      "abstract", "native",  "strictfp", "synchronized", "default",
      "transient", "volatile"};
  return t.kind == TokenKind::Keyword &&
         std::find(kModifiers.begin(), kModifiers.end(), t.text) !=
             kModifiers.end();
}

bool is_word(const Token& t) {
  return t.kind == TokenKind::Identifier || t.kind == TokenKind::Keyword ||
         t.kind == TokenKind::NumberLiteral;
}

std::string join_type(const std::vector<Token>& toks, std::size_t begin,
                      std::size_t end) {
  std::string out;
  for (std::size_t i = begin; i < end; ++i) {
    if (i > begin) {
      const Token& prev = toks[i - 1];
      const Token& cur = toks[i];
      if ((is_word(prev) && is_word(cur)) || prev.is(",") || prev.is("&") ||
          cur.is("&") || (prev.is("?") && is_word(cur))) {
        out += ' ';
      }
    }
    out += toks[i].text;
  }
  return out;
}

class BodyLocator {
 public:
  explicit BodyLocator(const SourceUnit& unit)
      : toks_(unit.tokens),
        match_(match_brackets(unit.tokens)),
        generic_(generic_type_mask(unit.tokens)) {}

  std::vector<BodySpan> run() {
    scan_code(0, toks_.size());
    std::sort(spans_.begin(), spans_.end(),
              [](const BodySpan& a, const BodySpan& b) {
                return a.body_tokens.first < b.body_tokens.first;
              });
    return std::move(spans_);
  }

 private:
  bool at(std::size_t i, std::string_view text) const {
    return i < toks_.size() && toks_[i].is(text);
  }

  bool ident_at(std::size_t i) const {
    return i < toks_.size() && toks_[i].kind == TokenKind::Identifier;
  }

  bool is_type_keyword(std::size_t i) const {
    if (i >= toks_.size()) return false;
    const Token& t = toks_[i];
    if (i > 0 && toks_[i - 1].is(".")) return false;
    if (t.kind == TokenKind::Keyword &&
        (t.text == "class" || t.text == "interface" || t.text == "enum")) {
      return ident_at(i + 1);
    }
    // `record` is contextual: only a declaration when followed by a name
    // and a component list or type parameters.
    return t.kind == TokenKind::Identifier && t.text == "record" &&
           ident_at(i + 1) && (at(i + 2, "(") || at(i + 2, "<"));
  }

  // Handles a type declaration whose keyword sits at `kw`; returns the index
  // just past it.
  std::size_t type_declaration(std::size_t kw, std::size_t end) {
    const std::string& name = toks_[kw + 1].text;
    const bool is_enum = toks_[kw].text == "enum";
    for (std::size_t j = kw + 2; j < end; ++j) {
      if (at(j, "(") || at(j, "[")) {
        j = match_[j];
      } else if (at(j, "{")) {
        type_body(j, name, is_enum);
        return match_[j] + 1;
      } else if (at(j, ";") || at(j, "}")) {
        return j;
      }
    }
    return end;
  }

  // Walks arbitrary code looking for type bodies (local, anonymous, top
  // level) whose members may declare further methods.
  void scan_code(std::size_t begin, std::size_t end) {
    std::size_t i = begin;
    while (i < end) {
      if (is_type_keyword(i)) {
        i = type_declaration(i, end);
        continue;
      }
      if (at(i, "new")) {
        std::size_t j = i + 1;
        while (j < end && (ident_at(j) || at(j, ".") || generic_[j] ||
                           toks_[j].kind == TokenKind::Keyword)) {
          if (at(j, "new")) break;
          ++j;
        }
        if (at(j, "(") && at(match_[j] + 1, "{")) {
          const std::size_t open = match_[j] + 1;
          scan_code(i + 1, open);
          type_body(open, "", false);
          i = match_[open] + 1;
          continue;
        }
      }
      ++i;
    }
  }

  std::size_t skip_annotation(std::size_t i) const {
    // toks_[i] is '@', followed by a (possibly qualified) name.
    std::size_t j = i + 2;
    while (at(j, ".") && ident_at(j + 1)) j += 2;
    if (at(j, "(")) j = match_[j] + 1;
    return j;
  }

  void type_body(std::size_t open, const std::string& type_name,
                 bool is_enum) {
    const std::size_t close = match_[open];
    std::size_t i = open + 1;
    if (is_enum) {
      while (i < close) {
        if (at(i, ";")) {
          ++i;
          break;
        }
        if (at(i, "(") || at(i, "[")) {
          i = match_[i] + 1;
        } else if (at(i, "{")) {
          type_body(i, "", false);
          i = match_[i] + 1;
        } else {
          ++i;
        }
      }
    }
    std::size_t member_start = i;
    while (i < close) {
      const Token& t = toks_[i];
      if (t.is(";")) {
        member_start = ++i;
      } else if (t.is("{")) {
        scan_code(i + 1, match_[i]);
        member_start = i = match_[i] + 1;
      } else if (t.is("@") && ident_at(i + 1)) {
        i = skip_annotation(i);
      } else if (is_type_keyword(i)) {
        member_start = i = type_declaration(i, close);
      } else if (t.is("=")) {
        std::size_t j = i + 1;
        while (j < close && !at(j, ";")) {
          j = is_open(toks_[j]) ? match_[j] + 1 : j + 1;
        }
        scan_code(i + 1, j);
        member_start = i = std::min(j + 1, close);
      } else if (t.kind == TokenKind::Identifier && at(i + 1, "(")) {
        const auto [next, ends_member] =
            member_candidate(member_start, i, type_name);
        i = next;
        if (ends_member) member_start = i;
      } else if (is_open(t)) {
        i = match_[i] + 1;
      } else {
        ++i;
      }
    }
  }

  // Returns the index just past the candidate and whether a member
  // declaration ended there.
  std::pair<std::size_t, bool> member_candidate(
      std::size_t member_start, std::size_t name,
      const std::string& type_name) {
    const std::size_t rparen = match_[name + 1];
    if (name > member_start) {
      static constexpr std::array<std::string_view, 7> kBlockers = {
          "new", "if", "for", "while", "switch", "catch", "synchronized"};
      const Token& prev = toks_[name - 1];
      if (prev.kind == TokenKind::Keyword &&
          std::find(kBlockers.begin(), kBlockers.end(), prev.text) !=
              kBlockers.end()) {
        return {rparen + 1, false};
      }
    }
    std::size_t j = rparen + 1;
    while (at(j, "[") && at(j + 1, "]")) j += 2;
    if (at(j, "throws")) {
      ++j;
      while (j < toks_.size() &&
             (ident_at(j) || at(j, ".") || at(j, ",") || generic_[j])) {
        ++j;
      }
    }
    if (at(j, "{")) {
      spans_.push_back(make_span(member_start, name, j, type_name));
      scan_code(j + 1, match_[j]);
      return {match_[j] + 1, true};
    }
    if (at(j, ";")) return {j + 1, true};
    if (at(j, "default")) {
      while (j < toks_.size() && !at(j, ";")) {
        j = is_open(toks_[j]) ? match_[j] + 1 : j + 1;
      }
      return {j, false};
    }
    return {rparen + 1, false};
  }

  BodySpan make_span(std::size_t member_start, std::size_t name,
                     std::size_t open, const std::string& type_name) const {
    BodySpan span;
    span.name = toks_[name].text;
    span.body_tokens = {open, match_[open] + 1};
    span.decl_line = toks_[name].line;

    // Prefix: annotations, modifiers and type parameters; the rest is the
    // return type.
    std::size_t i = member_start;
    bool line_set = false;
    while (i < name) {
      if (at(i, "@") && ident_at(i + 1) && !at(i + 1, "interface")) {
        i = skip_annotation(i);
        continue;
      }
      if (!line_set) {
        span.decl_line = toks_[i].line;
        line_set = true;
      }
      if (is_modifier(toks_[i])) {
        ++i;
      } else if (at(i, "<") && generic_[i]) {
        i = generic_end(i) + 1;
      } else {
        break;
      }
    }
    if (i < name) {
      span.return_type = join_type(toks_, i, name);
      span.kind = BodyKind::Method;
    } else {
      span.kind = (span.name == type_name && !type_name.empty())
                      ? BodyKind::Constructor
                      : BodyKind::Method;
    }
    span.params = parameters(name + 1, match_[name + 1]);
    return span;
  }

  // Index of the token closing the generic list opened at `open`.
  std::size_t generic_end(std::size_t open) const {
    int depth = 0;
    for (std::size_t j = open; j < toks_.size(); ++j) {
      const std::string& s = toks_[j].text;
      if (s == "<") ++depth;
      else if (s == ">") depth -= 1;
      else if (s == ">>") depth -= 2;
      else if (s == ">>>") depth -= 3;
      if (depth <= 0) return j;
    }
    return toks_.size() - 1;
  }

  std::vector<Parameter> parameters(std::size_t lparen,
                                    std::size_t rparen) const {
    std::vector<Parameter> out;
    std::size_t start = lparen + 1;
    int angle = 0;
    for (std::size_t j = lparen + 1; j <= rparen; ++j) {
      if (j < rparen && is_open(toks_[j])) {
        j = match_[j];
        continue;
      }
      if (j < rparen && generic_[j]) {
        const std::string& s = toks_[j].text;
        if (s == "<") ++angle;
        else if (s == ">") angle -= 1;
        else if (s == ">>") angle -= 2;
        else if (s == ">>>") angle -= 3;
        continue;
      }
      if (j == rparen || (angle == 0 && at(j, ","))) {
        if (auto p = parameter(start, j)) out.push_back(std::move(*p));
        start = j + 1;
      }
    }
    return out;
  }

  std::optional<Parameter> parameter(std::size_t begin,
                                     std::size_t end) const {
    std::size_t i = begin;
    while (i < end) {
      if (at(i, "@") && ident_at(i + 1)) {
        i = skip_annotation(i);
      } else if (at(i, "final")) {
        ++i;
      } else {
        break;
      }
    }
    std::size_t last = end;
    std::string dims;
    while (last >= i + 2 && at(last - 1, "]") && at(last - 2, "[")) {
      last -= 2;
      dims += "[]";
    }
    if (last <= i + 1 || !ident_at(last - 1)) return std::nullopt;
    Parameter p;
    p.name_token = last - 1;
    p.name = toks_[last - 1].text;
    p.type_text = join_type(toks_, i, last - 1) + dims;
    return p;
  }

  const std::vector<Token>& toks_;
  std::vector<std::size_t> match_;
  std::vector<bool> generic_;
  std::vector<BodySpan> spans_;
};

}  // namespace

std::vector<Token> tokenize(std::string_view text) {
  return Lexer(text).run();
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.emplace_back(line);
    start = nl + 1;
  }
  return lines;
}

SourceUnit make_unit(std::string path, std::string text) {
  SourceUnit unit;
  unit.path = std::move(path);
  unit.lines = split_lines(text);
  unit.tokens = tokenize(text);
  unit.text = std::move(text);
  return unit;
}

std::vector<BodySpan> locate_bodies(const SourceUnit& unit) {
  return BodyLocator(unit).run();
}

std::vector<std::pair<std::size_t, std::size_t>> locate_lambda_blocks(
    const SourceUnit& unit) {
  const auto& toks = unit.tokens;
  const auto match = match_brackets(toks);
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i + 1 < toks.size(); ++i) {
    if (toks[i].is("->") && toks[i + 1].is("{")) {
      out.emplace_back(i + 1, match[i + 1]);
    }
  }
  return out;
}

std::vector<bool> code_lines(const SourceUnit& unit) {
  std::vector<bool> code(unit.line_count() + 1, false);
  for (const Token& t : unit.tokens) {
    int line = t.line;
    for (char c : t.text) {
      if (c == '\n') {
        ++line;
      } else if (!is_space(c) && line < static_cast<int>(code.size())) {
        code[line] = true;
      }
    }
  }
  return code;
}

LineSet relevant_lines(const SourceUnit& unit,
                       const std::vector<BodySpan>& spans) {
  const auto code = code_lines(unit);
  LineSet set;
  for (const BodySpan& span : spans) {
    const int last = unit.tokens[span.close_brace()].line;
    for (int line = span.decl_line; line <= last; ++line) {
      if (code[line]) set.relevant.insert(line);
    }
  }
  return set;
}

bool is_primitive_type(std::string_view type_text) {
  static constexpr std::array<std::string_view, 9> kPrimitives = {
      "boolean", "byte",   "char", "short", "int",
      "long",    "float", "double", "void"};
  return std::find(kPrimitives.begin(), kPrimitives.end(), type_text) !=
         kPrimitives.end();
}

std::vector<bool> generic_type_mask(const std::vector<Token>& toks) {
  std::vector<bool> mask(toks.size(), false);
  auto allowed = [](const Token& t) {
    if (t.kind == TokenKind::Identifier) return true;
    if (t.kind == TokenKind::Keyword) {
      return t.text == "extends" || t.text == "super" ||
             (is_primitive_type(t.text) && t.text != "void");
    }
    return t.is(",") || t.is("?") || t.is(".") || t.is("[") || t.is("]") ||
           t.is("&");
  };
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (mask[i] || !toks[i].is("<")) continue;
    int depth = 0;
    std::size_t close = 0;
    for (std::size_t j = i; j < toks.size(); ++j) {
      const Token& t = toks[j];
      if (t.is("<")) {
        ++depth;
      } else if (t.is(">") || t.is(">>") || t.is(">>>")) {
        depth -= static_cast<int>(t.text.size());
        if (depth < 0) break;
        if (depth == 0) {
          close = j;
          break;
        }
      } else if (!allowed(t)) {
        break;
      }
    }
    if (close != 0) {
      std::fill(mask.begin() + static_cast<std::ptrdiff_t>(i),
                mask.begin() + static_cast<std::ptrdiff_t>(close) + 1, true);
    }
  }
  return mask;
}

}  // namespace mutdense
