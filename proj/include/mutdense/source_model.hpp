#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mutdense {

enum class TokenKind {
  Identifier,
  Keyword,
  Operator,
  Punctuation,
  NumberLiteral,
  StringLiteral,
  CharLiteral,
};

std::string_view to_string(TokenKind kind);

// Half-open byte range [begin, end) into the unit text.
struct ByteRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool contains(std::size_t offset) const {
    return offset >= begin && offset < end;
  }
  friend bool operator==(const ByteRange&, const ByteRange&) = default;
};

struct Token {
  TokenKind kind = TokenKind::Punctuation;
  std::string text;
  int line = 1;
  int column = 1;  // 1-based, counted in code points
  ByteRange bytes;

  bool is(std::string_view t) const {
    return text == t && kind != TokenKind::StringLiteral &&
           kind != TokenKind::CharLiteral;
  }
  friend bool operator==(const Token&, const Token&) = default;
};

enum class ErrorKind {
  UnterminatedLiteral,
  UnterminatedComment,
  UnbalancedBraces,
  MutantOnIrrelevantLine,
  SiteMismatch,
  ReadFailure,
  FileTooLarge,
};

std::string_view to_string(ErrorKind kind);

// Raised for per-unit analysis failures. line/column are 0 when the failure
// has no single source position.
class SourceError : public std::runtime_error {
 public:
  SourceError(ErrorKind kind, std::string message, int line = 0,
              int column = 0);

  ErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  ErrorKind kind_;
  int line_;
  int column_;
};

std::vector<Token> tokenize(std::string_view text);

// Splits on '\n'. A trailing newline does not open a new record, and a '\r'
// before the newline is dropped from the stored line text.
std::vector<std::string> split_lines(std::string_view text);

struct SourceUnit {
  std::string path;
  std::string text;
  std::vector<std::string> lines;  // lines[0] is line 1
  std::vector<Token> tokens;

  std::size_t line_count() const { return lines.size(); }
};

// Tokenizes `text`; throws SourceError on lexical failure.
SourceUnit make_unit(std::string path, std::string text);

enum class BodyKind { Method, Constructor };

struct Parameter {
  std::string name;
  std::string type_text;
  std::size_t name_token = 0;  // index into SourceUnit::tokens
};

struct BodySpan {
  BodyKind kind = BodyKind::Method;
  std::string name;
  int decl_line = 1;
  // [first, last) token indices; tokens[first] is '{' and tokens[last - 1]
  // its matching '}'.
  std::pair<std::size_t, std::size_t> body_tokens{0, 0};
  std::vector<Parameter> params;
  std::optional<std::string> return_type;  // empty for constructors

  std::size_t open_brace() const { return body_tokens.first; }
  std::size_t close_brace() const { return body_tokens.second - 1; }
};

// Method and constructor bodies in source order of their opening brace.
// Throws SourceError(UnbalancedBraces) when brackets do not pair up.
std::vector<BodySpan> locate_bodies(const SourceUnit& unit);

// Partner index of every bracket token; npos for all other tokens.
// Throws SourceError(UnbalancedBraces) when brackets do not pair up.
std::vector<std::size_t> match_brackets(const std::vector<Token>& tokens);

// Lambda blocks (`-> { ... }`) as [open, close] token index pairs.
std::vector<std::pair<std::size_t, std::size_t>> locate_lambda_blocks(
    const SourceUnit& unit);

struct LineSet {
  std::set<int> relevant;

  bool contains(int line) const { return relevant.count(line) != 0; }
  std::size_t size() const { return relevant.size(); }
};

// Lines holding at least one non-whitespace character outside comments.
std::vector<bool> code_lines(const SourceUnit& unit);

LineSet relevant_lines(const SourceUnit& unit,
                       const std::vector<BodySpan>& spans);

// Marks every token belonging to a generic type argument/parameter list,
// brackets included. A '<' opens such a list iff it can be closed by a
// '>'/'>>'/'>>>' while every enclosed token is an identifier, primitive
// type keyword, one of `, ? . [ ] &`, `extends`/`super`, or another such
// list.
std::vector<bool> generic_type_mask(const std::vector<Token>& tokens);

bool is_primitive_type(std::string_view type_text);

}  // namespace mutdense
