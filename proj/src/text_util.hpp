#pragma once

// Line-oriented tokenizing helpers shared by the text formats.

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "stgp/error.hpp"

namespace stgp::detail {

/// One non-blank, comment-stripped input line split on whitespace.
struct TokenLine {
  std::size_t number = 0;  // 1-based
  std::vector<std::string_view> tokens;
};

/// Splits `text` into token lines. '#' starts a comment; blank lines are dropped.
std::vector<TokenLine> tokenize(std::string_view text);

/// Shortest decimal form that reads back to the same double.
std::string format_double(double v);

double parse_double(std::string_view token, std::size_t line);
std::size_t parse_index(std::string_view token, std::size_t line);

/// Sequential reader over token lines with line-numbered errors.
class LineCursor {
 public:
  explicit LineCursor(std::string_view text) : lines_(tokenize(text)) {}

  bool done() const { return pos_ >= lines_.size(); }
  std::size_t line_number() const;

  /// Next line; throws ParseError("unexpected end of input ...") at EOF.
  const TokenLine& next(std::string_view expecting);

  /// Next line must be `<keyword> <value...>` with `count` values.
  const TokenLine& expect(std::string_view keyword, std::size_t count);

 private:
  std::vector<TokenLine> lines_;
  std::size_t pos_ = 0;
};

}  // namespace stgp::detail
