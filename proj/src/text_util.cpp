#include "text_util.hpp"

#include "stgp/format.hpp"

#include <cmath>
#include <system_error>

namespace stgp::detail {

std::vector<TokenLine> tokenize(std::string_view text) {
  std::vector<TokenLine> out;
  std::size_t number = 0;
  while (!text.empty()) {
    ++number;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    TokenLine tl{number, {}};
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
      std::size_t j = i;
      while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
      if (j > i) tl.tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (!tl.tokens.empty()) out.push_back(std::move(tl));
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

double parse_double(std::string_view token, std::size_t line) {
  double v = 0.0;
  const char* first = token.data();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size() || !std::isfinite(v)) {
    throw ParseError("expected a finite real, got '" + std::string(token) + "'", line);
  }
  return v;
}

std::size_t parse_index(std::string_view token, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("expected a non-negative integer, got '" + std::string(token) + "'", line);
  }
  return v;
}

std::size_t LineCursor::line_number() const {
  if (pos_ < lines_.size()) return lines_[pos_].number;
  return lines_.empty() ? 0 : lines_.back().number;
}

const TokenLine& LineCursor::next(std::string_view expecting) {
  if (done()) {
    throw ParseError("unexpected end of input, expected " + std::string(expecting), line_number());
  }
  return lines_[pos_++];
}

const TokenLine& LineCursor::expect(std::string_view keyword, std::size_t count) {
  const auto& l = next(std::string(keyword) + " line");
  if (l.tokens.front() != keyword || l.tokens.size() != count + 1) {
    throw ParseError("expected '" + std::string(keyword) + "' with " + std::to_string(count) +
                         " value(s)",
                     l.number);
  }
  return l;
}

}  // namespace stgp::detail

namespace stgp {

std::string format_real(double v) { return detail::format_double(v); }

}  // namespace stgp
