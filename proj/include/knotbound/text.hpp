#pragma once

// Line and token helpers shared by the text formats.

#include <charconv>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "knotbound/error.hpp"

namespace knotbound {

namespace detail {

struct LineTokens {
  std::vector<std::pair<std::string_view, std::size_t>> tokens;  // text, column
};

inline LineTokens tokenize(std::string_view line) {
  LineTokens out;
  if (auto hash = line.find('#'); hash != std::string_view::npos) {
    line = line.substr(0, hash);
  }
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' ||
                               line[i] == '\r' || line[i] == ',')) {
      ++i;
    }
    const std::size_t begin = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' &&
           line[i] != '\r' && line[i] != ',') {
      ++i;
    }
    if (i > begin) out.tokens.emplace_back(line.substr(begin, i - begin), begin + 1);
  }
  return out;
}

inline long parse_int(std::string_view tok, std::size_t line, std::size_t col) {
  long value = 0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("expected an integer, got '" + std::string(tok) + "'", line, col);
  }
  return value;
}

template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    const std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    ++line_no;
    fn(line, line_no);
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
}

}  // namespace detail

}  // namespace knotbound
