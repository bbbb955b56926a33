#include "cubic/parse.hpp"

#include <fmt/format.h>

#include "cubic/errors.hpp"

namespace cubic {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.emplace_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

Integer parse_integer(std::string_view token) {
  auto t = trim(token);
  if (!t.empty() && t.front() == '+') t.remove_prefix(1);
  const bool ok =
      !t.empty() &&
      t.find_first_not_of("-0123456789") == std::string_view::npos &&
      t.find('-', 1) == std::string_view::npos && t != "-";
  if (!ok) throw ParseError(fmt::format("not an integer: '{}'", token));
  return Integer(std::string(t), 10);
}

std::vector<Integer> parse_integer_list(std::string_view text,
                                        std::size_t count) {
  const auto parts = split(text, ',');
  if (parts.size() != count) {
    throw ParseError(fmt::format("expected {} comma-separated integers, got '{}'",
                                 count, text));
  }
  std::vector<Integer> out;
  out.reserve(count);
  for (const auto& p : parts) out.push_back(parse_integer(p));
  return out;
}

}  // namespace cubic
