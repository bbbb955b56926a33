#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cubic/integer.hpp"

namespace cubic {

/// Splits on `sep`, trimming ASCII whitespace from each piece.
std::vector<std::string> split(std::string_view text, char sep);

Integer parse_integer(std::string_view token);

/// Comma separated integers; throws ParseError unless exactly `count`.
std::vector<Integer> parse_integer_list(std::string_view text,
                                        std::size_t count);

}  // namespace cubic
