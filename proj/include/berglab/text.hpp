#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace berglab::text {

/// Shortest decimal string that round-trips to the same double.
std::string shortest(double value);

/// Fixed 15-significant-digit scientific form used in every CSV cell.
std::string sci15(double value);

std::optional<double> parse_double(std::string_view s);
std::optional<int> parse_int(std::string_view s);

std::vector<std::string_view> split(std::string_view s, char sep);
std::string_view trim(std::string_view s);

}  // namespace berglab::text
