#pragma once

// Small text helpers shared by the CSV readers.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bog {

std::string_view trim(std::string_view s);
/// Splits on '\n', dropping a trailing '\r' on each line.
std::vector<std::string_view> split_lines(std::string_view text);
/// Splits on ',' and trims each cell. Quoting is not supported.
std::vector<std::string> split_csv_line(std::string_view line);
/// Throws FormatError naming `what` on malformed input.
double parse_double(std::string_view s, const std::string& what);
std::int64_t parse_int(std::string_view s, const std::string& what);
std::string to_hex(std::span<const std::uint8_t> bytes);

}  // namespace bog
