#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace soapforge::text {

/// Shortest decimal text that round-trips to the same binary64 value.
std::string format_decimal(double v);

std::string format_integer(std::int64_t v);

/// Strict full-match parses; nullopt on any trailing junk, overflow, or
/// (for decimals) a non-finite result.
std::optional<double> parse_decimal(std::string_view s);
std::optional<std::int64_t> parse_integer(std::string_view s);

/// Accepts "true"/"false"/"1"/"0".
std::optional<bool> parse_boolean(std::string_view s);

std::string_view trim(std::string_view s) noexcept;

std::vector<std::string> split(std::string_view s, char sep);

/// Whole-file read; nullopt when the file cannot be opened.
std::optional<std::string> read_file(const std::string& path);

}  // namespace soapforge::text
