#pragma once

// Small locale-independent text helpers shared by the file readers/writers.

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace modshift::text {

std::vector<std::string_view> split(std::string_view line, char sep);

/// Splits on runs of ' ' and '\t', dropping empty fields.
std::vector<std::string_view> split_ws(std::string_view line);

std::string_view trim(std::string_view s);

/// Full-field parse; rejects trailing garbage. Accepts "inf"/"nan" so callers
/// can decide how to treat non-finite values.
std::optional<double> parse_double(std::string_view s);
std::optional<long long> parse_int(std::string_view s, int base = 10);

/// Shortest representation that parses back to the same double.
std::string format_double(double v);

/// Fixed-point with `decimals` digits, always '.' as separator.
std::string format_fixed(double v, int decimals);

/// Reads the whole file, throwing DataError if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

/// Splits file content into lines, dropping a trailing '\r' per line and a
/// final empty line.
std::vector<std::string_view> lines(std::string_view content);

/// Writes `content` to `path` via a temporary file and rename.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace modshift::text
