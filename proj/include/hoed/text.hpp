#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hoed::text {

/// Shortest decimal form that parses back to the same double; "NA" for absent values.
std::string format_real(double value);
std::string format_real(const std::optional<double>& value);

/// Strict full-field parse; leading/trailing blanks are ignored.
std::optional<double> parse_real(std::string_view field);
std::optional<long long> parse_integer(std::string_view field);

/// RFC 4180 record splitting (quoted fields, doubled quotes, CRLF tolerant).
std::vector<std::vector<std::string>> parse_csv(std::string_view content);

/// Quotes a field when it contains a separator, quote or line break.
std::string csv_field(std::string_view field);
std::string csv_row(const std::vector<std::string>& fields);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

/// Lower-case hexadecimal SHA-256 digest.
std::string sha256_hex(std::string_view data);

}  // namespace hoed::text
