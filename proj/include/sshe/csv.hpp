#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace sshe {

/// Numeric table with a header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// 15 significant digits, locale independent.
std::string format_number(double value);
/// Shortest representation that round-trips the exact double.
std::string format_exact(double value);
/// Locale-independent parse of the whole string; false on trailing garbage.
bool parse_number(std::string_view text, double& value);

void write_csv(std::ostream& os, const CsvTable& table);
std::string to_csv_string(const CsvTable& table);
/// Throws ValidationError on malformed input.
CsvTable parse_csv(std::istream& is);

/// Writes `contents` to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

/// 64-bit FNV-1a, used as the output checksum in run manifests.
std::uint64_t fnv1a64(std::string_view data);

}  // namespace sshe
