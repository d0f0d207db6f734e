#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qexlab {

inline constexpr const char* kVersion = "0.3.0";

/// 64-bit FNV-1a, as 16 lower-case hex digits.
std::string fnv1a_hex(std::string_view text);

/// Shortest text that reads back to the same double ("nan", "inf" spelled out).
std::string format_double(double v);

/// Writes through a temporary file and renames it, so a failed run leaves no
/// partial output behind.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// CSV with a leading comment line carrying the provenance fields.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> row);
  std::string render(const std::string& config_hash, std::uint64_t seed) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace qexlab
