#pragma once

#include <filesystem>
#include <initializer_list>
#include <string>
#include <vector>

namespace ipep {

// "%.17g": enough digits to round-trip a double exactly.
std::string format_double(double v);

// Minimal CSV assembly. All numeric cells are printed with format_double,
// which keeps at least 17 significant digits.
class CsvWriter {
public:
  explicit CsvWriter(std::vector<std::string> header);

  void row(std::initializer_list<double> values);
  void row(const std::vector<double>& values);
  // Footer/meta rows that do not follow the column layout.
  void raw_row(std::string line);

  std::string str() const;

private:
  std::string out_;
};

// Write-temp-then-rename so readers never observe a half-written file.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace ipep
