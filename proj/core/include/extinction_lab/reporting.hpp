#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace extinction_lab {

/// Shortest decimal with 17 significant digits; lossless for doubles.
std::string format_real(double value);
/// Empty string for nullopt.
std::string format_real(const std::optional<double>& value);

/// Plain CSV writer: header row first, comma separated, '\n' line ends.
class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
  void row(const std::vector<std::string>& cells);
  void close();

 private:
  std::ofstream out_;
  std::size_t columns_;
  std::filesystem::path path_;
};

}  // namespace extinction_lab
