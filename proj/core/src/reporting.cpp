#include "extinction_lab/reporting.hpp"

#include <stdexcept>

#include <fmt/format.h>

namespace extinction_lab {

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

std::string format_real(const std::optional<double>& value) {
  return value ? format_real(*value) : std::string();
}

CsvWriter::CsvWriter(const std::filesystem::path& path,
                     const std::vector<std::string>& header)
    : out_(path, std::ios::binary | std::ios::trunc), columns_(header.size()), path_(path) {
  if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
  row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw std::logic_error(fmt::format("CSV row has {} cells, header has {}", cells.size(),
                                       columns_));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

void CsvWriter::close() {
  out_.close();
  if (!out_) throw std::runtime_error("failed writing " + path_.string());
}

}  // namespace extinction_lab
