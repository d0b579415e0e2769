#include "dae/csv.hpp"

#include <charconv>
#include <fstream>

#include "dae/error.hpp"

namespace dae {

std::string format_number(double value) {
  char buf[32];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::string text;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text += ',';
    text += header[i];
  }
  text += '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size()) throw ShapeError("write_csv: row width differs from header");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) text += ',';
      text += format_number(row[i]);
    }
    text += '\n';
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void write_series_csv(const std::filesystem::path& path, const std::string& name,
                      const std::vector<double>& series) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < series.size(); ++i) {
    rows.push_back({static_cast<double>(i), series[i]});
  }
  write_csv(path, {"index", name}, rows);
}

}  // namespace dae
