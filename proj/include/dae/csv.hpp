#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace dae {

/// Shortest round-trip decimal representation, '.' as separator regardless of locale.
std::string format_number(double value);

/// Header row plus one line per row, '\n' line endings.
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Two columns: "index,<name>".
void write_series_csv(const std::filesystem::path& path, const std::string& name,
                      const std::vector<double>& series);

}  // namespace dae
