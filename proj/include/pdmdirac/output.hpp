#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace pdmdirac {

/// Fixed 17-significant-digit decimal rendering, locale-independent.
std::string format_number(double v);

/// CSV with a header row; numbers rendered by format_number, LF endings.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::string to_string() const;
};

/// Minimal deterministic SVG line chart: fixed 800x560 viewport, linear axes,
/// polyline series with a small palette, legend from series names.
struct SvgSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<SvgSeries>& series);

/// Write via temp file + rename so readers never observe partial output.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace pdmdirac
