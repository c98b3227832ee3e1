#include "pdmdirac/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace pdmdirac {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string CsvTable::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    out += header[i];
    out += (i + 1 == header.size()) ? "\n" : ",";
  }
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::logic_error("CsvTable: row width != header width");
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += format_number(row[i]);
      out += (i + 1 == row.size()) ? "\n" : ",";
    }
  }
  return out;
}

namespace {

constexpr double kWidth = 800.0, kHeight = 560.0;
constexpr double kMarginL = 72.0, kMarginR = 24.0, kMarginT = 40.0, kMarginB = 56.0;

const char* kPalette[6] = {"#1f6fb4", "#d1495b", "#3c8d53", "#8b5fa8", "#c88a2d", "#4f6f7f"};

struct AxisTicks {
  double lo, hi, step;
};

// Round the range out to a "nice" step of the form {1,2,5} * 10^k.
AxisTicks nice_axis(double lo, double hi) {
  if (!(hi > lo)) hi = lo + 1.0;
  const double raw = (hi - lo) / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  AxisTicks t;
  t.step = step;
  t.lo = std::floor(lo / step) * step;
  t.hi = std::ceil(hi / step) * step;
  return t;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<SvgSeries>& series) {
  double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      if (first) {
        xmin = xmax = s.x[i];
        ymin = ymax = s.y[i];
        first = false;
      } else {
        xmin = std::min(xmin, s.x[i]);
        xmax = std::max(xmax, s.x[i]);
        ymin = std::min(ymin, s.y[i]);
        ymax = std::max(ymax, s.y[i]);
      }
    }
  }
  const AxisTicks xt = nice_axis(xmin, xmax);
  const AxisTicks yt = nice_axis(ymin, ymax);

  const double plot_w = kWidth - kMarginL - kMarginR;
  const double plot_h = kHeight - kMarginT - kMarginB;
  auto px = [&](double x) { return kMarginL + (x - xt.lo) / (xt.hi - xt.lo) * plot_w; };
  auto py = [&](double y) { return kMarginT + plot_h - (y - yt.lo) / (yt.hi - yt.lo) * plot_h; };
  auto coord = [](double v) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return std::string(buf);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"560\" "
         "viewBox=\"0 0 800 560\">\n";
  svg += "<rect width=\"800\" height=\"560\" fill=\"#ffffff\"/>\n";
  svg += "<text x=\"400\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" "
         "text-anchor=\"middle\">" + title + "</text>\n";

  // grid + ticks
  for (double v = xt.lo; v <= xt.hi + 0.5 * xt.step; v += xt.step) {
    const std::string x = coord(px(v));
    svg += "<line x1=\"" + x + "\" y1=\"" + coord(kMarginT) + "\" x2=\"" + x + "\" y2=\"" +
           coord(kMarginT + plot_h) + "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + x + "\" y=\"" + coord(kMarginT + plot_h + 18.0) +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
           tick_label(v) + "</text>\n";
  }
  for (double v = yt.lo; v <= yt.hi + 0.5 * yt.step; v += yt.step) {
    const std::string y = coord(py(v));
    svg += "<line x1=\"" + coord(kMarginL) + "\" y1=\"" + y + "\" x2=\"" +
           coord(kMarginL + plot_w) + "\" y2=\"" + y +
           "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
    svg += "<text x=\"" + coord(kMarginL - 6.0) + "\" y=\"" + y +
           "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\" "
           "dominant-baseline=\"middle\">" + tick_label(v) + "</text>\n";
  }
  svg += "<rect x=\"" + coord(kMarginL) + "\" y=\"" + coord(kMarginT) + "\" width=\"" +
         coord(plot_w) + "\" height=\"" + coord(plot_h) +
         "\" fill=\"none\" stroke=\"#333333\"/>\n";
  svg += "<text x=\"" + coord(kMarginL + plot_w / 2.0) + "\" y=\"" + coord(kHeight - 12.0) +
         "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">" + x_label +
         "</text>\n";
  svg += "<text x=\"18\" y=\"" + coord(kMarginT + plot_h / 2.0) +
         "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
         "transform=\"rotate(-90 18 " + coord(kMarginT + plot_h / 2.0) + ")\">" + y_label +
         "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      points += coord(px(s.x[i])) + "," + coord(py(s.y[i])) + " ";
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(kPalette[si % 6]) +
           "\" stroke-width=\"1.6\" points=\"" + points + "\"/>\n";
  }
  // legend
  for (std::size_t si = 0; si < series.size(); ++si) {
    const double y = kMarginT + 14.0 + 18.0 * static_cast<double>(si);
    svg += "<line x1=\"" + coord(kMarginL + 10.0) + "\" y1=\"" + coord(y) + "\" x2=\"" +
           coord(kMarginL + 34.0) + "\" y2=\"" + coord(y) + "\" stroke=\"" +
           std::string(kPalette[si % 6]) + "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + coord(kMarginL + 40.0) + "\" y=\"" + coord(y + 4.0) +
           "\" font-family=\"sans-serif\" font-size=\"12\">" + series[si].name + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    os.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!os) throw std::runtime_error("short write to " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace pdmdirac
