#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include "qclat/io.hpp"

namespace qclat {

namespace {

constexpr double kSize = 600.0;
constexpr double kPad = 30.0;
constexpr std::size_t kMaxCells = 256;

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string header(std::string_view title) {
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kSize + 2 * kPad << "\" height=\""
    << kSize + 2 * kPad << "\">\n";
  if (!title.empty()) o << "<title>" << escape(title) << "</title>\n";
  o << "<rect x=\"0\" y=\"0\" width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return o.str();
}

// piecewise linear ramp, dark blue -> teal -> yellow
std::string ramp(double t) {
  static constexpr std::array<std::array<double, 3>, 4> stops{
      {{68, 1, 84}, {49, 104, 142}, {53, 183, 121}, {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * 3.0;
  const auto k = std::min<std::size_t>(static_cast<std::size_t>(t), 2);
  const double f = t - static_cast<double>(k);
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c) rgb[c] = static_cast<int>(std::lround(stops[k][c] + f * (stops[k + 1][c] - stops[k][c])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

}  // namespace

std::string svg_scatter(std::span<const Complex> points, std::string_view title) {
  std::string out = header(title);
  double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (!points.empty()) {
    x0 = x1 = points[0].real();
    y0 = y1 = points[0].imag();
    for (Complex z : points) {
      x0 = std::min(x0, z.real());
      x1 = std::max(x1, z.real());
      y0 = std::min(y0, z.imag());
      y1 = std::max(y1, z.imag());
    }
  }
  const double span = std::max({x1 - x0, y1 - y0, 1e-12});
  std::ostringstream o;
  o.precision(6);
  for (Complex z : points) {
    const double px = kPad + (z.real() - x0) / span * kSize;
    const double py = kPad + kSize - (z.imag() - y0) / span * kSize;
    o << "<circle cx=\"" << px << "\" cy=\"" << py << "\" r=\"2\" fill=\"#1f4e9c\"/>\n";
  }
  out += o.str();
  out += "</svg>\n";
  return out;
}

std::string svg_heatmap(std::span<const double> values, std::size_t nx, std::size_t ny, double x0, double x1,
                        double y0, double y1, std::string_view title) {
  std::string out = header(title);
  if (nx == 0 || ny == 0 || values.size() != nx * ny) return out + "</svg>\n";
  double lo = INFINITY, hi = -INFINITY;
  for (double v : values) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const std::size_t sx = (nx + kMaxCells - 1) / kMaxCells, sy = (ny + kMaxCells - 1) / kMaxCells;
  const std::size_t cx = (nx + sx - 1) / sx, cy = (ny + sy - 1) / sy;
  const double aspect = (y1 - y0) > 0 && (x1 - x0) > 0 ? (y1 - y0) / (x1 - x0) : 1.0;
  const double w = aspect <= 1 ? kSize : kSize / aspect;
  const double h = aspect <= 1 ? kSize * aspect : kSize;
  const double cw = w / static_cast<double>(cx), ch = h / static_cast<double>(cy);
  std::ostringstream o;
  o.precision(6);
  for (std::size_t bj = 0; bj < cy; ++bj) {
    for (std::size_t bi = 0; bi < cx; ++bi) {
      const double v = values[(bj * sy) * nx + bi * sx];
      const std::string fill = !std::isfinite(v) ? "#000000" : ramp(hi > lo ? (v - lo) / (hi - lo) : 0.5);
      o << "<rect x=\"" << kPad + static_cast<double>(bi) * cw << "\" y=\""
        << kPad + h - static_cast<double>(bj + 1) * ch << "\" width=\"" << cw << "\" height=\"" << ch
        << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  o << "<text x=\"" << kPad << "\" y=\"" << kPad - 8 << "\" font-size=\"12\">min " << lo << "  max " << hi
    << "</text>\n";
  out += o.str();
  out += "</svg>\n";
  return out;
}

}  // namespace qclat
