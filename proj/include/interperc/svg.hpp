#pragma once

// Minimal static SVG 1.1: axes, polylines, point markers and segments in
// data coordinates.

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "error.hpp"

namespace interperc {

class SvgPlot {
 public:
  SvgPlot(double x_lo, double x_hi, double y_lo, double y_hi, int width = 800, int height = 500)
      : x_lo_(x_lo), x_hi_(x_hi), y_lo_(y_lo), y_hi_(y_hi), width_(width), height_(height) {
    detail::require(x_lo < x_hi && y_lo < y_hi, "SvgPlot: empty data range");
  }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color,
                double stroke = 1.5) {
    std::string d;
    for (const auto& [x, y] : pts) d += num(sx(x)) + "," + num(sy(y)) + " ";
    body_ += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" + num(stroke) +
             "\" points=\"" + d + "\"/>\n";
  }

  void point(double x, double y, const std::string& color, double r = 2.0) {
    body_ += "<circle cx=\"" + num(sx(x)) + "\" cy=\"" + num(sy(y)) + "\" r=\"" + num(r) + "\" fill=\"" +
             color + "\"/>\n";
  }

  void segment(double x0, double y0, double x1, double y1, const std::string& color, double stroke = 1.0) {
    body_ += "<line x1=\"" + num(sx(x0)) + "\" y1=\"" + num(sy(y0)) + "\" x2=\"" + num(sx(x1)) + "\" y2=\"" +
             num(sy(y1)) + "\" stroke=\"" + color + "\" stroke-width=\"" + num(stroke) + "\"/>\n";
  }

  void write(std::ostream& os, const std::string& title) const {
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width_ << "\" height=\""
       << height_ << "\">\n"
       << "<title>" << title << "</title>\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // Axes through the origin when it is in range, else along the frame.
    double ax = (y_lo_ <= 0.0 && 0.0 <= y_hi_) ? 0.0 : y_lo_;
    double ay = (x_lo_ <= 0.0 && 0.0 <= x_hi_) ? 0.0 : x_lo_;
    os << "<line x1=\"" << num(sx(x_lo_)) << "\" y1=\"" << num(sy(ax)) << "\" x2=\"" << num(sx(x_hi_))
       << "\" y2=\"" << num(sy(ax)) << "\" stroke=\"#888\"/>\n";
    os << "<line x1=\"" << num(sx(ay)) << "\" y1=\"" << num(sy(y_lo_)) << "\" x2=\"" << num(sx(ay))
       << "\" y2=\"" << num(sy(y_hi_)) << "\" stroke=\"#888\"/>\n";
    os << "<text x=\"4\" y=\"14\" font-size=\"12\" font-family=\"monospace\">x " << num(x_lo_) << ".."
       << num(x_hi_) << "  y " << num(y_lo_) << ".." << num(y_hi_) << "</text>\n";
    os << body_ << "</svg>\n";
  }

 private:
  static constexpr double kMargin = 24.0;

  [[nodiscard]] double sx(double x) const {
    return kMargin + (x - x_lo_) / (x_hi_ - x_lo_) * (width_ - 2 * kMargin);
  }
  [[nodiscard]] double sy(double y) const {
    return height_ - kMargin - (y - y_lo_) / (y_hi_ - y_lo_) * (height_ - 2 * kMargin);
  }
  static std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
  }

  double x_lo_, x_hi_, y_lo_, y_hi_;
  int width_, height_;
  std::string body_;
};

}  // namespace interperc
