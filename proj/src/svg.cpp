#include "camforge/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace camforge::svg {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 420.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fixed(double v, int digits = 2) {
  std::array<char, 64> buf{};
  if (v == 0.0) v = 0.0;  // drop negative zero
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, digits);
  return std::string(buf.data(), ec == std::errc() ? ptr : buf.data());
}

std::string tick_label(double v) {
  std::array<char, 64> buf{};
  if (std::abs(v) < 1e-12) v = 0.0;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::general, 4);
  return std::string(buf.data(), ec == std::errc() ? ptr : buf.data());
}

std::string escape(const std::string& s) {
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

double nice_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double f = raw / mag;
  return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!std::isfinite(lo)) {
      lo = -1.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

}  // namespace

std::string render(const Plot& plot) {
  Range xr, yr;
  for (const auto& s : plot.series) {
    for (const auto& [x, y] : s.points) {
      xr.add(x);
      yr.add(y);
    }
  }
  for (double m : plot.x_markers) xr.add(m);
  for (double m : plot.y_markers) yr.add(m);
  xr.finish();
  yr.finish();

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(kWidth, 0) + "\" height=\"" +
         fixed(kHeight, 0) + "\" viewBox=\"0 0 " + fixed(kWidth, 0) + " " + fixed(kHeight, 0) +
         "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out += "<text x=\"" + fixed(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(plot.title) + "</text>\n";
  out += "<rect x=\"" + fixed(kLeft) + "\" y=\"" + fixed(kTop) + "\" width=\"" + fixed(pw) +
         "\" height=\"" + fixed(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";

  const double xs = nice_step(xr.hi - xr.lo);
  for (double t = std::ceil(xr.lo / xs) * xs; t <= xr.hi; t += xs) {
    out += "<line x1=\"" + fixed(px(t)) + "\" y1=\"" + fixed(kTop + ph) + "\" x2=\"" + fixed(px(t)) +
           "\" y2=\"" + fixed(kTop + ph + 5) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fixed(px(t)) + "\" y=\"" + fixed(kTop + ph + 18) + "\" text-anchor=\"middle\">" +
           tick_label(t) + "</text>\n";
  }
  const double ys = nice_step(yr.hi - yr.lo);
  for (double t = std::ceil(yr.lo / ys) * ys; t <= yr.hi; t += ys) {
    out += "<line x1=\"" + fixed(kLeft - 5) + "\" y1=\"" + fixed(py(t)) + "\" x2=\"" + fixed(kLeft) +
           "\" y2=\"" + fixed(py(t)) + "\" stroke=\"black\"/>\n";
    out += "<text x=\"" + fixed(kLeft - 8) + "\" y=\"" + fixed(py(t) + 4) + "\" text-anchor=\"end\">" +
           tick_label(t) + "</text>\n";
  }
  if (xr.lo < 0.0 && xr.hi > 0.0) {
    out += "<line x1=\"" + fixed(px(0)) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + fixed(px(0)) + "\" y2=\"" +
           fixed(kTop + ph) + "\" stroke=\"#bbbbbb\"/>\n";
  }
  if (yr.lo < 0.0 && yr.hi > 0.0) {
    out += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(py(0)) + "\" x2=\"" + fixed(kLeft + pw) +
           "\" y2=\"" + fixed(py(0)) + "\" stroke=\"#bbbbbb\"/>\n";
  }
  out += "<text x=\"" + fixed(kLeft + pw / 2) + "\" y=\"" + fixed(kHeight - 10) + "\" text-anchor=\"middle\">" +
         escape(plot.x_label) + "</text>\n";
  out += "<text transform=\"translate(16 " + fixed(kTop + ph / 2) + ") rotate(-90)\" text-anchor=\"middle\">" +
         escape(plot.y_label) + "</text>\n";

  for (double m : plot.x_markers) {
    out += "<line x1=\"" + fixed(px(m)) + "\" y1=\"" + fixed(kTop) + "\" x2=\"" + fixed(px(m)) + "\" y2=\"" +
           fixed(kTop + ph) + "\" stroke=\"#555555\" stroke-dasharray=\"4 3\"/>\n";
  }
  for (double m : plot.y_markers) {
    out += "<line x1=\"" + fixed(kLeft) + "\" y1=\"" + fixed(py(m)) + "\" x2=\"" + fixed(kLeft + pw) +
           "\" y2=\"" + fixed(py(m)) + "\" stroke=\"#aa0000\" stroke-dasharray=\"6 3\"/>\n";
  }

  for (std::size_t i = 0; i < plot.series.size(); ++i) {
    const auto& s = plot.series[i];
    const char* color = kPalette[i % kPalette.size()];
    out += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const auto& [x, y] : s.points) {
      if (!std::isfinite(x) || !std::isfinite(y)) continue;
      if (!first) out += ' ';
      out += fixed(px(x)) + "," + fixed(py(y));
      first = false;
    }
    out += "\"/>\n";
    const double ly = kTop + 14.0 + 18.0 * static_cast<double>(i);
    out += "<line x1=\"" + fixed(kLeft + pw + 12) + "\" y1=\"" + fixed(ly - 4) + "\" x2=\"" +
           fixed(kLeft + pw + 32) + "\" y2=\"" + fixed(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + fixed(kLeft + pw + 38) + "\" y=\"" + fixed(ly) + "\">" + escape(s.name) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace camforge::svg
