#include "eplr/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace eplr {

std::string format_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string sweep_csv(const SweepResult& sweep) {
  std::ostringstream os;
  os << "m,N,estimate,abs_error,fitted_rate\n";
  const std::string rate = sweep.fitted_rate ? format_real(*sweep.fitted_rate) : "undefined";
  for (const auto& r : sweep.rows)
    os << r.m << ',' << r.N << ',' << format_real(r.estimate) << ',' << format_real(r.abs_error) << ',' << rate
       << '\n';
  return os.str();
}

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string sweep_svg(const SweepResult& sweep, unsigned alpha, const std::string& title) {
  constexpr double W = 640, H = 480, L = 70, R = 20, T = 40, B = 60;
  std::vector<std::pair<double, double>> pts;  // (log2 N, log10 error)
  for (const auto& r : sweep.rows)
    if (r.abs_error > 0.0 && std::isfinite(r.abs_error))
      pts.emplace_back(std::log2(static_cast<double>(r.N)), std::log10(r.abs_error));

  double x0 = 0, x1 = 1, y0 = -1, y1 = 0;
  if (!pts.empty()) {
    x0 = x1 = pts[0].first;
    y0 = y1 = pts[0].second;
    for (auto [x, y] : pts) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x1 - x0 < 1) x1 = x0 + 1;
  if (y1 - y0 < 1) y0 = y1 - 1;
  y0 = std::floor(y0 - 0.5);
  y1 = std::ceil(y1 + 0.5);
  auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
  auto py = [&](double y) { return T + (y1 - y) / (y1 - y0) * (H - T - B); };

  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(2);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
     << "</text>\n";
  os << "<g class=\"axes\" stroke=\"black\" fill=\"none\">\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B << "\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\"/>\n";
  os << "</g>\n";
  os << "<g class=\"ticks\" font-size=\"11\">\n";
  for (int k = static_cast<int>(std::ceil(x0)); k <= static_cast<int>(std::floor(x1)); ++k)
    os << "<text x=\"" << px(k) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << k << "</text>\n";
  for (int k = static_cast<int>(y0); k <= static_cast<int>(y1); ++k)
    os << "<text x=\"" << L - 6 << "\" y=\"" << py(k) + 4 << "\" text-anchor=\"end\">1e" << k << "</text>\n";
  os << "</g>\n";
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 16 << "\" text-anchor=\"middle\" font-size=\"12\">"
     << "log2 N</text>\n";
  os << "<text x=\"16\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
     << (T + H - B) / 2 << ")\">absolute error</text>\n";

  if (!pts.empty()) {
    const auto [ax, ay] = pts.back();
    const double slopes[2] = {-static_cast<double>(alpha), -static_cast<double>(alpha) + 1.0};
    for (double sl : slopes) {
      // error ~ N^sl: log10 e = ay + sl * log10(2) * (x - ax)
      auto yat = [&](double x) { return ay + sl * std::log10(2.0) * (x - ax); };
      os << "<line class=\"guide\" x1=\"" << px(x0) << "\" y1=\"" << py(yat(x0)) << "\" x2=\"" << px(x1)
         << "\" y2=\"" << py(yat(x1)) << "\" stroke=\"gray\" stroke-dasharray=\"2,4\"/>\n";
      os << "<text class=\"guide-label\" x=\"" << px(x0) + 4 << "\" y=\"" << py(yat(x0)) - 4
         << "\" font-size=\"11\" fill=\"gray\">N^" << sl << "</text>\n";
    }
    os << "<polyline class=\"data\" fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i)
      os << (i ? " " : "") << px(pts[i].first) << ',' << py(pts[i].second);
    os << "\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace eplr
