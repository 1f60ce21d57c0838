// Copyright 2026 the moped authors
// SPDX-License-Identifier: Apache-2.0

#include "moped/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace moped {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string profile_svg(const ProfileResult& profile, const std::string& title) {
  constexpr double width = 720, height = 480;
  constexpr double left = 70, right = 40, top = 50, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double max_log_tau = 1.0;  // at least one doubling on the axis
  for (const ProfileCurve& curve : profile.curves)
    for (double tau : curve.tau) max_log_tau = std::max(max_log_tau, std::log2(tau));
  max_log_tau = std::ceil(max_log_tau);

  auto x_of = [&](double tau) { return left + plot_w * std::log2(tau) / max_log_tau; };
  auto y_of = [&](double gamma) { return top + plot_h * (1.0 - gamma); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
      << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << width / 2 << "\" y=\"28\" text-anchor=\"middle\" "
      << "font-family=\"sans-serif\" font-size=\"16\">" << title << "</text>\n";

  // frame and grid
  svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << plot_w
      << "\" height=\"" << plot_h << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int g = 0; g <= 4; ++g) {
    const double gamma = g / 4.0;
    const double y = y_of(gamma);
    svg << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << left + plot_w
        << "\" y2=\"" << y << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << left - 8 << "\" y=\"" << y + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(gamma)
        << "</text>\n";
  }
  for (int e = 0; e <= static_cast<int>(max_log_tau); ++e) {
    const double x = left + plot_w * e / max_log_tau;
    svg << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\""
        << top + plot_h << "\" stroke=\"#dddddd\"/>\n";
    svg << "<text x=\"" << x << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">2^" << e
        << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 14
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">tau "
      << "(log2 scale)</text>\n";
  svg << "<text x=\"18\" y=\"" << top + plot_h / 2
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
      << "transform=\"rotate(-90 18 " << top + plot_h / 2 << ")\">gamma_s(tau)</text>\n";

  for (std::size_t c = 0; c < profile.curves.size(); ++c) {
    const ProfileCurve& curve = profile.curves[c];
    const char* color = kPalette[c % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::ostringstream path;
    double prev_y = y_of(0.0);
    for (std::size_t i = 0; i < curve.tau.size(); ++i) {
      const double x = x_of(curve.tau[i]);
      const double y = y_of(curve.gamma[i]);
      if (i == 0) {
        path << "M " << fmt(x) << ' ' << fmt(y);
      } else {
        // right-continuous step: horizontal to the breakpoint, then vertical
        path << " H " << fmt(x) << " V " << fmt(y);
      }
      prev_y = y;
    }
    path << " H " << fmt(left + plot_w);
    (void)prev_y;
    svg << "<path d=\"" << path.str() << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.8\"/>\n";

    const double ly = top + 18 + 18 * static_cast<double>(c);
    svg << "<line x1=\"" << left + plot_w - 130 << "\" y1=\"" << ly << "\" x2=\""
        << left + plot_w - 100 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"1.8\"/>\n";
    svg << "<text x=\"" << left + plot_w - 92 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << curve.solver << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace moped
