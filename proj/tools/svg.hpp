#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "selfstab/errors.hpp"

namespace selfstab::svg {

inline std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

struct Mapper {
  double lo, hi, px0, px1;
  double operator()(double v) const { return px0 + (v - lo) / (hi - lo) * (px1 - px0); }
};

/// Step plot of a piecewise-constant path with axes and, when an alpha
/// evaluator is supplied, an inset of alpha(z) over the path's value range
/// (the layout of the sample-path figures this toolkit reproduces).
inline void write_step_plot(const std::string& filename, std::span<const double> times,
                            std::span<const double> values, const std::string& title,
                            const std::function<double(double)>* alpha_inset = nullptr) {
  if (times.size() < 2 || times.size() != values.size())
    throw InvariantViolation("step plot needs >= 2 aligned (t, value) pairs");
  const double W = 960, H = 540, ml = 72, mr = 24, mt = 46, mb = 52;

  auto minmax = [](std::span<const double> v) {
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    double pad = (*hi - *lo) * 0.05;
    if (pad == 0.0) pad = std::max(1.0, std::fabs(*lo)) * 0.05;
    return std::pair<double, double>(*lo - pad, *hi + pad);
  };
  auto [tlo, thi] = std::pair<double, double>(times.front(), times.back());
  auto [vlo, vhi] = minmax(values);
  Mapper X{tlo, thi, ml, W - mr};
  Mapper Y{vlo, vhi, H - mb, mt};  // flipped: SVG y grows downward

  std::ofstream out(filename);
  if (!out) throw ParseError(filename + ": cannot open for writing");
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\""
      << " font-size=\"16\">" << title << "</text>\n";

  // axes
  out << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
      << H - mb << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
      << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    double t = tlo + (thi - tlo) * k / 5.0, v = vlo + (vhi - vlo) * k / 5.0;
    out << "<line x1=\"" << X(t) << "\" y1=\"" << H - mb << "\" x2=\"" << X(t) << "\" y2=\""
        << H - mb + 5 << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << X(t) << "\" y=\"" << H - mb + 20
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(t)
        << "</text>\n"
        << "<line x1=\"" << ml - 5 << "\" y1=\"" << Y(v) << "\" x2=\"" << ml << "\" y2=\""
        << Y(v) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << ml - 8 << "\" y=\"" << Y(v) + 4
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << fmt(v)
        << "</text>\n";
  }

  // step path: horizontal to the next time, then vertical to the next value
  out << "<path fill=\"none\" stroke=\"#1f4e9c\" stroke-width=\"1.2\" d=\"M " << X(times[0])
      << " " << Y(values[0]);
  for (std::size_t i = 1; i < times.size(); ++i)
    out << " H " << X(times[i]) << " V " << Y(values[i]);
  out << "\"/>\n";

  if (alpha_inset) {
    const double iw = 260, ih = 150, ix = W - mr - iw - 12, iy = mt + 12;
    double zlo = vlo, zhi = vhi;
    std::vector<double> az(101);
    for (int k = 0; k <= 100; ++k) az[k] = (*alpha_inset)(zlo + (zhi - zlo) * k / 100.0);
    auto [alo, ahi] = minmax(az);
    Mapper IX{zlo, zhi, ix + 40, ix + iw - 10};
    Mapper IY{alo, ahi, iy + ih - 24, iy + 14};
    out << "<rect x=\"" << ix << "\" y=\"" << iy << "\" width=\"" << iw << "\" height=\"" << ih
        << "\" fill=\"#fafafa\" stroke=\"#888\"/>\n"
        << "<text x=\"" << ix + 8 << "\" y=\"" << iy + 16
        << "\" font-family=\"sans-serif\" font-size=\"12\">&#945;(z)</text>\n";
    out << "<polyline fill=\"none\" stroke=\"#b03030\" stroke-width=\"1.2\" points=\"";
    for (int k = 0; k <= 100; ++k) {
      double z = zlo + (zhi - zlo) * k / 100.0;
      out << IX(z) << "," << IY(az[static_cast<std::size_t>(k)]) << " ";
    }
    out << "\"/>\n"
        << "<text x=\"" << IX(zlo) << "\" y=\"" << iy + ih - 8
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(zlo)
        << "</text>\n"
        << "<text x=\"" << IX(zhi) << "\" y=\"" << iy + ih - 8
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(zhi)
        << "</text>\n"
        << "<text x=\"" << ix + 36 << "\" y=\"" << IY(alo) + 3
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(alo)
        << "</text>\n"
        << "<text x=\"" << ix + 36 << "\" y=\"" << IY(ahi) + 3
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(ahi)
        << "</text>\n";
  }
  out << "</svg>\n";
  if (!out) throw ParseError(filename + ": write failed");
}

}  // namespace selfstab::svg
