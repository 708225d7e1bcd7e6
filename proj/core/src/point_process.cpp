#include "selfstab/point_process.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "selfstab/errors.hpp"
#include "selfstab/rng.hpp"

namespace selfstab {

namespace {

bool point_order(const Point& p, const Point& q) {
  if (p.x != q.x) return p.x < q.x;
  return std::fabs(p.y) < std::fabs(q.y);
}

void validate(const PointSet& ps) {
  if (!(ps.t0 < ps.t1)) throw InvariantViolation("PointSet: t0 must be < t1");
  for (const Point& p : ps.points) {
    if (!(p.x > ps.t0 && p.x < ps.t1))
      throw InvariantViolation("PointSet: x = " + std::to_string(p.x) +
                               " outside open interval");
    if (p.y == 0.0 || !std::isfinite(p.y) || !std::isfinite(p.x))
      throw InvariantViolation("PointSet: invalid mark y at x = " + std::to_string(p.x));
  }
}

}  // namespace

PointSet PointSet::create(double t0, double t1, std::vector<Point> pts) {
  PointSet ps{t0, t1, std::move(pts)};
  validate(ps);
  std::sort(ps.points.begin(), ps.points.end(), point_order);
  return ps;
}

PointSet PointSet::truncated(double n) const {
  PointSet out{t0, t1, {}};
  out.points.reserve(points.size());
  for (const Point& p : points)
    if (std::fabs(p.y) <= n) out.points.push_back(p);
  return out;
}

PointSet generate_poisson_strip(const StripSpec& spec) {
  if (!(spec.t0 < spec.t1)) throw InvariantViolation("StripSpec: t0 must be < t1");
  if (!(spec.K >= 0.0) || !(spec.N >= spec.K))
    throw InvariantViolation("StripSpec: need 0 <= K <= N");
  const double intensity = spec.t1 - spec.t0;

  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(2.2 * intensity * (spec.N - spec.K)) + 16);
  for (int half = 0; half < 2; ++half) {
    SplitMix64 rng(spec.seed, static_cast<std::uint64_t>(half));
    double mag = spec.K;
    for (;;) {
      mag += rng.exponential(intensity);
      if (mag >= spec.N) break;  // overshoot point discarded
      double x = rng.uniform_open(spec.t0, spec.t1);
      pts.push_back({x, half == 0 ? mag : -mag});
    }
  }
  return PointSet::create(spec.t0, spec.t1, std::move(pts));
}

double min_x_gap(const PointSet& ps) {
  double gap = std::numeric_limits<double>::infinity();
  double prev = std::numeric_limits<double>::quiet_NaN();
  std::size_t distinct = 0;
  for (const Point& p : ps.points) {
    if (distinct == 0 || p.x != prev) {
      if (distinct > 0) gap = std::min(gap, p.x - prev);
      prev = p.x;
      ++distinct;
    }
  }
  if (distinct < 2) throw TooFewPoints("min_x_gap: need at least two distinct x values");
  return gap;
}

void save_points(const PointSet& ps, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open for writing: " + path);
  out << "x,y\n";
  char buf[80];
  for (const Point& p : ps.points) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.x, p.y);
    out << buf;
  }
  if (!out) throw Error("write failed: " + path);
}

PointSet load_points(const std::string& path, double t0, double t1) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open: " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path + ": empty file, expected header 'x,y'");
  // Tolerate a trailing CR from foreign line endings.
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "x,y") throw ParseError(path + ":1: expected header 'x,y'");

  std::vector<Point> pts;
  bool sorted = true;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::size_t comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError(path + ":" + std::to_string(lineno) + ": expected 'x,y' row");
    char* endx = nullptr;
    char* endy = nullptr;
    double x = std::strtod(line.c_str(), &endx);
    double y = std::strtod(line.c_str() + comma + 1, &endy);
    if (endx != line.c_str() + comma || *endy != '\0')
      throw ParseError(path + ":" + std::to_string(lineno) + ": malformed number");
    if (y == 0.0)
      throw InvariantViolation(path + ":" + std::to_string(lineno) + ": mark y must be nonzero");
    if (!(x > t0 && x < t1))
      throw InvariantViolation(path + ":" + std::to_string(lineno) +
                               ": x outside open interval");
    if (!pts.empty() && point_order({x, y}, pts.back())) sorted = false;
    pts.push_back({x, y});
  }
  if (!sorted)
    std::cerr << "warning: " << path << " was not sorted; normalizing order\n";
  return PointSet::create(t0, t1, std::move(pts));
}

}  // namespace selfstab
