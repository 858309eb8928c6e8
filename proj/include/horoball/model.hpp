#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "horoball/error.hpp"
#include "horoball/space.hpp"

namespace horoball {

// Isometric model of the five-quadrant cycle inside R^3. Quadrants 0..4 are
//   (+,-,0)  (-,-,0)  (-,+,0)  (0,+,+)  (+,0,+)
// and consecutive quadrants share the edges -y, -x, +y, +z, +x.

using Model3 = std::array<double, 3>;

inline constexpr double kModelTolerance = 1e-12;

namespace detail {

inline bool is_zero(double v) { return std::abs(v) <= kModelTolerance; }
inline bool is_nonneg(double v) { return v >= -kModelTolerance; }
inline bool is_nonpos(double v) { return v <= kModelTolerance; }
inline double snap(double v) { return std::abs(v) <= kModelTolerance ? 0.0 : v; }

}  // namespace detail

inline Space five_orthant_space() { return Space::orthant_cycle(5); }

/// Internal point of the five-quadrant cycle for a model coordinate triple.
inline Point from_model_r3(const Model3& c) {
  using namespace detail;
  const double x = c[0], y = c[1], z = c[2];
  if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
    throw Error(ErrorCode::NotOnComplex, "non-finite model coordinates");
  OrthantPoint p;
  if (is_zero(z) && is_nonneg(x) && is_nonpos(y)) {
    p = {0, x, -y};
  } else if (is_zero(z) && is_nonpos(x) && is_nonpos(y)) {
    p = {1, -y, -x};
  } else if (is_zero(z) && is_nonpos(x) && is_nonneg(y)) {
    p = {2, -x, y};
  } else if (is_zero(x) && is_nonneg(y) && is_nonneg(z)) {
    p = {3, y, z};
  } else if (is_zero(y) && is_nonneg(x) && is_nonneg(z)) {
    p = {4, z, x};
  } else {
    throw Error(ErrorCode::NotOnComplex, "model point (" + std::to_string(x) + ", " + std::to_string(y) + ", " +
                                             std::to_string(z) + ") lies on none of the five quadrants");
  }
  p.s = std::max(0.0, snap(p.s));
  p.t = std::max(0.0, snap(p.t));
  return detail::canonical(p, 5);
}

inline Model3 to_model_r3(const OrthantPoint& p) {
  const double s = p.s, t = p.t;
  switch (p.quadrant) {
    case 0: return {s, t == 0.0 ? 0.0 : -t, 0.0};
    case 1: return {t == 0.0 ? 0.0 : -t, s == 0.0 ? 0.0 : -s, 0.0};
    case 2: return {s == 0.0 ? 0.0 : -s, t, 0.0};
    case 3: return {0.0, s, t};
    case 4: return {t, 0.0, s};
    default: throw Error(ErrorCode::InvalidPoint, "model coordinates exist only for the five-quadrant cycle");
  }
}

inline Model3 to_model_r3(const Space& space, const Point& p) {
  if (space.kind() != Space::Kind::OrthantCycle || space.quadrants() != 5)
    throw Error(ErrorCode::SpaceMismatch, "model coordinates exist only for the five-quadrant cycle");
  validate(space, p);
  return to_model_r3(std::get<OrthantPoint>(p));
}

/// The three-point set whose circumcenter is the apex, with circumradius sqrt(5).
inline std::vector<Point> five_orthant_example() {
  return {from_model_r3({0.0, 0.0, std::sqrt(5.0)}), from_model_r3({1.0, -2.0, 0.0}),
          from_model_r3({-2.0, 1.0, 0.0})};
}

}  // namespace horoball
