#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "horoball/error.hpp"
#include "horoball/space.hpp"

namespace horoball {

namespace detail {

constexpr double kQuarter = std::numbers::pi / 2.0;

// ---------------------------------------------------------------- Euclidean

inline double euclidean_distance(std::span<const double> p, std::span<const double> q) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double d = p[i] - q[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

inline EuclideanPoint euclidean_lerp(const EuclideanPoint& p, const EuclideanPoint& q, double lambda) {
  EuclideanPoint out{std::vector<double>(p.coords.size())};
  for (std::size_t i = 0; i < p.coords.size(); ++i)
    out.coords[i] = (1.0 - lambda) * p.coords[i] + lambda * q.coords[i];
  return out;
}

// ------------------------------------------------------------------- Spider

inline bool on_same_leg(const SpiderPoint& p, const SpiderPoint& q) {
  return p.leg == q.leg || p.t == 0.0 || q.t == 0.0;
}

inline double spider_distance(const SpiderPoint& p, const SpiderPoint& q) {
  if (p.leg == q.leg) return std::abs(p.t - q.t);
  return p.t + q.t;
}

inline SpiderPoint spider_at(const SpiderPoint& p, const SpiderPoint& q, double u) {
  if (on_same_leg(p, q)) {
    const int leg = p.t == 0.0 ? q.leg : p.leg;
    const double t = q.t >= p.t ? p.t + u : p.t - u;
    return canonical(SpiderPoint{leg, std::max(t, 0.0)});
  }
  if (u <= p.t) return canonical(SpiderPoint{p.leg, p.t - u});
  return canonical(SpiderPoint{q.leg, u - p.t});
}

// Lowest-indexed leg different from the one a ray arrives on.
inline int spider_exit_leg(int incoming) { return incoming == 0 ? 1 : 0; }

// ----------------------------------------------------------- Orthant cycle

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double c, Vec2 a) { return {c * a.x, c * a.y}; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

// Counterclockwise rotation by m quarter turns; exact in floating point.
inline Vec2 rotate_quarters(Vec2 v, int m) {
  switch (((m % 4) + 4) % 4) {
    case 1: return {-v.y, v.x};
    case 2: return {-v.x, -v.y};
    case 3: return {v.y, -v.x};
    default: return v;
  }
}

inline int mod(int a, int k) { return ((a % k) + k) % k; }

inline Vec2 local(const OrthantPoint& p) { return {p.s, p.t}; }
inline double radius(const OrthantPoint& p) { return std::hypot(p.s, p.t); }
inline double local_angle(const OrthantPoint& p) { return std::atan2(p.t, p.s); }

// A geodesic in the orthant cycle is either a straight segment in the planar
// unfolding of a sector of angle < 180deg, or the two radial segments joined
// at the apex.
struct OrthantSegment {
  bool straight = false;
  // straight: positions in the planar frame of quadrant `frame`; `sense` is
  // +1 when the apex angle increases along the segment, -1 when it decreases.
  int frame = 0;
  Vec2 start{};
  Vec2 end{};
  int sense = 0;
  // via apex
  double r_start = 0.0;
  double r_end = 0.0;
};

inline OrthantSegment orthant_segment(const OrthantPoint& p, const OrthantPoint& q, int k) {
  OrthantSegment seg;
  seg.r_start = radius(p);
  seg.r_end = radius(q);
  if (seg.r_start == 0.0 || seg.r_end == 0.0) return seg;

  const Vec2 lp = local(p);
  const Vec2 lq = local(q);
  const int up = mod(q.quadrant - p.quadrant, k);
  const int down = mod(p.quadrant - q.quadrant, k);
  auto make_straight = [&](Vec2 unfolded, int sense) {
    seg.straight = true;
    seg.frame = p.quadrant;
    seg.start = lp;
    seg.end = unfolded;
    seg.sense = sense;
    return seg;
  };

  if (up == 0) {
    const double c = cross(lp, lq);
    return make_straight(lq, c > 0.0 ? 1 : (c < 0.0 ? -1 : 0));
  }
  const double ap = local_angle(p);
  const double aq = local_angle(q);
  // Apex angle swept going up through the quadrant indices, then going down.
  // Only arcs crossing at most two quadrant boundaries can be below 180deg.
  if (up <= 2 && up * kQuarter + aq - ap < std::numbers::pi) return make_straight(rotate_quarters(lq, up), 1);
  if (down <= 2 && down * kQuarter + ap - aq < std::numbers::pi)
    return make_straight(rotate_quarters(lq, -down), -1);
  return seg;
}

inline double length(const OrthantSegment& seg) {
  if (seg.straight) return norm(seg.end - seg.start);
  return seg.r_start + seg.r_end;
}

inline OrthantPoint radial(int quadrant, Vec2 unit_dir, double r, int k) {
  if (r <= 0.0) return OrthantPoint{0, 0.0, 0.0};
  return canonical(OrthantPoint{quadrant, std::max(0.0, r * unit_dir.x), std::max(0.0, r * unit_dir.y)}, k);
}

inline Vec2 unit(Vec2 v) {
  const double n = norm(v);
  return {v.x / n, v.y / n};
}

// Map a point of the planar unfolding of quadrant `frame` back onto the
// complex. `sense` says which way the unfolded sector extends from the frame.
inline OrthantPoint fold(int frame, Vec2 z, int sense, int k) {
  if (z.x == 0.0 && z.y == 0.0) return OrthantPoint{0, 0.0, 0.0};
  double beta = std::atan2(z.y, z.x);
  int j = 0;
  if (sense >= 0) {
    if (beta < -kQuarter) beta += 2.0 * std::numbers::pi;
    j = std::clamp(static_cast<int>(std::floor(beta / kQuarter)), 0, 2);
  } else {
    if (beta > 3.0 * kQuarter / 2.0) beta -= 2.0 * std::numbers::pi;
    j = std::clamp(static_cast<int>(std::floor(beta / kQuarter)), -2, 0);
  }
  const Vec2 l = rotate_quarters(z, -j);
  return canonical(OrthantPoint{mod(frame + j, k), std::max(0.0, l.x), std::max(0.0, l.y)}, k);
}

inline double orthant_distance(const OrthantPoint& p, const OrthantPoint& q, int k) {
  if (p.quadrant == q.quadrant) return std::hypot(p.s - q.s, p.t - q.t);
  return length(orthant_segment(p, q, k));
}

inline OrthantPoint orthant_combine(const OrthantPoint& p, const OrthantPoint& q, double lambda, int k) {
  const OrthantSegment seg = orthant_segment(p, q, k);
  if (seg.straight) return fold(seg.frame, (1.0 - lambda) * seg.start + lambda * seg.end, seg.sense, k);
  const double u = lambda * (seg.r_start + seg.r_end);
  if (u < seg.r_start) return radial(p.quadrant, unit(local(p)), seg.r_start - u, k);
  return radial(q.quadrant, unit(local(q)), u - seg.r_start, k);
}

// ------------------------------------------------------------- Dispatching

inline double distance(const Space& space, const Point& p, const Point& q) {
  switch (space.kind()) {
    case Space::Kind::Euclidean:
      return euclidean_distance(std::get<EuclideanPoint>(p).coords, std::get<EuclideanPoint>(q).coords);
    case Space::Kind::Spider:
      return spider_distance(std::get<SpiderPoint>(p), std::get<SpiderPoint>(q));
    case Space::Kind::OrthantCycle:
      return orthant_distance(std::get<OrthantPoint>(p), std::get<OrthantPoint>(q), space.quadrants());
  }
  return 0.0;
}

inline Point combine(const Space& space, const Point& p, const Point& q, double lambda) {
  if (lambda == 0.0) return canonical(space, p);
  if (lambda == 1.0) return canonical(space, q);
  switch (space.kind()) {
    case Space::Kind::Euclidean:
      return euclidean_lerp(std::get<EuclideanPoint>(p), std::get<EuclideanPoint>(q), lambda);
    case Space::Kind::Spider: {
      const auto& a = std::get<SpiderPoint>(p);
      const auto& b = std::get<SpiderPoint>(q);
      return spider_at(a, b, lambda * spider_distance(a, b));
    }
    case Space::Kind::OrthantCycle:
      return orthant_combine(std::get<OrthantPoint>(p), std::get<OrthantPoint>(q), lambda, space.quadrants());
  }
  return p;
}

inline void check_lambda(double lambda) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw Error(ErrorCode::InvalidLambda, "lambda must lie in [0, 1], got " + std::to_string(lambda));
}

}  // namespace detail

/// Exact geodesic distance.
inline double distance(const Space& space, const Point& p, const Point& q) {
  validate(space, p);
  validate(space, q);
  return detail::distance(space, p, q);
}

/// The point z on the geodesic [p, q] with d(p, z) = lambda * d(p, q).
inline Point combine(const Space& space, const Point& p, const Point& q, double lambda) {
  validate(space, p);
  validate(space, q);
  detail::check_lambda(lambda);
  return detail::combine(space, p, q, lambda);
}

// ---------------------------------------------------------------------- Rays

/// Unit-speed geodesic ray from `base` through `through`. Past `through` the
/// ray continues as the straight extension of the geodesic. At a cone point:
///  - spider apex: continue into the lowest-indexed leg other than the
///    incoming one;
///  - orthant apex: continue so the apex angle on the side of increasing
///    quadrant index is exactly 180deg.
struct Ray {
  Point base;
  Point through;
  double through_distance = 0.0;
};

inline Ray make_ray(const Space& space, const Point& base, const Point& through) {
  Ray r{canonicalize(space, base), canonicalize(space, through), 0.0};
  r.through_distance = detail::distance(space, r.base, r.through);
  if (!(r.through_distance > 0.0)) throw Error(ErrorCode::ZeroDirection, "ray base and through point coincide");
  return r;
}

namespace detail {

inline SpiderPoint spider_ray_point(const SpiderPoint& base, const SpiderPoint& through, double u) {
  if (base.t == 0.0) return canonical(SpiderPoint{through.leg, u});
  if (through.t == 0.0 || (through.leg == base.leg && through.t < base.t)) {
    if (u <= base.t) return canonical(SpiderPoint{base.leg, base.t - u});
    return SpiderPoint{spider_exit_leg(base.leg), u - base.t};
  }
  if (through.leg == base.leg) return SpiderPoint{base.leg, base.t + u};
  if (u <= base.t) return canonical(SpiderPoint{base.leg, base.t - u});
  return canonical(SpiderPoint{through.leg, u - base.t});
}

inline OrthantPoint orthant_ray_point(const OrthantPoint& base, const OrthantPoint& through, double u, int k) {
  const double rb = radius(base);
  if (rb == 0.0) return radial(through.quadrant, unit(local(through)), u, k);

  const Vec2 in_dir = unit(local(base));
  // Through the apex and out the opposite side: rotating by 180deg in the
  // unfolding keeps the local coordinates and moves two quadrants up.
  auto broken = [&](int out_quadrant, Vec2 out_dir) {
    if (u <= rb) return radial(base.quadrant, in_dir, rb - u, k);
    return radial(out_quadrant, out_dir, u - rb, k);
  };
  if (radius(through) == 0.0) return broken(mod(base.quadrant + 2, k), in_dir);

  const OrthantSegment seg = orthant_segment(base, through, k);
  if (!seg.straight) return broken(through.quadrant, unit(local(through)));

  const Vec2 v = unit(seg.end - seg.start);
  if (std::abs(cross(seg.start, v)) <= 1e-15 * rb && dot(seg.start, v) < 0.0)
    return broken(mod(base.quadrant + 2, k), in_dir);
  const double c = cross(seg.start, v);
  const int sense = c > 0.0 ? 1 : (c < 0.0 ? -1 : 0);
  return fold(seg.frame, seg.start + u * v, sense, k);
}

inline Point ray_point(const Space& space, const Ray& r, double u) {
  if (u <= r.through_distance) return detail::combine(space, r.base, r.through, u / r.through_distance);
  switch (space.kind()) {
    case Space::Kind::Euclidean: {
      const auto& b = std::get<EuclideanPoint>(r.base).coords;
      const auto& t = std::get<EuclideanPoint>(r.through).coords;
      EuclideanPoint out{std::vector<double>(b.size())};
      const double scale = u / r.through_distance;
      for (std::size_t i = 0; i < b.size(); ++i) out.coords[i] = b[i] + scale * (t[i] - b[i]);
      return out;
    }
    case Space::Kind::Spider:
      return spider_ray_point(std::get<SpiderPoint>(r.base), std::get<SpiderPoint>(r.through), u);
    case Space::Kind::OrthantCycle:
      return orthant_ray_point(std::get<OrthantPoint>(r.base), std::get<OrthantPoint>(r.through), u,
                               space.quadrants());
  }
  return r.base;
}

}  // namespace detail

/// Point at arc length u >= 0 along the ray.
inline Point ray_point(const Space& space, const Ray& r, double u) {
  validate(space, r.base);
  validate(space, r.through);
  if (!(u >= 0.0)) throw Error(ErrorCode::InvalidLambda, "ray arc length must be >= 0");
  return detail::ray_point(space, r, u);
}

/// d(z, r(T)) - T. Over-approximates the Busemann function b_r(z) and is
/// nonincreasing in T.
inline double busemann_approx(const Space& space, const Ray& r, const Point& z, double horizon) {
  validate(space, z);
  if (!(horizon > 0.0)) throw Error(ErrorCode::InvalidConfig, "busemann horizon must be > 0");
  return detail::distance(space, z, ray_point(space, r, horizon)) - horizon;
}

}  // namespace horoball
