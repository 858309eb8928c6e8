#pragma once

#include <cmath>
#include <string>
#include <variant>
#include <vector>

#include "horoball/error.hpp"

namespace horoball {

// Three concrete Hadamard spaces:
//   Euclidean     R^n
//   Spider        m copies of [0, inf) glued at a common apex
//   OrthantCycle  k Euclidean quadrants glued edge to edge in a cycle
//
// Orthant-cycle conventions: the k edges e_0..e_{k-1} are half-lines from
// the apex. Quadrant i is spanned by e_i (its s-axis) and e_{i+1 mod k} (its
// t-axis), so a point (i, s, t) sits at apex angle i*90deg + atan2(t, s).
class Space {
 public:
  enum class Kind { Euclidean, Spider, OrthantCycle };

  static Space euclidean(int dim) {
    if (dim < 1) throw Error(ErrorCode::InvalidConfig, "euclidean dimension must be >= 1");
    return Space(Kind::Euclidean, dim);
  }
  static Space spider(int legs) {
    if (legs < 2) throw Error(ErrorCode::InvalidConfig, "spider needs at least 2 legs");
    return Space(Kind::Spider, legs);
  }
  static Space orthant_cycle(int quadrants) {
    // Fewer than four quadrants gives apex cone angle < 360deg: not CAT(0).
    if (quadrants < 4) throw Error(ErrorCode::InvalidConfig, "orthant cycle needs at least 4 quadrants");
    return Space(Kind::OrthantCycle, quadrants);
  }

  Kind kind() const noexcept { return kind_; }
  int dim() const noexcept { return size_; }
  int legs() const noexcept { return size_; }
  int quadrants() const noexcept { return size_; }

  bool operator==(const Space&) const = default;

 private:
  Space(Kind kind, int size) : kind_(kind), size_(size) {}

  Kind kind_;
  int size_;
};

inline std::string describe(const Space& space) {
  switch (space.kind()) {
    case Space::Kind::Euclidean: return "euclidean(dim=" + std::to_string(space.dim()) + ")";
    case Space::Kind::Spider: return "spider(legs=" + std::to_string(space.legs()) + ")";
    case Space::Kind::OrthantCycle: return "orthant_cycle(k=" + std::to_string(space.quadrants()) + ")";
  }
  return "unknown";
}

struct EuclideanPoint {
  std::vector<double> coords;
  bool operator==(const EuclideanPoint&) const = default;
};

struct SpiderPoint {
  int leg = 0;
  double t = 0.0;
  bool operator==(const SpiderPoint&) const = default;
};

struct OrthantPoint {
  int quadrant = 0;
  double s = 0.0;
  double t = 0.0;
  bool operator==(const OrthantPoint&) const = default;
};

/// A point of one of the supported spaces. Equality is componentwise on the
/// stored representation; compare canonical forms to test geometric equality.
using Point = std::variant<EuclideanPoint, SpiderPoint, OrthantPoint>;

inline Point euclidean_point(std::vector<double> coords) { return EuclideanPoint{std::move(coords)}; }
inline Point spider_point(int leg, double t) { return SpiderPoint{leg, t}; }
inline Point orthant_point(int quadrant, double s, double t) { return OrthantPoint{quadrant, s, t}; }

namespace detail {

inline bool nonneg_finite(double v) { return std::isfinite(v) && v >= 0.0; }

}  // namespace detail

/// Throws SpaceMismatch if `p` is the wrong kind of point (or wrong dimension)
/// for `space`, InvalidPoint if an index is out of range or a coordinate is
/// negative where forbidden.
inline void validate(const Space& space, const Point& p) {
  switch (space.kind()) {
    case Space::Kind::Euclidean: {
      const auto* e = std::get_if<EuclideanPoint>(&p);
      if (!e) throw Error(ErrorCode::SpaceMismatch, "expected a euclidean point for " + describe(space));
      if (static_cast<int>(e->coords.size()) != space.dim())
        throw Error(ErrorCode::SpaceMismatch, "point has " + std::to_string(e->coords.size()) +
                                                  " coordinates, space has dimension " + std::to_string(space.dim()));
      for (double c : e->coords)
        if (!std::isfinite(c)) throw Error(ErrorCode::InvalidPoint, "non-finite coordinate");
      return;
    }
    case Space::Kind::Spider: {
      const auto* sp = std::get_if<SpiderPoint>(&p);
      if (!sp) throw Error(ErrorCode::SpaceMismatch, "expected a spider point for " + describe(space));
      if (sp->leg < 0 || sp->leg >= space.legs())
        throw Error(ErrorCode::InvalidPoint, "leg index " + std::to_string(sp->leg) + " out of range");
      if (!detail::nonneg_finite(sp->t)) throw Error(ErrorCode::InvalidPoint, "leg offset must be finite and >= 0");
      return;
    }
    case Space::Kind::OrthantCycle: {
      const auto* o = std::get_if<OrthantPoint>(&p);
      if (!o) throw Error(ErrorCode::SpaceMismatch, "expected an orthant point for " + describe(space));
      if (o->quadrant < 0 || o->quadrant >= space.quadrants())
        throw Error(ErrorCode::InvalidPoint, "quadrant index " + std::to_string(o->quadrant) + " out of range");
      if (!detail::nonneg_finite(o->s) || !detail::nonneg_finite(o->t))
        throw Error(ErrorCode::InvalidPoint, "quadrant coordinates must be finite and >= 0");
      return;
    }
  }
}

namespace detail {

inline SpiderPoint canonical(const SpiderPoint& p) {
  if (p.t == 0.0) return SpiderPoint{0, 0.0};
  return p;
}

// A point on a shared edge goes to the smaller of the two quadrant indices.
// Edge e_j (j > 0) is shared by quadrants j-1 (as t-axis) and j (as s-axis);
// edge e_0 by quadrants k-1 and 0.
inline OrthantPoint canonical(const OrthantPoint& p, int k) {
  if (p.s == 0.0 && p.t == 0.0) return OrthantPoint{0, 0.0, 0.0};
  if (p.t == 0.0 && p.quadrant != 0) return OrthantPoint{p.quadrant - 1, 0.0, p.s};
  if (p.s == 0.0 && p.quadrant == k - 1) return OrthantPoint{0, p.t, 0.0};
  return OrthantPoint{p.quadrant, p.s, p.t};
}

inline Point canonical(const Space& space, const Point& p) {
  if (const auto* sp = std::get_if<SpiderPoint>(&p)) return canonical(*sp);
  if (const auto* o = std::get_if<OrthantPoint>(&p)) return canonical(*o, space.quadrants());
  return p;
}

}  // namespace detail

/// The canonical representative of `p`: spider apex is (leg 0, 0), orthant
/// apex is (quadrant 0, 0, 0), and orthant edge points live in the smallest
/// quadrant index containing them.
inline Point canonicalize(const Space& space, const Point& p) {
  validate(space, p);
  return detail::canonical(space, p);
}

inline bool same_point(const Space& space, const Point& p, const Point& q) {
  return canonicalize(space, p) == canonicalize(space, q);
}

}  // namespace horoball
