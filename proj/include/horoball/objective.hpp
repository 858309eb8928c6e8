#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "horoball/error.hpp"
#include "horoball/geometry.hpp"
#include "horoball/space.hpp"

namespace horoball {

struct EnvelopeTerm {
  Point center;
  double beta = 1.0;
  double gamma = 0.0;
  bool operator==(const EnvelopeTerm&) const = default;
};

struct Evaluation {
  double value = 0.0;
  std::size_t active_index = 0;
};

/// f(x) = max_i { beta_i d(x, a_i) + gamma_i } over a finite list of terms.
class DistanceEnvelope {
 public:
  DistanceEnvelope(Space space, std::vector<EnvelopeTerm> terms) : space_(space), terms_(std::move(terms)) {
    if (terms_.empty()) throw Error(ErrorCode::EmptySet, "distance envelope needs at least one term");
    for (auto& term : terms_) {
      if (!(term.beta >= 0.0) || !std::isfinite(term.beta))
        throw Error(ErrorCode::InvalidConfig, "envelope slopes must be finite and >= 0");
      if (!std::isfinite(term.gamma)) throw Error(ErrorCode::InvalidConfig, "envelope offsets must be finite");
      term.center = canonicalize(space_, term.center);
    }
  }

  const Space& space() const noexcept { return space_; }
  std::span<const EnvelopeTerm> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Value and the smallest index attaining it.
  Evaluation eval_with_argmax(const Point& x) const {
    validate(space_, x);
    return eval_unchecked(x);
  }

  double operator()(const Point& x) const { return eval_with_argmax(x).value; }

  Evaluation eval_unchecked(const Point& x) const {
    Evaluation best{terms_[0].beta * detail::distance(space_, x, terms_[0].center) + terms_[0].gamma, 0};
    for (std::size_t i = 1; i < terms_.size(); ++i) {
      const double v = terms_[i].beta * detail::distance(space_, x, terms_[i].center) + terms_[i].gamma;
      if (v > best.value) best = {v, i};
    }
    return best;
  }

  /// Each term is beta-Lipschitz, and a max of Lipschitz functions keeps the
  /// largest constant.
  double lipschitz_bound() const {
    double L = 0.0;
    for (const auto& term : terms_) L = std::max(L, term.beta);
    return L;
  }

  bool operator==(const DistanceEnvelope&) const = default;

 private:
  Space space_;
  std::vector<EnvelopeTerm> terms_;
};

inline Evaluation eval_with_argmax(const DistanceEnvelope& f, const Point& x) { return f.eval_with_argmax(x); }
inline double lipschitz_bound(const DistanceEnvelope& f) { return f.lipschitz_bound(); }

/// max_{a in A} d(x, a). Duplicate points are kept as separate terms.
inline DistanceEnvelope make_circumcenter(const Space& space, std::span<const Point> points) {
  if (points.empty()) throw Error(ErrorCode::EmptySet, "circumcenter of an empty set");
  std::vector<EnvelopeTerm> terms;
  terms.reserve(points.size());
  for (const auto& a : points) terms.push_back({a, 1.0, 0.0});
  return DistanceEnvelope(space, std::move(terms));
}

struct Ball {
  Point center;
  double radius = 0.0;
};

/// max_a { d(x, a) - rho_a }: the balls intersect iff the minimum is <= 0.
inline DistanceEnvelope make_intersecting_balls(const Space& space, std::span<const Ball> balls) {
  if (balls.empty()) throw Error(ErrorCode::EmptySet, "intersecting-balls objective needs at least one ball");
  std::vector<EnvelopeTerm> terms;
  terms.reserve(balls.size());
  for (const auto& b : balls) {
    if (!(b.radius >= 0.0) || !std::isfinite(b.radius))
      throw Error(ErrorCode::NegativeRadius, "ball radius must be finite and >= 0");
    terms.push_back({b.center, 1.0, -b.radius});
  }
  return DistanceEnvelope(space, std::move(terms));
}

}  // namespace horoball
