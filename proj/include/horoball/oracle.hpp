#pragma once

#include <cmath>
#include <string>
#include <variant>

#include "horoball/error.hpp"
#include "horoball/geometry.hpp"
#include "horoball/objective.hpp"
#include "horoball/space.hpp"

namespace horoball {

/// Closed metric ball used as the feasible region. Its diameter is at most
/// 2 * radius.
struct FeasibleBall {
  Space space;
  Point center;
  double radius = 0.0;

  FeasibleBall(Space sp, Point c, double r) : space(sp), center(canonicalize(sp, c)), radius(r) {
    if (!(radius >= 0.0) || !std::isfinite(radius))
      throw Error(ErrorCode::NegativeRadius, "feasible ball radius must be finite and >= 0");
  }

  double diameter_bound() const noexcept { return 2.0 * radius; }
  bool contains(const Point& x, double slack = 0.0) const {
    return distance(space, x, center) <= radius + slack;
  }
};

/// The input point minimizes f over the whole space.
struct MinimizerCertificate {
  std::size_t active_index = 0;
};

/// x_eps = r(eps) on a supporting ray r from x through the active center.
struct StepPoint {
  Point x_eps;
  Ray ray;
  std::size_t active_index = 0;
};

using SupportStepResult = std::variant<MinimizerCertificate, StepPoint>;

/// Support oracle for a distance envelope: move a distance eps along the ray
/// from x through a center attaining the maximum. When eps exceeds the
/// distance to that center the ray is extended past it.
inline SupportStepResult support_step(const DistanceEnvelope& f, const Point& x, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidConfig, "step length must be > 0");
  const Space& space = f.space();
  validate(space, x);
  const Evaluation ev = f.eval_unchecked(x);
  const EnvelopeTerm& term = f.terms()[ev.active_index];
  if (term.beta == 0.0) return MinimizerCertificate{ev.active_index};
  if (detail::distance(space, x, term.center) == 0.0)
    throw Error(ErrorCode::DegenerateCenter,
                "iterate coincides with active center " + std::to_string(ev.active_index));
  Ray ray = make_ray(space, x, term.center);
  Point step = detail::ray_point(space, ray, eps);
  return StepPoint{std::move(step), std::move(ray), ev.active_index};
}

/// Nearest point of the ball: x itself when inside, otherwise the point of
/// [center, x] at distance radius from the center.
inline Point project_ball(const FeasibleBall& ball, const Point& x) {
  validate(ball.space, x);
  const double d = detail::distance(ball.space, x, ball.center);
  if (d <= ball.radius) return detail::canonical(ball.space, x);
  return detail::combine(ball.space, ball.center, x, ball.radius / d);
}

}  // namespace horoball
