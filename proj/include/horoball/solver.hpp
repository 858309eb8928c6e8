#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "horoball/error.hpp"
#include "horoball/geometry.hpp"
#include "horoball/objective.hpp"
#include "horoball/oracle.hpp"
#include "horoball/space.hpp"

namespace horoball {

struct SolverConfig {
  int iterations = 0;
  std::optional<double> diameter;      // defaults to 2 * feasible radius
  std::optional<double> step_override;  // defaults to diameter / sqrt(iterations)
  bool record_history = false;
  std::optional<Point> initial_point;  // defaults to the feasible-ball center
};

struct IterateRecord {
  Point iterate;
  double value = 0.0;
  bool operator==(const IterateRecord&) const = default;
};

struct SolverRun {
  Point best_point;
  double best_value = 0.0;
  double mean_value = 0.0;  // average of f over the iterates x^1..x^n
  std::vector<IterateRecord> history;
  bool stopped_early = false;
  int iterations_done = 0;
  double step_length = 0.0;
  double diameter = 0.0;
  std::uint64_t distance_calls = 0;
  std::uint64_t combination_calls = 0;

  bool operator==(const SolverRun&) const = default;
};

/// Projected subgradient iteration with a fixed step length. Each recorded
/// value belongs to the iterate before its update. With the default step
/// D / sqrt(n), the mean value exceeds min_X f by at most L * D / sqrt(n).
inline SolverRun subgradient_minimize(const DistanceEnvelope& f, const FeasibleBall& ball, const SolverConfig& cfg) {
  if (cfg.iterations <= 0) throw Error(ErrorCode::InvalidConfig, "iteration count must be positive");
  if (!(f.space() == ball.space))
    throw Error(ErrorCode::SpaceMismatch, "objective lives in " + describe(f.space()) + ", feasible ball in " +
                                              describe(ball.space));
  const Space& space = f.space();
  const double D = cfg.diameter.value_or(ball.diameter_bound());
  if (!(D > 0.0) || !std::isfinite(D)) throw Error(ErrorCode::InvalidConfig, "diameter bound must be > 0");
  const double eps = cfg.step_override.value_or(D / std::sqrt(static_cast<double>(cfg.iterations)));
  if (!(eps > 0.0) || !std::isfinite(eps)) throw Error(ErrorCode::InvalidConfig, "step length must be > 0");

  Point x = canonicalize(space, cfg.initial_point.value_or(ball.center));
  if (detail::distance(space, x, ball.center) > ball.radius * (1.0 + 1e-12))
    throw Error(ErrorCode::InfeasibleStart, "initial point lies outside the feasible ball");

  SolverRun run;
  run.step_length = eps;
  run.diameter = D;
  run.best_point = x;
  run.best_value = f.eval_unchecked(x).value;
  double sum = 0.0;
  for (int i = 1; i <= cfg.iterations; ++i) {
    const double value = f.eval_unchecked(x).value;
    sum += value;
    run.iterations_done = i;
    if (cfg.record_history) run.history.push_back({x, value});
    if (value < run.best_value) {
      run.best_value = value;
      run.best_point = x;
    }
    SupportStepResult step = support_step(f, x, eps);
    if (std::holds_alternative<MinimizerCertificate>(step)) {
      run.stopped_early = true;
      break;
    }
    x = project_ball(ball, std::get<StepPoint>(step).x_eps);
  }
  run.mean_value = sum / run.iterations_done;
  return run;
}

/// Plain geodesic operations; the solver is generic over this so tests can
/// substitute a counting wrapper.
struct Geodesics {
  Space space;
  double distance(const Point& p, const Point& q) const { return detail::distance(space, p, q); }
  Point combine(const Point& p, const Point& q, double lambda) const {
    return detail::combine(space, p, q, lambda);
  }
};

inline constexpr int kMinCircumcenterIterations = 16;

/// Subgradient iteration for the circumcenter of a finite set. The start is
/// the first point of A, the step length 2 rho / sqrt(n) with rho the largest
/// distance from the start to A. Every iteration moves toward the furthest
/// point (the first one on ties). Uses k(n+1) - 1 distance evaluations and n
/// convex combinations; the returned radius exceeds the circumradius by at
/// most 2 diam(A) / sqrt(n).
template <class Geometry>
SolverRun circumcenter_with(const Geometry& geo, std::span<const Point> points, int iterations,
                            bool record_history);

namespace detail {

// The iteration itself, without the lower limit on n.
template <class Geometry>
SolverRun circumcenter_iterate(const Geometry& geo, std::span<const Point> points, int iterations,
                               bool record_history) {
  if (points.empty()) throw Error(ErrorCode::EmptySet, "circumcenter of an empty set");
  if (iterations < 1) throw Error(ErrorCode::TooFewIterations, "iteration count must be positive");

  SolverRun run;
  Point x = points[0];
  const Point start = x;
  double rho = 0.0;
  for (std::size_t i = 1; i < points.size(); ++i) {
    rho = std::max(rho, geo.distance(points[i], x));
    ++run.distance_calls;
  }
  run.best_point = x;
  run.best_value = rho;
  run.mean_value = rho;
  run.diameter = 2.0 * rho;
  if (rho == 0.0) return run;

  const double eps = 2.0 * rho / std::sqrt(static_cast<double>(iterations));
  run.step_length = eps;
  double sum = 0.0;
  for (int it = 1; it <= iterations; ++it) {
    double gamma = 0.0;
    std::size_t furthest = 0;
    for (std::size_t i = 0; i < points.size(); ++i) {
      const double delta = geo.distance(points[i], x);
      ++run.distance_calls;
      if (delta > gamma) {
        gamma = delta;
        furthest = i;
      }
    }
    sum += gamma;
    if (record_history) run.history.push_back({x, gamma});
    if (gamma < run.best_value) {
      run.best_value = gamma;
      run.best_point = x;
    }
    // f >= eps everywhere once n >= 16, so lambda <= 1.
    const double lambda = eps / gamma;
    if (!(lambda <= 1.0)) throw Error(ErrorCode::InvariantViolated, "step longer than distance to furthest point");
    x = geo.combine(x, points[furthest], lambda);
    ++run.combination_calls;
    run.iterations_done = it;
    if (detail::distance(geo.space, x, start) > 2.0 * rho * (1.0 + 1e-12))
      throw Error(ErrorCode::InvariantViolated, "iterate left the ball of radius 2 rho around the start");
  }
  run.mean_value = sum / iterations;
  return run;
}

}  // namespace detail

template <class Geometry>
SolverRun circumcenter_with(const Geometry& geo, std::span<const Point> points, int iterations,
                            bool record_history) {
  if (points.empty()) throw Error(ErrorCode::EmptySet, "circumcenter of an empty set");
  if (iterations < kMinCircumcenterIterations)
    throw Error(ErrorCode::TooFewIterations,
                "need at least " + std::to_string(kMinCircumcenterIterations) + " iterations, got " +
                    std::to_string(iterations));
  return detail::circumcenter_iterate(geo, points, iterations, record_history);
}

inline SolverRun circumcenter(const Space& space, std::span<const Point> points, int iterations,
                              bool record_history = false) {
  std::vector<Point> canonical;
  canonical.reserve(points.size());
  for (const auto& p : points) canonical.push_back(canonicalize(space, p));
  return circumcenter_with(Geodesics{space}, canonical, iterations, record_history);
}

}  // namespace horoball
