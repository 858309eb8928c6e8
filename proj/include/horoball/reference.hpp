#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <thread>
#include <utility>
#include <variant>
#include <vector>

#include "horoball/error.hpp"
#include "horoball/geometry.hpp"
#include "horoball/objective.hpp"
#include "horoball/space.hpp"

// Brute-force oracles. These deliberately share nothing with the solver path
// beyond evaluating the objective.

namespace horoball::reference {

struct EuclideanBox {
  std::vector<double> lo;
  std::vector<double> hi;
};
struct SpiderExtent {
  double max_offset = 0.0;
};
struct OrthantExtent {
  double max_radius = 0.0;
};

struct GridSpec {
  double h = 0.0;
  std::variant<EuclideanBox, SpiderExtent, OrthantExtent> region;
};

/// Smallest grid region of the natural shape containing every center.
inline GridSpec covering_grid(const DistanceEnvelope& f, double h) {
  const Space& space = f.space();
  switch (space.kind()) {
    case Space::Kind::Euclidean: {
      const auto n = static_cast<std::size_t>(space.dim());
      EuclideanBox box{std::vector<double>(n, std::numeric_limits<double>::infinity()),
                       std::vector<double>(n, -std::numeric_limits<double>::infinity())};
      for (const auto& term : f.terms()) {
        const auto& c = std::get<EuclideanPoint>(term.center).coords;
        for (std::size_t i = 0; i < n; ++i) {
          box.lo[i] = std::min(box.lo[i], c[i]);
          box.hi[i] = std::max(box.hi[i], c[i]);
        }
      }
      return {h, box};
    }
    case Space::Kind::Spider: {
      double t = 0.0;
      for (const auto& term : f.terms()) t = std::max(t, std::get<SpiderPoint>(term.center).t);
      return {h, SpiderExtent{t}};
    }
    case Space::Kind::OrthantCycle: {
      double r = 0.0;
      for (const auto& term : f.terms()) r = std::max(r, horoball::detail::radius(std::get<OrthantPoint>(term.center)));
      return {h, OrthantExtent{r}};
    }
  }
  return {h, SpiderExtent{}};
}

struct BruteForceResult {
  Point point;
  double value = 0.0;
  double error_bound = 0.0;
  std::uint64_t evaluated = 0;
};

namespace detail {

inline std::int64_t steps(double extent, double h) {
  return static_cast<std::int64_t>(std::ceil(extent / h - 1e-9));
}

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  std::int64_t index = -1;

  void offer(double v, std::int64_t i) {
    if (v < value || (v == value && i < index)) {
      value = v;
      index = i;
    }
  }
};

// Evaluates `score(i)` for every linear index in [0, count) and returns the
// smallest value, ties going to the smallest index.
inline Candidate scan(std::int64_t count, unsigned threads, const std::function<double(std::int64_t)>& score) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::int64_t>(1, count))));
  std::vector<Candidate> partial(threads);
  auto work = [&](unsigned w) {
    const std::int64_t begin = count * w / threads;
    const std::int64_t end = count * (w + 1) / threads;
    for (std::int64_t i = begin; i < end; ++i) partial[w].offer(score(i), i);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  Candidate best;
  for (const auto& c : partial) best.offer(c.value, c.index);
  return best;
}

}  // namespace detail

/// Exhaustive grid minimization. error_bound = L * h * sqrt(dim) bounds the
/// gap between the grid minimum and the true minimum over the region.
inline BruteForceResult brute_force_minimize(const DistanceEnvelope& f, const GridSpec& grid,
                                             unsigned threads = std::max(1u, std::thread::hardware_concurrency())) {
  if (!(grid.h > 0.0) || !std::isfinite(grid.h)) throw Error(ErrorCode::EmptyGrid, "grid spacing must be > 0");
  const Space& space = f.space();
  const double L = f.lipschitz_bound();
  BruteForceResult out;

  if (space.kind() == Space::Kind::Euclidean) {
    const auto* box = std::get_if<EuclideanBox>(&grid.region);
    const auto n = static_cast<std::size_t>(space.dim());
    if (!box || box->lo.size() != n || box->hi.size() != n)
      throw Error(ErrorCode::SpaceMismatch, "euclidean grid needs a box of matching dimension");
    std::vector<std::int64_t> extent(n);
    std::int64_t count = 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(box->hi[i] >= box->lo[i])) throw Error(ErrorCode::EmptyGrid, "grid box is empty");
      extent[i] = detail::steps(box->hi[i] - box->lo[i], grid.h) + 1;
      count *= extent[i];
    }
    std::vector<std::vector<double>> centers;
    std::vector<double> beta, gamma;
    for (const auto& term : f.terms()) {
      centers.push_back(std::get<EuclideanPoint>(term.center).coords);
      beta.push_back(term.beta);
      gamma.push_back(term.gamma);
    }
    auto coords_of = [&](std::int64_t index, std::span<double> x) {
      for (std::size_t i = n; i-- > 0;) {
        x[i] = std::min(box->lo[i] + static_cast<double>(index % extent[i]) * grid.h, box->hi[i]);
        index /= extent[i];
      }
    };
    const auto best = detail::scan(count, threads, [&](std::int64_t index) {
      double x[16];
      std::vector<double> heap;
      std::span<double> xs(x, n);
      if (n > 16) {
        heap.resize(n);
        xs = heap;
      }
      coords_of(index, xs);
      double value = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < centers.size(); ++c) {
        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d = xs[i] - centers[c][i];
          sq += d * d;
        }
        value = std::max(value, beta[c] * std::sqrt(sq) + gamma[c]);
      }
      return value;
    });
    std::vector<double> x(n);
    coords_of(best.index, x);
    out.point = EuclideanPoint{std::move(x)};
    out.value = best.value;
    out.error_bound = L * grid.h * std::sqrt(static_cast<double>(n));
    out.evaluated = static_cast<std::uint64_t>(count);
    return out;
  }

  if (space.kind() == Space::Kind::Spider) {
    const auto* ext = std::get_if<SpiderExtent>(&grid.region);
    if (!ext) throw Error(ErrorCode::SpaceMismatch, "spider grid needs a leg extent");
    const std::int64_t per_leg = detail::steps(ext->max_offset, grid.h) + 1;
    const std::int64_t count = per_leg * space.legs();
    auto point_of = [&](std::int64_t index) {
      const double t = std::min(static_cast<double>(index % per_leg) * grid.h, ext->max_offset);
      return horoball::detail::canonical(SpiderPoint{static_cast<int>(index / per_leg), t});
    };
    const auto best = detail::scan(count, threads, [&](std::int64_t index) {
      return f.eval_unchecked(Point{point_of(index)}).value;
    });
    out.point = point_of(best.index);
    out.value = best.value;
    out.error_bound = L * grid.h;
    out.evaluated = static_cast<std::uint64_t>(count);
    return out;
  }

  const auto* ext = std::get_if<OrthantExtent>(&grid.region);
  if (!ext) throw Error(ErrorCode::SpaceMismatch, "orthant grid needs a radial extent");
  const std::int64_t side = detail::steps(ext->max_radius, grid.h) + 1;
  const std::int64_t per_quadrant = side * side;
  const std::int64_t count = per_quadrant * space.quadrants();
  const int k = space.quadrants();
  auto point_of = [&](std::int64_t index) {
    const auto q = static_cast<int>(index / per_quadrant);
    const std::int64_t cell = index % per_quadrant;
    const double s = std::min(static_cast<double>(cell / side) * grid.h, ext->max_radius);
    const double t = std::min(static_cast<double>(cell % side) * grid.h, ext->max_radius);
    return horoball::detail::canonical(OrthantPoint{q, s, t}, k);
  };
  const auto best = detail::scan(count, threads, [&](std::int64_t index) {
    return f.eval_unchecked(Point{point_of(index)}).value;
  });
  out.point = point_of(best.index);
  out.value = best.value;
  out.error_bound = L * grid.h * std::sqrt(2.0);
  out.evaluated = static_cast<std::uint64_t>(count);
  return out;
}

struct ClosedFormCircumcenter {
  Point center;
  double radius = 0.0;
};

/// Circumcenter of points on distinct spider legs. If the largest offset is
/// attained on two or more legs the apex is the center; otherwise the center
/// sits on the farthest leg halfway between the two largest offsets.
inline ClosedFormCircumcenter spider_circumcenter_closed_form(std::span<const SpiderPoint> points) {
  if (points.empty()) throw Error(ErrorCode::EmptySet, "circumcenter of an empty set");
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!(points[i].t >= 0.0) || !std::isfinite(points[i].t) || points[i].leg < 0)
      throw Error(ErrorCode::InvalidPoint, "leg offsets must be finite and >= 0");
    for (std::size_t j = 0; j < i; ++j)
      if (points[i].leg == points[j].leg) throw Error(ErrorCode::MultiplePointsPerLeg, "two points on one leg");
  }
  if (points.size() == 1) return {horoball::detail::canonical(points[0]), 0.0};

  std::size_t top = 0;
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].t > points[top].t) top = i;
  double second = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i)
    if (i != top) second = std::max(second, points[i].t);
  const double t = (points[top].t - second) / 2.0;
  return {horoball::detail::canonical(SpiderPoint{points[top].leg, t}), (points[top].t + second) / 2.0};
}

}  // namespace horoball::reference
