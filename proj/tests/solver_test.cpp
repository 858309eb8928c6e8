#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "generators.hpp"
#include "horoball/horoball.hpp"

using namespace horoball;
using horoball::testing::Rng;

namespace {

const Space kPlane = Space::euclidean(2);

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::InvariantViolated;
}

struct CountingGeodesics {
  Space space;
  Geodesics inner{space};
  mutable std::uint64_t distances = 0;
  mutable std::uint64_t combinations = 0;
  double distance(const Point& p, const Point& q) const {
    ++distances;
    return inner.distance(p, q);
  }
  Point combine(const Point& p, const Point& q, double lambda) const {
    ++combinations;
    return inner.combine(p, q, lambda);
  }
};

}  // namespace

TEST(SubgradientTest, TwoPointMeanGap) {
  const std::vector<Point> pts{euclidean_point({0, 0}), euclidean_point({2, 0})};
  const auto f = make_circumcenter(kPlane, pts);
  const FeasibleBall ball(kPlane, euclidean_point({0, 0}), 2.0);
  SolverConfig cfg;
  cfg.iterations = 100;
  const SolverRun run = subgradient_minimize(f, ball, cfg);
  EXPECT_EQ(run.diameter, 4.0);
  EXPECT_DOUBLE_EQ(run.step_length, 0.4);
  EXPECT_EQ(run.iterations_done, 100);
  EXPECT_LE(run.mean_value - 1.0, 0.4);
  EXPECT_GE(run.best_value, 1.0);
  EXPECT_LE(run.best_value, run.mean_value);
}

TEST(SubgradientTest, FlatEnvelopeStopsAtOnce) {
  const DistanceEnvelope f(kPlane, {{euclidean_point({1, 1}), 0.0, 2.5}, {euclidean_point({3, 0}), 0.0, -1.0}});
  const FeasibleBall ball(kPlane, euclidean_point({0, 0}), 1.0);
  SolverConfig cfg;
  cfg.iterations = 50;
  cfg.record_history = true;
  const SolverRun run = subgradient_minimize(f, ball, cfg);
  EXPECT_TRUE(run.stopped_early);
  EXPECT_EQ(run.iterations_done, 1);
  EXPECT_EQ(run.best_value, 2.5);
  EXPECT_EQ(run.history.size(), 1u);
}

TEST(SubgradientTest, SingleIterationHistory) {
  const auto f = make_circumcenter(kPlane, std::vector<Point>{euclidean_point({1, 0})});
  const FeasibleBall ball(kPlane, euclidean_point({0, 0}), 1.0);
  SolverConfig cfg;
  cfg.iterations = 1;
  cfg.record_history = true;
  const SolverRun run = subgradient_minimize(f, ball, cfg);
  ASSERT_EQ(run.history.size(), 1u);
  EXPECT_EQ(run.history[0].iterate, Point(euclidean_point({0, 0})));
  EXPECT_EQ(run.history[0].value, 1.0);
}

TEST(SubgradientTest, Errors) {
  const auto f = make_circumcenter(kPlane, std::vector<Point>{euclidean_point({1, 0})});
  const FeasibleBall ball(kPlane, euclidean_point({0, 0}), 1.0);
  SolverConfig cfg;
  cfg.iterations = 0;
  EXPECT_EQ(code_of([&] { subgradient_minimize(f, ball, cfg); }), ErrorCode::InvalidConfig);
  cfg.iterations = 10;
  const FeasibleBall point_ball(kPlane, euclidean_point({0, 0}), 0.0);
  EXPECT_EQ(code_of([&] { subgradient_minimize(f, point_ball, cfg); }), ErrorCode::InvalidConfig);
  cfg.initial_point = euclidean_point({5, 0});
  EXPECT_EQ(code_of([&] { subgradient_minimize(f, ball, cfg); }), ErrorCode::InfeasibleStart);
  const FeasibleBall other(Space::spider(3), spider_point(0, 0), 1.0);
  SolverConfig plain;
  plain.iterations = 10;
  EXPECT_EQ(code_of([&] { subgradient_minimize(f, other, plain); }), ErrorCode::SpaceMismatch);
}

TEST(SubgradientProperty, IteratesStayFeasibleAndBoundHolds) {
  Rng rng(2024);
  for (int inst = 0; inst < 40; ++inst) {
    const Space space = inst % 2 == 0 ? kPlane : Space::spider(4);
    std::vector<Point> pts;
    if (space.kind() == Space::Kind::Euclidean) {
      pts = {horoball::testing::random_point(space, rng), horoball::testing::random_point(space, rng)};
    } else {
      for (int leg = 0; leg < 4; ++leg) pts.push_back(spider_point(leg, horoball::testing::uniform(rng, 0, 3)));
    }
    const auto f = make_circumcenter(space, pts);
    double mu = 0.0;
    for (const auto& p : pts)
      for (const auto& q : pts) mu = std::max(mu, distance(space, p, q));
    if (mu == 0.0) continue;
    double fstar = mu / 2.0;
    if (space.kind() == Space::Kind::Spider) {
      std::vector<SpiderPoint> sp;
      for (const auto& p : pts) sp.push_back(std::get<SpiderPoint>(p));
      fstar = reference::spider_circumcenter_closed_form(sp).radius;
    }
    const FeasibleBall ball(space, pts[0], mu);
    SolverConfig cfg;
    cfg.iterations = 400;
    cfg.record_history = true;
    const SolverRun run = subgradient_minimize(f, ball, cfg);
    for (const auto& rec : run.history) EXPECT_LE(distance(space, rec.iterate, ball.center), mu + 1e-9);
    EXPECT_LE(run.mean_value - fstar, 2.0 * mu / std::sqrt(400.0) + 1e-12);
    double prefix = run.history.front().value;
    for (const auto& rec : run.history) prefix = std::min(prefix, rec.value);
    EXPECT_EQ(run.best_value, prefix);
  }
}

TEST(CircumcenterTest, FiveOrthantWithinBound) {
  const auto pts = five_orthant_example();
  const SolverRun run = circumcenter(five_orthant_space(), pts, 10000);
  const double mu = std::sqrt(10.0 + 4.0 * std::sqrt(5.0));
  const double bound = 2.0 * mu / 100.0;
  EXPECT_NEAR(bound, 0.08705, 1e-5);
  EXPECT_GE(run.best_value, std::sqrt(5.0) - 1e-12);
  EXPECT_LE(run.best_value - std::sqrt(5.0), bound);
}

TEST(CircumcenterTest, TwoEuclideanPoints) {
  const std::vector<Point> pts{euclidean_point({0, 0}), euclidean_point({2, 0})};
  const SolverRun run = circumcenter(kPlane, pts, 10000);
  EXPECT_LE(run.best_value - 1.0, 4e-2);
  EXPECT_GE(run.best_value, 1.0);
  EXPECT_LE(distance(kPlane, run.best_point, euclidean_point({1, 0})), 0.3);
}

TEST(CircumcenterTest, SpiderTripod) {
  const Space tripod = Space::spider(3);
  const std::vector<Point> pts{spider_point(0, 2), spider_point(1, 1.5), spider_point(2, 1)};
  const SolverRun run = circumcenter(tripod, pts, 10000);
  EXPECT_GE(run.best_value, 1.75 - 1e-12);
  EXPECT_LE(run.best_value - 1.75, 0.07);
  EXPECT_LE(distance(tripod, run.best_point, spider_point(0, 0.25)), 0.4);
}

TEST(CircumcenterTest, Errors) {
  const std::vector<Point> pts{euclidean_point({0, 0}), euclidean_point({2, 0})};
  EXPECT_EQ(code_of([&] { circumcenter(kPlane, pts, 10); }), ErrorCode::TooFewIterations);
  EXPECT_EQ(code_of([&] { circumcenter(kPlane, std::vector<Point>{}, 100); }), ErrorCode::EmptySet);
  const std::vector<Point> bad{euclidean_point({0, 0}), spider_point(0, 1)};
  EXPECT_EQ(code_of([&] { circumcenter(kPlane, bad, 100); }), ErrorCode::SpaceMismatch);
}

TEST(CircumcenterTest, DegenerateInputs) {
  const std::vector<Point> one{euclidean_point({3, 4})};
  const SolverRun a = circumcenter(kPlane, one, 100);
  EXPECT_EQ(a.best_value, 0.0);
  EXPECT_EQ(a.best_point, Point(euclidean_point({3, 4})));

  const std::vector<Point> same(4, spider_point(1, 2.0));
  const SolverRun b = circumcenter(Space::spider(3), same, 100);
  EXPECT_EQ(b.best_value, 0.0);
  EXPECT_EQ(b.combination_calls, 0u);
}

TEST(CircumcenterTest, Deterministic) {
  Rng rng(3);
  for (const Space& space : horoball::testing::all_spaces()) {
    std::vector<Point> pts;
    for (int i = 0; i < 5; ++i) pts.push_back(horoball::testing::random_point(space, rng));
    EXPECT_EQ(circumcenter(space, pts, 500, true), circumcenter(space, pts, 500, true)) << describe(space);
  }
}

TEST(CircumcenterTest, CallCounts) {
  Rng rng(17);
  for (const Space& space : horoball::testing::all_spaces()) {
    for (std::size_t k : {1u, 2u, 5u}) {
      std::vector<Point> pts;
      for (std::size_t i = 0; i < k; ++i) pts.push_back(horoball::testing::random_point(space, rng));
      for (auto& p : pts) p = canonicalize(space, p);
      CountingGeodesics geo{space};
      const int n = 64;
      const SolverRun run = circumcenter_with(geo, pts, n, false);
      if (run.step_length == 0.0) continue;
      EXPECT_EQ(geo.distances, k * (n + 1) - 1) << describe(space);
      EXPECT_EQ(geo.combinations, static_cast<std::uint64_t>(n));
      EXPECT_EQ(run.distance_calls, geo.distances);
      EXPECT_EQ(run.combination_calls, geo.combinations);
    }
  }
}

TEST(CircumcenterProperty, BestBoundedByHalfDiameterAndGuarantee) {
  Rng rng(99);
  for (const Space& space : horoball::testing::all_spaces()) {
    for (int inst = 0; inst < 10; ++inst) {
      std::vector<Point> pts;
      const int k = horoball::testing::uniform_int(rng, 2, 6);
      for (int i = 0; i < k; ++i) pts.push_back(horoball::testing::random_point(space, rng));
      double mu = 0.0;
      for (const auto& p : pts)
        for (const auto& q : pts) mu = std::max(mu, distance(space, p, q));
      const SolverRun run = circumcenter(space, pts, 400, true);
      EXPECT_GE(run.best_value, mu / 2.0 - 1e-12) << describe(space);
      EXPECT_LE(run.best_value, run.mean_value + 1e-12);
      double running = run.best_value;
      for (const auto& rec : run.history) running = std::min(running, rec.value);
      EXPECT_EQ(running, run.best_value);
    }
  }
}
