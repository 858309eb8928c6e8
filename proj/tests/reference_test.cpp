#include <gtest/gtest.h>

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

// Triangle circumcenter by the perpendicular-bisector formula; the minimax
// center is the circumcenter for acute triangles and the long-side midpoint
// otherwise.
std::pair<std::array<double, 2>, double> minimax_center(std::array<std::array<double, 2>, 3> p) {
  auto dist = [](std::array<double, 2> a, std::array<double, 2> b) { return std::hypot(a[0] - b[0], a[1] - b[1]); };
  for (int i = 0; i < 3; ++i) {
    const auto a = p[i], b = p[(i + 1) % 3], c = p[(i + 2) % 3];
    const std::array<double, 2> mid{(a[0] + b[0]) / 2, (a[1] + b[1]) / 2};
    if (dist(mid, c) <= dist(a, b) / 2) return {mid, dist(a, b) / 2};
  }
  const double ax = p[0][0], ay = p[0][1], bx = p[1][0], by = p[1][1], cx = p[2][0], cy = p[2][1];
  const double d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by));
  const double ux = ((ax * ax + ay * ay) * (by - cy) + (bx * bx + by * by) * (cy - ay) + (cx * cx + cy * cy) * (ay - by)) / d;
  const double uy = ((ax * ax + ay * ay) * (cx - bx) + (bx * bx + by * by) * (ax - cx) + (cx * cx + cy * cy) * (bx - ax)) / d;
  return {{ux, uy}, dist({ux, uy}, p[0])};
}

}  // namespace

TEST(BruteForceTest, TwoEuclideanPoints) {
  const auto f = make_circumcenter(kPlane, std::vector<Point>{euclidean_point({0, 0}), euclidean_point({2, 0})});
  const auto bf = reference::brute_force_minimize(f, reference::covering_grid(f, 1e-3));
  EXPECT_NEAR(bf.value, 1.0, 1.5e-3);
  EXPECT_NEAR(bf.error_bound, 1e-3 * std::sqrt(2.0), 1e-15);
}

TEST(BruteForceTest, SpiderTripod) {
  const Space tripod = Space::spider(3);
  const auto f = make_circumcenter(tripod, std::vector<Point>{spider_point(0, 2), spider_point(1, 1.5), spider_point(2, 1)});
  const auto bf = reference::brute_force_minimize(f, reference::covering_grid(f, 1e-3));
  EXPECT_NEAR(bf.value, 1.75, 1e-3);
  EXPECT_LE(distance(tripod, bf.point, spider_point(0, 0.25)), 1e-3);
  EXPECT_EQ(bf.evaluated, 3u * 2001u);
}

TEST(BruteForceTest, FiveOrthantInstance) {
  const auto f = make_circumcenter(five_orthant_space(), five_orthant_example());
  const auto bf = reference::brute_force_minimize(f, reference::covering_grid(f, 1e-2));
  EXPECT_NEAR(bf.value, std::sqrt(5.0), 1.5e-2);
  EXPECT_LE(bf.value, std::sqrt(5.0) + 1e-12);
  EXPECT_GE(bf.value, std::sqrt(5.0) - 1e-12);
  EXPECT_EQ(bf.point, Point(orthant_point(0, 0, 0)));
}

TEST(BruteForceTest, Errors) {
  const auto f = make_circumcenter(kPlane, std::vector<Point>{euclidean_point({0, 0})});
  EXPECT_EQ(code_of([&] { reference::brute_force_minimize(f, reference::covering_grid(f, 0.0)); }), ErrorCode::EmptyGrid);
  EXPECT_EQ(code_of([&] { reference::brute_force_minimize(f, reference::covering_grid(f, -1.0)); }), ErrorCode::EmptyGrid);
  EXPECT_EQ(code_of([&] { reference::brute_force_minimize(f, {0.1, reference::SpiderExtent{1.0}}); }),
            ErrorCode::SpaceMismatch);
}

TEST(BruteForceTest, ThreadCountDoesNotChangeResult) {
  Rng rng(12);
  for (const Space& space : horoball::testing::all_spaces()) {
    std::vector<Point> pts;
    for (int i = 0; i < 4; ++i) pts.push_back(horoball::testing::random_point(space, rng));
    const auto f = make_circumcenter(space, pts);
    const auto grid = reference::covering_grid(f, space.kind() == Space::Kind::Euclidean && space.dim() == 3 ? 0.1 : 0.02);
    const auto a = reference::brute_force_minimize(f, grid, 1);
    const auto b = reference::brute_force_minimize(f, grid, 4);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.point, b.point);
  }
}

TEST(ClosedFormTest, Examples) {
  const std::vector<SpiderPoint> a{{0, 3}, {1, 1}, {2, 1}};
  const auto ra = reference::spider_circumcenter_closed_form(a);
  EXPECT_EQ(ra.center, Point(spider_point(0, 1)));
  EXPECT_EQ(ra.radius, 2.0);

  const std::vector<SpiderPoint> b{{0, 2}, {1, 2}, {2, 1}};
  const auto rb = reference::spider_circumcenter_closed_form(b);
  EXPECT_EQ(rb.center, Point(spider_point(0, 0)));
  EXPECT_EQ(rb.radius, 2.0);

  const std::vector<SpiderPoint> c{{0, 2}, {1, 1.5}, {2, 1}};
  const auto rc = reference::spider_circumcenter_closed_form(c);
  EXPECT_EQ(rc.center, Point(spider_point(0, 0.25)));
  EXPECT_EQ(rc.radius, 1.75);

  const std::vector<SpiderPoint> d{{2, 4}};
  EXPECT_EQ(reference::spider_circumcenter_closed_form(d).radius, 0.0);
}

TEST(ClosedFormTest, Errors) {
  const std::vector<SpiderPoint> dup{{0, 1}, {0, 2}};
  EXPECT_EQ(code_of([&] { reference::spider_circumcenter_closed_form(dup); }), ErrorCode::MultiplePointsPerLeg);
  EXPECT_EQ(code_of([&] { reference::spider_circumcenter_closed_form(std::span<const SpiderPoint>{}); }),
            ErrorCode::EmptySet);
}

TEST(ClosedFormProperty, AgreesWithGrid) {
  Rng rng(31);
  for (int inst = 0; inst < 25; ++inst) {
    const int legs = horoball::testing::uniform_int(rng, 2, 6);
    const Space space = Space::spider(legs);
    std::vector<SpiderPoint> sp;
    std::vector<Point> pts;
    for (int leg = 0; leg < legs; ++leg) {
      if (leg > 0 && horoball::testing::uniform(rng, 0, 1) < 0.3) continue;
      sp.push_back({leg, horoball::testing::uniform(rng, 0, 3)});
      pts.push_back(sp.back());
    }
    const auto cf = reference::spider_circumcenter_closed_form(sp);
    const auto f = make_circumcenter(space, pts);
    const auto bf = reference::brute_force_minimize(f, reference::covering_grid(f, 1e-3));
    EXPECT_GE(bf.value, cf.radius - 1e-12);
    EXPECT_LE(bf.value - cf.radius, bf.error_bound);
    EXPECT_NEAR(f(cf.center), cf.radius, 1e-12);
  }
}

TEST(ClosedFormProperty, TriangleAgreesWithGrid) {
  Rng rng(77);
  for (int inst = 0; inst < 10; ++inst) {
    std::array<std::array<double, 2>, 3> tri;
    std::vector<Point> pts;
    for (auto& v : tri) {
      v = {horoball::testing::uniform(rng, 0, 1), horoball::testing::uniform(rng, 0, 1)};
      pts.push_back(euclidean_point({v[0], v[1]}));
    }
    const auto [c, r] = minimax_center(tri);
    const auto f = make_circumcenter(kPlane, pts);
    EXPECT_NEAR(f(euclidean_point({c[0], c[1]})), r, 1e-9);
    const auto bf = reference::brute_force_minimize(f, reference::covering_grid(f, 2e-3));
    EXPECT_GE(bf.value, r - 1e-9);
    EXPECT_LE(bf.value - r, bf.error_bound);
  }
}
