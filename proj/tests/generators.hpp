#pragma once

#include <random>
#include <vector>

#include "horoball/horoball.hpp"

namespace horoball::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Random points with a few percent of apex and edge points mixed in, since
// those are where the geometry changes.
inline Point random_point(const Space& space, Rng& rng, double scale = 3.0) {
  const int roll = uniform_int(rng, 0, 99);
  switch (space.kind()) {
    case Space::Kind::Euclidean: {
      std::vector<double> c(static_cast<std::size_t>(space.dim()));
      for (auto& v : c) v = uniform(rng, -scale, scale);
      return euclidean_point(std::move(c));
    }
    case Space::Kind::Spider: {
      if (roll < 3) return spider_point(0, 0.0);
      return spider_point(uniform_int(rng, 0, space.legs() - 1), uniform(rng, 0.0, scale));
    }
    case Space::Kind::OrthantCycle: {
      if (roll < 3) return orthant_point(0, 0.0, 0.0);
      const int q = uniform_int(rng, 0, space.quadrants() - 1);
      double s = uniform(rng, 0.0, scale), t = uniform(rng, 0.0, scale);
      if (roll < 8) s = 0.0;
      else if (roll < 13) t = 0.0;
      return detail::canonical(OrthantPoint{q, s, t}, space.quadrants());
    }
  }
  return {};
}

inline std::vector<Space> all_spaces() {
  return {Space::euclidean(2), Space::euclidean(3), Space::spider(3), Space::spider(5),
          Space::orthant_cycle(4), Space::orthant_cycle(5), Space::orthant_cycle(7)};
}

}  // namespace horoball::testing
