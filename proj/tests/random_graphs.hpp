#pragma once
// Random small flat generators for property tests.

#include <random>

#include "w11/generator.hpp"

namespace w11::testing {

struct RandomShape {
  int max_vertices = 3;
  int max_extra_edges = 3;
  int max_legs = 4;
};

inline Generator random_generator(std::mt19937_64& rng, RandomShape shape = {}) {
  auto pick = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  while (true) {
    Generator g;
    g.vertices = pick(0, shape.max_vertices);
    const int k = pick(std::max(1, g.vertices), g.vertices + shape.max_extra_edges);
    const int n = pick(0, shape.max_legs);
    for (int e = 0; e < k; ++e) {
      Edge ed;
      ed.end[0] = pick(-1, g.vertices - 1);
      ed.end[1] = pick(-1, g.vertices - 1);
      for (int s = 0; s < 2; ++s)
        if (ed.end[s] == kSpecial && pick(0, 1)) {
          ed.mark[s] = true;
          g.marks.push_back(HalfEdge::of_edge(e, s));
        }
      g.edges.push_back(ed);
    }
    for (int l = 1; l <= n; ++l) {
      Leg leg;
      leg.at = pick(-1, g.vertices - 1);
      if (leg.at == kSpecial && pick(0, 1)) {
        leg.marked = true;
        g.marks.push_back(HalfEdge::of_leg(l));
      }
      g.legs.push_back(leg);
    }
    std::shuffle(g.marks.begin(), g.marks.end(), rng);
    if (validate(g).empty()) return g;
  }
}

}  // namespace w11::testing
