#pragma once
// Exhaustive isomorphism search between two flat generators. Used only as a
// test oracle for canonicalize(): it knows nothing about component codes.

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "w11/generator.hpp"

namespace w11::oracle {

/// Signs (+1/-1) of every isomorphism a -> b, where the sign compares the
/// transported orientation of `a` with the orientation of `b`.
inline std::vector<int> isomorphism_signs(const Generator& a, const Generator& b) {
  std::vector<int> out;
  if (a.vertices != b.vertices || a.edges.size() != b.edges.size() || a.n() != b.n() ||
      a.w() != b.w())
    return out;
  const int m = a.vertices;
  const int k = static_cast<int>(a.edges.size());
  std::vector<int> pi(static_cast<std::size_t>(m));
  std::iota(pi.begin(), pi.end(), 0);
  auto img = [&pi](int v) { return v == kSpecial ? kSpecial : pi[static_cast<std::size_t>(v)]; };
  auto mark_pos = [&b](const HalfEdge& h) {
    for (int i = 0; i < b.w(); ++i)
      if (b.marks[static_cast<std::size_t>(i)] == h) return i;
    return -1;
  };
  do {
    bool legs_ok = true;
    for (int l = 0; l < a.n() && legs_ok; ++l) {
      const Leg& la = a.legs[static_cast<std::size_t>(l)];
      const Leg& lb = b.legs[static_cast<std::size_t>(l)];
      legs_ok = img(la.at) == lb.at && la.marked == lb.marked;
    }
    if (!legs_ok) continue;
    std::vector<int> tau(static_cast<std::size_t>(k), -1), flip(static_cast<std::size_t>(k), 0);
    std::vector<char> used(static_cast<std::size_t>(k), 0);
    // depth-first over edge images and end flips
    auto rec = [&](auto&& self, int e) -> void {
      if (e == k) {
        std::vector<int> mperm(static_cast<std::size_t>(a.w()));
        for (int i = 0; i < a.w(); ++i) {
          const HalfEdge& h = a.marks[static_cast<std::size_t>(i)];
          HalfEdge t = h.is_leg() ? h
                                  : HalfEdge::of_edge(tau[static_cast<std::size_t>(h.edge)],
                                                      h.end ^ flip[static_cast<std::size_t>(h.edge)]);
          const int p = mark_pos(t);
          if (p < 0) return;
          mperm[static_cast<std::size_t>(i)] = p;
        }
        out.push_back(permutation_sign(tau) * permutation_sign(mperm));
        return;
      }
      const Edge& ea = a.edges[static_cast<std::size_t>(e)];
      for (int f = 0; f < k; ++f) {
        if (used[static_cast<std::size_t>(f)]) continue;
        const Edge& eb = b.edges[static_cast<std::size_t>(f)];
        for (int s = 0; s < 2; ++s) {
          if (img(ea.end[0]) != eb.end[s] || img(ea.end[1]) != eb.end[1 - s]) continue;
          if (ea.mark[0] != eb.mark[s] || ea.mark[1] != eb.mark[1 - s]) continue;
          used[static_cast<std::size_t>(f)] = 1;
          tau[static_cast<std::size_t>(e)] = f;
          flip[static_cast<std::size_t>(e)] = s;
          self(self, e + 1);
          used[static_cast<std::size_t>(f)] = 0;
        }
      }
    };
    rec(rec, 0);
  } while (std::next_permutation(pi.begin(), pi.end()));
  return out;
}

inline bool has_odd_automorphism(const Generator& g) {
  const auto signs = isomorphism_signs(g, g);
  return std::find(signs.begin(), signs.end(), -1) != signs.end();
}

/// Renumbers vertices, reorders edges and marks, and flips edge ends at
/// random. Returns the shuffled graph and the orientation sign it picked up.
inline std::pair<Generator, int> shuffle(const Generator& g, std::mt19937_64& rng) {
  Generator r;
  r.vertices = g.vertices;
  std::vector<int> pi(static_cast<std::size_t>(g.vertices));
  std::iota(pi.begin(), pi.end(), 0);
  std::shuffle(pi.begin(), pi.end(), rng);
  auto img = [&pi](int v) { return v == kSpecial ? kSpecial : pi[static_cast<std::size_t>(v)]; };
  std::vector<int> tau(g.edges.size());
  std::iota(tau.begin(), tau.end(), 0);
  std::shuffle(tau.begin(), tau.end(), rng);
  std::vector<int> flip(g.edges.size());
  for (auto& f : flip) f = static_cast<int>(rng() & 1);
  r.edges.resize(g.edges.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    const Edge& src = g.edges[e];
    Edge& dst = r.edges[static_cast<std::size_t>(tau[e])];
    const int s = flip[e];
    dst.end[s] = img(src.end[0]);
    dst.end[1 - s] = img(src.end[1]);
    dst.mark[s] = src.mark[0];
    dst.mark[1 - s] = src.mark[1];
  }
  r.legs = g.legs;
  for (Leg& l : r.legs) l.at = img(l.at);
  std::vector<int> mu(g.marks.size());
  std::iota(mu.begin(), mu.end(), 0);
  std::shuffle(mu.begin(), mu.end(), rng);
  r.marks.resize(g.marks.size());
  for (std::size_t i = 0; i < g.marks.size(); ++i) {
    const HalfEdge& h = g.marks[i];
    r.marks[static_cast<std::size_t>(mu[i])] =
        h.is_leg() ? h
                   : HalfEdge::of_edge(tau[static_cast<std::size_t>(h.edge)],
                                       h.end ^ flip[static_cast<std::size_t>(h.edge)]);
  }
  return {r, permutation_sign(tau) * permutation_sign(mu)};
}

}  // namespace w11::oracle
