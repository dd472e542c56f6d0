#include <random>

#include "doctest.h"
#include "oracle_iso.hpp"
#include "random_graphs.hpp"
#include "w11/generator.hpp"

using namespace w11;

namespace {

Component star(std::vector<Port> ports) {
  Component c;
  c.vertices = 1;
  for (const Port& p : ports) c.ports.push_back({0, p});
  return c;
}

Component bare(Port a, Port b) {
  Component c;
  c.ports = {{kFree, a}, {kFree, b}};
  return c;
}

const Port W = Port::omega();
const Port Eps = Port::epsilon();
Port L(int l) { return Port::leg(l); }

std::vector<Component> omega_legs(int from, int to) {
  std::vector<Component> out;
  for (int l = from; l <= to; ++l) out.push_back(bare(W, L(l)));
  return out;
}

std::vector<Component> with(std::vector<Component> a, const std::vector<Component>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::vector<Component> tripleos(int count) {
  return std::vector<Component>(static_cast<std::size_t>(count), star({W, W, W}));
}

}  // namespace

TEST_CASE("component excess") {
  CHECK(excess_component(star({W, W, W})) == 0);
  CHECK(excess_component(bare(W, L(1))) == 0);
  CHECK(excess_component(bare(W, Eps)) == 1);
  CHECK(excess_component(bare(Eps, L(3))) == 2);
  CHECK(excess_component(star({L(1), W, W, Eps})) == 4);
  Component two;  // {i,w} - {j,k}
  two.vertices = 2;
  two.edges = {{0, 1}};
  two.ports = {{0, L(1)}, {0, W}, {1, L(2)}, {1, L(3)}};
  CHECK(excess_component(two) == 4);
}

TEST_CASE("complex excess") {
  CHECK(excess_complex(9, 1) == 4);
  CHECK(excess_complex(1, 13) == 4);
  CHECK(excess_complex(1, 11) == 0);
  CHECK(excess_complex(7, 4) == 4);
}

TEST_CASE("degree and excess of assembled generators") {
  // omega-leg plus four tripleos at (9,1)
  const Generator g0 = assemble(with(omega_legs(1, 1), tripleos(4)), 1);
  CHECK(g0.genus() == 9);
  CHECK(degree(g0) == 21);
  CHECK(excess_generator(g0) == 0);

  // four (leg, omega, omega) stars at (5,7)
  std::vector<Component> c14;
  for (int l = 1; l <= 4; ++l) c14.push_back(star({L(l), W, W}));
  const Generator g14 = assemble(with(c14, omega_legs(5, 7)), 7);
  CHECK(g14.genus() == 5);
  CHECK(degree(g14) == 19);
  CHECK(excess_generator(g14) == 4);

  // two (eps, omega, omega) stars at (5,7)
  const Generator g22 =
      assemble(with({star({Eps, W, W}), star({Eps, W, W})}, omega_legs(1, 7)), 7);
  CHECK(g22.genus() == 5);
  CHECK(degree(g22) == 17);
  CHECK(excess_generator(g22) == 4);
  CHECK(excess_generator_by_components(g22) == 4);
}

TEST_CASE("vanishing by odd symmetry") {
  const auto base = omega_legs(1, 11);
  CHECK_FALSE(canonicalize(assemble(with(base, {star({Eps, W, Eps})}), 11)).has_value());
  CHECK_FALSE(canonicalize(assemble(with(base, {bare(W, W)}), 11)).has_value());
  CHECK(oracle::has_odd_automorphism(assemble(with(base, {bare(W, W)}), 11)));
  CHECK_FALSE(canonicalize(assemble(with(base, {star({Eps, W, W}), star({Eps, W, W})}), 11))
                  .has_value());
  CHECK(canonicalize(assemble(with(base, {bare(W, Eps)}), 11)).has_value());
  CHECK(canonicalize(assemble(with(base, {bare(Eps, Eps)}), 11)).has_value());
  CHECK_FALSE(canonicalize(assemble(with(base, {bare(Eps, Eps), bare(Eps, Eps)}), 11)).has_value());
  CHECK(canonicalize(assemble(with(base, tripleos(2)), 11)).has_value());
}

TEST_CASE("swapping two orientation entries flips the sign") {
  const Generator g = assemble(omega_legs(1, 11), 11);
  Generator h = g;
  std::swap(h.marks[0], h.marks[5]);
  const auto cg = canonicalize(g);
  const auto ch = canonicalize(h);
  REQUIRE(cg);
  REQUIRE(ch);
  CHECK(cg->key == ch->key);
  CHECK(cg->sign * ch->sign == -1);
}

TEST_CASE("canonical form is idempotent and blow-up round-trips") {
  std::mt19937_64 rng(20261014);
  for (int trial = 0; trial < 400; ++trial) {
    const Generator g = testing::random_generator(rng);
    const auto c = canonicalize(g);
    if (!c) continue;
    const auto cc = canonicalize(c->graph);
    REQUIRE(cc);
    CHECK(cc->key == c->key);
    CHECK(cc->sign == 1);
    CHECK(cc->graph == c->graph);
    CHECK(assemble(blow_up(c->graph), c->graph.n()) == c->graph);
    CHECK(excess_generator(g) == excess_generator_by_components(g));
  }
}

TEST_CASE("canonicalize agrees with exhaustive isomorphism search") {
  std::mt19937_64 rng(77);
  testing::RandomShape shape{3, 3, 3};
  for (int trial = 0; trial < 400; ++trial) {
    const Generator g = testing::random_generator(rng, shape);
    const auto c = canonicalize(g);
    CHECK(c.has_value() != oracle::has_odd_automorphism(g));
    auto [h, s] = oracle::shuffle(g, rng);
    const auto ch = canonicalize(h);
    REQUIRE(c.has_value() == ch.has_value());
    if (c) {
      CHECK(c->key == ch->key);
      CHECK(c->sign == s * ch->sign);
    }
  }
}

TEST_CASE("distinct keys exactly for non-isomorphic graphs") {
  std::mt19937_64 rng(5);
  testing::RandomShape shape{2, 2, 2};
  std::vector<Generator> pool;
  for (int i = 0; i < 120; ++i) pool.push_back(testing::random_generator(rng, shape));
  for (std::size_t i = 0; i < pool.size(); ++i) {
    const auto ci = canonicalize(pool[i]);
    if (!ci) continue;
    for (std::size_t j = i + 1; j < pool.size(); ++j) {
      const auto cj = canonicalize(pool[j]);
      if (!cj) continue;
      const auto isos = oracle::isomorphism_signs(pool[i], pool[j]);
      CHECK((ci->key == cj->key) == !isos.empty());
      if (!isos.empty()) CHECK(isos.front() == ci->sign * cj->sign);
    }
  }
}

TEST_CASE("assemble rejects malformed input") {
  CHECK_THROWS_AS(assemble({bare(W, L(1)), bare(W, L(1))}, 2), Error);
  CHECK_THROWS_AS(assemble({bare(W, L(1))}, 2), Error);
  CHECK_THROWS_AS(assemble({star({L(1), L(2), L(3)})}, 3), Error);  // special valency 0
}

TEST_CASE("leg relabeling") {
  const Generator g = assemble(with({star({L(1), L(2), W})}, omega_legs(3, 11)), 11);
  std::vector<int> perm(11);
  for (int i = 0; i < 11; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  std::swap(perm[0], perm[1]);
  const auto a = canonicalize(g);
  const auto b = canonicalize(relabel_legs(g, perm));
  REQUIRE(a);
  REQUIRE(b);
  CHECK(a->key == b->key);  // the star is symmetric in its two legs
  std::swap(perm[1], perm[2]);  // 1->2, 2->3, 3->1
  const auto c = canonicalize(relabel_legs(g, perm));
  REQUIRE(c);
  CHECK(c->key != a->key);
}

TEST_CASE("text form") {
  const Generator g = assemble(with({star({L(1), W, W})}, omega_legs(2, 3)), 3);
  const auto c = canonicalize(g);
  REQUIRE(c);
  CHECK(to_text(c->graph).find("(ω ω 1)") != std::string::npos);
}
