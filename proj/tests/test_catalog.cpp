#include <set>

#include "doctest.h"
#include "w11/catalog.hpp"

using namespace w11;

TEST_CASE("essential catalog: ten templates of excess at most three, seven of excess four") {
  const auto cat = component_catalog(4, false);
  CHECK(cat.size() == 17);
  int low = 0, four = 0;
  std::set<std::string> names, codes;
  for (const auto& t : cat) {
    CHECK(t.essential);
    CHECK_FALSE(t.in_s);
    CHECK(t.excess == excess_component(t.shape));
    CHECK(t.shape.loop_order() == 0);
    (t.excess <= 3 ? low : four)++;
    names.insert(t.name);
    codes.insert(t.code);
  }
  CHECK(low == 10);
  CHECK(four == 7);
  CHECK(names.size() == 17);
  CHECK(codes.size() == 17);
  CHECK(component_catalog(3, false).size() == 10);
}

TEST_CASE("the set S: excess four with at least four omega ports") {
  const auto s = s_components();
  CHECK(s.size() == 22);
  for (const auto& t : s) {
    CHECK(t.in_s);
    CHECK(t.excess == 4);
    CHECK(t.shape.omega_ports() >= 4);
    CHECK(is_s_component(t.shape));
  }
  CHECK(component_catalog(4, true).size() == 17 + 22);
}

TEST_CASE("exhaustive component search") {
  const auto all = all_components(4);
  CHECK(all.size() == 63);
  std::set<std::string> codes;
  int named = 0, in_s = 0;
  for (const auto& t : all) {
    codes.insert(t.code);
    CHECK(t.excess <= 4);
    CHECK(t.shape.loop_order() == 0);  // positive loop order costs at least five
    CHECK(component_code(t.shape).has_value());
    if (t.essential) ++named;
    if (t.in_s) ++in_s;
  }
  CHECK(codes.size() == all.size());
  CHECK(named == 17);
  CHECK(in_s == 22);
  for (const auto& t : component_catalog(4, true)) CHECK(codes.count(t.code) == 1);
}

TEST_CASE("basis oracle: catalog enumeration equals brute force for genus one") {
  for (int n : {11, 12, 13}) {
    CAPTURE(n);
    const GradedBasis fast = enumerate_basis(1, n, BasisMode::Complete);
    const GradedBasis slow = brute_force_basis(1, n);
    REQUIRE(fast.size() == slow.size());
    for (const auto& [k, keys] : slow.keys) {
      const std::set<Key> a(keys.begin(), keys.end());
      const auto it = fast.keys.find(k);
      REQUIRE(it != fast.keys.end());
      CHECK(a == std::set<Key>(it->second.begin(), it->second.end()));
    }
  }
}

TEST_CASE("the all-omega-leg generator spans B_{1,11}") {
  const GradedBasis b = enumerate_basis(1, 11, BasisMode::Complete);
  REQUIRE(b.size() == 1);
  REQUIRE(b.by_degree.count(11) == 1);
  const Generator& g = b.by_degree.at(11).front();
  CHECK(g.w() == 11);
  CHECK(g.structural_edges() == 0);
}

TEST_CASE("complete basis generators are well formed and sorted by key") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{9, 1}, {7, 4}, {5, 7}}) {
    CAPTURE(g);
    const GradedBasis b = enumerate_basis(g, n, BasisMode::Complete);
    std::size_t total = 0;
    for (const auto& [k, gens] : b.by_degree) {
      const auto& keys = b.keys.at(k);
      CHECK(std::is_sorted(keys.begin(), keys.end()));
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const Generator& x = gens[i];
        CHECK(validate(x).empty());
        CHECK(degree(x) == k);
        CHECK(x.genus() == g);
        CHECK(x.n() == n);
        CHECK(x.w() >= 11);
        CHECK(excess_generator(x) == excess_complex(g, n) - 2 * (x.w() - 11));
        const auto c = canonicalize(x);
        REQUIRE(c);
        CHECK(c->key == keys[i]);
        CHECK(c->sign == 1);
        CHECK(b.find(keys[i]) == std::optional<std::pair<int, int>>({k, static_cast<int>(i)}));
      }
      total += gens.size();
    }
    CHECK(total == b.size());
  }
}

TEST_CASE("basis modes are nested") {
  const GradedBasis e = enumerate_basis(7, 4, BasisMode::Essential);
  const GradedBasis f = enumerate_basis(7, 4, BasisMode::Full);
  const GradedBasis c = enumerate_basis(7, 4, BasisMode::Complete);
  CHECK(e.size() < f.size());
  CHECK(f.size() < c.size());
  for (const auto& [k, keys] : e.keys)
    for (const Key& key : keys) CHECK(f.find(key).has_value());
  for (const auto& [k, keys] : f.keys)
    for (const Key& key : keys) CHECK(c.find(key).has_value());
  // At genus one each component meets the special vertex once; all such components are named.
  CHECK(enumerate_basis(1, 13, BasisMode::Essential).size() == enumerate_basis(1, 13, BasisMode::Complete).size());
}

TEST_CASE("basis sizes") {
  CHECK(enumerate_basis(9, 1, BasisMode::Complete).size() == 141);
  CHECK(enumerate_basis(7, 4, BasisMode::Complete).size() == 934);
  CHECK(enumerate_basis(1, 12, BasisMode::Complete).size() == 79);
  const GradedBasis b = enumerate_basis(1, 13, BasisMode::Complete);
  CHECK(b.size(9) == 1);
  CHECK(b.size(10) == 13);
  CHECK(b.size(13) == 3003);
}
