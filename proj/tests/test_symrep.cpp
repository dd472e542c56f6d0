#include <numeric>
#include <random>

#include "doctest.h"
#include "w11/symrep.hpp"

using namespace w11;

namespace {

Partition P(std::vector<int> p) { return Partition(std::move(p)); }

long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

TEST_CASE("partition counts and order") {
  CHECK(partitions(1).size() == 1);
  CHECK(partitions(10).size() == 42);
  CHECK(partitions(16).size() == 231);
  const auto p5 = partitions(5);
  CHECK(p5.front() == P({5}));
  CHECK(p5.back() == P({1, 1, 1, 1, 1}));
  CHECK_THROWS_AS(P({1, 2}), Error);
  CHECK_THROWS_AS(P({2, 0}), Error);
}

TEST_CASE("partition text grammar") {
  CHECK(P({5, 1, 1, 1, 1, 1, 1, 1, 1}).to_string() == "51^8");
  CHECK(P({3, 3, 1, 1, 1, 1, 1, 1, 1}).to_string() == "3^21^7");
  CHECK(P(std::vector<int>(11, 1)).to_string() == "1^{11}");
  CHECK(P({10, 1, 1}).to_string() == "{10}1^2");
  CHECK(P({2, 2}).to_string() == "2^2");
  CHECK(P({1}).to_string() == "1");
  CHECK(Partition::parse("{10}1^2") == P({10, 1, 1}));
  CHECK(Partition::parse("321^{8}") == P({3, 2, 1, 1, 1, 1, 1, 1, 1, 1}));
  for (int n = 1; n <= 12; ++n)
    for (const Partition& p : partitions(n)) CHECK(Partition::parse(p.to_string()) == p);
}

TEST_CASE("decomposition strings round trip") {
  const std::string text = "V_{51^8} + V_{3^21^7} + V_{321^8} + V_{2^21^9}";
  const RepDecomposition d = parse_decomposition(text);
  CHECK(d.size() == 4);
  CHECK(format_decomposition(d) == text);
  CHECK(format_decomposition(parse_decomposition("2V_{51^5} + V_{421^4}")) == "2V_{51^5} + V_{421^4}");
  CHECK(format_decomposition({}) == "0");
  CHECK(parse_decomposition("0").empty());
  CHECK(format_decomposition({{P({1}), 1}}) == "V_1");
  std::mt19937_64 rng(99);
  const auto p9 = partitions(9);
  for (int t = 0; t < 100; ++t) {
    RepDecomposition r;
    for (int i = 0; i < 4; ++i) r[p9[rng() % p9.size()]] += static_cast<long long>(rng() % 3 + 1);
    CHECK(parse_decomposition(format_decomposition(r)) == r);
  }
}

TEST_CASE("conjugation and dominance") {
  for (const Partition& p : partitions(9)) {
    CHECK(p.conjugate().conjugate() == p);
    CHECK(p.dominates(p));
    CHECK(P({9}).dominates(p));
    CHECK(p.dominates(P(std::vector<int>(9, 1))));
  }
  CHECK(P({3, 1, 1, 1}).conjugate() == P({4, 1, 1}));
  CHECK_FALSE(P({3, 3}).dominates(P({4, 1, 1})));
  CHECK_FALSE(P({4, 1, 1}).dominates(P({3, 3})));
}

TEST_CASE("hook length dimensions") {
  CHECK(hook_dimension(P({2, 1})) == 2);
  CHECK(hook_dimension(P({3, 1})) == 3);
  CHECK(hook_dimension(P({2, 2})) == 2);
  // Hooks (a, 1^b) have dimension C(a+b-1, b).
  CHECK(hook_dimension(P({5, 1, 1, 1, 1, 1, 1, 1, 1})) == 495);
  CHECK(hook_dimension(P(std::vector<int>(13, 1))) == 1);
  for (int n : {6, 9, 12}) {
    long long sum = 0;
    for (const Partition& p : partitions(n)) sum += hook_dimension(p) * hook_dimension(p);
    CHECK(sum == factorial(n));
  }
}

TEST_CASE("Kostka numbers") {
  CHECK(kostka(P({2, 1}), P({1, 1, 1})) == 2);
  CHECK(kostka(P({3, 2}), P({2, 2, 1})) == 2);
  for (const Partition& l : partitions(7)) {
    CHECK(kostka(l, l) == 1);
    CHECK(kostka(l, P(std::vector<int>(7, 1))) == hook_dimension(l));
    for (const Partition& m : partitions(7))
      if (!l.dominates(m)) CHECK(kostka(l, m) == 0);
  }
}

TEST_CASE("character table") {
  const CharacterTable t3 = characters(3);
  const int sd = t3.irrep_index(P({2, 1}));
  CHECK(t3.values[sd][t3.class_index(P({3}))] == -1);
  CHECK(t3.values[sd][t3.class_index(P({2, 1}))] == 0);
  CHECK(t3.values[sd][t3.class_index(P({1, 1, 1}))] == 2);
  CHECK(character_value(P({3, 1}), P({2, 2})) == -1);

  for (int n : {5, 8}) {
    const CharacterTable t = characters(n);
    CHECK(t.group_order == factorial(n));
    CHECK(std::accumulate(t.class_sizes.begin(), t.class_sizes.end(), 0LL) == t.group_order);
    const std::size_t k = t.irreps.size();
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) {
        long long inner = 0;
        for (std::size_t c = 0; c < k; ++c) inner += t.class_sizes[c] * t.values[a][c] * t.values[b][c];
        CHECK(inner == (a == b ? t.group_order : 0));
      }
    // Column orthogonality on the identity column gives the dimensions.
    const int id = t.class_index(P(std::vector<int>(static_cast<std::size_t>(n), 1)));
    for (std::size_t a = 0; a < k; ++a) CHECK(t.values[a][id] == hook_dimension(t.irreps[a]));
  }
}

TEST_CASE("class representatives and cycle types") {
  for (const Partition& mu : partitions(8)) CHECK(cycle_type(class_representative(mu)) == mu);
  const std::vector<int> a = {2, 3, 1}, b = {2, 1, 3};
  CHECK(compose(a, b) == std::vector<int>{3, 2, 1});
  CHECK(cycle_type(compose(a, a)) == P({3}));
}

TEST_CASE("Pieri induction") {
  using B = InductionBlock;
  const RepDecomposition got =
      pieri_induce({B{10, BlockType::Sign, {}}, B{2, BlockType::Trivial, {}}, B{1, BlockType::Trivial, {}}});
  CHECK(format_decomposition(got) == "V_{41^9} + V_{321^8} + 2V_{31^{10}} + V_{2^21^9} + V_{21^{11}}");
  CHECK(dimension(got) == 13LL * 12 * 11 / 2);

  CHECK(pieri_induce({B{3, BlockType::Trivial, {}}}) == RepDecomposition{{P({3}), 1}});
  CHECK(pieri_induce({B{3, BlockType::Sign, {}}}) == RepDecomposition{{P({1, 1, 1}), 1}});
  // A general block carrying the trivial representation is a trivial block.
  CHECK(pieri_induce({B{2, BlockType::General, {{P({2}), 1}}}, B{3, BlockType::Sign, {}}}) ==
        pieri_induce({B{2, BlockType::Trivial, {}}, B{3, BlockType::Sign, {}}}));
  // Induction is commutative in the blocks.
  CHECK(pieri_induce({B{2, BlockType::Trivial, {}}, B{4, BlockType::General, {{P({2, 2}), 1}}}}) ==
        pieri_induce({B{4, BlockType::General, {{P({2, 2}), 1}}}, B{2, BlockType::Trivial, {}}}));
  // Regular representation of S_4.
  RepDecomposition regular;
  for (const Partition& p : partitions(4)) regular[p] = hook_dimension(p);
  CHECK(pieri_induce({B{1, BlockType::Trivial, {}}, B{1, BlockType::Trivial, {}}, B{1, BlockType::Trivial, {}},
                      B{1, BlockType::Trivial, {}}}) == regular);
}

TEST_CASE("leg relabeling is a group action on chains") {
  const GradedBasis b = enumerate_basis(7, 4, BasisMode::Complete);
  std::mt19937_64 rng(5);
  std::vector<int> s = {1, 2, 3, 4}, t = {1, 2, 3, 4};
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(s.begin(), s.end(), rng);
    std::shuffle(t.begin(), t.end(), rng);
    for (const auto& [k, gens] : b.by_degree) {
      const SignedPermutation as = act(s, b, k), at = act(t, b, k), ast = act(compose(s, t), b, k);
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const auto j = static_cast<std::size_t>(at.target[i]);
        CHECK(ast.target[i] == as.target[j]);
        CHECK(ast.sign[i] == at.sign[i] * as.sign[j]);
      }
    }
  }
}

TEST_CASE("chain characters decompose into genuine representations") {
  const GradedBasis b = enumerate_basis(5, 7, BasisMode::Complete);
  const CharacterTable table = characters(7);
  for (const auto& [k, gens] : b.by_degree) {
    const RepDecomposition d = chain_multiplicities(b, k, table);
    for (const auto& [lambda, m] : d) CHECK(m > 0);
    CHECK(dimension(d) == static_cast<long long>(gens.size()));
  }
  // Indicator of the 7-cycles is not a virtual character.
  std::vector<long long> chi(table.classes.size(), 0);
  chi[static_cast<std::size_t>(table.class_index(P({7})))] = 1;
  CHECK_THROWS_AS(decompose_character(chi, table), Error);
}
