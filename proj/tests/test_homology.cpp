#include "doctest.h"
#include "w11/homology.hpp"
#include "w11/suites.hpp"

using namespace w11;

namespace {

SparseIntMatrix identity(int n, long long v = 1) {
  SparseIntMatrix m{n, n, {}};
  for (int i = 0; i < n; ++i) m.entries.emplace_back(i, i, v);
  return m;
}

GradedComplex complete(int g, int n) {
  return build_complex(enumerate_basis(g, n, BasisMode::Complete), {1, false});
}

}  // namespace

TEST_CASE("rank primes") {
  CHECK(is_prime(kPrime1));
  CHECK(is_prime(kPrime2));
  CHECK(is_prime(2147483647u));
  CHECK_FALSE(is_prime(2147483649u));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
}

TEST_CASE("ranks of fixed matrices") {
  CHECK(rank_mod_p(SparseIntMatrix{5, 7, {}}, kPrime1) == 0);
  CHECK(rank_exact(SparseIntMatrix{5, 7, {}}) == 0);
  CHECK(rank_mod_p(identity(9), kPrime1) == 9);
  CHECK(rank_exact(identity(9)) == 9);
  // Two equal columns.
  const SparseIntMatrix dup{3, 2, {{0, 0, 2}, {2, 0, -1}, {0, 1, 2}, {2, 1, -1}}};
  CHECK(rank_exact(dup) == 1);
  CHECK(rank_mod_p(dup, kPrime2) == 1);
}

TEST_CASE("exact rank settles a prime that divides the entries") {
  const SparseIntMatrix m = identity(4, kPrime1);
  CHECK(rank_mod_p(m, kPrime1) == 0);
  CHECK(rank_mod_p(m, kPrime2) == 4);
  const RankReport r = rank(m);
  REQUIRE(r.exact);
  CHECK(r.rank() == 4);
  CHECK(rank(identity(3), true).exact == 3);
}

TEST_CASE("mod-p and exact ranks agree, seeded") {
  for (std::uint64_t seed : {11u, 12u}) {
    const SuiteResult r = suite_rank_agreement(seed, 150);
    CAPTURE(r.details.front());
    CHECK(r.passed);
  }
}

TEST_CASE("cohomology of a two-term complex") {
  GradedComplex c;
  c.basis.g = 1;
  c.basis.n = 0;
  c.basis.by_degree[0] = {Generator{}};
  c.basis.by_degree[1] = {Generator{}, Generator{}};
  c.d[0] = SparseIntMatrix{2, 1, {{0, 0, 2}, {1, 0, 2}}};
  const auto dims = cohomology_dims(c);
  CHECK(dims.at(0) == 0);
  CHECK(dims.at(1) == 1);
}

TEST_CASE("harmonic spaces have the cohomology dimensions") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{9, 1}, {7, 4}, {1, 12}}) {
    CAPTURE(g);
    const GradedComplex c = quotient_by_K(complete(g, n));
    const auto dims = cohomology_dims(c, true);
    for (const auto& [k, d] : dims) {
      CHECK(harmonic_basis_mod_p(c, k).dim() == d);
      CHECK(harmonic_basis_mod_p(c, k, kPrime2).dim() == d);
    }
  }
  const GradedComplex c91 = complete(9, 1);
  for (const auto& [k, d] : cohomology_dims(c91)) CHECK(harmonic_basis(c91, k).dim() == d);
}

TEST_CASE("harmonic traces agree with the Young-invariant route") {
  for (auto [g, n] : std::vector<std::pair<int, int>>{{9, 1}, {7, 4}, {1, 12}}) {
    CAPTURE(g);
    const GradedComplex c = quotient_by_K(complete(g, n));
    const CharacterTable table = characters(n);
    const CohomologyResult inv = equivariant_cohomology(c, table, {EquivariantMethod::Invariants, 1});
    const CohomologyResult har = equivariant_cohomology(c, table, {EquivariantMethod::Harmonic, 1});
    CHECK(inv.H == har.H);
    CHECK(inv.dims == har.dims);
  }
  const GradedComplex c = complete(7, 4);
  const CharacterTable t4 = characters(4);
  for (int k : {21, 22})
    CHECK(harmonic_character_exact(c, k, t4) == harmonic_character(c, k, t4));
}

TEST_CASE("trivial Young subgroup gives ordinary cohomology") {
  const GradedComplex c = complete(7, 4);
  CHECK(twisted_invariant_cohomology(c, Partition({1, 1, 1, 1})) == cohomology_dims(c));
}

TEST_CASE("equivariant cohomology of the small complexes") {
  const auto run = [](int g, int n) { return compute_cohomology(g, n, {}); };
  const CohomologyResult r74 = run(7, 4);
  CHECK(format_decomposition(r74.H.at(21)) == "2V_{31}");
  CHECK(format_decomposition(r74.H.at(22)) == "2V_{2^2}");
  CHECK(r74.dims.at(21) == 6);
  CHECK(r74.dims.at(22) == 4);
  CHECK(euler_check(r74).empty());

  const CohomologyResult r111 = run(1, 11);
  CHECK(format_decomposition(r111.H.at(11)) == "V_{1^{11}}");
  const CohomologyResult r112 = run(1, 12);
  CHECK(format_decomposition(r112.H.at(12)) == "V_{31^9}");
  CHECK(euler_check(r112).empty());

  // Keeping K changes nothing.
  ComputeOptions keep;
  keep.keep_k = true;
  CHECK(compute_cohomology(7, 4, keep).H == r74.H);
  ComputeOptions essential;
  essential.mode = BasisMode::Essential;
  CHECK_THROWS_AS(compute_cohomology(9, 1, essential), Error);
}
