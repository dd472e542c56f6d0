#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "w11/differential.hpp"
#include "w11/symrep.hpp"

namespace w11 {

inline constexpr std::uint32_t kPrime1 = 2147483629u;
inline constexpr std::uint32_t kPrime2 = 2147483587u;

bool is_prime(std::uint64_t p);

/// Rank over Z/p by sparse column elimination.
int rank_mod_p(const SparseIntMatrix& m, std::uint32_t p);
/// Rank over Q by fraction-free integer elimination.
int rank_exact(const SparseIntMatrix& m);

struct RankReport {
  int mod_p1 = 0;
  int mod_p2 = 0;
  std::optional<int> exact;  // filled when certified
  int rank() const { return exact ? *exact : mod_p1; }
};

/// Rank modulo both primes; exact elimination runs when they disagree or
/// when `certify` is set.
RankReport rank(const SparseIntMatrix& m, bool certify = false);

/// dim H^k for every degree carrying generators.
std::map<int, int> cohomology_dims(const GradedComplex& c, bool certify = false);

// --- harmonic representatives ------------------------------------------------

/// Basis (columns) of ker d^k ∩ ker (d^{k-1})^T over Z/p, as dense rows of
/// length dim C^k.
struct HarmonicSpaceModP {
  int degree = 0;
  std::uint32_t p = kPrime1;
  int ambient = 0;
  std::vector<std::vector<std::uint64_t>> basis;  // entries reduced mod p
  int dim() const { return static_cast<int>(basis.size()); }
};

HarmonicSpaceModP harmonic_basis_mod_p(const GradedComplex& c, int k, std::uint32_t p = kPrime1);

/// Exact rational harmonic basis (for small degrees), columns scaled to be
/// integral.
struct HarmonicSpace {
  int degree = 0;
  int ambient = 0;
  std::vector<std::vector<mpz_class>> basis;
  int dim() const { return static_cast<int>(basis.size()); }
};

HarmonicSpace harmonic_basis(const GradedComplex& c, int k);

/// Character of S_n on the harmonic space of degree k at each class (via the
/// trace of the orthogonal projector composed with the action), mod p and
/// lifted to a signed integer.
std::vector<long long> harmonic_character(const GradedComplex& c, int k, const CharacterTable& table,
                                          std::uint32_t p = kPrime1);
/// The same trace computed with exact rationals.
std::vector<long long> harmonic_character_exact(const GradedComplex& c, int k, const CharacterTable& table);

// --- equivariant cohomology --------------------------------------------------

struct CohomologyResult {
  int g = 0;
  int n = 0;
  std::map<int, RepDecomposition> H;
  std::map<int, int> dims;
  std::map<int, RepDecomposition> chains;
  VirtualDecomposition euler;
};

enum class EquivariantMethod {
  Invariants,  // ranks of sign-twisted Young-subgroup invariant subcomplexes
  Harmonic,    // projector traces on harmonic spaces (mod p)
};

struct EquivariantOptions {
  EquivariantMethod method = EquivariantMethod::Invariants;
  int threads = 1;
};

/// dim H^k of the subcomplex of vectors v with σv = sign(σ)v for σ in the
/// Young subgroup S_mu (blocks of consecutive leg labels).
std::map<int, int> twisted_invariant_cohomology(const GradedComplex& c, const Partition& mu);

CohomologyResult equivariant_cohomology(const GradedComplex& c, const CharacterTable& table,
                                        EquivariantOptions options = {});

/// Σ(-1)^k [C^k] - Σ(-1)^k [H^k]; zero when the Euler characteristics agree.
VirtualDecomposition euler_check(const CohomologyResult& r);

}  // namespace w11
