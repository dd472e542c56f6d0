#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "w11/catalog.hpp"
#include "w11/generator.hpp"

namespace w11 {

struct Partition {
  std::vector<int> parts;  // weakly decreasing, positive

  Partition() = default;
  explicit Partition(std::vector<int> p);

  int size() const;
  int length() const { return static_cast<int>(parts.size()); }
  Partition conjugate() const;
  /// Exponent notation: "51^8", "3^21^7", "1^{11}", "{10}1^2".
  std::string to_string() const;
  static Partition parse(const std::string& text);
  /// Dominance order: this ⊵ other.
  bool dominates(const Partition& other) const;

  bool operator==(const Partition&) const = default;
};

/// Lexicographically descending, so (n) comes first and (1^n) last.
struct PartitionDesc {
  bool operator()(const Partition& a, const Partition& b) const { return a.parts > b.parts; }
};

/// Multiplicities of irreducibles V_λ (nonnegative for genuine representations).
using RepDecomposition = std::map<Partition, long long, PartitionDesc>;
/// Signed multiplicities.
using VirtualDecomposition = RepDecomposition;

/// All partitions of n, lexicographically descending.
std::vector<Partition> partitions(int n);

/// Hook-length dimension f^λ.
long long hook_dimension(const Partition& lambda);

/// Number of semistandard tableaux of shape λ and content μ.
long long kostka(const Partition& lambda, const Partition& mu);

struct CharacterTable {
  int n = 0;
  std::vector<Partition> irreps;       // λ, lexicographically descending
  std::vector<Partition> classes;      // cycle types μ, same order
  std::vector<long long> class_sizes;  // |class μ|
  std::vector<std::vector<long long>> values;  // values[λ][μ]
  long long group_order = 1;

  int irrep_index(const Partition& lambda) const;
  int class_index(const Partition& mu) const;
};

/// Character table by the Murnaghan–Nakayama rule.
CharacterTable characters(int n);
/// χ_λ(μ) directly.
long long character_value(const Partition& lambda, const Partition& mu);

/// A permutation of {1..n} of cycle type μ built from consecutive labels;
/// perm[l-1] is the image of l.
std::vector<int> class_representative(const Partition& mu);
std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b);  // a∘b
Partition cycle_type(const std::vector<int>& perm);

/// Leg relabeling on a list of canonical generators as a signed permutation:
/// σ·gens[i] = sign[i] · gens[target[i]].
struct SignedPermutation {
  std::vector<int> target;
  std::vector<int> sign;
  long long trace() const;
};

SignedPermutation act(const std::vector<int>& sigma, const std::vector<Generator>& gens,
                      const std::vector<Key>& keys);
SignedPermutation act(const std::vector<int>& sigma, const GradedBasis& basis, int degree);

/// Character (one value per class of `table`) of the signed permutation
/// representation spanned by an S_n-stable list of canonical generators.
std::vector<long long> permutation_character(const std::vector<Generator>& gens,
                                             const std::vector<Key>& keys, const CharacterTable& table);

/// Multiplicities from a class function; throws if not integral.
VirtualDecomposition decompose_character(const std::vector<long long>& chi, const CharacterTable& table);

RepDecomposition chain_multiplicities(const GradedBasis& basis, int degree, const CharacterTable& table);

// --- Pieri -------------------------------------------------------------------

std::vector<Partition> horizontal_strips(const Partition& lambda, int k);
std::vector<Partition> vertical_strips(const Partition& lambda, int k);

enum class BlockType { Trivial, Sign, General };

/// One factor of a Young subgroup with the representation it carries.
struct InductionBlock {
  int size = 0;
  BlockType type = BlockType::Trivial;
  RepDecomposition rep;  // for General: decomposition as an S_size representation
};

/// Decomposition of the representation induced from the product of the
/// blocks' representations.
RepDecomposition pieri_induce(const std::vector<InductionBlock>& blocks);

long long dimension(const RepDecomposition& d);
/// "V_{51^8} + 2V_{3^21^7}"; "0" when empty.
std::string format_decomposition(const RepDecomposition& d);
RepDecomposition parse_decomposition(const std::string& text);

}  // namespace w11
