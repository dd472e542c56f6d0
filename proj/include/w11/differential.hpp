#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "w11/catalog.hpp"
#include "w11/generator.hpp"

namespace w11 {

/// Integer combination of canonical generators.
class FormalSum {
 public:
  struct Term {
    Generator graph;
    long long coeff = 0;
  };

  /// Adds coeff * g; g is canonicalized first (vanishing graphs are ignored).
  void add(const Generator& g, long long coeff);
  void add_canonical(const Key& key, const Generator& g, long long coeff);
  void add(const FormalSum& other, long long scale = 1);

  const std::map<Key, Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  long long coeff(const Key& key) const;
  bool operator==(const FormalSum& o) const;

 private:
  std::map<Key, Term> terms_;
};

/// Unmarking differential; terms with w < 11 are dropped.
FormalSum delta_omega(const Generator& g);
/// Splitting of internal vertices.
FormalSum delta_s_internal(const Generator& g);
/// Splitting of the special vertex.
FormalSum delta_s_special(const Generator& g);
/// Full differential.
FormalSum delta(const Generator& g);

struct SparseIntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::tuple<int, int, long long>> entries;  // (row, col, value), sorted by column

  bool is_zero() const { return entries.empty(); }
  /// Triplet text: "rows cols" then one "r c v" line per entry.
  std::string to_triplets() const;
  static SparseIntMatrix from_triplets(const std::string& text);
  bool operator==(const SparseIntMatrix&) const = default;
};

/// Exact product a*b; throws on 64-bit overflow.
SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b);

struct DroppedTerm {
  int degree = 0;
  std::string graph;
};

struct GradedComplex {
  GradedBasis basis;
  std::map<int, SparseIntMatrix> d;  // d[k]: C^k -> C^{k+1}
  /// Image terms outside the basis that were discarded because they contain
  /// a component the basis mode excludes.
  long long dropped_terms = 0;

  int min_degree() const;
  int max_degree() const;
  const SparseIntMatrix& differential(int k) const;  // empty matrix if absent
};

struct BuildOptions {
  int threads = 1;
  bool check_d2 = true;
};

/// Differential matrices in the given basis. An image term missing from the
/// basis is fatal unless it contains a component the basis mode leaves out.
GradedComplex build_complex(const GradedBasis& basis, BuildOptions options = {});

/// Nonzero entries of d[k+1]*d[k], summed over k.
long long d_squared_defect(const GradedComplex& c);

/// Generators with a component from S.
bool in_k(const Generator& g);

/// Restriction to basis elements selected by `keep` (rows and columns).
GradedComplex restrict_complex(const GradedComplex& c, const std::function<bool(const Generator&)>& keep);

/// B/K: drops every generator having a component from S.
GradedComplex quotient_by_K(const GradedComplex& c);
/// K itself; throws if K is not closed under the differential.
GradedComplex k_subcomplex(const GradedComplex& c);

/// Threads to use: explicit value, else W11_THREADS, else 1.
int resolve_threads(int requested);

}  // namespace w11
