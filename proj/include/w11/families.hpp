#pragma once

#include <string>
#include <vector>

#include "w11/catalog.hpp"
#include "w11/symrep.hpp"

namespace w11 {

/// One generator family: the non-padding components (catalog template names
/// with the local labels filling their slots), plus everything needed to
/// compare its module two ways.
struct Family {
  std::string name;       // e.g. "Γ^(4)_{i·jk}"
  std::string partition;  // excess partition it belongs to, e.g. "2^2"
  struct Part {
    std::string template_name;
    std::vector<int> labels;  // local labels 1..labels, one per slot
  };
  std::vector<Part> parts;
  int labels = 0;  // number of labeled legs not carried by ω-legs
  /// Printed degree: 3/2 (g - genus_shift) + degree_offset.
  int genus_shift = 1;
  int degree_offset = 0;
  /// Stabilizer blocks of the local labels; the ω-legs add a sign block.
  std::vector<InductionBlock> blocks;
  /// Printed module terms with "{n}" / "{n-c}" placeholders.
  std::vector<std::string> printed;
};

const std::vector<Family>& families();

struct FamilyCheck {
  const Family* family = nullptr;
  int g = 0;
  int n = 0;
  int printed_degree = 0;
  int degree = 0;            // degree of the representative
  bool representative_vanishes = false;
  long long stratum_size = 0;
  RepDecomposition chain;    // characters of the enumerated stratum
  RepDecomposition pieri;    // induction from the stabilizer blocks
  RepDecomposition printed;  // table entry instantiated at n

  bool routes_agree() const { return chain == pieri; }
  bool matches_table() const { return routes_agree() && chain == printed && degree == printed_degree; }
};

/// Representative generator of a family at (g, n), or nullopt when the family
/// does not fit (too few legs, negative padding, w < 11, special valency < 2).
std::optional<Generator> family_representative(const Family& f, int g, int n);

/// Evaluates a printed module at n; terms whose exponent goes negative are
/// dropped.
RepDecomposition printed_module(const Family& f, int n);

/// Compares all families that fit at (g, n) against `basis`, which must
/// contain every component (complete mode).
std::vector<FamilyCheck> check_families(const GradedBasis& basis, const CharacterTable& table);

}  // namespace w11
