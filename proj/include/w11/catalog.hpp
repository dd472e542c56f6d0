#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "w11/generator.hpp"

namespace w11 {

/// A component shape whose legs are slots 1..slots, filled with labels later.
struct ComponentTemplate {
  Component shape;
  int slots = 0;
  int excess = 0;
  bool essential = false;
  bool in_s = false;  // excess four with at least four omega ports
  std::string name;
  std::string code;   // template_code(shape)
};

/// Which components may appear in an enumerated basis.
enum class BasisMode {
  Essential,  // the named essential components only
  Full,       // essential components plus the set S
  Complete,   // every non-vanishing component of excess <= 4
};

std::string to_string(BasisMode m);

/// Named essential templates (plus S when requested), sorted by excess.
std::vector<ComponentTemplate> component_catalog(int max_excess, bool include_nonessential);

/// Every component of excess <= max_excess that does not vanish on its own,
/// found by exhaustive search over shapes (any loop order). Names are taken
/// from the catalog where the shape is named.
std::vector<ComponentTemplate> all_components(int max_excess);

/// Templates of excess four with w >= 4 (the set S).
std::vector<ComponentTemplate> s_components();

/// Code of a component that ignores which labels fill its leg slots, or
/// nullopt if it vanishes.
std::optional<std::string> template_code(const Component& c);

/// Component excess is 4 and it has >= 4 omega ports.
bool is_s_component(const Component& c);

struct GradedBasis {
  int g = 0;
  int n = 0;
  BasisMode mode = BasisMode::Complete;
  std::set<std::string> allowed;  // template codes permitted by the mode
  std::map<int, std::vector<Generator>> by_degree;
  std::map<int, std::vector<Key>> keys;

  /// (degree, index) of a canonical key, if present.
  std::optional<std::pair<int, int>> find(const Key& key) const;
  std::size_t size() const;
  std::size_t size(int degree) const;
  bool allows(const Generator& g) const;

  /// Adds canonical generators (deduplicated) and rebuilds the index;
  /// each degree is kept sorted by key.
  void insert(const Canonical& c);
  void finalize();

 private:
  std::unordered_map<Key, std::pair<int, int>> index_;
  std::map<Key, Generator> pending_;
};

GradedBasis enumerate_basis(int g, int n, BasisMode mode);
GradedBasis enumerate_basis(int g, int n, bool include_nonessential);

/// Enumeration from an explicit template list (ω-legs and tripleos are added
/// automatically as padding).
GradedBasis enumerate_basis_from(int g, int n, const std::vector<ComponentTemplate>& templates,
                                 BasisMode mode_tag);

struct BruteForceCaps {
  int max_vertices = 4;
  long long max_candidates = 50'000'000;
};

/// All generators of B_{g,n} built directly from flat graphs (no catalog).
GradedBasis brute_force_basis(int g, int n, BruteForceCaps caps = {});

/// Text listing of a (sub)catalog for the CLI.
std::string describe(const ComponentTemplate& t);

}  // namespace w11
