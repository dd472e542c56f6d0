#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace w11 {

/// Vertex id of the special vertex inside a Generator.
inline constexpr int kSpecial = -1;
/// Attachment id for the free end of a bare edge inside a Component.
inline constexpr int kFree = -1;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class PortKind : std::uint8_t { Omega, Epsilon, Leg };

/// Label carried by a severed half-edge of a blown-up component.
struct Port {
  PortKind kind = PortKind::Omega;
  int label = 0;  // leg label, only for PortKind::Leg

  static Port omega() { return {PortKind::Omega, 0}; }
  static Port epsilon() { return {PortKind::Epsilon, 0}; }
  static Port leg(int l) { return {PortKind::Leg, l}; }

  bool is_leg() const { return kind == PortKind::Leg; }
  bool is_special() const { return kind != PortKind::Leg; }
  auto operator<=>(const Port&) const = default;
};

struct PortAttachment {
  int at = kFree;  // internal vertex id or kFree
  Port port;
  auto operator<=>(const PortAttachment&) const = default;
};

/// One connected piece left after deleting the special vertex.
///
/// A bare edge (no internal vertices) is written with `vertices == 0` and two
/// free ports, e.g. {omega, leg 3} for an omega-marked leg or {omega, epsilon}
/// for a tadpole at the special vertex. Ports of kind Omega/Epsilon attached to
/// an internal vertex stand for an edge to the special vertex.
struct Component {
  int vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<PortAttachment> ports;

  int omega_ports() const;
  int epsilon_ports() const;
  int legs() const;
  int special_ports() const { return omega_ports() + epsilon_ports(); }
  /// h^1 of the internal graph; bare edges count as trees.
  int loop_order() const;
  /// Loop order this component contributes to the assembled graph.
  int assembled_loop_contribution() const { return loop_order() + special_ports() - 1; }

  bool operator==(const Component&) const = default;
};

struct Edge {
  int end[2] = {kSpecial, kSpecial};
  bool mark[2] = {false, false};  // only meaningful where end[i] == kSpecial

  bool is_tadpole() const { return end[0] == kSpecial && end[1] == kSpecial; }
  bool is_port() const { return (end[0] == kSpecial) != (end[1] == kSpecial); }
  bool is_internal() const { return end[0] != kSpecial && end[1] != kSpecial; }
  bool operator==(const Edge& o) const {
    return end[0] == o.end[0] && end[1] == o.end[1] && mark[0] == o.mark[0] &&
           mark[1] == o.mark[1];
  }
};

struct Leg {
  int at = kSpecial;
  bool marked = false;
  bool operator==(const Leg&) const = default;
};

/// Reference to a half-edge at the special vertex: either an end of a
/// structural edge, or the special end of a leg (edge = -label).
struct HalfEdge {
  int edge = 0;
  int end = 0;

  static HalfEdge of_edge(int e, int end) { return {e, end}; }
  static HalfEdge of_leg(int label) { return {-label, 0}; }
  bool is_leg() const { return edge < 0; }
  int leg_label() const { return -edge; }
  bool operator==(const HalfEdge&) const = default;
};

/// An oriented graph generator.
///
/// The orientation is the order of `edges` followed by the order of `marks`
/// (the distinguished half-edges). `legs[l - 1]` holds leg l. Internal
/// vertices are numbered 0..vertices-1.
struct Generator {
  int vertices = 0;
  std::vector<Edge> edges;
  std::vector<Leg> legs;
  std::vector<HalfEdge> marks;

  int n() const { return static_cast<int>(legs.size()); }
  int w() const { return static_cast<int>(marks.size()); }
  int structural_edges() const { return static_cast<int>(edges.size()); }
  /// Loop order of the assembled graph (legs do not contribute).
  int loop_order() const { return structural_edges() - vertices; }
  int genus() const { return loop_order() + 1; }
  int special_valency() const;
  bool operator==(const Generator&) const = default;
};

/// Canonical key: identifies the isomorphism class (legs fixed).
using Key = std::string;

struct Canonical {
  Generator graph;  // canonical representative with canonical orientation
  Key key;
  int sign = 1;     // input orientation = sign * canonical orientation
};

// --- bookkeeping -----------------------------------------------------------

int excess_component(const Component& c);
int excess_generator(const Generator& g);
int excess_generator_by_components(const Generator& g);
int excess_complex(int g, int n);
int degree(const Generator& g);

/// Structural validity (valencies, tadpoles, connectivity, mark bookkeeping).
/// Returns an empty string if valid, else a reason.
std::string validate(const Generator& g);

// --- canonical forms ---------------------------------------------------------

/// Canonical representative and orientation sign, or nullopt if the generator
/// has an orientation-reversing automorphism (and so vanishes).
std::optional<Canonical> canonicalize(const Generator& g);

/// Canonical code of a single component (leg labels included), or nullopt if
/// the component alone already has an odd automorphism.
std::optional<std::string> component_code(const Component& c);

/// Same generator with leg l renamed to perm[l-1] (perm is 1-based image).
Generator relabel_legs(const Generator& g, const std::vector<int>& perm);

// --- blown-up representation -------------------------------------------------

/// Builds an oriented generator from components on legs 1..n. Orientation:
/// structural edges component by component (internal edges, then port edges in
/// port order), then omega ports in the same order.
Generator assemble(const std::vector<Component>& components, int n);

/// Components of `g`, ordered and numbered as in its canonical form when `g`
/// is canonical, so that assemble(blow_up(g), n) == g.
std::vector<Component> blow_up(const Generator& g);

/// Permutation parity (+1/-1) of a 0-based permutation vector.
int permutation_sign(const std::vector<int>& perm);

// --- text / json -------------------------------------------------------------

std::string to_text(const Generator& g);
std::string to_text(const Component& c);

}  // namespace w11
