#include "w11/generator.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace w11 {

int Component::omega_ports() const {
  return static_cast<int>(
      std::count_if(ports.begin(), ports.end(),
                    [](const PortAttachment& p) { return p.port.kind == PortKind::Omega; }));
}

int Component::epsilon_ports() const {
  return static_cast<int>(
      std::count_if(ports.begin(), ports.end(),
                    [](const PortAttachment& p) { return p.port.kind == PortKind::Epsilon; }));
}

int Component::legs() const {
  return static_cast<int>(std::count_if(ports.begin(), ports.end(),
                                        [](const PortAttachment& p) { return p.port.is_leg(); }));
}

int Component::loop_order() const {
  if (vertices == 0) return 0;
  return static_cast<int>(edges.size()) - vertices + 1;
}

int Generator::special_valency() const {
  int val = 0;
  for (const Edge& e : edges)
    val += (e.end[0] == kSpecial) + (e.end[1] == kSpecial);
  for (const Leg& l : legs) val += l.at == kSpecial;
  return val;
}

int excess_component(const Component& c) {
  return 3 * c.loop_order() + 3 * c.epsilon_ports() + 2 * c.legs() + c.omega_ports() - 3;
}

int excess_generator(const Generator& g) {
  return 3 * g.loop_order() + 2 * g.n() - 2 * g.w();
}

int excess_generator_by_components(const Generator& g) {
  int total = 0;
  for (const Component& c : blow_up(g)) total += excess_component(c);
  return total;
}

int excess_complex(int g, int n) { return 3 * g + 2 * n - 25; }

int degree(const Generator& g) {
  // 22 + |E| - n - w with |E| counting legs as edges.
  const int all_edges = g.structural_edges() + g.n();
  return 22 + all_edges - g.n() - g.w();
}

int permutation_sign(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
      seen[j] = 1;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

std::string validate(const Generator& g) {
  const int m = g.vertices;
  const int n = g.n();
  auto in_range = [m](int v) { return v == kSpecial || (v >= 0 && v < m); };
  std::vector<int> valency(static_cast<std::size_t>(m), 0);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const Edge& e = g.edges[i];
    if (!in_range(e.end[0]) || !in_range(e.end[1])) return "edge endpoint out of range";
    if (e.end[0] != kSpecial && e.end[0] == e.end[1]) return "tadpole at an internal vertex";
    for (int s = 0; s < 2; ++s) {
      if (e.mark[s] && e.end[s] != kSpecial) return "mark on a non-special half-edge";
      if (e.end[s] != kSpecial) ++valency[static_cast<std::size_t>(e.end[s])];
    }
  }
  for (int l = 0; l < n; ++l) {
    const Leg& leg = g.legs[static_cast<std::size_t>(l)];
    if (!in_range(leg.at)) return "leg attachment out of range";
    if (leg.marked && leg.at != kSpecial) return "marked leg away from the special vertex";
    if (leg.at != kSpecial) ++valency[static_cast<std::size_t>(leg.at)];
  }
  // marks must list each marked half-edge exactly once
  std::size_t marked = 0;
  for (const Edge& e : g.edges) marked += e.mark[0] + e.mark[1];
  for (const Leg& l : g.legs) marked += l.marked;
  if (marked != g.marks.size()) return "orientation does not list every distinguished half-edge";
  for (std::size_t i = 0; i < g.marks.size(); ++i) {
    const HalfEdge& h = g.marks[i];
    if (h.is_leg()) {
      if (h.leg_label() > n || !g.legs[static_cast<std::size_t>(h.leg_label() - 1)].marked)
        return "orientation lists an unmarked leg";
    } else {
      if (h.edge >= static_cast<int>(g.edges.size()) || h.end < 0 || h.end > 1 ||
          !g.edges[static_cast<std::size_t>(h.edge)].mark[h.end])
        return "orientation lists an unmarked half-edge";
    }
    for (std::size_t j = 0; j < i; ++j)
      if (g.marks[j] == h) return "orientation lists a half-edge twice";
  }
  for (int v = 0; v < m; ++v)
    if (valency[static_cast<std::size_t>(v)] < 3) return "internal vertex of valency < 3";
  if (g.special_valency() < 2) return "special vertex of valency < 2";
  // connectivity through the special vertex
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(m + 1));
  auto id = [](int v) { return v == kSpecial ? 0 : v + 1; };
  for (const Edge& e : g.edges) {
    adj[static_cast<std::size_t>(id(e.end[0]))].push_back(id(e.end[1]));
    adj[static_cast<std::size_t>(id(e.end[1]))].push_back(id(e.end[0]));
  }
  std::vector<char> seen(static_cast<std::size_t>(m + 1), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    const int v = stack.back();
    stack.pop_back();
    for (int u : adj[static_cast<std::size_t>(v)])
      if (!seen[static_cast<std::size_t>(u)]) {
        seen[static_cast<std::size_t>(u)] = 1;
        stack.push_back(u);
      }
  }
  if (std::find(seen.begin(), seen.end(), 0) != seen.end()) return "graph is disconnected";
  return {};
}

namespace {

enum class RawKind { Vertices, Tadpole, SpecialLeg };

struct RawComponent {
  RawKind kind = RawKind::Vertices;
  std::vector<int> verts;  // global ids, increasing
  std::vector<int> edges;  // global edge ids, increasing
  std::vector<int> legs;   // labels, increasing
};

struct Descriptor {
  std::uint8_t t, a, b;
  auto operator<=>(const Descriptor&) const = default;
};

std::vector<RawComponent> decompose(const Generator& g) {
  const int m = g.vertices;
  std::vector<int> parent(static_cast<std::size_t>(m));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (const Edge& e : g.edges)
    if (e.is_internal()) parent[static_cast<std::size_t>(find(e.end[0]))] = find(e.end[1]);

  std::vector<int> comp_of_root(static_cast<std::size_t>(m), -1);
  std::vector<RawComponent> out;
  for (int v = 0; v < m; ++v) {
    const int r = find(v);
    if (comp_of_root[static_cast<std::size_t>(r)] < 0) {
      comp_of_root[static_cast<std::size_t>(r)] = static_cast<int>(out.size());
      out.push_back({});
    }
    out[static_cast<std::size_t>(comp_of_root[static_cast<std::size_t>(r)])].verts.push_back(v);
  }
  auto comp_of_vertex = [&](int v) {
    return comp_of_root[static_cast<std::size_t>(find(v))];
  };
  for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
    const Edge& e = g.edges[static_cast<std::size_t>(i)];
    if (e.is_tadpole()) {
      RawComponent rc;
      rc.kind = RawKind::Tadpole;
      rc.edges.push_back(i);
      out.push_back(std::move(rc));
    } else {
      const int v = e.end[0] != kSpecial ? e.end[0] : e.end[1];
      out[static_cast<std::size_t>(comp_of_vertex(v))].edges.push_back(i);
    }
  }
  for (int l = 1; l <= g.n(); ++l) {
    const Leg& leg = g.legs[static_cast<std::size_t>(l - 1)];
    if (leg.at == kSpecial) {
      RawComponent rc;
      rc.kind = RawKind::SpecialLeg;
      rc.legs.push_back(l);
      out.push_back(std::move(rc));
    } else {
      out[static_cast<std::size_t>(comp_of_vertex(leg.at))].legs.push_back(l);
    }
  }
  return out;
}

// Per-component canonical labeling data.
struct Labeled {
  std::string code;
  std::vector<int> label;              // label[local vertex] for the chosen labeling
  std::vector<int> edge_order;         // global edge ids in canonical order
  bool odd = false;                    // component has an odd automorphism
};

std::uint8_t u8(int x) { return static_cast<std::uint8_t>(x); }

// Marked half-edges of edge e as a count.
int mark_count(const Edge& e) { return e.mark[0] + e.mark[1]; }

bool port_marked(const Edge& e) { return e.end[0] == kSpecial ? e.mark[0] : e.mark[1]; }

int port_vertex(const Edge& e) { return e.end[0] == kSpecial ? e.end[1] : e.end[0]; }

Labeled label_component(const Generator& g, const RawComponent& rc,
                        const std::vector<int>& mark_index_of_edge_end /* 2*edge+end */) {
  Labeled out;
  if (rc.kind == RawKind::Tadpole) {
    const Edge& e = g.edges[static_cast<std::size_t>(rc.edges[0])];
    out.code.push_back(0);
    out.code.push_back(3);
    out.code.push_back(static_cast<char>(mark_count(e)));
    out.code.push_back(0);
    out.edge_order = rc.edges;
    out.odd = mark_count(e) == 2;  // swapping the two marked ends
    return out;
  }
  if (rc.kind == RawKind::SpecialLeg) {
    const int l = rc.legs[0];
    out.code.push_back(0);
    out.code.push_back(4);
    out.code.push_back(static_cast<char>(l));
    out.code.push_back(g.legs[static_cast<std::size_t>(l - 1)].marked ? 0 : 1);
    return out;
  }

  const int m = static_cast<int>(rc.verts.size());
  auto local = [&rc](int v) {
    return static_cast<int>(std::lower_bound(rc.verts.begin(), rc.verts.end(), v) -
                            rc.verts.begin());
  };
  // Raw incidence data in local vertex ids.
  struct RawItem {
    int t;  // 0 internal, 1 port, 2 leg
    int a, b;
    int edge;  // global edge id or -1 for legs
  };
  std::vector<RawItem> items;
  std::vector<int> valency(static_cast<std::size_t>(m), 0), omegas(static_cast<std::size_t>(m), 0),
      epsilons(static_cast<std::size_t>(m), 0);
  std::vector<std::vector<int>> neighbours(static_cast<std::size_t>(m));
  std::vector<std::vector<int>> leg_labels(static_cast<std::size_t>(m));
  for (int eid : rc.edges) {
    const Edge& e = g.edges[static_cast<std::size_t>(eid)];
    if (e.is_internal()) {
      const int a = local(e.end[0]), b = local(e.end[1]);
      items.push_back({0, a, b, eid});
      ++valency[static_cast<std::size_t>(a)];
      ++valency[static_cast<std::size_t>(b)];
      neighbours[static_cast<std::size_t>(a)].push_back(b);
      neighbours[static_cast<std::size_t>(b)].push_back(a);
    } else {
      const int a = local(port_vertex(e));
      const bool mk = port_marked(e);
      items.push_back({1, a, mk ? 0 : 1, eid});
      ++valency[static_cast<std::size_t>(a)];
      ++(mk ? omegas : epsilons)[static_cast<std::size_t>(a)];
    }
  }
  for (int l : rc.legs) {
    const int a = local(g.legs[static_cast<std::size_t>(l - 1)].at);
    items.push_back({2, a, l, -1});
    ++valency[static_cast<std::size_t>(a)];
    leg_labels[static_cast<std::size_t>(a)].push_back(l);
  }

  // Isomorphism-invariant vertex signature for cell refinement.
  std::vector<std::vector<int>> sig(static_cast<std::size_t>(m));
  for (int v = 0; v < m; ++v) {
    auto& s = sig[static_cast<std::size_t>(v)];
    s = {valency[static_cast<std::size_t>(v)], omegas[static_cast<std::size_t>(v)],
         epsilons[static_cast<std::size_t>(v)]};
    std::vector<int> nb;
    for (int u : neighbours[static_cast<std::size_t>(v)])
      nb.push_back(valency[static_cast<std::size_t>(u)]);
    std::sort(nb.begin(), nb.end());
    s.push_back(static_cast<int>(leg_labels[static_cast<std::size_t>(v)].size()));
    s.insert(s.end(), leg_labels[static_cast<std::size_t>(v)].begin(),
             leg_labels[static_cast<std::size_t>(v)].end());
    s.push_back(-1);
    s.insert(s.end(), nb.begin(), nb.end());
  }
  std::vector<int> order(static_cast<std::size_t>(m));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&sig](int x, int y) {
    return sig[static_cast<std::size_t>(x)] < sig[static_cast<std::size_t>(y)];
  });
  std::vector<std::pair<int, int>> cells;
  for (int i = 0; i < m;) {
    int j = i + 1;
    while (j < m && sig[static_cast<std::size_t>(order[static_cast<std::size_t>(j)])] ==
                        sig[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])])
      ++j;
    cells.emplace_back(i, j);
    i = j;
  }
  for (auto [b, e] : cells) std::sort(order.begin() + b, order.begin() + e);

  std::vector<int> label(static_cast<std::size_t>(m));
  std::vector<Descriptor> desc(items.size());
  std::vector<int> idx(items.size());

  // Local orientation sign of a labeling: parity of local edges and marks.
  auto local_sign = [&](const std::vector<int>& edge_order) {
    // edge_order: global edge ids in canonical order
    std::vector<int> pos_of_rank;  // rank in increasing original edge id -> canonical rank
    std::vector<int> sorted_edges = rc.edges;  // increasing original ids
    std::vector<int> perm(sorted_edges.size());
    for (std::size_t r = 0; r < edge_order.size(); ++r) {
      const auto it = std::lower_bound(sorted_edges.begin(), sorted_edges.end(), edge_order[r]);
      perm[static_cast<std::size_t>(it - sorted_edges.begin())] = static_cast<int>(r);
    }
    int s = permutation_sign(perm);
    // marks: canonical mark order follows edge_order; compare with original mark indices
    std::vector<int> mark_ids;
    for (int eid : edge_order) {
      const Edge& e = g.edges[static_cast<std::size_t>(eid)];
      for (int end = 0; end < 2; ++end)
        if (e.mark[end]) mark_ids.push_back(mark_index_of_edge_end[static_cast<std::size_t>(2 * eid + end)]);
    }
    std::vector<int> sorted_marks = mark_ids;
    std::sort(sorted_marks.begin(), sorted_marks.end());
    std::vector<int> mperm(mark_ids.size());
    for (std::size_t r = 0; r < mark_ids.size(); ++r) {
      const auto it = std::lower_bound(sorted_marks.begin(), sorted_marks.end(), mark_ids[r]);
      mperm[static_cast<std::size_t>(it - sorted_marks.begin())] = static_cast<int>(r);
    }
    return s * permutation_sign(mperm);
  };

  bool first = true;
  int first_sign = 1;
  while (true) {
    for (int k = 0; k < m; ++k) label[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = k;
    for (std::size_t i = 0; i < items.size(); ++i) {
      const RawItem& it = items[i];
      if (it.t == 0) {
        const int a = label[static_cast<std::size_t>(it.a)], b = label[static_cast<std::size_t>(it.b)];
        desc[i] = {0, u8(std::min(a, b)), u8(std::max(a, b))};
      } else {
        desc[i] = {u8(it.t), u8(label[static_cast<std::size_t>(it.a)]), u8(it.b)};
      }
    }
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&desc](int x, int y) { return desc[static_cast<std::size_t>(x)] < desc[static_cast<std::size_t>(y)]; });
    std::string code;
    code.reserve(1 + 3 * items.size());
    code.push_back(static_cast<char>(m));
    for (int i : idx) {
      code.push_back(static_cast<char>(desc[static_cast<std::size_t>(i)].t));
      code.push_back(static_cast<char>(desc[static_cast<std::size_t>(i)].a));
      code.push_back(static_cast<char>(desc[static_cast<std::size_t>(i)].b));
    }
    if (first || code < out.code) {
      out.code = std::move(code);
      out.label = label;
      out.edge_order.clear();
      for (int i : idx)
        if (items[static_cast<std::size_t>(i)].edge >= 0)
          out.edge_order.push_back(items[static_cast<std::size_t>(i)].edge);
      first_sign = local_sign(out.edge_order);
      out.odd = false;
      first = false;
    } else if (code == out.code && !out.odd) {
      std::vector<int> eorder;
      for (int i : idx)
        if (items[static_cast<std::size_t>(i)].edge >= 0)
          eorder.push_back(items[static_cast<std::size_t>(i)].edge);
      if (local_sign(eorder) != first_sign) out.odd = true;
    }
    // advance to the next labeling consistent with the cells
    bool advanced = false;
    for (auto c = cells.rbegin(); c != cells.rend(); ++c) {
      if (std::next_permutation(order.begin() + c->first, order.begin() + c->second)) {
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  // identical descriptors: internal multi-edges or two epsilon ports at one vertex
  for (std::size_t i = 1 + 0; i + 2 < out.code.size(); i += 3) {
    if (i + 5 >= out.code.size()) break;
    if (out.code.compare(i, 3, out.code, i + 3, 3) == 0) {
      const int t = out.code[i];
      const int b = out.code[i + 2];
      if (t == 0 || (t == 1 && b == 1)) out.odd = true;
    }
  }
  return out;
}

}  // namespace

std::optional<Canonical> canonicalize(const Generator& g) {
  const std::vector<RawComponent> raw = decompose(g);
  std::vector<int> mark_index_of_edge_end(2 * g.edges.size(), -1);
  std::vector<int> mark_index_of_leg(static_cast<std::size_t>(g.n()) + 1, -1);
  for (int i = 0; i < g.w(); ++i) {
    const HalfEdge& h = g.marks[static_cast<std::size_t>(i)];
    if (h.is_leg())
      mark_index_of_leg[static_cast<std::size_t>(h.leg_label())] = i;
    else
      mark_index_of_edge_end[static_cast<std::size_t>(2 * h.edge + h.end)] = i;
  }

  std::vector<Labeled> lab;
  lab.reserve(raw.size());
  for (const RawComponent& rc : raw) {
    lab.push_back(label_component(g, rc, mark_index_of_edge_end));
    if (lab.back().odd) return std::nullopt;
  }
  std::vector<int> comp_order(raw.size());
  std::iota(comp_order.begin(), comp_order.end(), 0);
  std::stable_sort(comp_order.begin(), comp_order.end(), [&lab](int a, int b) {
    return lab[static_cast<std::size_t>(a)].code < lab[static_cast<std::size_t>(b)].code;
  });
  // swapping two identical components moves their edges and marks as blocks
  for (std::size_t i = 1; i < comp_order.size(); ++i) {
    const auto& a = lab[static_cast<std::size_t>(comp_order[i - 1])];
    const auto& b = lab[static_cast<std::size_t>(comp_order[i])];
    if (a.code == b.code) {
      const RawComponent& rc = raw[static_cast<std::size_t>(comp_order[i])];
      int marks = 0;
      for (int eid : rc.edges) marks += mark_count(g.edges[static_cast<std::size_t>(eid)]);
      for (int l : rc.legs) marks += g.legs[static_cast<std::size_t>(l - 1)].marked;
      if ((static_cast<int>(rc.edges.size()) + marks) % 2 != 0) return std::nullopt;
    }
  }

  Canonical out;
  Generator& c = out.graph;
  c.vertices = g.vertices;
  c.legs.assign(g.legs.size(), Leg{});
  std::vector<int> edge_perm(g.edges.size(), -1);
  std::vector<int> mark_perm(g.marks.size(), -1);
  std::vector<int> new_vertex(static_cast<std::size_t>(g.vertices), -1);
  int vertex_offset = 0;
  for (std::size_t ci = 0; ci < comp_order.size(); ++ci) {
    const RawComponent& rc = raw[static_cast<std::size_t>(comp_order[ci])];
    const Labeled& L = lab[static_cast<std::size_t>(comp_order[ci])];
    if (!out.key.empty()) out.key.push_back('\xff');
    out.key += L.code;
    for (std::size_t k = 0; k < rc.verts.size(); ++k)
      new_vertex[static_cast<std::size_t>(rc.verts[k])] = vertex_offset + L.label[k];
    vertex_offset += static_cast<int>(rc.verts.size());
    for (int eid : L.edge_order) {
      const Edge& e = g.edges[static_cast<std::size_t>(eid)];
      const int new_id = static_cast<int>(c.edges.size());
      edge_perm[static_cast<std::size_t>(eid)] = new_id;
      Edge ne;
      if (e.is_internal()) {
        const int a = new_vertex[static_cast<std::size_t>(e.end[0])];
        const int b = new_vertex[static_cast<std::size_t>(e.end[1])];
        ne.end[0] = std::min(a, b);
        ne.end[1] = std::max(a, b);
        c.edges.push_back(ne);
      } else if (e.is_port()) {
        const int se = e.end[0] == kSpecial ? 0 : 1;
        ne.end[0] = new_vertex[static_cast<std::size_t>(e.end[1 - se])];
        ne.end[1] = kSpecial;
        ne.mark[1] = e.mark[se];
        c.edges.push_back(ne);
        if (e.mark[se]) {
          mark_perm[static_cast<std::size_t>(mark_index_of_edge_end[static_cast<std::size_t>(2 * eid + se)])] =
              static_cast<int>(c.marks.size());
          c.marks.push_back(HalfEdge::of_edge(new_id, 1));
        }
      } else {  // tadpole at the special vertex; marked end first
        const int me = e.mark[0] ? 0 : 1;
        ne.mark[0] = e.mark[me];
        ne.mark[1] = e.mark[1 - me];
        c.edges.push_back(ne);
        if (e.mark[me]) {
          mark_perm[static_cast<std::size_t>(mark_index_of_edge_end[static_cast<std::size_t>(2 * eid + me)])] =
              static_cast<int>(c.marks.size());
          c.marks.push_back(HalfEdge::of_edge(new_id, 0));
        }
      }
    }
    for (int l : rc.legs) {
      const Leg& leg = g.legs[static_cast<std::size_t>(l - 1)];
      Leg nl;
      nl.at = leg.at == kSpecial ? kSpecial : new_vertex[static_cast<std::size_t>(leg.at)];
      nl.marked = leg.marked;
      c.legs[static_cast<std::size_t>(l - 1)] = nl;
      if (leg.marked) {
        mark_perm[static_cast<std::size_t>(mark_index_of_leg[static_cast<std::size_t>(l)])] =
            static_cast<int>(c.marks.size());
        c.marks.push_back(HalfEdge::of_leg(l));
      }
    }
  }
  out.sign = permutation_sign(edge_perm) * permutation_sign(mark_perm);
  return out;
}

std::optional<std::string> component_code(const Component& comp) {
  // Embed the component alone; leg labels are kept as given.
  int max_label = 0;
  for (const auto& p : comp.ports)
    if (p.port.is_leg()) max_label = std::max(max_label, p.port.label);
  Generator g;
  g.vertices = comp.vertices;
  g.legs.assign(static_cast<std::size_t>(max_label), Leg{});
  for (auto [a, b] : comp.edges) {
    Edge e;
    e.end[0] = a;
    e.end[1] = b;
    g.edges.push_back(e);
  }
  if (comp.vertices == 0) {
    const Port& p0 = comp.ports.at(0).port;
    const Port& p1 = comp.ports.at(1).port;
    if (p0.is_special() && p1.is_special()) {
      Edge e;
      e.mark[0] = p0.kind == PortKind::Omega;
      e.mark[1] = p1.kind == PortKind::Omega;
      g.edges.push_back(e);
      for (int s = 0; s < 2; ++s)
        if (e.mark[s]) g.marks.push_back(HalfEdge::of_edge(0, s));
    } else {
      const Port& lp = p0.is_leg() ? p0 : p1;
      const Port& sp = p0.is_leg() ? p1 : p0;
      g.legs[static_cast<std::size_t>(lp.label - 1)] = {kSpecial, sp.kind == PortKind::Omega};
      if (sp.kind == PortKind::Omega) g.marks.push_back(HalfEdge::of_leg(lp.label));
    }
  } else {
    for (const auto& p : comp.ports) {
      if (p.port.is_leg()) {
        g.legs[static_cast<std::size_t>(p.port.label - 1)] = {p.at, false};
      } else {
        Edge e;
        e.end[0] = p.at;
        e.end[1] = kSpecial;
        e.mark[1] = p.port.kind == PortKind::Omega;
        g.edges.push_back(e);
        if (e.mark[1]) g.marks.push_back(HalfEdge::of_edge(static_cast<int>(g.edges.size()) - 1, 1));
      }
    }
  }
  // Unused labels would form spurious components; drop them from the decomposition
  // by only labelling the parts that belong to the component.
  const std::vector<RawComponent> raw = decompose(g);
  std::vector<int> mark_index(2 * g.edges.size(), -1);
  for (int i = 0; i < g.w(); ++i) {
    const HalfEdge& h = g.marks[static_cast<std::size_t>(i)];
    if (!h.is_leg()) mark_index[static_cast<std::size_t>(2 * h.edge + h.end)] = i;
  }
  for (const RawComponent& rc : raw) {
    if (rc.kind == RawKind::SpecialLeg) {
      const int l = rc.legs[0];
      const bool used = std::any_of(comp.ports.begin(), comp.ports.end(), [l](const PortAttachment& p) {
        return p.port.is_leg() && p.port.label == l;
      });
      if (!used) continue;
    }
    Labeled L = label_component(g, rc, mark_index);
    if (L.odd) return std::nullopt;
    return L.code;
  }
  return std::string{};
}

Generator relabel_legs(const Generator& g, const std::vector<int>& perm) {
  Generator r = g;
  for (int l = 1; l <= g.n(); ++l)
    r.legs[static_cast<std::size_t>(perm[static_cast<std::size_t>(l - 1)] - 1)] =
        g.legs[static_cast<std::size_t>(l - 1)];
  for (HalfEdge& h : r.marks)
    if (h.is_leg()) h = HalfEdge::of_leg(perm[static_cast<std::size_t>(h.leg_label() - 1)]);
  return r;
}

Generator assemble(const std::vector<Component>& components, int n) {
  Generator g;
  g.legs.assign(static_cast<std::size_t>(n), Leg{});
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  auto take_leg = [&](int l) {
    if (l < 1 || l > n) throw Error("assemble: leg label " + std::to_string(l) + " outside 1.." + std::to_string(n));
    if (used[static_cast<std::size_t>(l)]) throw Error("assemble: duplicate leg label " + std::to_string(l));
    used[static_cast<std::size_t>(l)] = 1;
  };
  for (const Component& comp : components) {
    const int off = g.vertices;
    if (comp.vertices == 0) {
      if (comp.ports.size() != 2 || !comp.edges.empty() || comp.ports[0].at != kFree ||
          comp.ports[1].at != kFree)
        throw Error("assemble: a bare edge needs exactly two free ports");
      const Port& p0 = comp.ports[0].port;
      const Port& p1 = comp.ports[1].port;
      if (p0.is_leg() && p1.is_leg()) throw Error("assemble: bare edge between two legs");
      if (p0.is_special() && p1.is_special()) {
        Edge e;
        e.mark[0] = p0.kind == PortKind::Omega;
        e.mark[1] = p1.kind == PortKind::Omega;
        const int id = static_cast<int>(g.edges.size());
        g.edges.push_back(e);
        for (int s = 0; s < 2; ++s)
          if (e.mark[s]) g.marks.push_back(HalfEdge::of_edge(id, s));
      } else {
        const Port& lp = p0.is_leg() ? p0 : p1;
        const Port& sp = p0.is_leg() ? p1 : p0;
        take_leg(lp.label);
        g.legs[static_cast<std::size_t>(lp.label - 1)] = {kSpecial, sp.kind == PortKind::Omega};
        if (sp.kind == PortKind::Omega) g.marks.push_back(HalfEdge::of_leg(lp.label));
      }
      continue;
    }
    g.vertices += comp.vertices;
    for (auto [a, b] : comp.edges) {
      if (a < 0 || b < 0 || a >= comp.vertices || b >= comp.vertices)
        throw Error("assemble: internal edge endpoint out of range");
      Edge e;
      e.end[0] = off + std::min(a, b);
      e.end[1] = off + std::max(a, b);
      g.edges.push_back(e);
    }
    for (const PortAttachment& p : comp.ports) {
      if (p.at < 0 || p.at >= comp.vertices) throw Error("assemble: port attached outside the component");
      if (p.port.is_leg()) {
        take_leg(p.port.label);
        g.legs[static_cast<std::size_t>(p.port.label - 1)] = {off + p.at, false};
      } else {
        Edge e;
        e.end[0] = off + p.at;
        e.end[1] = kSpecial;
        e.mark[1] = p.port.kind == PortKind::Omega;
        g.edges.push_back(e);
      }
    }
    // marks in port order
    int eid = static_cast<int>(g.edges.size());
    for (auto it = comp.ports.rbegin(); it != comp.ports.rend(); ++it)
      if (it->port.is_special()) --eid;
    for (const PortAttachment& p : comp.ports) {
      if (!p.port.is_special()) continue;
      if (p.port.kind == PortKind::Omega) g.marks.push_back(HalfEdge::of_edge(eid, 1));
      ++eid;
    }
  }
  for (int l = 1; l <= n; ++l)
    if (!used[static_cast<std::size_t>(l)]) throw Error("assemble: missing leg label " + std::to_string(l));
  if (g.special_valency() < 2) throw Error("assemble: special vertex of valency < 2");
  if (const std::string why = validate(g); !why.empty()) throw Error("assemble: " + why);
  return g;
}

std::vector<Component> blow_up(const Generator& g) {
  const std::vector<RawComponent> raw = decompose(g);
  std::vector<int> dummy(2 * g.edges.size(), 0);
  for (int i = 0; i < g.w(); ++i) {
    const HalfEdge& h = g.marks[static_cast<std::size_t>(i)];
    if (!h.is_leg()) dummy[static_cast<std::size_t>(2 * h.edge + h.end)] = i;
  }
  // order components as in the canonical form
  std::vector<std::string> codes;
  for (const RawComponent& rc : raw) codes.push_back(label_component(g, rc, dummy).code);
  std::vector<int> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&codes](int a, int b) {
    return codes[static_cast<std::size_t>(a)] < codes[static_cast<std::size_t>(b)];
  });
  std::vector<Component> out;
  for (int ci : order) {
    const RawComponent& rc = raw[static_cast<std::size_t>(ci)];
    Component comp;
    if (rc.kind == RawKind::Tadpole) {
      const Edge& e = g.edges[static_cast<std::size_t>(rc.edges[0])];
      const int first = e.mark[0] ? 0 : (e.mark[1] ? 1 : 0);
      for (int s : {first, 1 - first})
        comp.ports.push_back({kFree, e.mark[s] ? Port::omega() : Port::epsilon()});
    } else if (rc.kind == RawKind::SpecialLeg) {
      const int l = rc.legs[0];
      comp.ports.push_back({kFree, g.legs[static_cast<std::size_t>(l - 1)].marked ? Port::omega() : Port::epsilon()});
      comp.ports.push_back({kFree, Port::leg(l)});
    } else {
      comp.vertices = static_cast<int>(rc.verts.size());
      auto local = [&rc](int v) {
        return static_cast<int>(std::lower_bound(rc.verts.begin(), rc.verts.end(), v) - rc.verts.begin());
      };
      for (int eid : rc.edges) {
        const Edge& e = g.edges[static_cast<std::size_t>(eid)];
        if (e.is_internal()) comp.edges.emplace_back(local(e.end[0]), local(e.end[1]));
      }
      for (int eid : rc.edges) {
        const Edge& e = g.edges[static_cast<std::size_t>(eid)];
        if (e.is_port())
          comp.ports.push_back({local(port_vertex(e)), port_marked(e) ? Port::omega() : Port::epsilon()});
      }
      for (int l : rc.legs)
        comp.ports.push_back({local(g.legs[static_cast<std::size_t>(l - 1)].at), Port::leg(l)});
    }
    out.push_back(std::move(comp));
  }
  return out;
}

namespace {

std::string port_text(const Port& p) {
  switch (p.kind) {
    case PortKind::Omega: return "ω";
    case PortKind::Epsilon: return "ε";
    case PortKind::Leg: return std::to_string(p.label);
  }
  return "?";
}

}  // namespace

std::string to_text(const Component& c) {
  if (c.vertices == 0) {
    const Port& a = c.ports.at(0).port;
    const Port& b = c.ports.at(1).port;
    if (a.is_special() && b.is_special()) return "(" + port_text(a) + port_text(b) + ")";
    const Port& s = a.is_leg() ? b : a;
    const Port& l = a.is_leg() ? a : b;
    return port_text(s) + port_text(l);
  }
  std::vector<std::vector<Port>> at(static_cast<std::size_t>(c.vertices));
  for (const auto& p : c.ports) at[static_cast<std::size_t>(p.at)].push_back(p.port);
  std::ostringstream os;
  os << "(";
  for (int v = 0; v < c.vertices; ++v) {
    if (v) os << " | ";
    auto ports = at[static_cast<std::size_t>(v)];
    std::sort(ports.begin(), ports.end());
    const bool all_special = std::all_of(ports.begin(), ports.end(), [](const Port& p) { return p.is_special(); });
    for (std::size_t i = 0; i < ports.size(); ++i) {
      if (i && !all_special) os << ' ';
      os << port_text(ports[i]);
    }
  }
  // a path 0-1-2-... is implied; anything else is spelled out
  bool path = static_cast<int>(c.edges.size()) == c.vertices - 1;
  if (path) {
    for (int v = 0; v + 1 < c.vertices; ++v) {
      const bool has = std::any_of(c.edges.begin(), c.edges.end(), [v](const std::pair<int, int>& e) {
        return (e.first == v && e.second == v + 1) || (e.first == v + 1 && e.second == v);
      });
      path = path && has;
    }
  }
  if (!path) {
    os << " ;";
    for (auto [a, b] : c.edges) os << ' ' << a << '-' << b;
  }
  os << ")";
  return os.str();
}

std::string to_text(const Generator& g) {
  std::string s;
  for (const Component& c : blow_up(g)) {
    if (!s.empty()) s += ' ';
    s += to_text(c);
  }
  return s;
}

}  // namespace w11
