#include "w11/catalog.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace w11 {

namespace {

const Port W = Port::omega();
const Port Eps = Port::epsilon();
Port S(int slot) { return Port::leg(slot); }

Component star(std::vector<Port> ports) {
  Component c;
  c.vertices = 1;
  for (const Port& p : ports) c.ports.push_back({0, p});
  return c;
}

Component bare(Port a, Port b) {
  Component c;
  c.ports = {{kFree, a}, {kFree, b}};
  return c;
}

// Path of vertices, vertex v carrying ports[v].
Component path(const std::vector<std::vector<Port>>& ports) {
  Component c;
  c.vertices = static_cast<int>(ports.size());
  for (int v = 0; v + 1 < c.vertices; ++v) c.edges.emplace_back(v, v + 1);
  for (int v = 0; v < c.vertices; ++v)
    for (const Port& p : ports[static_cast<std::size_t>(v)]) c.ports.push_back({v, p});
  return c;
}

ComponentTemplate make(Component shape, std::string name, bool essential) {
  ComponentTemplate t;
  t.slots = shape.legs();
  t.excess = excess_component(shape);
  t.essential = essential;
  t.in_s = is_s_component(shape);
  t.name = std::move(name);
  const auto code = template_code(shape);
  if (!code) throw Error("catalog template vanishes: " + t.name);
  t.code = *code;
  t.shape = std::move(shape);
  return t;
}

std::vector<ComponentTemplate> essential_templates() {
  std::vector<ComponentTemplate> out;
  out.push_back(make(bare(W, S(1)), "ω-leg j", true));
  out.push_back(make(star({W, W, W}), "tripleo", true));
  out.push_back(make(bare(W, Eps), "ωε tadpole", true));
  out.push_back(make(star({S(1), W, W}), "(j ω ω)", true));
  out.push_back(make(bare(Eps, S(1)), "ε-leg j", true));
  out.push_back(make(star({Eps, W, W}), "(ε ω ω)", true));
  out.push_back(make(star({S(1), S(2), W}), "(i j ω)", true));
  out.push_back(make(bare(Eps, Eps), "εε tadpole", true));
  out.push_back(make(star({Eps, S(1), W}), "(ε j ω)", true));
  out.push_back(make(path({{S(1), W}, {W, S(2)}}), "(i ω | ω j)", true));
  out.push_back(make(star({Eps, S(1), S(2)}), "Γ^(4)_{εij} component", true));
  out.push_back(make(star({S(1), W, S(2), S(3)}), "Γ^(4)_{ijk} component", true));
  out.push_back(make(path({{S(1), W}, {S(2), S(3)}}), "Γ^(4)_{i·jk} component", true));
  out.push_back(make(star({S(1), W, W, Eps}), "Γ^(4)_{εi} component", true));
  out.push_back(make(path({{Eps, S(1)}, {W, W}}), "Γ^(4)_{εi·ω} component", true));
  out.push_back(make(path({{S(1), W}, {W, Eps}}), "Γ^(4)_{ε·i} component", true));
  out.push_back(make(path({{S(1), W}, {W}, {W, S(2)}}), "Γ^(4)_{iωj} component", true));
  return out;
}

// Calls f(dist) for every way to put `count` identical items into `bins` bins.
void compositions(int count, int bins, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> dist(static_cast<std::size_t>(bins), 0);
  std::function<void(int, int)> rec = [&](int b, int left) {
    if (b == bins - 1) {
      dist[static_cast<std::size_t>(b)] = left;
      f(dist);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      dist[static_cast<std::size_t>(b)] = x;
      rec(b + 1, left - x);
    }
  };
  if (bins == 0) {
    if (count == 0) f(dist);
    return;
  }
  rec(0, count);
}

bool internally_connected(int v, const std::vector<std::pair<int, int>>& edges) {
  std::vector<int> parent(static_cast<std::size_t>(v));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[static_cast<std::size_t>(x)] == x
               ? x
               : parent[static_cast<std::size_t>(x)] = find(parent[static_cast<std::size_t>(x)]);
  };
  for (auto [a, b] : edges) parent[static_cast<std::size_t>(find(a))] = find(b);
  for (int x = 1; x < v; ++x)
    if (find(x) != find(0)) return false;
  return true;
}

}  // namespace

std::string to_string(BasisMode m) {
  switch (m) {
    case BasisMode::Essential: return "essential";
    case BasisMode::Full: return "full";
    case BasisMode::Complete: return "complete";
  }
  return "?";
}

std::optional<std::string> template_code(const Component& c) {
  std::vector<int> labels;
  for (const auto& p : c.ports)
    if (p.port.is_leg()) labels.push_back(p.port.label);
  std::sort(labels.begin(), labels.end());
  std::vector<int> slot(labels.size());
  std::iota(slot.begin(), slot.end(), 1);
  std::optional<std::string> best;
  do {
    Component r = c;
    for (auto& p : r.ports)
      if (p.port.is_leg()) {
        const auto it = std::lower_bound(labels.begin(), labels.end(), p.port.label);
        p.port.label = slot[static_cast<std::size_t>(it - labels.begin())];
      }
    const auto code = component_code(r);
    if (!code) return std::nullopt;
    if (!best || *code < *best) best = code;
  } while (std::next_permutation(slot.begin(), slot.end()));
  return best;
}

bool is_s_component(const Component& c) {
  return excess_component(c) == 4 && c.omega_ports() >= 4;
}

std::vector<ComponentTemplate> all_components(int max_excess) {
  if (max_excess < 0 || max_excess > 4) throw Error("component search supports excess 0..4");
  std::map<std::string, std::string> names;
  for (const auto& t : essential_templates()) names[t.code] = t.name;

  std::map<std::string, ComponentTemplate> found;  // keyed by code for a stable order
  auto offer = [&](const Component& c) {
    const auto code = template_code(c);
    if (!code || found.count(*code)) return;
    const auto it = names.find(*code);
    found.emplace(*code, make(c, it != names.end() ? it->second : to_text(c), it != names.end()));
  };

  // bare edges
  offer(bare(W, S(1)));
  offer(bare(Eps, S(1)));
  offer(bare(W, Eps));
  offer(bare(Eps, Eps));

  for (int h = 0; 3 * h <= max_excess + 3; ++h)
    for (int e = 0; 3 * h + 3 * e <= max_excess + 3; ++e)
      for (int s = 0; 3 * h + 3 * e + 2 * s <= max_excess + 3; ++s)
        for (int w = 0; 3 * h + 3 * e + 2 * s + w <= max_excess + 3; ++w) {
          if (e + w == 0) continue;  // not attached to the special vertex
          const int ports = e + s + w;
          const int vmax = ports + 2 * h - 2;
          for (int v = 1; v <= vmax; ++v) {
            const int k = v - 1 + h;
            std::vector<std::pair<int, int>> pairs;
            for (int a = 0; a < v; ++a)
              for (int b = a + 1; b < v; ++b) pairs.emplace_back(a, b);
            if (k > static_cast<int>(pairs.size())) continue;
            std::vector<int> pick(pairs.size(), 0);
            std::fill(pick.begin(), pick.begin() + k, 1);
            std::sort(pick.begin(), pick.end());
            do {
              std::vector<std::pair<int, int>> edges;
              for (std::size_t i = 0; i < pairs.size(); ++i)
                if (pick[i]) edges.push_back(pairs[i]);
              if (!internally_connected(v, edges)) continue;
              std::vector<int> val(static_cast<std::size_t>(v), 0);
              for (auto [a, b] : edges) {
                ++val[static_cast<std::size_t>(a)];
                ++val[static_cast<std::size_t>(b)];
              }
              compositions(w, v, [&](const std::vector<int>& wd) {
                compositions(e, v, [&](const std::vector<int>& ed) {
                  std::vector<int> slot_at(static_cast<std::size_t>(s), 0);
                  while (true) {
                    std::vector<int> total = val;
                    for (int x = 0; x < v; ++x)
                      total[static_cast<std::size_t>(x)] +=
                          wd[static_cast<std::size_t>(x)] + ed[static_cast<std::size_t>(x)];
                    for (int a : slot_at) ++total[static_cast<std::size_t>(a)];
                    if (std::all_of(total.begin(), total.end(), [](int d) { return d >= 3; })) {
                      Component c;
                      c.vertices = v;
                      c.edges = edges;
                      for (int x = 0; x < v; ++x) {
                        for (int i = 0; i < wd[static_cast<std::size_t>(x)]; ++i) c.ports.push_back({x, W});
                        for (int i = 0; i < ed[static_cast<std::size_t>(x)]; ++i) c.ports.push_back({x, Eps});
                      }
                      for (int i = 0; i < s; ++i) c.ports.push_back({slot_at[static_cast<std::size_t>(i)], S(i + 1)});
                      offer(c);
                    }
                    int i = 0;
                    while (i < s && ++slot_at[static_cast<std::size_t>(i)] == v) slot_at[static_cast<std::size_t>(i++)] = 0;
                    if (i == s) break;
                  }
                });
              });
            } while (std::next_permutation(pick.begin(), pick.end()));
          }
        }

  std::vector<ComponentTemplate> out;
  for (auto& [code, t] : found)
    if (t.excess <= max_excess) out.push_back(std::move(t));
  std::stable_sort(out.begin(), out.end(), [](const ComponentTemplate& a, const ComponentTemplate& b) {
    return a.excess < b.excess;
  });
  return out;
}

std::vector<ComponentTemplate> s_components() {
  std::vector<ComponentTemplate> out;
  for (auto& t : all_components(4))
    if (t.in_s) out.push_back(std::move(t));
  return out;
}

std::vector<ComponentTemplate> component_catalog(int max_excess, bool include_nonessential) {
  if (max_excess < 0 || max_excess > 4) throw Error("catalog supports excess 0..4");
  std::vector<ComponentTemplate> out;
  for (auto& t : essential_templates())
    if (t.excess <= max_excess) out.push_back(std::move(t));
  if (include_nonessential && max_excess == 4)
    for (auto& t : s_components()) out.push_back(std::move(t));
  return out;
}

// --- graded basis ------------------------------------------------------------

std::optional<std::pair<int, int>> GradedBasis::find(const Key& key) const {
  const auto it = index_.find(key);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GradedBasis::size() const {
  std::size_t s = 0;
  for (const auto& [k, v] : by_degree) s += v.size();
  return s;
}

std::size_t GradedBasis::size(int degree) const {
  const auto it = by_degree.find(degree);
  return it == by_degree.end() ? 0 : it->second.size();
}

bool GradedBasis::allows(const Generator& g) const {
  for (const Component& c : blow_up(g)) {
    const auto code = template_code(c);
    if (!code || !allowed.count(*code)) return false;
  }
  return true;
}

void GradedBasis::insert(const Canonical& c) { pending_.emplace(c.key, c.graph); }

void GradedBasis::finalize() {
  for (auto& [key, graph] : pending_) {
    const int d = degree(graph);
    by_degree[d].push_back(std::move(graph));
    keys[d].push_back(key);
  }
  pending_.clear();
  // pending_ is a std::map, so each degree is already in key order
  index_.clear();
  for (const auto& [d, ks] : keys)
    for (std::size_t i = 0; i < ks.size(); ++i) index_[ks[i]] = {d, static_cast<int>(i)};
}

GradedBasis enumerate_basis_from(int g, int n, const std::vector<ComponentTemplate>& templates,
                                 BasisMode mode_tag) {
  GradedBasis basis;
  basis.g = g;
  basis.n = n;
  basis.mode = mode_tag;
  const int E = excess_complex(g, n);
  if (E < 0) throw Error("negative excess E(g,n) = " + std::to_string(E));

  const ComponentTemplate omega_leg = make(bare(W, S(1)), "ω-leg j", true);
  const ComponentTemplate tripleo = make(star({W, W, W}), "tripleo", true);
  basis.allowed = {omega_leg.code, tripleo.code};
  std::vector<const ComponentTemplate*> parts;
  for (const auto& t : templates) {
    basis.allowed.insert(t.code);
    if (t.excess > 0 && t.excess <= E) parts.push_back(&t);
  }

  std::vector<int> chosen;
  std::vector<Component> comps;
  std::vector<int> label_of_slot;
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);

  auto emit = [&](int tripleos) {
    // flatten slots: (component index, slot number)
    std::vector<std::pair<int, int>> slots;
    for (std::size_t ci = 0; ci < chosen.size(); ++ci)
      for (int s = 1; s <= parts[static_cast<std::size_t>(chosen[ci])]->slots; ++s)
        slots.emplace_back(static_cast<int>(ci), s);
    label_of_slot.assign(slots.size(), 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
      if (i == slots.size()) {
        std::vector<Component> all;
        for (std::size_t ci = 0; ci < chosen.size(); ++ci) {
          Component c = parts[static_cast<std::size_t>(chosen[ci])]->shape;
          for (auto& p : c.ports)
            if (p.port.is_leg()) {
              for (std::size_t j = 0; j < slots.size(); ++j)
                if (slots[j].first == static_cast<int>(ci) && slots[j].second == p.port.label) {
                  p.port.label = label_of_slot[j];
                  break;
                }
            }
          all.push_back(std::move(c));
        }
        for (int l = 1; l <= n; ++l)
          if (!used[static_cast<std::size_t>(l)]) all.push_back(bare(W, Port::leg(l)));
        for (int t = 0; t < tripleos; ++t) all.push_back(tripleo.shape);
        const Generator gen = assemble(all, n);
        if (gen.w() < 11) return;
        if (auto c = canonicalize(gen)) basis.insert(*c);
        return;
      }
      for (int l = 1; l <= n; ++l) {
        if (used[static_cast<std::size_t>(l)]) continue;
        used[static_cast<std::size_t>(l)] = 1;
        label_of_slot[i] = l;
        rec(i + 1);
        used[static_cast<std::size_t>(l)] = 0;
      }
    };
    rec(0);
  };

  std::function<void(std::size_t, int, int, int)> choose = [&](std::size_t from, int excess, int slots,
                                                               int loops) {
    if ((E - excess) % 2 == 0 && (g - 1 - loops) >= 0 && (g - 1 - loops) % 2 == 0) {
      // leftover legs become omega-legs; genus is padded with tripleos
      const int t = (g - 1 - loops) / 2;
      const int special = [&] {
        int sv = n - slots + 3 * t;
        for (int c : chosen) sv += parts[static_cast<std::size_t>(c)]->shape.special_ports();
        return sv;
      }();
      if (special >= 2) emit(t);
    }
    for (std::size_t i = from; i < parts.size(); ++i) {
      const ComponentTemplate& t = *parts[i];
      const int le = excess + t.excess;
      const int ls = slots + t.slots;
      const int ll = loops + t.shape.assembled_loop_contribution();
      if (le > E || ls > n || ll > g - 1) continue;
      chosen.push_back(static_cast<int>(i));
      choose(i, le, ls, ll);
      chosen.pop_back();
    }
  };
  choose(0, 0, 0, 0);
  basis.finalize();
  return basis;
}

GradedBasis enumerate_basis(int g, int n, BasisMode mode) {
  switch (mode) {
    case BasisMode::Essential: return enumerate_basis_from(g, n, component_catalog(4, false), mode);
    case BasisMode::Full: return enumerate_basis_from(g, n, component_catalog(4, true), mode);
    case BasisMode::Complete: return enumerate_basis_from(g, n, all_components(4), mode);
  }
  throw Error("unknown basis mode");
}

GradedBasis enumerate_basis(int g, int n, bool include_nonessential) {
  return enumerate_basis(g, n, include_nonessential ? BasisMode::Full : BasisMode::Essential);
}

GradedBasis brute_force_basis(int g, int n, BruteForceCaps caps) {
  GradedBasis basis;
  basis.g = g;
  basis.n = n;
  basis.mode = BasisMode::Complete;
  for (const auto& t : all_components(4)) basis.allowed.insert(t.code);
  basis.allowed.insert(make(bare(W, S(1)), "", true).code);
  basis.allowed.insert(make(star({W, W, W}), "", true).code);

  // internal valencies >= 3 and >= 11 special half-edges bound the vertex count
  const int mmax = 2 * g + n - 13;
  if (mmax > caps.max_vertices)
    throw Error("brute force: up to " + std::to_string(mmax) + " internal vertices exceeds cap " +
                std::to_string(caps.max_vertices));
  // graphs with more marks than this have negative total excess, hence an
  // omega-omega tadpole, hence vanish
  const int wmax = (3 * (g - 1) + 2 * n) / 2;
  long long candidates = 0;

  for (int m = 0; m <= std::max(mmax, 0); ++m) {
    const int k = m + g - 1;
    if (k < 0) continue;
    std::vector<std::pair<int, int>> types{{kSpecial, kSpecial}};
    for (int v = 0; v < m; ++v) types.emplace_back(v, kSpecial);
    for (int a = 0; a < m; ++a)
      for (int b = a + 1; b < m; ++b) types.emplace_back(a, b);
    std::vector<int> seq(static_cast<std::size_t>(k), 0);
    std::function<void(int, int)> edges_rec = [&](int i, int lo) {
      if (i < k) {
        for (int t = lo; t < static_cast<int>(types.size()); ++t) {
          seq[static_cast<std::size_t>(i)] = t;
          edges_rec(i + 1, t);
        }
        return;
      }
      Generator base;
      base.vertices = m;
      std::vector<int> val(static_cast<std::size_t>(m), 0);
      int special_ends = 0;
      for (int t : seq) {
        Edge e;
        e.end[0] = types[static_cast<std::size_t>(t)].first;
        e.end[1] = types[static_cast<std::size_t>(t)].second;
        for (int s = 0; s < 2; ++s) {
          if (e.end[s] == kSpecial) ++special_ends;
          else ++val[static_cast<std::size_t>(e.end[s])];
        }
        base.edges.push_back(e);
      }
      base.legs.assign(static_cast<std::size_t>(n), Leg{});
      std::function<void(int, int)> legs_rec = [&](int l, int at_special) {
        const int remaining = n - l;
        if (special_ends + at_special + remaining < 11) return;
        int deficit = 0;
        for (int x : val) deficit += std::max(0, 3 - x);
        if (deficit > remaining) return;
        if (l == n) {
          // choose the marked half-edges
          std::vector<HalfEdge> hs;
          for (int e = 0; e < k; ++e)
            for (int s = 0; s < 2; ++s)
              if (base.edges[static_cast<std::size_t>(e)].end[s] == kSpecial) hs.push_back(HalfEdge::of_edge(e, s));
          for (int lab = 1; lab <= n; ++lab)
            if (base.legs[static_cast<std::size_t>(lab - 1)].at == kSpecial) hs.push_back(HalfEdge::of_leg(lab));
          const int c = static_cast<int>(hs.size());
          if (c > 30) throw Error("brute force: too many special half-edges");
          for (int w = 11; w <= std::min(wmax, c); ++w)
          for (unsigned long long mask = (1ull << w) - 1; mask < (1ull << c);) {
            if (++candidates > caps.max_candidates) throw Error("brute force: candidate cap exceeded");
            Generator gen = base;
            for (int b = 0; b < c; ++b) {
              if (!(mask >> b & 1ull)) continue;
              const HalfEdge& h = hs[static_cast<std::size_t>(b)];
              if (h.is_leg()) gen.legs[static_cast<std::size_t>(h.leg_label() - 1)].marked = true;
              else gen.edges[static_cast<std::size_t>(h.edge)].mark[h.end] = true;
              gen.marks.push_back(h);
            }
            if (validate(gen).empty())
              if (auto cn = canonicalize(gen)) basis.insert(*cn);
            // next subset of the same size
            const unsigned long long low = mask & (~mask + 1);
            const unsigned long long ripple = mask + low;
            mask = (((ripple ^ mask) >> 2) / low) | ripple;
          }
          return;
        }
        base.legs[static_cast<std::size_t>(l)].at = kSpecial;
        legs_rec(l + 1, at_special + 1);
        for (int v = 0; v < m; ++v) {
          base.legs[static_cast<std::size_t>(l)].at = v;
          ++val[static_cast<std::size_t>(v)];
          legs_rec(l + 1, at_special);
          --val[static_cast<std::size_t>(v)];
        }
        base.legs[static_cast<std::size_t>(l)].at = kSpecial;
      };
      legs_rec(0, 0);
    };
    edges_rec(0, 0);
  }
  basis.finalize();
  return basis;
}

std::string describe(const ComponentTemplate& t) {
  std::string s = "E=" + std::to_string(t.excess) + "  " + (t.essential ? "essential" : "non-essential");
  if (t.in_s) s += " (S)";
  s += "  " + t.name;
  if (t.name != to_text(t.shape)) s += "  " + to_text(t.shape);
  return s;
}

}  // namespace w11
