#include "w11/differential.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace w11 {

// --- formal sums -------------------------------------------------------------

void FormalSum::add(const Generator& g, long long coeff) {
  if (coeff == 0) return;
  const auto c = canonicalize(g);
  if (!c) return;
  add_canonical(c->key, c->graph, coeff * c->sign);
}

void FormalSum::add_canonical(const Key& key, const Generator& g, long long coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, Term{g, coeff});
    return;
  }
  it->second.coeff += coeff;
  if (it->second.coeff == 0) terms_.erase(it);
}

void FormalSum::add(const FormalSum& other, long long scale) {
  for (const auto& [key, term] : other.terms_) add_canonical(key, term.graph, term.coeff * scale);
}

long long FormalSum::coeff(const Key& key) const {
  const auto it = terms_.find(key);
  return it == terms_.end() ? 0 : it->second.coeff;
}

bool FormalSum::operator==(const FormalSum& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (const auto& [key, term] : terms_)
    if (o.coeff(key) != term.coeff) return false;
  return true;
}

// --- differentials -----------------------------------------------------------

namespace {

// Half-edge at a vertex: an end of a structural edge, or a leg.
struct Slot {
  int edge = -1;  // -1 for a leg
  int end = 0;
  int leg = 0;
};

std::vector<Slot> slots_at(const Generator& g, int v) {
  std::vector<Slot> out;
  for (int e = 0; e < g.structural_edges(); ++e)
    for (int s = 0; s < 2; ++s)
      if (g.edges[static_cast<std::size_t>(e)].end[s] == v) out.push_back({e, s, 0});
  for (int l = 1; l <= g.n(); ++l)
    if (g.legs[static_cast<std::size_t>(l - 1)].at == v) out.push_back({-1, 0, l});
  return out;
}

bool slot_marked(const Generator& g, const Slot& s) {
  return s.edge >= 0 ? g.edges[static_cast<std::size_t>(s.edge)].mark[s.end]
                     : g.legs[static_cast<std::size_t>(s.leg - 1)].marked;
}

// Copy of g with a new edge prepended (edge indices in marks shift by one).
Generator with_prepended_edge(const Generator& g, const Edge& e0) {
  Generator r;
  r.vertices = g.vertices + 1;
  r.edges.reserve(g.edges.size() + 1);
  r.edges.push_back(e0);
  r.edges.insert(r.edges.end(), g.edges.begin(), g.edges.end());
  r.legs = g.legs;
  r.marks = g.marks;
  for (HalfEdge& h : r.marks)
    if (!h.is_leg()) ++h.edge;
  return r;
}

}  // namespace

FormalSum delta_omega(const Generator& g) {
  FormalSum out;
  const int k = g.structural_edges();
  const int w = g.w();
  if (w - 1 < 11) return out;
  for (int j = 1; j <= w; ++j) {
    Generator r = g;
    const HalfEdge h = r.marks[static_cast<std::size_t>(j - 1)];
    if (h.is_leg()) r.legs[static_cast<std::size_t>(h.leg_label() - 1)].marked = false;
    else r.edges[static_cast<std::size_t>(h.edge)].mark[h.end] = false;
    r.marks.erase(r.marks.begin() + (j - 1));
    out.add(r, (k + j - 1) % 2 == 0 ? 1 : -1);
  }
  return out;
}

FormalSum delta_s_internal(const Generator& g) {
  FormalSum out;
  for (int v = 0; v < g.vertices; ++v) {
    const std::vector<Slot> hs = slots_at(g, v);
    const int d = static_cast<int>(hs.size());
    if (d < 4) continue;
    // the first half-edge always stays at v, so each split is met once
    for (unsigned mask = 0; mask < (1u << (d - 1)); ++mask) {
      const int moved = __builtin_popcount(mask);
      if (moved < 2 || d - moved < 2) continue;
      Edge e0;
      e0.end[0] = v;
      e0.end[1] = g.vertices;
      Generator r = with_prepended_edge(g, e0);
      for (int i = 1; i < d; ++i) {
        if (!(mask >> (i - 1) & 1u)) continue;
        const Slot& s = hs[static_cast<std::size_t>(i)];
        if (s.edge >= 0) r.edges[static_cast<std::size_t>(s.edge + 1)].end[s.end] = g.vertices;
        else r.legs[static_cast<std::size_t>(s.leg - 1)].at = g.vertices;
      }
      out.add(r, 1);
    }
  }
  return out;
}

FormalSum delta_s_special(const Generator& g) {
  FormalSum out;
  const std::vector<Slot> hs = slots_at(g, kSpecial);
  std::vector<int> unmarked, marked;
  for (int i = 0; i < static_cast<int>(hs.size()); ++i)
    (slot_marked(g, hs[static_cast<std::size_t>(i)]) ? marked : unmarked).push_back(i);
  const int total = static_cast<int>(hs.size());
  const int u = static_cast<int>(unmarked.size());
  if (u > 24) throw Error("delta_s_special: too many unmarked half-edges");
  auto mark_slot = [&](const Slot& s) {
    for (int j = 0; j < g.w(); ++j) {
      const HalfEdge& h = g.marks[static_cast<std::size_t>(j)];
      if (s.edge >= 0 ? (!h.is_leg() && h.edge == s.edge && h.end == s.end)
                      : (h.is_leg() && h.leg_label() == s.leg))
        return j;
    }
    throw Error("delta_s_special: marked half-edge missing from orientation");
  };
  for (unsigned mask = 0; mask < (1u << u); ++mask) {
    for (int pick = -1; pick < static_cast<int>(marked.size()); ++pick) {
      std::vector<int> B;
      for (int i = 0; i < u; ++i)
        if (mask >> i & 1u) B.push_back(unmarked[static_cast<std::size_t>(i)]);
      if (pick >= 0) B.push_back(marked[static_cast<std::size_t>(pick)]);
      const int b = static_cast<int>(B.size());
      if (b < 2 || total - b + 1 < 2) continue;
      // both ends of a tadpole would give a tadpole at the new vertex
      bool tadpole = false;
      for (int x : B)
        for (int y : B)
          if (x < y && hs[static_cast<std::size_t>(x)].edge >= 0 &&
              hs[static_cast<std::size_t>(x)].edge == hs[static_cast<std::size_t>(y)].edge)
            tadpole = true;
      if (tadpole) continue;

      Edge e0;
      e0.end[0] = g.vertices;
      e0.end[1] = kSpecial;
      e0.mark[1] = pick >= 0;
      Generator r = with_prepended_edge(g, e0);
      for (int x : B) {
        const Slot& s = hs[static_cast<std::size_t>(x)];
        if (s.edge >= 0) {
          Edge& e = r.edges[static_cast<std::size_t>(s.edge + 1)];
          e.end[s.end] = g.vertices;
          e.mark[s.end] = false;
        } else {
          Leg& l = r.legs[static_cast<std::size_t>(s.leg - 1)];
          l.at = g.vertices;
          l.marked = false;
        }
      }
      if (pick >= 0) {
        // the mark moves to e0 and keeps its place in the orientation
        const int j = mark_slot(hs[static_cast<std::size_t>(marked[static_cast<std::size_t>(pick)])]);
        r.marks[static_cast<std::size_t>(j)] = HalfEdge::of_edge(0, 1);
      }
      out.add(r, 1);
    }
  }
  return out;
}

FormalSum delta(const Generator& g) {
  FormalSum out = delta_omega(g);
  out.add(delta_s_internal(g));
  out.add(delta_s_special(g));
  return out;
}

// --- matrices ----------------------------------------------------------------

std::string SparseIntMatrix::to_triplets() const {
  std::ostringstream os;
  os << rows << ' ' << cols << '\n';
  for (const auto& [r, c, v] : entries) os << r << ' ' << c << ' ' << v << '\n';
  return os.str();
}

SparseIntMatrix SparseIntMatrix::from_triplets(const std::string& text) {
  std::istringstream is(text);
  SparseIntMatrix m;
  if (!(is >> m.rows >> m.cols)) throw Error("triplets: missing header");
  int r, c;
  long long v;
  while (is >> r >> c >> v) {
    if (r < 0 || r >= m.rows || c < 0 || c >= m.cols) throw Error("triplets: index out of range");
    m.entries.emplace_back(r, c, v);
  }
  std::sort(m.entries.begin(), m.entries.end(), [](const auto& a, const auto& b) {
    return std::tie(std::get<1>(a), std::get<0>(a)) < std::tie(std::get<1>(b), std::get<0>(b));
  });
  return m;
}

SparseIntMatrix multiply(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  if (a.cols != b.rows) throw Error("multiply: shape mismatch");
  std::vector<std::vector<std::pair<int, long long>>> acol(static_cast<std::size_t>(a.cols));
  for (const auto& [r, c, v] : a.entries) acol[static_cast<std::size_t>(c)].emplace_back(r, v);
  SparseIntMatrix out;
  out.rows = a.rows;
  out.cols = b.cols;
  std::map<int, __int128> acc;
  auto flush = [&](int col) {
    for (const auto& [r, v] : acc) {
      if (v == 0) continue;
      if (v > std::numeric_limits<long long>::max() || v < std::numeric_limits<long long>::min())
        throw Error("multiply: overflow");
      out.entries.emplace_back(r, col, static_cast<long long>(v));
    }
    acc.clear();
  };
  int current = -1;
  for (const auto& [r, c, v] : b.entries) {
    if (c != current) {
      if (current >= 0) flush(current);
      current = c;
    }
    for (const auto& [r2, v2] : acol[static_cast<std::size_t>(r)])
      acc[r2] += static_cast<__int128>(v) * v2;
  }
  if (current >= 0) flush(current);
  return out;
}

int GradedComplex::min_degree() const {
  return basis.by_degree.empty() ? 0 : basis.by_degree.begin()->first;
}

int GradedComplex::max_degree() const {
  return basis.by_degree.empty() ? 0 : basis.by_degree.rbegin()->first;
}

const SparseIntMatrix& GradedComplex::differential(int k) const {
  static const SparseIntMatrix empty;
  const auto it = d.find(k);
  return it == d.end() ? empty : it->second;
}

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("W11_THREADS")) {
    const int t = std::atoi(env);
    if (t > 0) return t;
  }
  return 1;
}

GradedComplex build_complex(const GradedBasis& basis, BuildOptions options) {
  GradedComplex out;
  out.basis = basis;
  const int threads = resolve_threads(options.threads);
  std::atomic<long long> dropped{0};
  for (const auto& [k, gens] : basis.by_degree) {
    SparseIntMatrix m;
    m.rows = static_cast<int>(basis.size(k + 1));
    m.cols = static_cast<int>(gens.size());
    std::vector<std::vector<std::pair<int, long long>>> cols(gens.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      try {
        for (std::size_t j = next++; j < gens.size(); j = next++) {
          const FormalSum image = delta(gens[j]);
          for (const auto& [key, term] : image.terms()) {
            const auto at = basis.find(key);
            if (!at) {
              if (basis.allows(term.graph))
                throw Error("enumeration incomplete: image " + to_text(term.graph) + " of " +
                            to_text(gens[j]) + " is missing from the basis");
              ++dropped;
              continue;
            }
            if (at->first != k + 1)
              throw Error("differential changed degree by " + std::to_string(at->first - k));
            cols[j].emplace_back(at->second, term.coeff);
          }
          std::sort(cols[j].begin(), cols[j].end());
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = gens.size();
      }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (const auto& [r, v] : cols[j]) m.entries.emplace_back(r, static_cast<int>(j), v);
    out.d[k] = std::move(m);
  }
  out.dropped_terms = dropped;
  if (options.check_d2) {
    const long long defect = d_squared_defect(out);
    if (defect != 0)
      throw Error("d∘d ≠ 0: " + std::to_string(defect) + " nonzero entries (" + to_string(basis.mode) +
                  " basis)");
  }
  return out;
}

long long d_squared_defect(const GradedComplex& c) {
  long long bad = 0;
  for (const auto& [k, m] : c.d) {
    const auto next = c.d.find(k + 1);
    if (next == c.d.end()) continue;
    bad += static_cast<long long>(multiply(next->second, m).entries.size());
  }
  return bad;
}

bool in_k(const Generator& g) {
  for (const Component& c : blow_up(g))
    if (is_s_component(c)) return true;
  return false;
}

GradedComplex restrict_complex(const GradedComplex& c, const std::function<bool(const Generator&)>& keep) {
  GradedComplex out;
  out.basis.g = c.basis.g;
  out.basis.n = c.basis.n;
  out.basis.mode = c.basis.mode;
  out.basis.allowed = c.basis.allowed;
  std::map<int, std::vector<int>> new_index;
  for (const auto& [k, gens] : c.basis.by_degree) {
    auto& idx = new_index[k];
    idx.assign(gens.size(), -1);
    const auto& keys = c.basis.keys.at(k);
    int next = 0;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (keep(gens[i])) {
        idx[i] = next++;
        out.basis.insert(Canonical{gens[i], keys[i], 1});
      }
  }
  out.basis.finalize();
  for (const auto& [k, m] : c.d) {
    SparseIntMatrix r;
    r.rows = static_cast<int>(out.basis.size(k + 1));
    r.cols = static_cast<int>(out.basis.size(k));
    const auto rit = new_index.find(k + 1);
    const auto& cidx = new_index.at(k);
    for (const auto& [row, col, v] : m.entries) {
      const int nc = cidx[static_cast<std::size_t>(col)];
      const int nr = rit == new_index.end() ? -1 : rit->second[static_cast<std::size_t>(row)];
      if (nc >= 0 && nr >= 0) r.entries.emplace_back(nr, nc, v);
    }
    if (r.cols > 0) out.d[k] = std::move(r);
  }
  out.dropped_terms = c.dropped_terms;
  return out;
}

GradedComplex quotient_by_K(const GradedComplex& c) {
  return restrict_complex(c, [](const Generator& g) { return !in_k(g); });
}

GradedComplex k_subcomplex(const GradedComplex& c) {
  for (const auto& [k, m] : c.d) {
    const auto& cols = c.basis.by_degree.at(k);
    const auto rows = c.basis.by_degree.find(k + 1);
    for (const auto& [row, col, v] : m.entries)
      if (in_k(cols[static_cast<std::size_t>(col)]) && !in_k(rows->second[static_cast<std::size_t>(row)]))
        throw Error("K is not closed under the differential: " + to_text(cols[static_cast<std::size_t>(col)]) +
                    " -> " + to_text(rows->second[static_cast<std::size_t>(row)]));
  }
  return restrict_complex(c, in_k);
}

}  // namespace w11
