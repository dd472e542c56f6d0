#include "w11/suites.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>
#include <sstream>

namespace w11 {

namespace {

const Port W = Port::omega();
const Port Eps = Port::epsilon();

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

Component path(const std::vector<std::vector<Port>>& ports) {
  Component c;
  c.vertices = static_cast<int>(ports.size());
  for (int v = 0; v + 1 < c.vertices; ++v) c.edges.emplace_back(v, v + 1);
  for (int v = 0; v < c.vertices; ++v)
    for (const Port& p : ports[static_cast<std::size_t>(v)]) c.ports.push_back({v, p});
  return c;
}

std::string case_name(int g, int n) { return "(" + std::to_string(g) + "," + std::to_string(n) + ")"; }

std::vector<std::pair<int, int>> or_default(const std::vector<std::pair<int, int>>& cases,
                                            const std::vector<std::pair<int, int>>& fallback) {
  return cases.empty() ? fallback : cases;
}

std::string dims_text(const std::map<int, int>& dims) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, d] : dims) {
    if (d == 0) continue;
    os << (first ? "" : " ") << "h" << k << "=" << d;
    first = false;
  }
  return first ? "all zero" : os.str();
}

std::map<int, int> nonzero(const std::map<int, int>& m) {
  std::map<int, int> out;
  for (const auto& [k, v] : m)
    if (v != 0) out[k] = v;
  return out;
}

int structural_edges(const Component& c) {
  if (c.vertices == 0) return c.ports[0].port.is_special() && c.ports[1].port.is_special() ? 1 : 0;
  int s = static_cast<int>(c.edges.size());
  for (const auto& p : c.ports)
    if (p.port.is_special()) ++s;
  return s;
}

std::set<int> labels_of(const Component& c) {
  std::set<int> out;
  for (const auto& p : c.ports)
    if (p.port.is_leg()) out.insert(p.port.label);
  return out;
}

FormalSum relabeled(const FormalSum& s, const std::vector<int>& perm) {
  FormalSum out;
  for (const auto& [key, t] : s.terms()) out.add(relabel_legs(t.graph, perm), t.coeff);
  return out;
}

std::vector<int> random_permutation(std::mt19937_64& rng, int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

/// Same graph with vertices, edge order, edge ends and mark order shuffled;
/// returns the orientation sign of the shuffle.
int scramble(const Generator& g, std::mt19937_64& rng, Generator& out) {
  std::vector<int> vperm(static_cast<std::size_t>(g.vertices));
  std::iota(vperm.begin(), vperm.end(), 0);
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::vector<int> eperm(g.edges.size());
  std::iota(eperm.begin(), eperm.end(), 0);
  std::shuffle(eperm.begin(), eperm.end(), rng);
  std::vector<int> mperm(g.marks.size());
  std::iota(mperm.begin(), mperm.end(), 0);
  std::shuffle(mperm.begin(), mperm.end(), rng);
  auto vmap = [&](int v) { return v == kSpecial ? v : vperm[static_cast<std::size_t>(v)]; };

  out = g;
  std::vector<bool> flipped(g.edges.size(), false);
  for (std::size_t e = 0; e < g.edges.size(); ++e) {
    Edge ed = g.edges[e];
    ed.end[0] = vmap(ed.end[0]);
    ed.end[1] = vmap(ed.end[1]);
    if ((ed.is_internal() || ed.is_tadpole()) && rng() % 2) {
      std::swap(ed.end[0], ed.end[1]);
      std::swap(ed.mark[0], ed.mark[1]);
      flipped[e] = true;
    }
    out.edges[static_cast<std::size_t>(eperm[e])] = ed;
  }
  for (auto& leg : out.legs) leg.at = vmap(leg.at);
  for (std::size_t m = 0; m < g.marks.size(); ++m) {
    HalfEdge h = g.marks[m];
    if (!h.is_leg()) {
      if (flipped[static_cast<std::size_t>(h.edge)]) h.end = 1 - h.end;
      h.edge = eperm[static_cast<std::size_t>(h.edge)];
    }
    out.marks[static_cast<std::size_t>(mperm[m])] = h;
  }
  return permutation_sign(eperm) * permutation_sign(mperm);
}

const std::vector<ComponentTemplate>& component_pool() {
  static const std::vector<ComponentTemplate> pool = [] {
    std::vector<ComponentTemplate> out;
    for (auto& t : all_components(4))
      if (t.name != "ω-leg j" && t.name != "tripleo") out.push_back(t);
    return out;
  }();
  return pool;
}

Component fill(const ComponentTemplate& t, const std::vector<int>& labels) {
  Component c = t.shape;
  for (auto& p : c.ports)
    if (p.port.is_leg()) p.port = Port::leg(labels[static_cast<std::size_t>(p.port.label - 1)]);
  return c;
}

/// Random component list (not yet assembled) on legs 1..n.
std::vector<Component> random_components(std::mt19937_64& rng, int n) {
  const auto& pool = component_pool();
  auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  while (true) {
    std::vector<int> free = random_permutation(rng, n);
    std::vector<Component> comps;
    const int parts = pick(1, 3);
    for (int i = 0; i < parts; ++i) {
      const ComponentTemplate& t = pool[static_cast<std::size_t>(pick(0, static_cast<int>(pool.size()) - 1))];
      if (t.slots > static_cast<int>(free.size())) continue;
      std::vector<int> labels(free.end() - t.slots, free.end());
      free.resize(free.size() - static_cast<std::size_t>(t.slots));
      comps.push_back(fill(t, labels));
    }
    for (int l : free) comps.push_back(bare(W, Port::leg(l)));
    for (int i = pick(0, 2); i > 0; --i) comps.push_back(star({W, W, W}));
    std::shuffle(comps.begin(), comps.end(), rng);
    try {
      if (validate(assemble(comps, n)).empty()) return comps;
    } catch (const Error&) {
    }
  }
}

}  // namespace

// --- pipeline ------------------------------------------------------------------

GradedComplex prepare_complex(int g, int n, const ComputeOptions& options) {
  const GradedBasis basis = enumerate_basis(g, n, options.mode);
  GradedComplex c = build_complex(basis, {resolve_threads(options.threads), false});
  const long long defect = d_squared_defect(c);
  if (defect != 0)
    throw Error("d∘d ≠ 0 on the " + to_string(options.mode) + " basis of B_" + case_name(g, n) + " (" +
                std::to_string(defect) + " nonzero entries); use the complete basis");
  if (!options.keep_k) c = quotient_by_K(c);
  return c;
}

CohomologyResult compute_cohomology(int g, int n, const ComputeOptions& options) {
  const GradedComplex c = prepare_complex(g, n, options);
  const CharacterTable table = characters(n);
  return equivariant_cohomology(c, table, {options.method, resolve_threads(options.threads)});
}

const std::vector<std::pair<int, int>>& excess_four_cases() {
  static const std::vector<std::pair<int, int>> cases = {{1, 13}, {3, 10}, {5, 7}, {7, 4}, {9, 1}};
  return cases;
}

void SuiteResult::check(bool ok, std::string line) {
  passed = passed && ok;
  details.push_back(std::string(ok ? "ok   " : "FAIL ") + line);
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"d2",    "example33", "distributivity", "vanishing",
                                                 "kquotient", "euler", "oracle",         "properties"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& names = suite_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& o) {
  const int threads = resolve_threads(o.compute.threads);
  if (name == "d2") return suite_d2(or_default(o.cases, excess_four_cases()), o.compute.mode, threads);
  if (name == "example33") return suite_example33();
  if (name == "distributivity") return suite_distributivity(o.seed, o.trials);
  if (name == "vanishing") return suite_vanishing();
  if (name == "kquotient") return suite_kquotient(or_default(o.cases, excess_four_cases()), threads);
  if (name == "euler") return suite_euler(or_default(o.cases, excess_four_cases()), threads);
  if (name == "oracle") return suite_oracle(or_default(o.cases, {{1, 11}, {1, 12}, {1, 13}}), BasisMode::Complete);
  if (name == "properties") {
    SuiteResult all{"properties", true, {}};
    for (const SuiteResult& r : {suite_canonical_idempotence(o.seed, o.trials), suite_vanishing(),
                                 suite_equivariance(o.seed, o.trials), suite_excess_additivity(o.seed, o.trials),
                                 suite_rank_agreement(o.seed, o.trials)})
      all.check(r.passed, r.name);
    return all;
  }
  throw Error("unknown suite '" + name + "'");
}

// --- suites --------------------------------------------------------------------

SuiteResult suite_d2(const std::vector<std::pair<int, int>>& cases, BasisMode mode, int threads) {
  SuiteResult r{"d2", true, {}};
  for (auto [g, n] : cases) {
    const GradedComplex c = build_complex(enumerate_basis(g, n, mode), {threads, false});
    const long long defect = d_squared_defect(c);
    r.check(defect == 0, case_name(g, n) + " " + to_string(mode) + ": " + std::to_string(c.basis.size()) +
                             " generators, d∘d nonzero entries = " + std::to_string(defect));
  }
  return r;
}

SuiteResult suite_example33() {
  SuiteResult r{"example33", true, {}};
  const Generator five = assemble({star({W, W, Eps, W, W})}, 0);
  const Generator a = assemble({path({{W, W}, {Eps, W, W}})}, 0);
  const Generator b = assemble({path({{W, Eps}, {W, W, W}})}, 0);
  const Generator c = assemble({path({{W, Eps}, {W}, {W, W}})}, 0);
  const Generator z = assemble({path({{W, W}, {Eps}, {W, W}})}, 0);
  auto key = [](const Generator& g) { return canonicalize(g)->key; };
  auto pattern = [](const FormalSum& s) {
    std::vector<long long> out;
    for (const auto& [k, t] : s.terms()) out.push_back(std::llabs(t.coeff));
    std::sort(out.rbegin(), out.rend());
    return out;
  };
  auto show = [](const std::vector<long long>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
  };

  const bool z_zero = !canonicalize(z);
  r.check(z_zero, "(ωω|ε|ωω) vanishes by odd symmetry");
  const FormalSum d5 = delta_s_internal(five);
  r.check(pattern(d5) == std::vector<long long>{6, 4} && std::llabs(d5.coeff(key(a))) == 6 &&
              std::llabs(d5.coeff(key(b))) == 4,
          "δ_s^•(ωωεωω) coefficients " + show(pattern(d5)) + " on (ωω|εωω), (ωε|ωωω)");
  const FormalSum da = delta_s_internal(a);
  r.check(pattern(da) == std::vector<long long>{2} && std::llabs(da.coeff(key(c))) == 2,
          "δ_s^•(ωω|εωω) coefficients " + show(pattern(da)));
  const FormalSum db = delta_s_internal(b);
  r.check(pattern(db) == std::vector<long long>{3} && std::llabs(db.coeff(key(c))) == 3,
          "δ_s^•(ωε|ωωω) coefficients " + show(pattern(db)));
  const FormalSum dc = delta_s_internal(c);
  r.check(dc.empty(), "δ_s^•(ωε|ω|ωω) coefficients " + (dc.empty() ? std::string("(0)") : show(pattern(dc))));
  // δ_s^• ∘ δ_s^• = 0 on this family: 6·2 and 4·3 must cancel.
  FormalSum dd;
  for (const auto& [k, t] : d5.terms()) dd.add(delta_s_internal(t.graph), t.coeff);
  r.check(dd.empty(), "δ_s^•∘δ_s^•(ωωεωω) = 0");
  return r;
}

SuiteResult suite_distributivity(std::uint64_t seed, int trials) {
  SuiteResult r{"distributivity", true, {}};
  std::mt19937_64 rng(seed);
  int failures = 0, nonzero_cases = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = std::uniform_int_distribution<int>(3, 7)(rng);
    const std::vector<Component> comps = random_components(rng, n);
    const Generator whole = assemble(comps, n);
    if (!canonicalize(whole)) continue;
    const FormalSum lhs = delta_s_internal(whole);

    FormalSum rhs;
    int edges_before = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::set<int> own = labels_of(comps[i]);
      std::vector<Component> fillers;
      // One spare ω-leg keeps the special vertex at valency >= 2.
      for (int l = 1; l <= n + 1; ++l)
        if (!own.count(l)) fillers.push_back(bare(W, Port::leg(l)));
      std::vector<Component> single = {comps[i]};
      single.insert(single.end(), fillers.begin(), fillers.end());
      const FormalSum part = delta_s_internal(assemble(single, n + 1));
      for (const auto& [key, t] : part.terms()) {
        std::vector<Component> x;
        for (const Component& piece : blow_up(t.graph)) {
          const bool filler = piece.vertices == 0 && piece.legs() == 1 && piece.omega_ports() == 1 &&
                              !own.count(*labels_of(piece).begin());
          if (!filler) x.push_back(piece);
        }
        std::vector<Component> back = x;
        back.insert(back.end(), fillers.begin(), fillers.end());
        const auto canon = canonicalize(assemble(back, n + 1));
        if (!canon || canon->key != key) {
          ++failures;
          continue;
        }
        std::vector<Component> full(comps.begin(), comps.begin() + static_cast<long>(i));
        full.insert(full.end(), x.begin(), x.end());
        full.insert(full.end(), comps.begin() + static_cast<long>(i) + 1, comps.end());
        const int shift = edges_before % 2 ? -1 : 1;
        rhs.add(assemble(full, n), t.coeff * canon->sign * shift);
      }
      edges_before += structural_edges(comps[i]);
    }
    if (!(lhs == rhs)) ++failures;
    if (!lhs.empty()) ++nonzero_cases;
  }
  r.check(failures == 0, std::to_string(trials) + " random multi-component generators (seed " +
                             std::to_string(seed) + ", " + std::to_string(nonzero_cases) +
                             " with nonzero δ_s^•): " + std::to_string(failures) + " mismatches");
  return r;
}

SuiteResult suite_vanishing() {
  SuiteResult r{"vanishing", true, {}};
  const Port L1 = Port::leg(1);
  Component doubled;
  doubled.vertices = 2;
  doubled.edges = {{0, 1}, {0, 1}};
  doubled.ports = {{0, W}, {1, L1}};
  const std::vector<std::pair<std::string, std::vector<Component>>> zero = {
      {"ε–ω–ε star", {star({Eps, W, Eps}), star({W, W, W}), bare(W, L1)}},
      {"(ωω|ε|ωω)", {path({{W, W}, {Eps}, {W, W}}), bare(W, L1)}},
      {"internal double edge", {doubled, star({W, W, W})}},
      {"two (ε ω ω) stars", {star({Eps, W, W}), star({Eps, W, W}), bare(W, L1)}},
      {"two εε tadpoles", {bare(Eps, Eps), bare(Eps, Eps), star({W, W, W}), bare(W, L1)}},
      {"two ε at one vertex", {star({Eps, Eps, L1}), star({W, W, W})}},
  };
  for (const auto& [name, comps] : zero) r.check(!canonicalize(assemble(comps, 1)), name + " → 0");
  const std::vector<std::pair<std::string, std::vector<Component>>> alive = {
      {"two tripleos", {star({W, W, W}), star({W, W, W}), bare(W, L1)}},
      {"two ωε tadpoles", {bare(W, Eps), bare(W, Eps), bare(W, L1)}},
  };
  for (const auto& [name, comps] : alive) r.check(canonicalize(assemble(comps, 1)).has_value(), name + " ≠ 0");
  int dead = 0;
  for (const auto& t : all_components(4))
    if (!component_code(t.shape)) ++dead;
  r.check(dead == 0, "catalog components with odd self-symmetry: " + std::to_string(dead));
  return r;
}

SuiteResult suite_kquotient(const std::vector<std::pair<int, int>>& cases, int threads) {
  SuiteResult r{"kquotient", true, {}};
  for (auto [g, n] : cases) {
    const GradedComplex b = build_complex(enumerate_basis(g, n, BasisMode::Complete), {threads, false});
    const auto hb = nonzero(cohomology_dims(b));
    const GradedComplex q = quotient_by_K(b);
    const auto hq = nonzero(cohomology_dims(q));
    std::string kinfo;
    bool acyclic = false;
    try {
      const GradedComplex k = k_subcomplex(b);
      const auto hk = nonzero(cohomology_dims(k));
      acyclic = hk.empty();
      kinfo = "K: " + std::to_string(k.basis.size()) + " generators, H(K) " + dims_text(hk);
    } catch (const Error& e) {
      kinfo = e.what();
    }
    r.check(hb == hq && acyclic && d_squared_defect(q) == 0,
            case_name(g, n) + " H(B) " + dims_text(hb) + "; H(B/K) " + dims_text(hq) + "; " + kinfo);
  }
  return r;
}

SuiteResult suite_euler(const std::vector<std::pair<int, int>>& cases, int threads) {
  SuiteResult r{"euler", true, {}};
  for (auto [g, n] : cases) {
    ComputeOptions o;
    o.threads = threads;
    const CohomologyResult res = compute_cohomology(g, n, o);
    const VirtualDecomposition residual = euler_check(res);
    VirtualDecomposition chi;
    for (const auto& [k, d] : res.chains)
      for (const auto& [lambda, m] : d) chi[lambda] += (k % 2 ? -m : m);
    std::erase_if(chi, [](const auto& kv) { return kv.second == 0; });
    r.check(residual.empty(), case_name(g, n) + " χ = " + format_decomposition(chi) + ", residual " +
                                  format_decomposition(residual));
  }
  return r;
}

SuiteResult suite_oracle(const std::vector<std::pair<int, int>>& cases, BasisMode mode) {
  SuiteResult r{"oracle", true, {}};
  for (auto [g, n] : cases) {
    const GradedBasis fast = enumerate_basis(g, n, mode);
    const GradedBasis slow = brute_force_basis(g, n);
    std::map<int, std::set<Key>> a, b;
    for (const auto& [k, keys] : fast.keys) a[k].insert(keys.begin(), keys.end());
    for (const auto& [k, keys] : slow.keys) b[k].insert(keys.begin(), keys.end());
    std::erase_if(a, [](const auto& kv) { return kv.second.empty(); });
    std::erase_if(b, [](const auto& kv) { return kv.second.empty(); });
    std::ostringstream os;
    os << case_name(g, n) << " catalog " << fast.size() << " vs brute force " << slow.size() << " generators";
    r.check(a == b, os.str());
  }
  return r;
}

SuiteResult suite_canonical_idempotence(std::uint64_t seed, int trials) {
  SuiteResult r{"canonical idempotence", true, {}};
  std::mt19937_64 rng(seed);
  int bad = 0, checked = 0;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = std::uniform_int_distribution<int>(2, 7)(rng);
    const Generator g = assemble(random_components(rng, n), n);
    const auto c = canonicalize(g);
    if (!c) continue;
    ++checked;
    const auto again = canonicalize(c->graph);
    if (!again || again->key != c->key || again->sign != 1 || !(again->graph == c->graph)) ++bad;
    for (int s = 0; s < 3; ++s) {
      Generator shuffled;
      const int sign = scramble(g, rng, shuffled);
      const auto cs = canonicalize(shuffled);
      if (!cs || cs->key != c->key || cs->sign != c->sign * sign || !(cs->graph == c->graph)) ++bad;
    }
  }
  r.check(bad == 0, std::to_string(checked) + " generators, 3 relabelings each (seed " + std::to_string(seed) +
                        "): " + std::to_string(bad) + " failures");
  return r;
}

SuiteResult suite_equivariance(std::uint64_t seed, int trials) {
  SuiteResult r{"δ-equivariance", true, {}};
  std::mt19937_64 rng(seed);
  for (auto [g, n] : std::vector<std::pair<int, int>>{{7, 4}, {5, 7}}) {
    const GradedBasis basis = enumerate_basis(g, n, BasisMode::Complete);
    std::vector<const Generator*> all;
    for (const auto& [k, gens] : basis.by_degree)
      for (const auto& x : gens) all.push_back(&x);
    int bad = 0, nontrivial = 0;
    for (int t = 0; t < trials; ++t) {
      const Generator& x = *all[rng() % all.size()];
      const std::vector<int> perm = random_permutation(rng, n);
      const FormalSum lhs = delta(relabel_legs(x, perm));
      const FormalSum rhs = relabeled(delta(x), perm);
      if (!(lhs == rhs)) ++bad;
      if (!lhs.empty()) ++nontrivial;
    }
    r.check(bad == 0, case_name(g, n) + " " + std::to_string(trials) + " (generator, σ) pairs, " +
                          std::to_string(nontrivial) + " with δ ≠ 0: " + std::to_string(bad) + " failures");
  }
  return r;
}

SuiteResult suite_excess_additivity(std::uint64_t seed, int trials) {
  SuiteResult r{"excess additivity", true, {}};
  std::mt19937_64 rng(seed);
  int bad = 0;
  for (int t = 0; t < trials; ++t) {
    const int n = std::uniform_int_distribution<int>(2, 8)(rng);
    const std::vector<Component> comps = random_components(rng, n);
    const Generator g = assemble(comps, n);
    int sum = 0;
    for (const Component& c : comps) sum += excess_component(c);
    if (excess_generator(g) != sum || excess_generator_by_components(g) != sum) ++bad;
  }
  r.check(bad == 0, std::to_string(trials) + " random generators (seed " + std::to_string(seed) +
                        "): " + std::to_string(bad) + " failures");
  return r;
}

SuiteResult suite_rank_agreement(std::uint64_t seed, int trials) {
  SuiteResult r{"mod-p/exact rank", true, {}};
  std::mt19937_64 rng(seed);
  auto pick = [&rng](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  auto random_matrix = [&](int rows, int cols, double density, int bound) {
    SparseIntMatrix m;
    m.rows = rows;
    m.cols = cols;
    for (int c = 0; c < cols; ++c)
      for (int row = 0; row < rows; ++row)
        if (std::uniform_real_distribution<double>(0, 1)(rng) < density) {
          const int v = pick(-bound, bound);
          if (v != 0) m.entries.emplace_back(row, c, v);
        }
    return m;
  };
  int bad = 0;
  for (int t = 0; t < trials; ++t) {
    const int rows = pick(1, 40), cols = pick(1, 40), inner = pick(1, 40);
    // Products of thin factors are rank deficient.
    const SparseIntMatrix m = t % 2 ? random_matrix(rows, cols, 0.2, 9)
                                    : multiply(random_matrix(rows, inner, 0.3, 5), random_matrix(inner, cols, 0.3, 5));
    const int exact = rank_exact(m);
    if (rank_mod_p(m, kPrime1) != exact || rank_mod_p(m, kPrime2) != exact) ++bad;
  }
  r.check(bad == 0, std::to_string(trials) + " random integer matrices (seed " + std::to_string(seed) +
                        "): " + std::to_string(bad) + " disagreements");
  const GradedComplex c = build_complex(enumerate_basis(7, 4, BasisMode::Complete), {1, false});
  int dbad = 0;
  for (const auto& [k, m] : c.d)
    if (rank_mod_p(m, kPrime1) != rank_exact(m) || rank_mod_p(m, kPrime2) != rank_exact(m)) ++dbad;
  r.check(dbad == 0, "differentials of B_(7,4): " + std::to_string(dbad) + " disagreements");
  return r;
}

Generator random_catalog_generator(std::mt19937_64& rng, int n) { return assemble(random_components(rng, n), n); }

}  // namespace w11
