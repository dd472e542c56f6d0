#include "w11/homology.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <deque>
#include <functional>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace w11 {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

namespace {

using u64 = std::uint64_t;

u64 reduce(long long v, std::uint32_t p) {
  const long long r = v % static_cast<long long>(p);
  return static_cast<u64>(r < 0 ? r + p : r);
}

u64 power(u64 b, u64 e, u64 p) {
  u64 r = 1;
  for (b %= p; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

u64 inverse(u64 a, u64 p) { return power(a, p - 2, p); }

long long lift(u64 v, std::uint32_t p) {
  return v > p / 2 ? static_cast<long long>(v) - static_cast<long long>(p) : static_cast<long long>(v);
}

using ModVec = std::vector<std::pair<int, u64>>;

// Vectors along the shorter side of the matrix; rank is the same either way.
template <class T, class Conv>
std::vector<std::vector<std::pair<int, T>>> sparse_vectors(const SparseIntMatrix& m, Conv conv) {
  const bool by_col = m.cols <= m.rows;
  std::vector<std::vector<std::pair<int, T>>> vs(static_cast<std::size_t>(by_col ? m.cols : m.rows));
  for (const auto& [r, c, v] : m.entries) {
    const T x = conv(v);
    if (x == 0) continue;
    vs[static_cast<std::size_t>(by_col ? c : r)].emplace_back(by_col ? r : c, x);
  }
  for (auto& v : vs) std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::stable_sort(vs.begin(), vs.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return vs;
}

// v - f * piv over Z/p.
ModVec axpy(const ModVec& v, u64 f, const ModVec& piv, u64 p) {
  ModVec out;
  out.reserve(v.size() + piv.size());
  std::size_t i = 0, j = 0;
  const u64 neg = (p - f) % p;
  while (i < v.size() || j < piv.size()) {
    if (j == piv.size() || (i < v.size() && v[i].first < piv[j].first)) {
      out.push_back(v[i++]);
    } else if (i == v.size() || piv[j].first < v[i].first) {
      out.emplace_back(piv[j].first, neg * piv[j].second % p);
      ++j;
    } else {
      const u64 x = (v[i].second + neg * piv[j].second) % p;
      if (x) out.emplace_back(v[i].first, x);
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

int rank_mod_p(const SparseIntMatrix& m, std::uint32_t p) {
  auto vs = sparse_vectors<u64>(m, [p](long long v) { return reduce(v, p); });
  std::unordered_map<int, ModVec> pivots;
  for (ModVec& v : vs) {
    while (!v.empty()) {
      const auto it = pivots.find(v.front().first);
      if (it == pivots.end()) {
        const u64 inv = inverse(v.front().second, p);
        for (auto& e : v) e.second = e.second * inv % p;
        const int lead = v.front().first;
        pivots.emplace(lead, std::move(v));
        break;
      }
      v = axpy(v, v.front().second, it->second, p);
    }
  }
  return static_cast<int>(pivots.size());
}

int rank_exact(const SparseIntMatrix& m) {
  using ZVec = std::vector<std::pair<int, mpz_class>>;
  auto vs = sparse_vectors<mpz_class>(m, [](long long v) { return mpz_class(static_cast<long>(v)); });
  std::unordered_map<int, ZVec> pivots;
  auto primitive = [](ZVec& v) {
    mpz_class g = 0;
    for (const auto& e : v) g = gcd(g, e.second);
    if (g > 1)
      for (auto& e : v) e.second /= g;
  };
  for (ZVec& v : vs) {
    while (!v.empty()) {
      const auto it = pivots.find(v.front().first);
      if (it == pivots.end()) {
        primitive(v);
        const int lead = v.front().first;
        pivots.emplace(lead, std::move(v));
        break;
      }
      const ZVec& piv = it->second;
      const mpz_class a = piv.front().second, b = v.front().second;
      const mpz_class g = gcd(a, b);
      const mpz_class fa = a / g, fb = b / g;
      // fa * v - fb * piv cancels the leading entry
      ZVec out;
      std::size_t i = 0, j = 0;
      while (i < v.size() || j < piv.size()) {
        if (j == piv.size() || (i < v.size() && v[i].first < piv[j].first)) {
          out.emplace_back(v[i].first, fa * v[i].second);
          ++i;
        } else if (i == v.size() || piv[j].first < v[i].first) {
          out.emplace_back(piv[j].first, -fb * piv[j].second);
          ++j;
        } else {
          mpz_class x = fa * v[i].second - fb * piv[j].second;
          if (x != 0) out.emplace_back(v[i].first, std::move(x));
          ++i;
          ++j;
        }
      }
      primitive(out);
      v = std::move(out);
    }
  }
  return static_cast<int>(pivots.size());
}

RankReport rank(const SparseIntMatrix& m, bool certify) {
  RankReport r;
  r.mod_p1 = rank_mod_p(m, kPrime1);
  r.mod_p2 = rank_mod_p(m, kPrime2);
  if (certify || r.mod_p1 != r.mod_p2) r.exact = rank_exact(m);
  return r;
}

std::map<int, int> cohomology_dims(const GradedComplex& c, bool certify) {
  std::map<int, int> ranks;
  for (const auto& [k, m] : c.d) ranks[k] = rank(m, certify).rank();
  std::map<int, int> dims;
  for (const auto& [k, gens] : c.basis.by_degree) {
    const int out = ranks.count(k) ? ranks[k] : 0;
    const int in = ranks.count(k - 1) ? ranks[k - 1] : 0;
    dims[k] = static_cast<int>(gens.size()) - out - in;
  }
  return dims;
}

// --- harmonic representatives ------------------------------------------------

namespace {

// Null space of a sparse matrix with `ambient` columns over Z/p, by dense RREF.
std::vector<std::vector<u64>> null_space_mod_p(const std::vector<const SparseIntMatrix*>& blocks,
                                               bool transpose_second, int ambient, std::uint32_t p) {
  std::vector<std::vector<u64>> rows;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const SparseIntMatrix& m = *blocks[b];
    const bool tr = transpose_second && b == 1;
    const int nrows = tr ? m.cols : m.rows;
    const std::size_t base = rows.size();
    rows.resize(base + static_cast<std::size_t>(nrows), std::vector<u64>(static_cast<std::size_t>(ambient), 0));
    for (const auto& [r, c, v] : m.entries) {
      const int row = tr ? c : r, col = tr ? r : c;
      rows[base + static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = reduce(v, p);
    }
  }
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (int col = 0; col < ambient && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][static_cast<std::size_t>(col)] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[rank]);
    auto& pr = rows[rank];
    const u64 inv = inverse(pr[static_cast<std::size_t>(col)], p);
    for (auto& x : pr) x = x * inv % p;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank) continue;
      const u64 f = rows[r][static_cast<std::size_t>(col)];
      if (!f) continue;
      const u64 neg = p - f;
      auto& row = rows[r];
      for (std::size_t j = static_cast<std::size_t>(col); j < row.size(); ++j)
        if (pr[j]) row[j] = (row[j] + neg * pr[j]) % p;
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<char> is_pivot(static_cast<std::size_t>(ambient), 0);
  for (int cidx : pivot_col) is_pivot[static_cast<std::size_t>(cidx)] = 1;
  std::vector<std::vector<u64>> basis;
  for (int free = 0; free < ambient; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<u64> v(static_cast<std::size_t>(ambient), 0);
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r) {
      const u64 x = rows[r][static_cast<std::size_t>(free)];
      if (x) v[static_cast<std::size_t>(pivot_col[r])] = p - x;
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

SparseIntMatrix empty_matrix(int rows, int cols) {
  SparseIntMatrix m;
  m.rows = rows;
  m.cols = cols;
  return m;
}

}  // namespace

HarmonicSpaceModP harmonic_basis_mod_p(const GradedComplex& c, int k, std::uint32_t p) {
  HarmonicSpaceModP h;
  h.degree = k;
  h.p = p;
  h.ambient = static_cast<int>(c.basis.size(k));
  const SparseIntMatrix out = c.d.count(k) ? c.d.at(k) : empty_matrix(0, h.ambient);
  const SparseIntMatrix in = c.d.count(k - 1) ? c.d.at(k - 1) : empty_matrix(h.ambient, 0);
  h.basis = null_space_mod_p({&out, &in}, true, h.ambient, p);
  return h;
}

namespace {

std::vector<std::vector<mpq_class>> null_space_exact(const GradedComplex& c, int k, int ambient) {
  std::vector<std::vector<mpq_class>> rows;
  auto add = [&](const SparseIntMatrix& m, bool tr) {
    const std::size_t base = rows.size();
    rows.resize(base + static_cast<std::size_t>(tr ? m.cols : m.rows),
                std::vector<mpq_class>(static_cast<std::size_t>(ambient)));
    for (const auto& [r, col, v] : m.entries)
      rows[base + static_cast<std::size_t>(tr ? col : r)][static_cast<std::size_t>(tr ? r : col)] =
          static_cast<long>(v);
  };
  if (c.d.count(k)) add(c.d.at(k), false);
  if (c.d.count(k - 1)) add(c.d.at(k - 1), true);
  std::vector<int> pivot_col;
  std::size_t rank = 0;
  for (int col = 0; col < ambient && rank < rows.size(); ++col) {
    std::size_t sel = rank;
    while (sel < rows.size() && rows[sel][static_cast<std::size_t>(col)] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[sel], rows[rank]);
    auto& pr = rows[rank];
    const mpq_class inv = 1 / pr[static_cast<std::size_t>(col)];
    for (auto& x : pr) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][static_cast<std::size_t>(col)] == 0) continue;
      const mpq_class f = rows[r][static_cast<std::size_t>(col)];
      for (std::size_t j = static_cast<std::size_t>(col); j < pr.size(); ++j)
        if (pr[j] != 0) rows[r][j] -= f * pr[j];
    }
    pivot_col.push_back(col);
    ++rank;
  }
  std::vector<char> is_pivot(static_cast<std::size_t>(ambient), 0);
  for (int x : pivot_col) is_pivot[static_cast<std::size_t>(x)] = 1;
  std::vector<std::vector<mpq_class>> basis;
  for (int free = 0; free < ambient; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    std::vector<mpq_class> v(static_cast<std::size_t>(ambient));
    v[static_cast<std::size_t>(free)] = 1;
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
      v[static_cast<std::size_t>(pivot_col[r])] = -rows[r][static_cast<std::size_t>(free)];
    basis.push_back(std::move(v));
  }
  return basis;
}

// Inverse of a dense square matrix; throws if singular.
template <class T, class Inv>
std::vector<std::vector<T>> invert(std::vector<std::vector<T>> a, Inv inv, const T& zero, const T& one,
                                   std::function<T(const T&, const T&)> mul,
                                   std::function<T(const T&, const T&)> sub) {
  const std::size_t n = a.size();
  std::vector<std::vector<T>> b(n, std::vector<T>(n, zero));
  for (std::size_t i = 0; i < n; ++i) b[i][i] = one;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && a[sel][col] == zero) ++sel;
    if (sel == n) throw Error("Gram matrix of the harmonic space is singular");
    std::swap(a[sel], a[col]);
    std::swap(b[sel], b[col]);
    const T f = inv(a[col][col]);
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] = mul(a[col][j], f);
      b[col][j] = mul(b[col][j], f);
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == zero) continue;
      const T g = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] = sub(a[r][j], mul(g, a[col][j]));
        b[r][j] = sub(b[r][j], mul(g, b[col][j]));
      }
    }
  }
  return b;
}

}  // namespace

HarmonicSpace harmonic_basis(const GradedComplex& c, int k) {
  HarmonicSpace h;
  h.degree = k;
  h.ambient = static_cast<int>(c.basis.size(k));
  for (auto& v : null_space_exact(c, k, h.ambient)) {
    mpz_class lcm = 1;
    for (const auto& x : v) lcm = ::lcm(lcm, x.get_den());
    mpz_class content = 0;
    for (const auto& x : v) content = gcd(content, mpz_class(x.get_num() * (lcm / x.get_den())));
    std::vector<mpz_class> iv;
    for (const auto& x : v) iv.push_back(x.get_num() * (lcm / x.get_den()) / content);
    h.basis.push_back(std::move(iv));
  }
  return h;
}

std::vector<long long> harmonic_character(const GradedComplex& c, int k, const CharacterTable& table,
                                          std::uint32_t p) {
  const HarmonicSpaceModP h = harmonic_basis_mod_p(c, k, p);
  std::vector<long long> chi(table.classes.size(), 0);
  const std::size_t dim = h.basis.size();
  if (dim == 0) return chi;
  const std::size_t amb = static_cast<std::size_t>(h.ambient);
  auto dot = [p, amb](const std::vector<u64>& a, const std::vector<u64>& b) {
    u64 s = 0;
    for (std::size_t i = 0; i < amb; ++i)
      if (a[i] && b[i]) s = (s + a[i] * b[i]) % p;
    return s;
  };
  std::vector<std::vector<u64>> gram(dim, std::vector<u64>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) gram[i][j] = gram[j][i] = dot(h.basis[i], h.basis[j]);
  const u64 pp = p;
  const auto ginv = invert<u64>(
      gram, [pp](u64 a) { return inverse(a, pp); }, 0, 1, [pp](const u64& a, const u64& b) { return a * b % pp; },
      [pp](const u64& a, const u64& b) { return (a + pp - b) % pp; });
  for (std::size_t m = 0; m < table.classes.size(); ++m) {
    const SignedPermutation sp = act(class_representative(table.classes[m]), c.basis, k);
    std::vector<std::vector<u64>> moved(dim, std::vector<u64>(amb, 0));
    for (std::size_t v = 0; v < dim; ++v)
      for (std::size_t i = 0; i < amb; ++i)
        if (h.basis[v][i]) {
          const u64 x = h.basis[v][i];
          moved[v][static_cast<std::size_t>(sp.target[i])] = sp.sign[i] > 0 ? x : p - x;
        }
    u64 tr = 0;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        if (!ginv[i][j]) continue;
        tr = (tr + ginv[i][j] * dot(h.basis[j], moved[i])) % p;
      }
    chi[m] = lift(tr, p);
  }
  return chi;
}

std::vector<long long> harmonic_character_exact(const GradedComplex& c, int k, const CharacterTable& table) {
  const int ambient = static_cast<int>(c.basis.size(k));
  const auto basis = null_space_exact(c, k, ambient);
  std::vector<long long> chi(table.classes.size(), 0);
  const std::size_t dim = basis.size();
  if (dim == 0) return chi;
  auto dot = [](const std::vector<mpq_class>& a, const std::vector<mpq_class>& b) {
    mpq_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
  };
  std::vector<std::vector<mpq_class>> gram(dim, std::vector<mpq_class>(dim));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = i; j < dim; ++j) gram[i][j] = gram[j][i] = dot(basis[i], basis[j]);
  const auto ginv = invert<mpq_class>(
      gram, [](const mpq_class& a) { return mpq_class(1 / a); }, mpq_class(0), mpq_class(1),
      [](const mpq_class& a, const mpq_class& b) { return mpq_class(a * b); },
      [](const mpq_class& a, const mpq_class& b) { return mpq_class(a - b); });
  for (std::size_t m = 0; m < table.classes.size(); ++m) {
    const SignedPermutation sp = act(class_representative(table.classes[m]), c.basis, k);
    mpq_class tr = 0;
    for (std::size_t i = 0; i < dim; ++i) {
      std::vector<mpq_class> moved(static_cast<std::size_t>(ambient));
      for (std::size_t a = 0; a < moved.size(); ++a)
        if (basis[i][a] != 0) moved[static_cast<std::size_t>(sp.target[a])] = sp.sign[a] * basis[i][a];
      for (std::size_t j = 0; j < dim; ++j)
        if (ginv[i][j] != 0) tr += ginv[i][j] * dot(basis[j], moved);
    }
    if (tr.get_den() != 1 || !tr.get_num().fits_slong_p()) throw Error("harmonic trace is not an integer");
    chi[m] = tr.get_num().get_si();
  }
  return chi;
}

// --- twisted invariants ------------------------------------------------------

namespace {

// Action of the adjacent transposition (l, l+1) on one degree, for every l.
struct AdjacentActions {
  std::map<int, std::vector<SignedPermutation>> by_degree;  // [k][l-1]
};

AdjacentActions adjacent_actions(const GradedComplex& c, int threads) {
  AdjacentActions a;
  const int n = c.basis.n;
  std::vector<std::pair<int, int>> jobs;
  for (const auto& [k, gens] : c.basis.by_degree) {
    a.by_degree[k].resize(static_cast<std::size_t>(std::max(0, n - 1)));
    for (int l = 1; l < n; ++l) jobs.emplace_back(k, l);
  }
  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr err;
  auto worker = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < jobs.size();) {
      try {
        const auto [k, l] = jobs[j];
        std::vector<int> sigma(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) sigma[static_cast<std::size_t>(i)] = i + 1;
        std::swap(sigma[static_cast<std::size_t>(l - 1)], sigma[static_cast<std::size_t>(l)]);
        a.by_degree[k][static_cast<std::size_t>(l - 1)] = act(sigma, c.basis, k);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!err) err = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
  return a;
}

struct Orbits {
  std::vector<int> orbit_of;  // -1 for generators in cancelling orbits
  std::vector<int> coeff;     // ±1 coefficient in the orbit vector
  std::vector<int> rep;       // representative of each surviving orbit
};

Orbits twisted_orbits(const std::vector<SignedPermutation>& adj, const std::vector<int>& moves, int size) {
  Orbits o;
  o.orbit_of.assign(static_cast<std::size_t>(size), -2);
  o.coeff.assign(static_cast<std::size_t>(size), 0);
  for (int start = 0; start < size; ++start) {
    if (o.orbit_of[static_cast<std::size_t>(start)] != -2) continue;
    std::vector<int> members{start};
    o.coeff[static_cast<std::size_t>(start)] = 1;
    o.orbit_of[static_cast<std::size_t>(start)] = -3;
    bool consistent = true;
    for (std::size_t q = 0; q < members.size(); ++q) {
      const int b = members[q];
      for (int l : moves) {
        const SignedPermutation& t = adj[static_cast<std::size_t>(l - 1)];
        const int tb = t.target[static_cast<std::size_t>(b)];
        const int want = -t.sign[static_cast<std::size_t>(b)] * o.coeff[static_cast<std::size_t>(b)];
        if (o.orbit_of[static_cast<std::size_t>(tb)] == -2) {
          o.orbit_of[static_cast<std::size_t>(tb)] = -3;
          o.coeff[static_cast<std::size_t>(tb)] = want;
          members.push_back(tb);
        } else if (o.coeff[static_cast<std::size_t>(tb)] != want) {
          consistent = false;
        }
      }
    }
    const int id = consistent ? static_cast<int>(o.rep.size()) : -1;
    if (consistent) o.rep.push_back(start);
    for (int m : members) o.orbit_of[static_cast<std::size_t>(m)] = id;
  }
  return o;
}

std::vector<int> young_moves(const Partition& mu) {
  std::vector<int> moves;
  int start = 1;
  for (int p : mu.parts) {
    for (int l = start; l < start + p - 1; ++l) moves.push_back(l);
    start += p;
  }
  return moves;
}

std::map<int, int> invariant_dims(const GradedComplex& c, const AdjacentActions& adj, const Partition& mu) {
  const std::vector<int> moves = young_moves(mu);
  std::map<int, Orbits> orbits;
  for (const auto& [k, gens] : c.basis.by_degree)
    orbits[k] = twisted_orbits(adj.by_degree.at(k), moves, static_cast<int>(gens.size()));
  std::map<int, int> ranks;
  for (const auto& [k, d] : c.d) {
    if (!orbits.count(k) || !orbits.count(k + 1)) continue;
    const Orbits& src = orbits.at(k);
    const Orbits& dst = orbits.at(k + 1);
    std::vector<int> rep_index(static_cast<std::size_t>(d.rows), -1);
    for (std::size_t i = 0; i < dst.rep.size(); ++i) rep_index[static_cast<std::size_t>(dst.rep[i])] = static_cast<int>(i);
    std::map<std::pair<int, int>, long long> acc;
    for (const auto& [r, col, v] : d.entries) {
      const int so = src.orbit_of[static_cast<std::size_t>(col)];
      const int ro = rep_index[static_cast<std::size_t>(r)];
      if (so < 0 || ro < 0) continue;
      acc[{so, ro}] += src.coeff[static_cast<std::size_t>(col)] * v;
    }
    SparseIntMatrix a;
    a.rows = static_cast<int>(dst.rep.size());
    a.cols = static_cast<int>(src.rep.size());
    for (const auto& [key, v] : acc)
      if (v != 0) a.entries.emplace_back(key.second, key.first, v);
    ranks[k] = rank(a).rank();
  }
  std::map<int, int> dims;
  for (const auto& [k, o] : orbits) {
    const int out = ranks.count(k) ? ranks[k] : 0;
    const int in = ranks.count(k - 1) ? ranks[k - 1] : 0;
    dims[k] = static_cast<int>(o.rep.size()) - out - in;
  }
  return dims;
}

}  // namespace

std::map<int, int> twisted_invariant_cohomology(const GradedComplex& c, const Partition& mu) {
  if (mu.size() != c.basis.n) throw Error("twisted_invariant_cohomology: partition size must equal n");
  return invariant_dims(c, adjacent_actions(c, 1), mu);
}

CohomologyResult equivariant_cohomology(const GradedComplex& c, const CharacterTable& table,
                                        EquivariantOptions options) {
  if (table.n != c.basis.n) throw Error("equivariant_cohomology: character table has the wrong degree");
  CohomologyResult r;
  r.g = c.basis.g;
  r.n = c.basis.n;
  const int threads = resolve_threads(options.threads);
  r.dims = cohomology_dims(c);
  for (const auto& [k, gens] : c.basis.by_degree) r.chains[k] = chain_multiplicities(c.basis, k, table);

  if (options.method == EquivariantMethod::Harmonic) {
    for (const auto& [k, dim] : r.dims) {
      if (dim == 0) {
        r.H[k] = {};
        continue;
      }
      r.H[k] = decompose_character(harmonic_character(c, k, table), table);
    }
  } else {
    const AdjacentActions adj = adjacent_actions(c, threads);
    std::map<Partition, std::map<int, int>, PartitionDesc> cache;
    auto invariants = [&](const Partition& mu) -> const std::map<int, int>& {
      auto it = cache.find(mu);
      if (it == cache.end()) it = cache.emplace(mu, invariant_dims(c, adj, mu)).first;
      return it->second;
    };
    for (const auto& [k, dim] : r.dims) {
      RepDecomposition h;
      if (dim > 0) {
        // candidates in lexicographically ascending order refine dominance
        std::vector<Partition> cand;
        for (const auto& [lambda, m] : r.chains[k]) cand.push_back(lambda);
        std::reverse(cand.begin(), cand.end());
        for (const Partition& nu : cand) {
          const Partition nu_c = nu.conjugate();
          long long m = invariants(nu_c).at(k);
          for (const auto& [lambda, ml] : h) m -= ml * kostka(lambda.conjugate(), nu_c);
          if (m < 0) throw Error("equivariant_cohomology: negative multiplicity for " + nu.to_string());
          if (m > 0) h[nu] = m;
        }
        if (dimension(h) != dim)
          throw Error("equivariant_cohomology: decomposition dimension " + std::to_string(dimension(h)) +
                      " differs from dim H^" + std::to_string(k) + " = " + std::to_string(dim));
      }
      r.H[k] = h;
    }
  }
  r.euler = euler_check(r);
  return r;
}

VirtualDecomposition euler_check(const CohomologyResult& r) {
  VirtualDecomposition e;
  for (const auto& [k, d] : r.chains)
    for (const auto& [p, m] : d) e[p] += (k % 2 == 0 ? 1 : -1) * m;
  for (const auto& [k, d] : r.H)
    for (const auto& [p, m] : d) e[p] -= (k % 2 == 0 ? 1 : -1) * m;
  for (auto it = e.begin(); it != e.end();) it = it->second == 0 ? e.erase(it) : std::next(it);
  return e;
}

}  // namespace w11
