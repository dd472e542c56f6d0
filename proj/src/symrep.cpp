#include "w11/symrep.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

namespace w11 {

Partition::Partition(std::vector<int> p) : parts(std::move(p)) {
  if (!std::is_sorted(parts.rbegin(), parts.rend())) throw Error("partition parts must be weakly decreasing");
  if (!parts.empty() && parts.back() <= 0) throw Error("partition parts must be positive");
}

int Partition::size() const { return std::accumulate(parts.begin(), parts.end(), 0); }

Partition Partition::conjugate() const {
  std::vector<int> c;
  for (int j = 1; !parts.empty() && j <= parts.front(); ++j)
    c.push_back(static_cast<int>(std::count_if(parts.begin(), parts.end(), [j](int p) { return p >= j; })));
  return Partition(std::move(c));
}

std::string Partition::to_string() const {
  auto num = [](int x) { return x < 10 ? std::to_string(x) : "{" + std::to_string(x) + "}"; };
  std::string s;
  for (std::size_t i = 0; i < parts.size();) {
    std::size_t j = i;
    while (j < parts.size() && parts[j] == parts[i]) ++j;
    s += num(parts[i]);
    if (j - i >= 2) s += "^" + num(static_cast<int>(j - i));
    i = j;
  }
  return s.empty() ? "0" : s;
}

Partition Partition::parse(const std::string& text) {
  std::size_t i = 0;
  auto number = [&]() {
    if (i >= text.size()) throw Error("partition: unexpected end of '" + text + "'");
    if (text[i] == '{') {
      const std::size_t close = text.find('}', i);
      if (close == std::string::npos) throw Error("partition: unbalanced brace in '" + text + "'");
      const int v = std::stoi(text.substr(i + 1, close - i - 1));
      i = close + 1;
      return v;
    }
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw Error("partition: bad character in '" + text + "'");
    return text[i++] - '0';
  };
  if (text == "0") return Partition{};
  std::vector<int> parts;
  while (i < text.size()) {
    const int part = number();
    int reps = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      reps = number();
    }
    parts.insert(parts.end(), static_cast<std::size_t>(reps), part);
  }
  return Partition(std::move(parts));
}

bool Partition::dominates(const Partition& other) const {
  int a = 0, b = 0;
  const std::size_t len = std::max(parts.size(), other.parts.size());
  for (std::size_t i = 0; i < len; ++i) {
    a += i < parts.size() ? parts[i] : 0;
    b += i < other.parts.size() ? other.parts[i] : 0;
    if (a < b) return false;
  }
  return true;
}

std::vector<Partition> partitions(int n) {
  std::vector<Partition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int max_part) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int p = std::min(left, max_part); p >= 1; --p) {
      cur.push_back(p);
      rec(left - p, p);
      cur.pop_back();
    }
  };
  rec(n, n);
  return out;
}

long long hook_dimension(const Partition& lambda) {
  const Partition c = lambda.conjugate();
  // n! / prod hooks, accumulated as a product of quotients to stay exact
  __int128 num = 1;
  for (int i = 2; i <= lambda.size(); ++i) num *= i;
  __int128 den = 1;
  for (std::size_t i = 0; i < lambda.parts.size(); ++i)
    for (int j = 0; j < lambda.parts[i]; ++j)
      den *= (lambda.parts[i] - j - 1) + (c.parts[static_cast<std::size_t>(j)] - static_cast<int>(i) - 1) + 1;
  return static_cast<long long>(num / den);
}

std::vector<Partition> horizontal_strips(const Partition& lambda, int k) {
  std::vector<Partition> out;
  const std::vector<int>& l = lambda.parts;
  const std::size_t len = l.size() + 1;
  std::vector<int> nu(len, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i == len) {
      if (left == 0) {
        std::vector<int> p;
        for (int x : nu)
          if (x > 0) p.push_back(x);
        out.emplace_back(std::move(p));
      }
      return;
    }
    const int base = i < l.size() ? l[i] : 0;
    const int cap = i == 0 ? base + left : std::min(base + left, l[i - 1]);
    for (int x = cap; x >= base; --x) {
      nu[i] = x;
      rec(i + 1, left - (x - base));
    }
  };
  rec(0, k);
  return out;
}

std::vector<Partition> vertical_strips(const Partition& lambda, int k) {
  std::vector<Partition> out;
  for (const Partition& p : horizontal_strips(lambda.conjugate(), k)) out.push_back(p.conjugate());
  return out;
}

long long kostka(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) return 0;
  std::map<std::vector<int>, long long> layer{{{}, 1}};
  auto inside = [&lambda](const Partition& p) {
    if (p.parts.size() > lambda.parts.size()) return false;
    for (std::size_t i = 0; i < p.parts.size(); ++i)
      if (p.parts[i] > lambda.parts[i]) return false;
    return true;
  };
  for (int m : mu.parts) {
    std::map<std::vector<int>, long long> next;
    for (const auto& [shape, count] : layer)
      for (const Partition& p : horizontal_strips(Partition(shape), m))
        if (inside(p)) next[p.parts] += count;
    layer = std::move(next);
  }
  const auto it = layer.find(lambda.parts);
  return it == layer.end() ? 0 : it->second;
}

// --- characters --------------------------------------------------------------

namespace {

std::vector<int> beta_set(const std::vector<int>& parts) {
  const int len = static_cast<int>(parts.size());
  std::vector<int> b(parts.size());
  for (int i = 0; i < len; ++i) b[static_cast<std::size_t>(i)] = parts[static_cast<std::size_t>(i)] + (len - 1 - i);
  return b;  // strictly decreasing
}

std::vector<int> from_beta(std::vector<int> beta) {
  std::sort(beta.rbegin(), beta.rend());
  const int len = static_cast<int>(beta.size());
  std::vector<int> p;
  for (int i = 0; i < len; ++i) {
    const int part = beta[static_cast<std::size_t>(i)] - (len - 1 - i);
    if (part > 0) p.push_back(part);
  }
  return p;
}

long long mn(const std::vector<int>& lambda, const std::vector<int>& mu, std::size_t from,
             std::map<std::pair<std::vector<int>, std::size_t>, long long>& memo) {
  if (from == mu.size()) return lambda.empty() ? 1 : 0;
  const auto key = std::make_pair(lambda, from);
  if (const auto it = memo.find(key); it != memo.end()) return it->second;
  const int r = mu[from];
  const std::vector<int> beta = beta_set(lambda);
  const std::set<int> beads(beta.begin(), beta.end());
  long long total = 0;
  for (int b : beta) {
    const int target = b - r;
    if (target < 0 || beads.count(target)) continue;
    int between = 0;
    for (int c : beta)
      if (c > target && c < b) ++between;
    std::vector<int> nb = beta;
    std::replace(nb.begin(), nb.end(), b, target);
    const long long sub = mn(from_beta(nb), mu, from + 1, memo);
    total += between % 2 == 0 ? sub : -sub;
  }
  memo.emplace(key, total);
  return total;
}

}  // namespace

long long character_value(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) throw Error("character_value: size mismatch");
  std::map<std::pair<std::vector<int>, std::size_t>, long long> memo;
  return mn(lambda.parts, mu.parts, 0, memo);
}

int CharacterTable::irrep_index(const Partition& lambda) const {
  const auto it = std::find(irreps.begin(), irreps.end(), lambda);
  if (it == irreps.end()) throw Error("unknown irrep " + lambda.to_string());
  return static_cast<int>(it - irreps.begin());
}

int CharacterTable::class_index(const Partition& mu) const {
  const auto it = std::find(classes.begin(), classes.end(), mu);
  if (it == classes.end()) throw Error("unknown class " + mu.to_string());
  return static_cast<int>(it - classes.begin());
}

CharacterTable characters(int n) {
  if (n < 0 || n > 16) throw Error("character tables are supported for n <= 16");
  CharacterTable t;
  t.n = n;
  t.irreps = partitions(n);
  t.classes = t.irreps;
  for (int i = 2; i <= n; ++i) t.group_order *= i;
  for (const Partition& mu : t.classes) {
    long long z = 1;
    for (std::size_t i = 0; i < mu.parts.size();) {
      std::size_t j = i;
      while (j < mu.parts.size() && mu.parts[j] == mu.parts[i]) ++j;
      for (std::size_t r = 1; r <= j - i; ++r) z *= static_cast<long long>(r) * mu.parts[i];
      i = j;
    }
    t.class_sizes.push_back(t.group_order / z);
  }
  t.values.assign(t.irreps.size(), std::vector<long long>(t.classes.size(), 0));
  for (std::size_t m = 0; m < t.classes.size(); ++m) {
    std::map<std::pair<std::vector<int>, std::size_t>, long long> memo;
    for (std::size_t l = 0; l < t.irreps.size(); ++l)
      t.values[l][m] = mn(t.irreps[l].parts, t.classes[m].parts, 0, memo);
  }
  return t;
}

std::vector<int> class_representative(const Partition& mu) {
  std::vector<int> perm(static_cast<std::size_t>(mu.size()));
  int start = 1;
  for (int p : mu.parts) {
    for (int i = 0; i < p; ++i)
      perm[static_cast<std::size_t>(start - 1 + i)] = start + (i + 1) % p;
    start += p;
  }
  return perm;
}

std::vector<int> compose(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i] - 1)];
  return r;
}

Partition cycle_type(const std::vector<int>& perm) {
  std::vector<char> seen(perm.size(), 0);
  std::vector<int> parts;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j] - 1)) {
      seen[j] = 1;
      ++len;
    }
    parts.push_back(len);
  }
  std::sort(parts.rbegin(), parts.rend());
  return Partition(std::move(parts));
}

// --- actions on generators ---------------------------------------------------

long long SignedPermutation::trace() const {
  long long t = 0;
  for (std::size_t i = 0; i < target.size(); ++i)
    if (target[i] == static_cast<int>(i)) t += sign[i];
  return t;
}

namespace {

template <class Lookup>
SignedPermutation act_with(const std::vector<int>& sigma, const std::vector<Generator>& gens, Lookup&& lookup) {
  SignedPermutation sp;
  sp.target.resize(gens.size());
  sp.sign.resize(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const auto c = canonicalize(relabel_legs(gens[i], sigma));
    if (!c) throw Error("act: relabeled generator vanishes: " + to_text(gens[i]));
    const int j = lookup(c->key);
    if (j < 0) throw Error("act: relabeled generator is missing from the basis: " + to_text(c->graph));
    sp.target[i] = j;
    sp.sign[i] = c->sign;
  }
  return sp;
}

}  // namespace

SignedPermutation act(const std::vector<int>& sigma, const std::vector<Generator>& gens,
                      const std::vector<Key>& keys) {
  std::unordered_map<Key, int> index;
  for (std::size_t i = 0; i < keys.size(); ++i) index.emplace(keys[i], static_cast<int>(i));
  return act_with(sigma, gens, [&index](const Key& k) {
    const auto it = index.find(k);
    return it == index.end() ? -1 : it->second;
  });
}

SignedPermutation act(const std::vector<int>& sigma, const GradedBasis& basis, int degree) {
  const auto it = basis.by_degree.find(degree);
  if (it == basis.by_degree.end()) return {};
  return act_with(sigma, it->second, [&basis, degree](const Key& k) {
    const auto at = basis.find(k);
    return at && at->first == degree ? at->second : -1;
  });
}

std::vector<long long> permutation_character(const std::vector<Generator>& gens,
                                             const std::vector<Key>& keys, const CharacterTable& table) {
  std::vector<long long> chi;
  for (const Partition& mu : table.classes) chi.push_back(act(class_representative(mu), gens, keys).trace());
  return chi;
}

VirtualDecomposition decompose_character(const std::vector<long long>& chi, const CharacterTable& table) {
  VirtualDecomposition out;
  for (std::size_t l = 0; l < table.irreps.size(); ++l) {
    __int128 s = 0;
    for (std::size_t m = 0; m < table.classes.size(); ++m)
      s += static_cast<__int128>(table.class_sizes[m]) * table.values[l][m] * chi[m];
    if (s % table.group_order != 0)
      throw Error("non-integral multiplicity for " + table.irreps[l].to_string());
    const long long mult = static_cast<long long>(s / table.group_order);
    if (mult != 0) out[table.irreps[l]] = mult;
  }
  return out;
}

RepDecomposition chain_multiplicities(const GradedBasis& basis, int degree, const CharacterTable& table) {
  const auto it = basis.by_degree.find(degree);
  if (it == basis.by_degree.end()) return {};
  std::vector<long long> chi;
  for (const Partition& mu : table.classes) chi.push_back(act(class_representative(mu), basis, degree).trace());
  RepDecomposition d = decompose_character(chi, table);
  for (const auto& [lambda, m] : d)
    if (m < 0) throw Error("negative chain multiplicity for " + lambda.to_string());
  return d;
}

// --- Pieri induction ---------------------------------------------------------

RepDecomposition pieri_induce(const std::vector<InductionBlock>& blocks) {
  VirtualDecomposition cur{{Partition{}, 1}};
  auto strip_step = [](const VirtualDecomposition& in, int k, bool vertical) {
    VirtualDecomposition out;
    for (const auto& [p, m] : in)
      for (const Partition& q : vertical ? vertical_strips(p, k) : horizontal_strips(p, k)) out[q] += m;
    return out;
  };
  for (const InductionBlock& b : blocks) {
    if (b.size < 0) throw Error("pieri_induce: negative block size");
    if (b.type == BlockType::Trivial) {
      cur = strip_step(cur, b.size, false);
    } else if (b.type == BlockType::Sign) {
      cur = strip_step(cur, b.size, true);
    } else {
      // s_α = det(h_{α_i - i + j}) turns each irreducible into horizontal strips
      VirtualDecomposition next;
      for (const auto& [alpha, mult] : b.rep) {
        if (alpha.size() != b.size) throw Error("pieri_induce: block representation has the wrong degree");
        const int len = alpha.length();
        std::vector<int> sigma(static_cast<std::size_t>(len));
        std::iota(sigma.begin(), sigma.end(), 0);
        do {
          bool ok = true;
          std::vector<int> h;
          for (int i = 0; i < len && ok; ++i) {
            const int c = alpha.parts[static_cast<std::size_t>(i)] - i + sigma[static_cast<std::size_t>(i)];
            if (c < 0) ok = false;
            else h.push_back(c);
          }
          if (!ok) continue;
          VirtualDecomposition term = cur;
          for (int c : h) term = strip_step(term, c, false);
          const int sgn = permutation_sign(sigma);
          for (const auto& [p, m] : term) next[p] += sgn * m * mult;
        } while (std::next_permutation(sigma.begin(), sigma.end()));
      }
      cur.clear();
      for (const auto& [p, m] : next)
        if (m != 0) cur[p] = m;
    }
  }
  RepDecomposition out;
  for (const auto& [p, m] : cur) {
    if (m < 0) throw Error("pieri_induce: negative multiplicity");
    if (m > 0) out[p] = m;
  }
  return out;
}

long long dimension(const RepDecomposition& d) {
  long long s = 0;
  for (const auto& [p, m] : d) s += m * hook_dimension(p);
  return s;
}

std::string format_decomposition(const RepDecomposition& d) {
  std::string s;
  for (const auto& [p, m] : d) {
    if (m == 0) continue;
    if (!s.empty()) s += m < 0 ? " - " : " + ";
    else if (m < 0) s += "-";
    const long long a = m < 0 ? -m : m;
    if (a != 1) s += std::to_string(a);
    const std::string body = p.to_string();
    s += body.size() == 1 ? "V_" + body : "V_{" + body + "}";
  }
  return s.empty() ? "0" : s;
}

RepDecomposition parse_decomposition(const std::string& text) {
  RepDecomposition out;
  if (text == "0") return out;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && text[i] == ' ') ++i;
  };
  long long sign = 1;
  while (true) {
    skip();
    if (i >= text.size()) break;
    long long mult = 0;
    bool has = false;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      mult = mult * 10 + (text[i++] - '0');
      has = true;
    }
    if (!has) mult = 1;
    if (text.compare(i, 2, "V_") != 0) throw Error("decomposition: expected V_ in '" + text + "'");
    i += 2;
    std::string body;
    if (i < text.size() && text[i] == '{') {
      int depth = 0;
      const std::size_t start = i;
      for (; i < text.size(); ++i) {
        if (text[i] == '{') ++depth;
        if (text[i] == '}' && --depth == 0) break;
      }
      if (i >= text.size()) throw Error("decomposition: unbalanced braces in '" + text + "'");
      body = text.substr(start + 1, i - start - 1);
      ++i;
    } else {
      if (i >= text.size()) throw Error("decomposition: truncated '" + text + "'");
      body = text.substr(i++, 1);
    }
    out[Partition::parse(body)] += sign * mult;
    skip();
    if (i >= text.size()) break;
    if (text[i] == '+') sign = 1;
    else if (text[i] == '-') sign = -1;
    else throw Error("decomposition: expected + or - in '" + text + "'");
    ++i;
  }
  return out;
}

}  // namespace w11
