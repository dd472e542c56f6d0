#include "w11/families.hpp"

#include <algorithm>
#include <regex>

namespace w11 {

namespace {

InductionBlock T(int k) { return {k, BlockType::Trivial, {}}; }
InductionBlock Sg(int k) { return {k, BlockType::Sign, {}}; }

// Template names used by the tables.
const char* const kOmegaEps = "ωε tadpole";
const char* const kEpsEps = "εε tadpole";
const char* const kLegOO = "(j ω ω)";
const char* const kEpsLeg = "ε-leg j";
const char* const kEpsOO = "(ε ω ω)";
const char* const kLegLegO = "(i j ω)";
const char* const kEpsLegO = "(ε j ω)";
const char* const kTwoTwo = "(i ω | ω j)";

std::vector<Family> build() {
  using P = Family::Part;
  std::vector<Family> f;
  auto add = [&f](std::string name, std::string lambda, std::vector<P> parts, int labels, int shift, int offset,
                  std::vector<InductionBlock> blocks, std::vector<std::string> printed) {
    f.push_back(Family{std::move(name), std::move(lambda), std::move(parts), labels, shift, offset,
                       std::move(blocks), std::move(printed)});
  };
  const std::vector<InductionBlock> none;

  // excess partition 4
  add("Γ^(4)_{εij}", "4", {{"Γ^(4)_{εij} component", {1, 2}}}, 2, 1, 12, {T(2)}, {"31^{n-3}", "21^{n-2}"});
  add("Γ^(4)_{ijk}", "4", {{"Γ^(4)_{ijk} component", {1, 2, 3}}}, 3, 1, 12, {T(3)}, {"41^{n-4}", "31^{n-3}"});
  add("Γ^(4)_{i·jk}", "4", {{"Γ^(4)_{i·jk} component", {1, 2, 3}}}, 3, 1, 13, {T(1), T(2)},
      {"41^{n-4}", "321^{n-5}", "31^{n-3}", "2^21^{n-4}", "31^{n-3}", "21^{n-2}"});
  add("Γ^(4)_{εi}", "4", {{"Γ^(4)_{εi} component", {1}}}, 1, 3, 14, {T(1)}, {"21^{n-2}", "1^{n}"});
  add("Γ^(4)_{εi·ω}", "4", {{"Γ^(4)_{εi·ω} component", {1}}}, 1, 3, 15, {T(1)}, {"21^{n-2}", "1^{n}"});
  add("Γ^(4)_{ε·i}", "4", {{"Γ^(4)_{ε·i} component", {1}}}, 1, 3, 15, {T(1)}, {"21^{n-2}", "1^{n}"});
  add("Γ^(4)_{iωj}", "4", {{"Γ^(4)_{iωj} component", {1, 2}}}, 2, 3, 16, {Sg(2)},
      {"2^21^{n-4}", "21^{n-2}", "1^{n}"});

  // 31
  add("Γ^(31)_{εε;ε}", "31", {{kOmegaEps, {}}, {kEpsEps, {}}}, 0, 3, 13, none, {"1^{n}"});
  add("Γ^(31)_{εε;i}", "31", {{kLegOO, {1}}, {kEpsEps, {}}}, 1, 3, 14, {T(1)}, {"21^{n-2}", "1^{n}"});
  add("Γ^(31)_{εωi;ε}", "31", {{kOmegaEps, {}}, {kEpsLegO, {1}}}, 1, 3, 14, {T(1)}, {"21^{n-2}", "1^{n}"});
  add("Γ^(31)_{εωi;j}", "31", {{kLegOO, {2}}, {kEpsLegO, {1}}}, 2, 3, 15, {T(1), T(1)},
      {"31^{n-3}", "2^21^{n-4}", "21^{n-2}", "21^{n-2}", "1^{n}"});
  add("Γ^(31)_{i·j;ε}", "31", {{kOmegaEps, {}}, {kTwoTwo, {1, 2}}}, 2, 3, 15, {T(2)}, {"31^{n-3}", "21^{n-2}"});
  add("Γ^(31)_{i·j;k}", "31", {{kLegOO, {3}}, {kTwoTwo, {1, 2}}}, 3, 3, 16, {T(2), T(1)},
      {"41^{n-4}", "321^{n-5}", "31^{n-3}", "2^21^{n-4}", "31^{n-3}", "21^{n-2}"});

  // 2^2
  add("Γ^(2^2)_{εi;εj}", "2^2", {{kEpsLeg, {1}}, {kEpsLeg, {2}}}, 2, 1, 11, {T(2)}, {"31^{n-3}", "21^{n-2}"});
  add("Γ^(2^2)_{εi;jk}", "2^2", {{kEpsLeg, {1}}, {kLegLegO, {2, 3}}}, 3, 1, 12, {T(1), T(2)},
      {"41^{n-4}", "321^{n-5}", "31^{n-3}", "2^21^{n-4}", "31^{n-3}", "21^{n-2}"});
  add("Γ^(2^2)_{εi;ε}", "2^2", {{kEpsLeg, {1}}, {kEpsOO, {}}}, 1, 3, 14, {T(1)}, {"21^{n-2}", "1^{n}"});
  add("Γ^(2^2)_{ij;kl}", "2^2", {{kLegLegO, {1, 2}}, {kLegLegO, {3, 4}}}, 4, 1, 13,
      {InductionBlock{4, BlockType::General, {{Partition({4}), 1}, {Partition({2, 2}), 1}}}},
      {"51^{n-5}", "41^{n-4}", "3^21^{n-6}", "321^{n-5}", "2^21^{n-4}"});
  add("Γ^(2^2)_{ε;ij}", "2^2", {{kEpsOO, {}}, {kLegLegO, {1, 2}}}, 2, 3, 15, {T(2)}, {"31^{n-3}", "21^{n-2}"});
  add("Γ^(2^2)_{ε;ε}", "2^2", {{kEpsOO, {}}, {kEpsOO, {}}}, 0, 5, 17, none, {"1^{n}"});

  // 21^2
  add("Γ^(21^2)_{εi}", "21^2", {{kOmegaEps, {}}, {kOmegaEps, {}}, {kEpsLeg, {1}}}, 1, 3, 13, {T(1)},
      {"21^{n-2}", "1^{n}"});
  add("Γ^(21^2)_{εi;j}", "21^2", {{kOmegaEps, {}}, {kLegOO, {2}}, {kEpsLeg, {1}}}, 2, 3, 14, {T(1), T(1)},
      {"31^{n-3}", "2^21^{n-4}", "21^{n-2}", "21^{n-2}", "1^{n}"});
  add("Γ^(21^2)_{εi;j;k}", "21^2", {{kLegOO, {2}}, {kLegOO, {3}}, {kEpsLeg, {1}}}, 3, 3, 15, {T(1), T(2)},
      {"41^{n-4}", "321^{n-5}", "31^{n-3}", "2^21^{n-4}", "31^{n-3}", "21^{n-2}"});
  add("Γ^(21^2)_{ij}", "21^2", {{kOmegaEps, {}}, {kOmegaEps, {}}, {kLegLegO, {1, 2}}}, 2, 3, 14, {T(2)},
      {"31^{n-3}", "21^{n-2}"});
  add("Γ^(21^2)_{ij;k}", "21^2", {{kOmegaEps, {}}, {kLegOO, {3}}, {kLegLegO, {1, 2}}}, 3, 3, 15, {T(2), T(1)},
      {"41^{n-4}", "321^{n-5}", "31^{n-3}", "2^21^{n-4}", "31^{n-3}", "21^{n-2}"});
  add("Γ^(21^2)_{ij;k;l}", "21^2", {{kLegOO, {3}}, {kLegOO, {4}}, {kLegLegO, {1, 2}}}, 4, 3, 16, {T(2), T(2)},
      {"51^{n-5}", "421^{n-6}", "41^{n-4}", "3^21^{n-6}", "321^{n-5}", "41^{n-4}", "321^{n-5}", "31^{n-3}",
       "2^21^{n-4}"});
  add("Γ^(21^2)_{ε}", "21^2", {{kOmegaEps, {}}, {kOmegaEps, {}}, {kEpsOO, {}}}, 0, 5, 16, none, {"1^{n}"});
  add("Γ^(21^2)_{ε;i}", "21^2", {{kOmegaEps, {}}, {kLegOO, {1}}, {kEpsOO, {}}}, 1, 5, 17, {T(1)},
      {"21^{n-2}", "1^{n}"});
  add("Γ^(21^2)_{ε;i;j}", "21^2", {{kLegOO, {1}}, {kLegOO, {2}}, {kEpsOO, {}}}, 2, 5, 18, {T(2)},
      {"31^{n-3}", "21^{n-2}"});

  // 1^4
  add("Γ^(1^4)_{ωε}", "1^4", {{kOmegaEps, {}}, {kOmegaEps, {}}, {kOmegaEps, {}}, {kOmegaEps, {}}}, 0, 5, 15, none,
      {"1^{n}"});
  add("Γ^(1^4)_{i}", "1^4", {{kOmegaEps, {}}, {kOmegaEps, {}}, {kOmegaEps, {}}, {kLegOO, {1}}}, 1, 5, 16, {T(1)},
      {"21^{n-2}", "1^{n}"});
  add("Γ^(1^4)_{i;j}", "1^4", {{kOmegaEps, {}}, {kOmegaEps, {}}, {kLegOO, {1}}, {kLegOO, {2}}}, 2, 5, 17, {T(2)},
      {"31^{n-3}", "21^{n-2}"});
  add("Γ^(1^4)_{i;j;k}", "1^4", {{kOmegaEps, {}}, {kLegOO, {1}}, {kLegOO, {2}}, {kLegOO, {3}}}, 3, 5, 18, {T(3)},
      {"41^{n-4}", "31^{n-3}"});
  add("Γ^(1^4)_{i;j;k;l}", "1^4", {{kLegOO, {1}}, {kLegOO, {2}}, {kLegOO, {3}}, {kLegOO, {4}}}, 4, 5, 19, {T(4)},
      {"51^{n-5}", "41^{n-4}"});

  // lower excess
  add("Γ^(2)_{ε}", "2", {{kEpsOO, {}}}, 0, 3, 13, none, {"1^{n}"});
  add("Γ^(2)_{εi}", "2", {{kEpsLeg, {1}}}, 1, 1, 10, {T(1)}, {"21^{n-2}", "1^{n}"});
  add("Γ^(2)_{ij}", "2", {{kLegLegO, {1, 2}}}, 2, 1, 11, {T(2)}, {"31^{n-3}", "21^{n-2}"});
  add("Γ^(2)_{ωεωε}", "2", {{kOmegaEps, {}}, {kOmegaEps, {}}}, 0, 3, 12, none, {"1^{n}"});
  add("Γ^(2)_{ωεi}", "2", {{kOmegaEps, {}}, {kLegOO, {1}}}, 1, 3, 13, {T(1)}, {"21^{n-2}", "1^{n}"});
  add("Γ^(2)_{i;j}", "2", {{kLegOO, {1}}, {kLegOO, {2}}}, 2, 3, 14, {T(2)}, {"31^{n-3}", "21^{n-2}"});
  add("Γ^(0)", "0", {}, 0, 1, 9, none, {"1^{n}"});
  return f;
}

const ComponentTemplate& named_template(const std::string& name) {
  static const std::vector<ComponentTemplate> catalog = component_catalog(4, false);
  for (const auto& t : catalog)
    if (t.name == name) return t;
  throw Error("no catalog template named " + name);
}

Component fill(const ComponentTemplate& t, const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != t.slots) throw Error("wrong label count for " + t.name);
  Component c = t.shape;
  for (auto& p : c.ports)
    if (p.port.is_leg()) p.port.label = labels[static_cast<std::size_t>(p.port.label - 1)];
  return c;
}

std::vector<std::string> signature(const std::vector<Component>& comps, const std::string& leg, const std::string& tri) {
  std::vector<std::string> s;
  for (const Component& c : comps) {
    const auto code = template_code(c);
    if (!code) continue;
    if (*code == leg || *code == tri) continue;
    s.push_back(*code);
  }
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

const std::vector<Family>& families() {
  static const std::vector<Family> all = build();
  return all;
}

std::optional<Generator> family_representative(const Family& f, int g, int n) {
  if (f.labels > n) return std::nullopt;
  std::vector<Component> comps;
  int loops = 0;
  for (const auto& part : f.parts) {
    const ComponentTemplate& t = named_template(part.template_name);
    comps.push_back(fill(t, part.labels));
    loops += t.shape.assembled_loop_contribution();
  }
  const int pad = g - 1 - loops;
  if (pad < 0 || pad % 2 != 0) return std::nullopt;
  for (int l = f.labels + 1; l <= n; ++l) comps.push_back(fill(named_template("ω-leg j"), {l}));
  for (int t = 0; t < pad / 2; ++t) comps.push_back(named_template("tripleo").shape);
  try {
    Generator gen = assemble(comps, n);
    if (gen.w() < 11) return std::nullopt;
    return gen;
  } catch (const Error&) {
    return std::nullopt;
  }
}

RepDecomposition printed_module(const Family& f, int n) {
  static const std::regex placeholder(R"(\{n(-(\d+))?\})");
  RepDecomposition out;
  for (const std::string& term : f.printed) {
    std::string text;
    bool ok = true;
    auto begin = std::sregex_iterator(term.begin(), term.end(), placeholder);
    std::size_t last = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
      const int value = n - ((*it)[2].matched ? std::stoi((*it)[2].str()) : 0);
      if (value < 0) ok = false;
      text += term.substr(last, static_cast<std::size_t>(it->position()) - last) + "{" + std::to_string(value) + "}";
      last = static_cast<std::size_t>(it->position() + it->length());
    }
    text += term.substr(last);
    if (!ok) continue;
    // "x^{0}" drops the repeated part
    text = std::regex_replace(text, std::regex(R"(\d\^\{0\})"), "");
    if (text.empty()) continue;
    out[Partition::parse(text)] += 1;
  }
  return out;
}

std::vector<FamilyCheck> check_families(const GradedBasis& basis, const CharacterTable& table) {
  const std::string leg = named_template("ω-leg j").code;
  const std::string tri = named_template("tripleo").code;
  // signature of every basis element, computed once
  std::map<std::vector<std::string>, std::pair<std::vector<Generator>, std::vector<Key>>> strata;
  for (const auto& [k, gens] : basis.by_degree)
    for (std::size_t i = 0; i < gens.size(); ++i) {
      auto& slot = strata[signature(blow_up(gens[i]), leg, tri)];
      slot.first.push_back(gens[i]);
      slot.second.push_back(basis.keys.at(k)[i]);
    }

  std::vector<FamilyCheck> out;
  for (const Family& f : families()) {
    const auto rep = family_representative(f, basis.g, basis.n);
    if (!rep) continue;
    FamilyCheck c;
    c.family = &f;
    c.g = basis.g;
    c.n = basis.n;
    c.printed_degree = 3 * (basis.g - f.genus_shift) / 2 + f.degree_offset;
    c.degree = degree(*rep);
    c.representative_vanishes = !canonicalize(*rep);
    std::vector<Component> comps;
    for (const auto& part : f.parts) comps.push_back(fill(named_template(part.template_name), part.labels));
    const auto it = strata.find(signature(comps, leg, tri));
    if (it != strata.end()) {
      c.stratum_size = static_cast<long long>(it->second.first.size());
      c.chain = decompose_character(permutation_character(it->second.first, it->second.second, table), table);
    }
    if (!c.representative_vanishes) {
      std::vector<InductionBlock> blocks{{basis.n - f.labels, BlockType::Sign, {}}};
      blocks.insert(blocks.end(), f.blocks.begin(), f.blocks.end());
      c.pieri = pieri_induce(blocks);
    }
    c.printed = printed_module(f, basis.n);
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace w11
