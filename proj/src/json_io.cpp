#include "w11/json_io.hpp"

namespace w11 {

namespace {

Json port_kind(const Port& p) {
  switch (p.kind) {
    case PortKind::Omega: return "omega";
    case PortKind::Epsilon: return "epsilon";
    case PortKind::Leg: return p.label;
  }
  return nullptr;
}

Port port_from(const Json& j) {
  if (j.is_number_integer()) return Port::leg(j.get<int>());
  const std::string s = j.get<std::string>();
  if (s == "omega") return Port::omega();
  if (s == "epsilon") return Port::epsilon();
  throw Error("unknown port kind '" + s + "'");
}

Json graded(const std::map<int, RepDecomposition>& m) {
  Json j = Json::object();
  for (const auto& [k, d] : m) j[std::to_string(k)] = to_json(d);
  return j;
}

std::map<int, RepDecomposition> graded_from(const Json& j) {
  std::map<int, RepDecomposition> m;
  for (const auto& [k, v] : j.items()) m[std::stoi(k)] = decomposition_from_json(v);
  return m;
}

}  // namespace

Json to_json(const Component& c) {
  Json ports = Json::array();
  for (const auto& p : c.ports)
    ports.push_back({{"at", p.at == kFree ? Json("free") : Json(p.at)}, {"kind", port_kind(p.port)}});
  Json edges = Json::array();
  for (auto [a, b] : c.edges) edges.push_back({a, b});
  return {{"vertices", c.vertices}, {"edges", edges}, {"ports", ports}};
}

Component component_from_json(const Json& j) {
  Component c;
  c.vertices = j.at("vertices").get<int>();
  for (const auto& e : j.at("edges")) c.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
  for (const auto& p : j.at("ports")) {
    PortAttachment a;
    a.at = p.at("at").is_string() ? kFree : p.at("at").get<int>();
    a.port = port_from(p.at("kind"));
    c.ports.push_back(a);
  }
  return c;
}

Json to_json(const Generator& g) {
  Json comps = Json::array();
  for (const Component& c : blow_up(g)) comps.push_back(to_json(c));
  return {{"n", g.n()}, {"components", comps}};
}

Generator generator_from_json(const Json& j) {
  std::vector<Component> comps;
  for (const auto& c : j.at("components")) comps.push_back(component_from_json(c));
  return assemble(comps, j.at("n").get<int>());
}

Json to_json(const RepDecomposition& d) {
  Json out = Json::array();
  for (const auto& [p, m] : d) out.push_back({{"lambda", p.parts}, {"mult", m}});
  return out;
}

RepDecomposition decomposition_from_json(const Json& j) {
  RepDecomposition d;
  for (const auto& e : j) d[Partition(e.at("lambda").get<std::vector<int>>())] += e.at("mult").get<long long>();
  return d;
}

Json to_json(const CohomologyResult& r) {
  Json dims = Json::object();
  for (const auto& [k, v] : r.dims) dims[std::to_string(k)] = v;
  return {{"g", r.g},           {"n", r.n},          {"H", graded(r.H)},
          {"dims", dims},       {"chains", graded(r.chains)}, {"euler", to_json(r.euler)}};
}

CohomologyResult cohomology_from_json(const Json& j) {
  CohomologyResult r;
  r.g = j.at("g").get<int>();
  r.n = j.at("n").get<int>();
  r.H = graded_from(j.at("H"));
  for (const auto& [k, v] : j.at("dims").items()) r.dims[std::stoi(k)] = v.get<int>();
  if (j.contains("chains")) r.chains = graded_from(j.at("chains"));
  r.euler = decomposition_from_json(j.at("euler"));
  return r;
}

Json to_json(const ComponentTemplate& t) {
  return {{"name", t.name},         {"text", to_text(t.shape)}, {"excess", t.excess},
          {"essential", t.essential}, {"in_s", t.in_s},       {"slots", t.slots},
          {"component", to_json(t.shape)}};
}

Json to_json(const GradedBasis& b) {
  Json degrees = Json::object();
  for (const auto& [k, gens] : b.by_degree) {
    Json list = Json::array();
    for (const Generator& g : gens) list.push_back(to_json(g));
    degrees[std::to_string(k)] = list;
  }
  return {{"g", b.g}, {"n", b.n}, {"mode", to_string(b.mode)}, {"degrees", degrees}};
}

Json to_json(const FamilyCheck& c) {
  return {{"family", c.family->name},
          {"partition", c.family->partition},
          {"g", c.g},
          {"n", c.n},
          {"degree", c.degree},
          {"printed_degree", c.printed_degree},
          {"stratum_size", c.stratum_size},
          {"representative_vanishes", c.representative_vanishes},
          {"chain", to_json(c.chain)},
          {"pieri", to_json(c.pieri)},
          {"printed", to_json(c.printed)},
          {"routes_agree", c.routes_agree()},
          {"matches_table", c.matches_table()}};
}

}  // namespace w11
