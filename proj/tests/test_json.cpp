#include "doctest.h"
#include "w11/json_io.hpp"
#include "w11/suites.hpp"

using namespace w11;

TEST_CASE("generator JSON round trip") {
  const GradedBasis b = enumerate_basis(7, 4, BasisMode::Complete);
  for (const auto& [k, gens] : b.by_degree)
    for (const Generator& g : gens) {
      const Json j = to_json(g);
      const Json back = Json::parse(j.dump());
      CHECK(back == j);
      CHECK(generator_from_json(back) == g);
    }
}

TEST_CASE("generator JSON layout") {
  const Generator g = enumerate_basis(1, 11, BasisMode::Complete).by_degree.at(11).front();
  const Json j = to_json(g);
  CHECK(j.at("n") == 11);
  REQUIRE(j.at("components").size() == 11);
  const Json& c = j.at("components").front();
  CHECK(c.at("vertices") == 0);
  CHECK(c.at("ports").size() == 2);
  CHECK(c.at("ports")[0].at("at") == "free");
  CHECK_THROWS(generator_from_json(Json::parse(
      R"({"n":1,"components":[{"vertices":0,"edges":[],"ports":[{"at":"free","kind":"wobble"},{"at":"free","kind":1}]}]})")));
}

TEST_CASE("cohomology result JSON round trip") {
  const CohomologyResult r = compute_cohomology(7, 4, {});
  const Json j = to_json(r);
  const CohomologyResult back = cohomology_from_json(Json::parse(j.dump()));
  CHECK(back.g == 7);
  CHECK(back.n == 4);
  CHECK(back.H == r.H);
  CHECK(back.dims == r.dims);
  CHECK(back.chains == r.chains);
  CHECK(back.euler == r.euler);
  CHECK(to_json(back) == j);
  CHECK(j.at("H").at("21")[0].at("lambda") == Json::array({3, 1}));
  CHECK(j.at("H").at("21")[0].at("mult") == 2);
}

TEST_CASE("decomposition JSON is sorted descending") {
  const RepDecomposition d = parse_decomposition("V_{2^21^9} + 3V_{51^8} + V_{321^8}");
  const Json j = to_json(d);
  REQUIRE(j.size() == 3);
  CHECK(j[0].at("lambda")[0] == 5);
  CHECK(j[0].at("mult") == 3);
  CHECK(j[2].at("lambda")[0] == 2);
  CHECK(decomposition_from_json(j) == d);
}

TEST_CASE("catalog and basis JSON") {
  Json cat = Json::array();
  for (const auto& t : component_catalog(4, true)) cat.push_back(to_json(t));
  CHECK(cat.size() == 39);
  int essential = 0;
  for (const auto& t : cat) {
    essential += t.at("essential").get<bool>() ? 1 : 0;
    CHECK(component_from_json(t.at("component")) == component_from_json(to_json(component_from_json(t.at("component")))));
  }
  CHECK(essential == 17);

  const GradedBasis b = enumerate_basis(9, 1, BasisMode::Complete);
  const Json jb = to_json(b);
  CHECK(jb.at("mode") == to_string(BasisMode::Complete));
  std::size_t total = 0;
  for (const auto& [k, list] : jb.at("degrees").items()) {
    CHECK(list.size() == b.size(std::stoi(k)));
    total += list.size();
  }
  CHECK(total == 141);
}
