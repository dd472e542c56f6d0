#pragma once

#include "json.hpp"
#include "w11/catalog.hpp"
#include "w11/families.hpp"
#include "w11/homology.hpp"

namespace w11 {

using Json = nlohmann::json;

Json to_json(const Component& c);
Component component_from_json(const Json& j);

/// {"n": n, "components": [...]}; components in canonical blown-up order.
Json to_json(const Generator& g);
/// Assembles the listed components (the orientation is the assembly order).
Generator generator_from_json(const Json& j);

/// [{"lambda": [parts], "mult": m}, ...], lexicographically descending.
Json to_json(const RepDecomposition& d);
RepDecomposition decomposition_from_json(const Json& j);

Json to_json(const CohomologyResult& r);
CohomologyResult cohomology_from_json(const Json& j);

Json to_json(const ComponentTemplate& t);
Json to_json(const GradedBasis& b);
Json to_json(const FamilyCheck& c);

}  // namespace w11
