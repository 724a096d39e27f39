#pragma once

#include "rigidcr/hypersurface.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace rcr {

using Json = nlohmann::ordered_json;

Json to_json(const GaussRat& z);
GaussRat gauss_from_json(const Json& j, std::vector<std::string>* warnings = nullptr);

Json series_to_json(const TruncSeries& s, int slots);

// Coefficient file: {ambient_dim, degree, convention, coefficients: [{exp, re, im}]}.
Json hypersurface_to_json(const Hypersurface& h);
Hypersurface hypersurface_from_json(const Json& j, std::vector<std::string>* warnings = nullptr);

// Independent-jet files use the same layout.
JetTable jet_table_from_json(const Json& j, std::vector<std::string>* warnings = nullptr);

Json map_to_json(const RigidMap& m);

}  // namespace rcr
