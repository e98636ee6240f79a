#pragma once

#include <string>

#include "extremal/domain.hpp"

namespace extremal {

// Domain description file (JSON):
//   {
//     "outer":  {"coeffs": [[re,im],...], "j_min": -J},
//     "inners": [{"coeffs": ..., "j_min": ...}, ...],
//     "hole_points": [[re,im],...]
//   }
// Coefficient index 0 corresponds to j_min. "inners" and "hole_points" may be
// omitted for simply-connected domains.
PlanarDomain load_domain(const std::string& path);
PlanarDomain parse_domain(const std::string& json_text);

// Canonical serialization; loading and re-saving a saved file is
// byte-identical.
std::string domain_to_json(const PlanarDomain& domain);
void save_domain(const PlanarDomain& domain, const std::string& path);

}  // namespace extremal
