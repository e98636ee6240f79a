#pragma once

#include <string>

#include "extremal/domain.hpp"
#include "extremal/quaddiff.hpp"

namespace extremal {

// Deterministic SVG figure: boundary components in black, horizontal arcs
// solid, vertical arcs dashed, zeros as dots. Output depends only on the
// inputs, except for one version comment line.
std::string stokes_svg(const PlanarDomain& domain, const StokesGraph& graph);

}  // namespace extremal
