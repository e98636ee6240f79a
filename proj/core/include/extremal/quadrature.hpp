#pragma once

#include <functional>
#include <string>
#include <vector>

#include "extremal/approx.hpp"
#include "extremal/domain.hpp"

namespace extremal {

// Analytic integrand with its declared poles (all must lie off the closure of
// the domain; poles inside holes are fine).
struct AnalyticFunction {
  std::function<cplx(cplx)> f;
  std::vector<cplx> poles;
  std::string label;
};

// (1/A) integral_Omega f dA, reduced by Green's theorem to
// (1/A)(1/2i) oint zbar f(z) dz over the oriented boundary.
cplx area_mean(const PlanarDomain& domain, const AnalyticFunction& f);

// (1/P) integral_Gamma f ds over all components.
cplx boundary_mean(const PlanarDomain& domain, const AnalyticFunction& f);

struct QuadratureRow {
  std::string label;
  cplx area_mean;
  cplx boundary_mean;
  double abs_difference = 0.0;
};

struct QuadratureReport {
  std::vector<QuadratureRow> rows;
  double residual = 0.0;  // max |difference|
};

// Tests the quadrature identity over z^j (j=0..max_degree) and
// (z-a_k)^{-j} per hole.
QuadratureReport quadrature_residual(const PlanarDomain& domain, int max_degree);

// CSV table: basis_label, area_mean, boundary_mean, abs_difference.
std::string quadrature_csv(const QuadratureReport& report);

// Vortex-flow identities for the field v = 2i(z - conj(phi(z))):
// |v| = 2 lambda on the boundary of an extremal domain, and the circulation
// oint v . tau ds equals 4 Area (the vorticity is identically 4).
struct FlowReport {
  double boundary_speed_dev = 0.0;   // max | |v| - 2 lambda |
  // max |v - 2 lambda tau|: the boundary is a streamline of speed 2 lambda
  // only for extremal certificates. (The speed profile alone can be blind:
  // some non-extremal domains still give |zbar - phi| constant.)
  double boundary_vector_dev = 0.0;
  double circulation = 0.0;          // oint v . tau ds
  double green_gap = 0.0;            // |circulation - 4A| (holds always)
  double vorticity_flux_gap = 0.0;   // |4A - 2 lambda P| (extremality)
};
FlowReport flow_identities(const PlanarDomain& domain,
                           const ApproximationResult& result);

}  // namespace extremal
