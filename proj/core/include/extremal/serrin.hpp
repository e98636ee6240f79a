#pragma once

#include <vector>

#include "extremal/domain.hpp"

namespace extremal {

// Solution of Delta u = 1 with the Neumann datum du/dn = A/P imposed in
// least squares: u = |z|^2/4 plus a harmonic correction over
// {Re w^j, Im w^j} (w = (z-center)/scale, j = 1..degree) and, per hole,
// {Re q^j, Im q^j, log|z-a_k|} with q = hole_scale/(z-a_k). The Laplacian is
// exact by construction; only the boundary data is fitted.
class PoissonSolution {
 public:
  double value(cplx z) const;            // u(z)
  double normal_derivative(cplx z, cplx n) const;
  double harmonic_part(cplx z) const;

  // Coefficient of log|z - a_k|; carries the flux period through hole k.
  double beta(int hole) const;

  double neumann_target() const { return neumann_target_; }  // A/P
  double neumann_residual() const { return neumann_residual_; }
  int degree() const { return degree_; }

 private:
  friend PoissonSolution solve_neumann(const PlanarDomain&, int, int);
  cplx center_;
  double scale_ = 1.0;
  int degree_ = 0;
  std::vector<cplx> hole_anchors_;
  std::vector<double> hole_scales_;
  std::vector<double> coeffs_;  // [Re_1, Im_1, ..] poly then per-hole, then betas
  double neumann_target_ = 0.0;
  double neumann_residual_ = 0.0;
};

// samples_per_component defaults to 16 x basis size spread over components.
PoissonSolution solve_neumann(const PlanarDomain& domain, int degree = 16,
                              int samples_per_component = 0);

struct OscillationReport {
  std::vector<double> osc;  // max u - min u per component
  std::vector<double> c;    // mean of u per component, gauged c[0] = 0
  double max_osc = 0.0;
};
OscillationReport boundary_oscillation(const PoissonSolution& solution,
                                       const PlanarDomain& domain);

// |sum_k oint du/dn ds - A|; vanishes by the divergence theorem.
double flux_identity_gap(const PoissonSolution& solution,
                         const PlanarDomain& domain);

}  // namespace extremal
