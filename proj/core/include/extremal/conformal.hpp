#pragma once

#include <functional>
#include <vector>

#include "extremal/approx.hpp"
#include "extremal/domain.hpp"
#include "extremal/types.hpp"

namespace extremal {

// Numerical conformal map h of a doubly-connected domain onto the concentric
// annulus {R2 <= |w| <= R1}:
//
//   h(z) = (z - a) exp(G(z)),
//
// with a the hole anchor and G analytic and single-valued on the closure
// (scaled positive and negative powers, no constant term). log|h| is fitted
// to be constant per boundary component; the unit log coefficient makes h
// wind once around the hole. The modulus log(R1/R2) is the conformal
// invariant of the domain.
class AnnulusMap {
 public:
  cplx h(cplx z) const;
  cplx h_prime(cplx z) const;
  cplx log_h_prime(cplx z) const { return h_prime(z) / h(z); }  // (log h)'

  double R1() const { return r1_; }
  double R2() const { return r2_; }
  double modulus() const { return std::log(r1_ / r2_); }
  // max deviation of |h| from R_k over the boundary samples.
  double boundary_deviation() const { return boundary_deviation_; }
  cplx hole_anchor() const { return anchor_; }

  // Newton inversion of h from the given seed; throws on non-convergence.
  cplx invert(cplx w, cplx seed) const;

 private:
  friend AnnulusMap map_to_annulus(const PlanarDomain&, int);
  cplx anchor_;
  cplx center_;
  double scale_ = 1.0;
  double hole_scale_ = 1.0;
  int degree_ = 0;
  std::vector<cplx> g_coeffs_;  // degree_ positive then degree_ negative powers
  double r1_ = 1.0, r2_ = 0.5;
  double boundary_deviation_ = 0.0;

  cplx G(cplx z) const;
  cplx G_prime(cplx z) const;
};

// Least-squares harmonic construction; requires connectivity exactly 2.
// Throws on conditioning failure (nearly touching boundary curves).
AnnulusMap map_to_annulus(const PlanarDomain& domain, int degree = 24);

// Fit of phi-hat' = C [(log h)']^2 over an interior sample grid.
struct LemmaL1Report {
  cplx C_fit;
  double relative_deviation = 0.0;
};
LemmaL1Report lemma_l1_check(const PlanarDomain& domain,
                             const ApproximationResult& result,
                             const AnnulusMap& map);

// Moebius defect of mu(z) = h^{-1}((R1/R2) h(z)) mapping the inner boundary
// onto the outer one, measured by cross-ratio mismatch over sample
// quadruples.
struct MobiusReport {
  double defect = 0.0;
  int failed_inversions = 0;
  int samples = 0;
};
MobiusReport mobius_check(const PlanarDomain& domain, const AnnulusMap& map);

// Residuals of fitting h^{-1} as a linear map a w + b and as a/w + b on
// boundary pairs; extremal doubly-connected domains admit one of the two.
struct InverseFormFit {
  double linear_residual = 0.0;
  double inverse_residual = 0.0;
  double best_residual = 0.0;
};
InverseFormFit fit_inverse_form(const PlanarDomain& domain,
                                const AnnulusMap& map);
// Same fit against an arbitrary boundary correspondence w = boundary_map(z)
// (e.g. the boundary-swapped map R1 R2 / h).
InverseFormFit fit_inverse_form(const PlanarDomain& domain,
                                const std::function<cplx(cplx)>& boundary_map);

// Quadratic-differential transport along mu: max over inner-boundary samples
// of |phi'(z2) - phi'(mu(z2)) mu'(z2)^2|.
double mu_invariance_residual(const PlanarDomain& domain, const AnnulusMap& map,
                              const std::function<cplx(cplx)>& phi_prime);

// Resampled image of a curve under an analytic map (Fourier projection onto
// bandwidth j_max_out). Orientation tag is recomputed from the image winding.
AnalyticCurve transform_curve(const AnalyticCurve& curve,
                              const std::function<cplx(cplx)>& map,
                              int j_max_out, Orientation role);

// Image of a doubly-connected domain under the Moebius map
// (a z + b) / (c z + d); outer/inner roles and orientations are recomputed.
PlanarDomain mobius_image(const PlanarDomain& domain, cplx a, cplx b, cplx c,
                          cplx d, int j_max_out = 24);

}  // namespace extremal
