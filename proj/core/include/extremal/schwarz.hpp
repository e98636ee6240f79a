#pragma once

#include <functional>
#include <vector>

#include "extremal/curve.hpp"
#include "extremal/power_series.hpp"
#include "extremal/quaddiff.hpp"
#include "extremal/types.hpp"

namespace extremal {

// Local Schwarz function of an analytic curve: S analytic near the anchor
// with S(z) = conj(z) on the curve, as a Taylor series about the anchor
// point. Valid within a finite window of the curve around the anchor.
struct LocalSchwarzFunction {
  cplx anchor_z;
  double anchor_t = 0.0;
  PowerSeries series{0};      // S(anchor_z + w) in powers of w
  double validity_radius = 0.0;
  double t_window = 0.0;      // residual <= 1e-8 for |t - anchor_t| <= t_window
  cplx branch_target;         // dzbar/ds at the anchor (stored orientation)

  cplx value(cplx z) const { return series.eval(z - anchor_z); }
  cplx prime(cplx z) const { return series.eval_derivative(z - anchor_z); }
};

// Series reversion of z(t) composed with zbar(t). Requires order <= 2J
// headroom in the curve bandwidth only implicitly; the residual window is
// measured and stored.
LocalSchwarzFunction schwarz_series(const AnalyticCurve& curve, double t0,
                                    int order = 48);

// Residual of the Riccati identity u^2 + i alpha lambda u' = phi' for
// u = sqrt(S'), with the branch fixed by matching dzbar/ds at the anchor and
// continued through the series. If the residual is large with the requested
// branch, the opposite branch is tried and the flip reported.
struct RiccatiReport {
  double residual = 0.0;
  int alpha = 0;
  bool branch_flipped = false;
};
RiccatiReport riccati_residual(const LocalSchwarzFunction& schwarz,
                               double lambda, int alpha,
                               const QuadraticDifferential& qd);

// Deviation of lam^2 S(f)(lam z) from S(f)(z) over a sample ring, plus the
// best-fit c in S(f) = c/z^2.
struct HomogeneityReport {
  double deviation = 0.0;
  cplx c_fit;
};
HomogeneityReport homogeneity_check(const std::function<cplx(cplx)>& f,
                                    cplx lam, double r_min = 0.6,
                                    double r_max = 1.4, int samples = 64);

// Verification that u = c0/z solves u' - u^2/2 = c/z^2 for both roots of
// c0^2 + 2 c0 + 2c = 0.
struct RiccatiRootsReport {
  cplx root_a, root_b;
  double residual_a = 0.0, residual_b = 0.0;
};
RiccatiRootsReport riccati_general_solution_check(double c);

// max over the curve of |S(z) - i lambda sqrt(S'(z)) - c/z|; on the curve
// S = zbar and sqrt(S') = dzbar/ds (stored orientation branch).
double droplet_residual(const AnalyticCurve& curve, double lambda, double c);

struct DropletGridResult {
  double min_residual = 0.0;
  double lambda_best = 0.0;
  double c_best = 0.0;
};
// 50x50 log-spaced grid search over lambda in [1e-2, 10] x |c| in
// [1e-3, 10] (both signs of c, plus c = 0).
DropletGridResult droplet_grid_search(const AnalyticCurve& curve);

// max over the curve of |p zbar - i t dzbar/ds - F(z)|.
double fbp_residual(const AnalyticCurve& curve, double p, double t,
                    const std::function<cplx(cplx)>& F);

}  // namespace extremal
