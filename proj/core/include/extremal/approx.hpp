#pragma once

#include <vector>

#include "extremal/basis.hpp"
#include "extremal/domain.hpp"

namespace extremal {

// Geometric bounds 2A/P <= lambda <= sqrt(A/pi).
struct ContentBounds {
  double lower = 0.0;
  double upper = 0.0;
};
ContentBounds content_bounds(const PlanarDomain& domain);

struct ApproximationResult {
  double lambda_hat = 0.0;
  AnalyticBasis basis;
  std::vector<cplx> coeffs;  // in the (scaled) basis
  // |zbar - phi| at the boundary samples, one profile per component.
  std::vector<std::vector<double>> error_profile;
  double boundary_max = 0.0;
  double interior_max = 0.0;  // same error over an interior grid
  double gap_lower = 0.0;     // lambda_hat - 2A/P
  double gap_upper = 0.0;     // sqrt(A/pi) - lambda_hat
  bool converged = false;     // stopped at a usable iterate (see certified)
  // The weighted mean is a lower bound for the discrete minimax value, so
  // (max - mean)/max certifies the suboptimality of lambda_hat. certified
  // means the primary criterion max - mean < tol * max was met; a stalled
  // but stagnant iterate converges with the looser certificate recorded.
  bool certified = false;
  double certificate_gap = 0.0;
  bool rank_deficient = false;
  int iterations = 0;

  cplx phi(cplx z) const { return basis.combine(coeffs, z); }
  cplx phi_prime(cplx z) const { return basis.combine_derivative(coeffs, z); }
  cplx phi_second(cplx z) const {
    return basis.combine_second_derivative(coeffs, z);
  }
  AnalyticBasis::RawCoefficients raw_coefficients() const {
    return basis.to_raw(coeffs);
  }
};

struct MinimaxOptions {
  int max_iterations = 500;
  double tol = 1e-6;          // stop when max - weighted mean < tol * max
  // Stagnation stop: accept the iterate once max|e| has stopped moving for
  // stall_window iterations, provided the certificate gap is below
  // certificate_tol. Lawson's lower bound closes very slowly on domains
  // whose optimal error is far from equioscillating.
  int stall_window = 100;
  double stall_tol = 1e-5;
  double certificate_tol = 1e-3;
  int interior_points = 2000; // conservative interior check of the sup
};

// Discretized Chebyshev approximation of zbar by the basis span: Lawson's
// iteratively reweighted least squares on M boundary samples per component.
// Requires total samples >= 4 * basis size.
ApproximationResult solve_minimax(const PlanarDomain& domain,
                                  const AnalyticBasis& basis,
                                  int samples_per_component,
                                  const MinimaxOptions& options = {});

// Result populated from a known certificate (lambda, phi) instead of a solve.
ApproximationResult certificate_result(const PlanarDomain& domain,
                                       double lambda,
                                       const AnalyticBasis& basis,
                                       std::vector<cplx> coeffs);

// max over each boundary component of |zbar - i lambda dzbar/ds - phi(z)|.
struct ExtremalityResidual {
  std::vector<double> per_component;
  double max = 0.0;
};
ExtremalityResidual extremality_residual(const PlanarDomain& domain,
                                         const ApproximationResult& result);

}  // namespace extremal
