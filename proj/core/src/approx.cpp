#include "extremal/approx.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "extremal/threads.hpp"

namespace extremal {

namespace {

using CMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;
using CVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;

}  // namespace

ContentBounds content_bounds(const PlanarDomain& domain) {
  const auto [A, P] = domain.area_perimeter();
  return {2.0 * A / P, std::sqrt(A / kPi)};
}

ApproximationResult solve_minimax(const PlanarDomain& domain,
                                  const AnalyticBasis& basis,
                                  int samples_per_component,
                                  const MinimaxOptions& options) {
  const int n = domain.num_components();
  const int B = basis.size();
  if (samples_per_component * n < 4 * B)
    throw std::invalid_argument(
        "solve_minimax: need at least 4 x basis size boundary samples");

  // Boundary sample set, equispaced in t on each component.
  std::vector<cplx> pts;
  std::vector<int> comp_of;
  for (int k = 0; k < n; ++k) {
    const auto& c = domain.component(k);
    for (int i = 0; i < samples_per_component; ++i) {
      pts.push_back(c.point(kTwoPi * i / samples_per_component));
      comp_of.push_back(k);
    }
  }
  const int m = static_cast<int>(pts.size());

  CMatrix A(m, B);
  CVector b(m);
  parallel_for(m, [&](std::size_t i) {
    for (int j = 0; j < B; ++j) A(i, j) = basis.eval(j, pts[i]);
    b(i) = std::conj(pts[i]);
  });

  ApproximationResult result;
  result.basis = basis;

  // Rank probe on the unweighted design matrix; on deficiency fall back to a
  // small ridge inside the normal equations.
  Eigen::ColPivHouseholderQR<CMatrix> probe(A);
  probe.setThreshold(1e-10);
  result.rank_deficient = probe.rank() < B;
  const double ridge = result.rank_deficient ? 1e-10 : 0.0;

  Eigen::VectorXd w = Eigen::VectorXd::Constant(m, 1.0 / m);
  CVector coef = CVector::Zero(B);
  Eigen::VectorXd err(m);
  double max_err = 0.0;
  double window_max = -1.0;
  int window_start = 0;

  for (int it = 0; it < options.max_iterations; ++it) {
    result.iterations = it + 1;
    const Eigen::VectorXd sw = w.array().sqrt();
    if (!result.rank_deficient) {
      coef = (sw.asDiagonal() * A)
                 .householderQr()
                 .solve(sw.asDiagonal() * b.matrix());
    } else {
      CMatrix Aw = sw.asDiagonal() * A;
      CMatrix G = Aw.adjoint() * Aw;
      G.diagonal().array() += ridge;
      coef = G.ldlt().solve(Aw.adjoint() * (sw.asDiagonal() * b.matrix()));
    }
    const CVector resid = b - A * coef;
    err = resid.array().abs();
    max_err = err.maxCoeff();
    const double weighted_mean = w.dot(err);
    result.certificate_gap = (max_err - weighted_mean) / std::max(max_err, 1e-300);
    if (result.certificate_gap < options.tol) {
      result.converged = true;
      result.certified = true;
      break;
    }
    // Stagnation: max|e| is the reported value and a certified upper bound;
    // once it stops moving within the window and the mean certifies the
    // suboptimality below certificate_tol, the iterate is usable.
    if (window_max < 0.0 || std::abs(max_err - window_max) > options.stall_tol * max_err) {
      window_max = max_err;
      window_start = it;
    } else if (it - window_start >= options.stall_window &&
               result.certificate_gap < options.certificate_tol) {
      result.converged = true;
      break;
    }
    // Lawson update: w <- w |e|, renormalized.
    w = (w.array() * err.array()).matrix();
    const double total = w.sum();
    if (!(total > 0.0)) break;  // all residuals vanished
    w /= total;
  }

  result.coeffs.assign(coef.data(), coef.data() + B);
  result.boundary_max = max_err;
  if (!result.converged) result.certified = false;

  result.error_profile.assign(n, {});
  for (int i = 0; i < m; ++i)
    result.error_profile[comp_of[i]].push_back(err(i));

  // |zbar - phi|^2 is strictly subharmonic, so its sup lives on the boundary;
  // the interior grid is a belt-and-braces check of the discretization.
  result.interior_max = 0.0;
  if (options.interior_points > 0) {
    const auto grid = domain.interior_grid(options.interior_points);
    std::vector<double> vals(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
      vals[i] = std::abs(std::conj(grid[i]) - result.phi(grid[i]));
    });
    for (double v : vals) result.interior_max = std::max(result.interior_max, v);
  }

  result.lambda_hat = std::max(result.boundary_max, result.interior_max);
  const ContentBounds bounds = content_bounds(domain);
  result.gap_lower = result.lambda_hat - bounds.lower;
  result.gap_upper = bounds.upper - result.lambda_hat;
  return result;
}

ApproximationResult certificate_result(const PlanarDomain& domain,
                                       double lambda,
                                       const AnalyticBasis& basis,
                                       std::vector<cplx> coeffs) {
  ApproximationResult result;
  result.basis = basis;
  result.coeffs = std::move(coeffs);
  result.lambda_hat = lambda;
  result.converged = true;
  result.certified = true;
  result.iterations = 0;
  double mx = 0.0;
  for (int k = 0; k < domain.num_components(); ++k) {
    const auto& c = domain.component(k);
    std::vector<double> profile;
    for (int i = 0; i < c.sample_count(); ++i) {
      const cplx z = c.point(c.sample_t(i));
      profile.push_back(std::abs(std::conj(z) - result.phi(z)));
      mx = std::max(mx, profile.back());
    }
    result.error_profile.push_back(std::move(profile));
  }
  result.boundary_max = mx;
  result.interior_max = 0.0;
  const ContentBounds bounds = content_bounds(domain);
  result.gap_lower = lambda - bounds.lower;
  result.gap_upper = bounds.upper - lambda;
  return result;
}

ExtremalityResidual extremality_residual(const PlanarDomain& domain,
                                         const ApproximationResult& result) {
  ExtremalityResidual out;
  for (int k = 0; k < domain.num_components(); ++k) {
    const auto& c = domain.component(k);
    double mx = 0.0;
    for (int i = 0; i < c.sample_count(); ++i) {
      const double t = c.sample_t(i);
      const cplx z = c.point(t);
      const cplx lhs = std::conj(z) -
                       cplx(0.0, 1.0) * result.lambda_hat * c.dzbar_ds(t) -
                       result.phi(z);
      mx = std::max(mx, std::abs(lhs));
    }
    out.per_component.push_back(mx);
    out.max = std::max(out.max, mx);
  }
  return out;
}

}  // namespace extremal
