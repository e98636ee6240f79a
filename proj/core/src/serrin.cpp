#include "extremal/serrin.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace extremal {

namespace {

struct BasisGeom {
  cplx center;
  double scale;
  int degree;
  std::vector<cplx> anchors;
  std::vector<double> anchor_scales;

  int size() const {
    return 2 * degree + static_cast<int>(anchors.size()) * (2 * degree + 1);
  }

  // H_i(z) and dH_i/dn. Every element is Re W or Im W of an analytic W, so
  // dH/dn = Re(W' n) resp. Re(-i W' n).
  double value(int i, cplx z) const {
    if (i < 2 * degree) {
      const int j = i / 2 + 1;
      const cplx W = std::pow((z - center) / scale, j);
      return (i % 2 == 0) ? W.real() : W.imag();
    }
    int rel = i - 2 * degree;
    const int hole = rel / (2 * degree + 1);
    rel %= 2 * degree + 1;
    if (rel == 2 * degree) return std::log(std::abs(z - anchors[hole]));
    const int j = rel / 2 + 1;
    const cplx W = std::pow(anchor_scales[hole] / (z - anchors[hole]), j);
    return (rel % 2 == 0) ? W.real() : W.imag();
  }

  double normal_derivative(int i, cplx z, cplx n) const {
    cplx Wp;
    bool imag_part = false;
    if (i < 2 * degree) {
      const int j = i / 2 + 1;
      Wp = (static_cast<double>(j) / scale) * std::pow((z - center) / scale, j - 1);
      imag_part = (i % 2 != 0);
    } else {
      int rel = i - 2 * degree;
      const int hole = rel / (2 * degree + 1);
      rel %= 2 * degree + 1;
      if (rel == 2 * degree) {
        Wp = 1.0 / (z - anchors[hole]);
      } else {
        const int j = rel / 2 + 1;
        Wp = -static_cast<double>(j) * std::pow(anchor_scales[hole], j) /
             std::pow(z - anchors[hole], j + 1);
        imag_part = (rel % 2 != 0);
      }
    }
    if (imag_part) Wp *= cplx(0.0, -1.0);
    return (Wp * n).real();
  }
};

}  // namespace

double PoissonSolution::harmonic_part(cplx z) const {
  BasisGeom g{center_, scale_, degree_, hole_anchors_, hole_scales_};
  double acc = 0.0;
  for (int i = 0; i < g.size(); ++i) acc += coeffs_[i] * g.value(i, z);
  return acc;
}

double PoissonSolution::value(cplx z) const {
  return std::norm(z) / 4.0 + harmonic_part(z);
}

double PoissonSolution::normal_derivative(cplx z, cplx n) const {
  BasisGeom g{center_, scale_, degree_, hole_anchors_, hole_scales_};
  double acc = (std::conj(z) * n).real() / 2.0;  // particular part |z|^2/4
  for (int i = 0; i < g.size(); ++i)
    acc += coeffs_[i] * g.normal_derivative(i, z, n);
  return acc;
}

double PoissonSolution::beta(int hole) const {
  return coeffs_[2 * degree_ + hole * (2 * degree_ + 1) + 2 * degree_];
}

PoissonSolution solve_neumann(const PlanarDomain& domain, int degree,
                              int samples_per_component) {
  PoissonSolution sol;
  sol.center_ = domain.centroid();
  sol.degree_ = degree;
  const auto& outer = domain.outer();
  double rho = 0.0;
  for (int i = 0; i < outer.sample_count(); ++i)
    rho = std::max(rho, std::abs(outer.point(outer.sample_t(i)) - sol.center_));
  sol.scale_ = rho;
  sol.hole_anchors_ = domain.hole_points();
  for (std::size_t k = 0; k < sol.hole_anchors_.size(); ++k) {
    const auto& curve = domain.inners()[k];
    double d = std::numeric_limits<double>::max();
    for (int i = 0; i < curve.sample_count(); ++i)
      d = std::min(d, std::abs(curve.point(curve.sample_t(i)) - sol.hole_anchors_[k]));
    sol.hole_scales_.push_back(d);
  }

  BasisGeom g{sol.center_, sol.scale_, degree, sol.hole_anchors_, sol.hole_scales_};
  const int B = g.size();
  const int n = domain.num_components();
  int M = samples_per_component;
  if (M <= 0) M = (16 * B + n - 1) / n;

  const auto [A, P] = domain.area_perimeter();
  sol.neumann_target_ = A / P;

  Eigen::MatrixXd design(n * M, B);
  Eigen::VectorXd rhs(n * M);
  std::vector<cplx> zs(n * M), ns(n * M);
  std::vector<double> wts(n * M);
  int row = 0;
  for (int k = 0; k < n; ++k) {
    const auto& c = domain.component(k);
    for (int i = 0; i < M; ++i, ++row) {
      const double t = kTwoPi * i / M;
      const cplx z = c.point(t);
      // Exterior normal: -i tau points out of the domain for both the
      // counterclockwise outer curve and clockwise inner curves.
      const cplx nvec = cplx(0.0, -1.0) * c.unit_tangent(t);
      zs[row] = z;
      ns[row] = nvec;
      wts[row] = std::sqrt(std::abs(c.derivative(t, 1)) * kTwoPi / M);
      for (int j = 0; j < B; ++j)
        design(row, j) = wts[row] * g.normal_derivative(j, z, nvec);
      rhs(row) = wts[row] * (sol.neumann_target_ - (std::conj(z) * nvec).real() / 2.0);
    }
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < B)
    throw std::runtime_error("solve_neumann: harmonic basis is rank deficient");
  Eigen::VectorXd coef = qr.solve(rhs);
  sol.coeffs_.assign(coef.data(), coef.data() + B);

  sol.neumann_residual_ = 0.0;
  for (int i = 0; i < n * M; ++i)
    sol.neumann_residual_ =
        std::max(sol.neumann_residual_,
                 std::abs(sol.normal_derivative(zs[i], ns[i]) - sol.neumann_target_));
  return sol;
}

OscillationReport boundary_oscillation(const PoissonSolution& solution,
                                       const PlanarDomain& domain) {
  OscillationReport report;
  for (int k = 0; k < domain.num_components(); ++k) {
    const auto& c = domain.component(k);
    double lo = std::numeric_limits<double>::max();
    double hi = -lo;
    double mean = 0.0, wsum = 0.0;
    for (int i = 0; i < c.sample_count(); ++i) {
      const double t = c.sample_t(i);
      const double u = solution.value(c.point(t));
      const double w = std::abs(c.derivative(t, 1));
      lo = std::min(lo, u);
      hi = std::max(hi, u);
      mean += u * w;
      wsum += w;
    }
    report.osc.push_back(hi - lo);
    report.c.push_back(mean / wsum);
    report.max_osc = std::max(report.max_osc, hi - lo);
  }
  // Gauge: u is defined up to an additive constant; pin mean over the outer
  // component to zero.
  const double gauge = report.c[0];
  for (double& v : report.c) v -= gauge;
  return report;
}

double flux_identity_gap(const PoissonSolution& solution,
                         const PlanarDomain& domain) {
  double flux = 0.0;
  for (int k = 0; k < domain.num_components(); ++k) {
    const auto& c = domain.component(k);
    double part = 0.0;
    for (int i = 0; i < c.sample_count(); ++i) {
      const double t = c.sample_t(i);
      const cplx nvec = cplx(0.0, -1.0) * c.unit_tangent(t);
      part += solution.normal_derivative(c.point(t), nvec) *
              std::abs(c.derivative(t, 1));
    }
    flux += part * kTwoPi / c.sample_count();
  }
  return std::abs(flux - domain.area());
}

}  // namespace extremal
