#include "extremal/quadrature.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "extremal/threads.hpp"

namespace extremal {

namespace {

void check_poles(const PlanarDomain& domain, const AnalyticFunction& f) {
  for (const cplx p : f.poles)
    if (domain.contains(p))
      throw std::invalid_argument("integrand has a pole inside the domain: " +
                                  f.label);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

cplx area_mean(const PlanarDomain& domain, const AnalyticFunction& f) {
  check_poles(domain, f);
  cplx acc = 0.0;
  for (int k = 0; k < domain.num_components(); ++k) {
    const auto& c = domain.component(k);
    cplx part = 0.0;
    for (int i = 0; i < c.sample_count(); ++i) {
      const double t = c.sample_t(i);
      const cplx z = c.point(t);
      part += std::conj(z) * f.f(z) * c.derivative(t, 1);
    }
    acc += part * (kTwoPi / c.sample_count());
  }
  return acc / cplx(0.0, 2.0) / domain.area();
}

cplx boundary_mean(const PlanarDomain& domain, const AnalyticFunction& f) {
  cplx acc = 0.0;
  for (int k = 0; k < domain.num_components(); ++k) {
    const auto& c = domain.component(k);
    cplx part = 0.0;
    for (int i = 0; i < c.sample_count(); ++i) {
      const double t = c.sample_t(i);
      part += f.f(c.point(t)) * std::abs(c.derivative(t, 1));
    }
    acc += part * (kTwoPi / c.sample_count());
  }
  return acc / domain.perimeter();
}

QuadratureReport quadrature_residual(const PlanarDomain& domain, int max_degree) {
  // Monomials are anchored at the centroid so the residual vector transforms
  // by unit factors under rigid motions (jth difference scales by c^j with
  // |c| = 1) and the report is exactly invariant.
  const cplx zc = domain.centroid();
  std::vector<AnalyticFunction> fns;
  for (int j = 0; j <= max_degree; ++j)
    fns.push_back({[j, zc](cplx z) { return std::pow(z - zc, j); },
                   {},
                   "z^" + std::to_string(j)});
  const auto& holes = domain.hole_points();
  for (std::size_t k = 0; k < holes.size(); ++k) {
    const cplx a = holes[k];
    for (int j = 1; j <= max_degree; ++j)
      fns.push_back({[a, j](cplx z) { return std::pow(z - a, -j); },
                     {a},
                     "(z-a" + std::to_string(k + 1) + ")^-" + std::to_string(j)});
  }

  QuadratureReport report;
  report.rows.resize(fns.size());
  parallel_for(fns.size(), [&](std::size_t i) {
    QuadratureRow row;
    row.label = fns[i].label;
    row.area_mean = area_mean(domain, fns[i]);
    row.boundary_mean = boundary_mean(domain, fns[i]);
    row.abs_difference = std::abs(row.area_mean - row.boundary_mean);
    report.rows[i] = std::move(row);
  });
  for (const auto& row : report.rows)
    report.residual = std::max(report.residual, row.abs_difference);
  return report;
}

std::string quadrature_csv(const QuadratureReport& report) {
  std::ostringstream out;
  out << "basis_label,area_mean_re,area_mean_im,boundary_mean_re,boundary_mean_im,abs_difference\n";
  for (const auto& row : report.rows)
    out << row.label << "," << fmt(row.area_mean.real()) << ","
        << fmt(row.area_mean.imag()) << "," << fmt(row.boundary_mean.real())
        << "," << fmt(row.boundary_mean.imag()) << ","
        << fmt(row.abs_difference) << "\n";
  return out.str();
}

FlowReport flow_identities(const PlanarDomain& domain,
                           const ApproximationResult& result) {
  FlowReport report;
  const double lambda = result.lambda_hat;
  const auto v = [&](cplx z) {
    return cplx(0.0, 2.0) * (z - std::conj(result.phi(z)));
  };
  double circulation = 0.0;
  for (int k = 0; k < domain.num_components(); ++k) {
    const auto& c = domain.component(k);
    double part = 0.0;
    for (int i = 0; i < c.sample_count(); ++i) {
      const double t = c.sample_t(i);
      const cplx z = c.point(t);
      const cplx vel = v(z);
      report.boundary_speed_dev = std::max(
          report.boundary_speed_dev, std::abs(std::abs(vel) - 2.0 * lambda));
      const cplx tau = c.unit_tangent(t);
      report.boundary_vector_dev = std::max(
          report.boundary_vector_dev, std::abs(vel - 2.0 * lambda * tau));
      // v . tau, with ds = |z'| dt.
      part += (std::conj(vel) * tau).real() * std::abs(c.derivative(t, 1));
    }
    circulation += part * (kTwoPi / c.sample_count());
  }
  const auto [A, P] = domain.area_perimeter();
  report.circulation = circulation;
  report.green_gap = std::abs(circulation - 4.0 * A);
  report.vorticity_flux_gap = std::abs(4.0 * A - 2.0 * lambda * P);
  return report;
}

}  // namespace extremal
