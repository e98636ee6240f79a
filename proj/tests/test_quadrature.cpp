#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "extremal/quadrature.hpp"

using namespace extremal;

namespace {

AnalyticFunction monomial(int j) {
  return {[j](cplx z) { return std::pow(z, j); }, {}, "z^" + std::to_string(j)};
}

ApproximationResult annulus_certificate(const PlanarDomain& domain) {
  const auto basis = AnalyticBasis::raw(4, {0.0});
  std::vector<cplx> coeffs(basis.size(), 0.0);
  coeffs[5] = 0.5;
  return certificate_result(domain, 0.5, basis, coeffs);
}

}  // namespace

TEST_CASE("area mean basics") {
  const auto disk = make_disk(1.0);
  CHECK(std::abs(area_mean(disk, monomial(0)) - 1.0) < 1e-12);
  CHECK(std::abs(area_mean(disk, monomial(1))) < 1e-12);

  const auto annulus = make_annulus(1.0, 0.5);
  const AnalyticFunction inv_z{[](cplx z) { return 1.0 / z; }, {0.0}, "1/z"};
  CHECK(std::abs(area_mean(annulus, inv_z)) < 1e-12);
}

TEST_CASE("boundary mean basics") {
  const auto disk = make_disk(1.0);
  CHECK(std::abs(boundary_mean(disk, monomial(0)) - 1.0) < 1e-12);
  for (int m = 1; m <= 3; ++m)
    CHECK(std::abs(boundary_mean(disk, monomial(m))) < 1e-12);

  // Annulus, f analytic: every nonconstant monomial averages to zero on both
  // circles, and the area mean picks the same constant. Cross-check against
  // area_mean per monomial.
  const auto annulus = make_annulus(1.0, 0.5);
  for (int j = 0; j <= 4; ++j) {
    const cplx bm = boundary_mean(annulus, monomial(j));
    const cplx am = area_mean(annulus, monomial(j));
    CHECK(std::abs(bm - am) < 1e-12);
    if (j > 0) CHECK(std::abs(bm) < 1e-12);
  }
  // A non-monomial analytic integrand with its pole off the closure.
  const AnalyticFunction shifted{[](cplx z) { return 1.0 / (z - 2.5); }, {2.5},
                                 "1/(z-2.5)"};
  CHECK(std::abs(area_mean(annulus, shifted) - boundary_mean(annulus, shifted)) <
        1e-10);
}

TEST_CASE("pole inside the domain is rejected") {
  const auto disk = make_disk(1.0);
  const AnalyticFunction bad{[](cplx z) { return 1.0 / (z - 0.5); },
                             {cplx(0.5, 0.0)},
                             "1/(z-0.5)"};
  CHECK_THROWS_AS(area_mean(disk, bad), std::invalid_argument);
}

TEST_CASE("quadrature residual: extremal domains pass, ellipse fails") {
  CHECK(quadrature_residual(make_disk(1.0), 8).residual < 1e-8);
  CHECK(quadrature_residual(make_annulus(1.0, 0.5), 8).residual < 1e-6);

  const auto report = quadrature_residual(make_ellipse_domain(1.0, 0.6), 8);
  CHECK(report.residual > 1e-3);
  // Worst offender is z^2: area mean (a^2-b^2)/4 = 0.16 vs the boundary mean.
  const auto& row = report.rows[2];
  CHECK(row.label == "z^2");
  CHECK(std::abs(row.area_mean - cplx(0.16, 0.0)) < 1e-10);
  CHECK(row.abs_difference > 1e-3);
}

TEST_CASE("quadrature residual is invariant under rigid motion") {
  const auto base = make_ellipse_domain(1.0, 0.6);
  const double r0 = quadrature_residual(base, 6).residual;

  std::vector<cplx> coeffs;
  const cplx rot = std::polar(1.0, 0.9);
  for (const cplx a : base.outer().coefficients()) coeffs.push_back(rot * a);
  coeffs[1] += cplx(0.4, -0.2);
  const PlanarDomain moved(AnalyticCurve(coeffs, -1, Orientation::kOuter), {});
  const double r1 = quadrature_residual(moved, 6).residual;
  CHECK(std::abs(r1 - r0) < 1e-8);
}

TEST_CASE("flow identities on certificates") {
  SUBCASE("unit disk, phi = 0: |v| = 2 and circulation = 4A") {
    const auto domain = make_disk(1.0);
    const auto basis = AnalyticBasis::raw(4, {});
    const auto cert = certificate_result(domain, 1.0, basis,
                                         std::vector<cplx>(basis.size(), 0.0));
    const auto flow = flow_identities(domain, cert);
    CHECK(flow.boundary_speed_dev < 1e-8);
    CHECK(flow.green_gap < 1e-8);
    CHECK(flow.vorticity_flux_gap < 1e-8);
  }
  SUBCASE("annulus (1, 0.5), phi = 0.5/z: |v| = 1 on both circles") {
    const auto domain = make_annulus(1.0, 0.5);
    const auto flow = flow_identities(domain, annulus_certificate(domain));
    CHECK(flow.boundary_speed_dev < 1e-6);
    CHECK(flow.green_gap < 1e-6);
    CHECK(flow.vorticity_flux_gap < 1e-6 * domain.area());
  }
  SUBCASE("ellipse with its minimax phi-hat: the flow is not tangent") {
    const auto domain = make_ellipse_domain(1.0, 0.6);
    const auto result =
        solve_minimax(domain, AnalyticBasis::for_domain(domain, 12), 512);
    const auto flow = flow_identities(domain, result);
    // This ellipse is a blind spot of the speed profile alone: the minimax
    // error 0.75 e^{-it} has constant modulus, so | |v| - 2 lambda | is tiny.
    // Non-extremality shows in the direction of v.
    CHECK(flow.boundary_speed_dev < 1e-3);
    CHECK(flow.boundary_vector_dev > 1e-1);
    // Green's identity holds regardless of extremality.
    CHECK(flow.green_gap < 1e-6 * domain.area());
  }
}

TEST_CASE("green circulation identity holds for arbitrary phi") {
  // omega = 4 identically for v = 2i(z - conj(phi)), any analytic phi.
  const auto domain = make_annulus(1.0, 0.5);
  const auto basis = AnalyticBasis::raw(3, {0.0});
  std::vector<cplx> coeffs(basis.size(), 0.0);
  coeffs[1] = cplx(0.3, -0.1);
  coeffs[2] = cplx(-0.05, 0.2);
  coeffs[4] = cplx(0.0, 0.35);  // (z-0)^{-1}
  const auto cert = certificate_result(domain, 0.77, basis, coeffs);
  CHECK(flow_identities(domain, cert).green_gap < 1e-6 * domain.area());
}

TEST_CASE("csv table shape") {
  const auto report = quadrature_residual(make_annulus(1.0, 0.5), 3);
  const std::string csv = quadrature_csv(report);
  CHECK(csv.find("basis_label,area_mean_re") == 0);
  // 4 monomials + 3 negative powers + header.
  int lines = 0;
  for (char c : csv)
    if (c == '\n') ++lines;
  CHECK(lines == 8);
  CHECK(csv.find("(z-a1)^-2") != std::string::npos);
}
