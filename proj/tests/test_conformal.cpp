#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "extremal/conformal.hpp"
#include "support/oracles.hpp"

using namespace extremal;

namespace {

PlanarDomain eccentric_ring() {
  // Outer |z| = 1, inner |z - 0.2| = 0.3.
  return PlanarDomain(make_circle(0.0, 1.0, Orientation::kOuter),
                      {make_circle(0.2, 0.3, Orientation::kInner)}, {0.2});
}

PlanarDomain ellipse_ring() {
  // Outer ellipse (1, 0.6), inner circle radius 0.25.
  return PlanarDomain(make_ellipse(1.0, 0.6),
                      {make_circle(0.0, 0.25, Orientation::kInner)}, {0.0});
}

ApproximationResult annulus_phi(const PlanarDomain& domain) {
  const auto basis = AnalyticBasis::raw(4, {domain.hole_points()[0]});
  std::vector<cplx> coeffs(basis.size(), 0.0);
  coeffs[5] = 0.5;
  return certificate_result(domain, 0.5, basis, coeffs);
}

}  // namespace

TEST_CASE("concentric annulus maps to itself") {
  const auto domain = make_annulus(1.0, 0.5);
  const auto map = map_to_annulus(domain);
  CHECK(map.R1() == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(map.R2() == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(map.R1() / map.R2() == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(map.boundary_deviation() < 1e-8);
  // h is the identity up to rotation; here exactly the identity.
  for (const cplx z : {cplx(0.7, 0.1), cplx(-0.2, 0.6), cplx(0.0, -0.8)})
    CHECK(std::abs(map.h(z) - z) < 1e-8);
}

TEST_CASE("eccentric annulus modulus matches the Moebius-reduction oracle") {
  const auto domain = eccentric_ring();
  const auto map = map_to_annulus(domain);
  const double oracle = testsupport::two_circle_modulus(0.2, 0.3);
  CHECK(std::abs(map.modulus() - oracle) < 1e-5);
  CHECK(map.boundary_deviation() < 1e-6);
}

TEST_CASE("modulus is invariant under rotation+scaling and under a/z + b") {
  const auto base = make_annulus(1.0, 0.5);
  const double m0 = map_to_annulus(base).modulus();
  SUBCASE("rotate and scale by 0.7 e^{i pi/5}") {
    const cplx c = std::polar(0.7, kPi / 5.0);
    const auto moved = mobius_image(base, c, 0.15 * c, 0.0, 1.0);
    CHECK(std::abs(map_to_annulus(moved).modulus() - m0) < 1e-8);
  }
  SUBCASE("inversion-type map 1/(z + 1.5)") {
    const auto moved = mobius_image(base, 0.0, 1.0, 1.0, 1.5);
    CHECK(std::abs(map_to_annulus(moved).modulus() - m0) < 1e-6);
  }
  SUBCASE("w = 1/z + 0.1") {
    const auto moved = mobius_image(base, 0.1, 1.0, 1.0, 0.0);
    CHECK(std::abs(map_to_annulus(moved).modulus() - m0) < 1e-6);
  }
}

TEST_CASE("lemma: phi' = C [(log h)']^2") {
  SUBCASE("annulus: C = -R1 R2 = -0.5, tiny deviation") {
    const auto domain = make_annulus(1.0, 0.5);
    const auto map = map_to_annulus(domain);
    const auto report = lemma_l1_check(domain, annulus_phi(domain), map);
    CHECK(std::abs(report.C_fit - cplx(-0.5, 0.0)) < 1e-6);
    CHECK(std::abs(report.C_fit.imag()) < 1e-8);
    CHECK(report.relative_deviation < 1e-6);
  }
  SUBCASE("rotated/scaled annulus: same C (rotation invariance)") {
    const cplx c = std::polar(1.0, 0.9);
    const auto moved = mobius_image(make_annulus(1.0, 0.5), c, 0.0, 0.0, 1.0);
    const auto map = map_to_annulus(moved);
    // phi for the rotated annulus: with w = c z and |c| = 1, the boundary
    // relation gives phi_w(w) = conj(c) (R1R2/z) = R1R2/w — unchanged.
    const auto basis = AnalyticBasis::raw(2, {0.0});
    std::vector<cplx> coeffs(basis.size(), 0.0);
    coeffs[3] = 0.5;
    const auto cert = certificate_result(moved, 0.5, basis, coeffs);
    const auto report = lemma_l1_check(moved, cert, map);
    CHECK(std::abs(report.C_fit - cplx(-0.5, 0.0)) < 1e-6);
    CHECK(report.relative_deviation < 1e-6);
  }
  SUBCASE("ellipse ring with its minimax phi-hat: hypothesis fails") {
    const auto domain = ellipse_ring();
    const auto map = map_to_annulus(domain);
    const auto result =
        solve_minimax(domain, AnalyticBasis::for_domain(domain, 12), 512);
    const auto report = lemma_l1_check(domain, result, map);
    CHECK(report.relative_deviation > 1e-2);
  }
}

TEST_CASE("mobius_check") {
  SUBCASE("concentric annulus: mu(z) = 2z exactly") {
    const auto domain = make_annulus(1.0, 0.5);
    const auto report = mobius_check(domain, map_to_annulus(domain));
    CHECK(report.failed_inversions == 0);
    CHECK(report.defect < 1e-10);
  }
  SUBCASE("Moebius image of the annulus keeps the defect tiny") {
    const auto moved = mobius_image(make_annulus(1.0, 0.5), 0.1, 1.0, 1.0, 0.0);
    const auto report = mobius_check(moved, map_to_annulus(moved));
    CHECK(report.failed_inversions == 0);
    CHECK(report.defect < 1e-5);
  }
  SUBCASE("eccentric two-circle ring is also a Moebius image") {
    const auto domain = eccentric_ring();
    const auto report = mobius_check(domain, map_to_annulus(domain));
    CHECK(report.defect < 1e-5);
  }
  SUBCASE("ellipse-bounded ring: mu is not Moebius") {
    const auto domain = ellipse_ring();
    const auto report = mobius_check(domain, map_to_annulus(domain));
    CHECK(report.defect > 1e-2);
  }
}

TEST_CASE("quadratic differential transport along mu") {
  const auto domain = make_annulus(1.0, 0.5);
  const auto map = map_to_annulus(domain);
  const auto phi_prime = [](cplx z) { return -0.5 / (z * z); };
  CHECK(mu_invariance_residual(domain, map, phi_prime) < 1e-5);
}

TEST_CASE("h^{-1} of transformed annuli fits a linear or a/w+b map") {
  SUBCASE("concentric: linear") {
    const auto domain = make_annulus(1.0, 0.5);
    const auto fit = fit_inverse_form(domain, map_to_annulus(domain));
    CHECK(fit.linear_residual < 1e-8);
  }
  SUBCASE("scaled/translated: linear") {
    const cplx c = std::polar(0.8, -0.4);
    const auto moved = mobius_image(make_annulus(1.0, 0.5), c, cplx(0.2, 0.1),
                                    0.0, 1.0);
    const auto fit = fit_inverse_form(moved, map_to_annulus(moved));
    CHECK(fit.best_residual < 1e-5);
  }
  SUBCASE("image under 1/z + 0.1 is again concentric, so h^{-1} is linear") {
    const auto moved = mobius_image(make_annulus(1.0, 0.5), 0.1, 1.0, 1.0, 0.0);
    const auto fit = fit_inverse_form(moved, map_to_annulus(moved));
    CHECK(fit.best_residual < 1e-5);
    CHECK(fit.linear_residual < 1e-5);
  }
  SUBCASE("boundary-swapped map R1R2/h exercises the a/w + b branch") {
    const auto domain = make_annulus(1.0, 0.5);
    const auto map = map_to_annulus(domain);
    const auto fit = fit_inverse_form(domain, [&](cplx z) {
      return map.R1() * map.R2() / map.h(z);
    });
    CHECK(fit.inverse_residual < 1e-8);
    CHECK(fit.linear_residual > 1e-2);
  }
  SUBCASE("ellipse ring: neither form fits") {
    const auto domain = ellipse_ring();
    const auto fit = fit_inverse_form(domain, map_to_annulus(domain));
    CHECK(fit.best_residual > 1e-2);
  }
}

TEST_CASE("map_to_annulus rejects wrong connectivity") {
  CHECK_THROWS_AS(map_to_annulus(make_disk(1.0)), std::invalid_argument);
}
