#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "extremal/pipeline.hpp"
#include "extremal/serrin.hpp"

using namespace extremal;

TEST_CASE("unit disk: u = |z|^2/4 + const, du/dn = 1/2 exactly") {
  const auto domain = make_disk(1.0);
  const auto solution = solve_neumann(domain, 8);
  CHECK(solution.neumann_target() == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(solution.neumann_residual() < 1e-10);
  const auto osc = boundary_oscillation(solution, domain);
  CHECK(osc.max_osc < 1e-8);
  // The harmonic correction is a constant shift at most: the gradient of the
  // fitted part vanishes.
  const cplx z(0.3, 0.4);
  CHECK(std::abs(solution.value(z) - solution.value(-z)) < 1e-9);
}

TEST_CASE("annulus (1, 0.5): radial closed form") {
  const auto domain = make_annulus(1.0, 0.5);
  const auto solution = solve_neumann(domain, 16);
  CHECK(solution.neumann_residual() < 1e-8);

  // u = r^2/4 + a log r + C with a = -R1 R2 / 2 = -0.25.
  CHECK(solution.beta(0) == doctest::Approx(-0.25).epsilon(1e-7));

  const auto osc = boundary_oscillation(solution, domain);
  CHECK(osc.osc[0] < 1e-8);
  CHECK(osc.osc[1] < 1e-8);
  // c_outer - c_inner = (R1^2 - R2^2)/4 - (R1 R2 / 2) log(R1/R2).
  const double expected = 0.1875 - 0.25 * std::log(2.0);
  CHECK(osc.c[0] - osc.c[1] == doctest::Approx(expected).epsilon(1e-6));
  // Gauge: mean over the outer component is pinned to zero.
  CHECK(osc.c[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ellipse: well-posed Neumann fit, strictly oscillating traces") {
  const auto domain = make_ellipse_domain(1.0, 0.6);
  const auto solution = solve_neumann(domain, 16);
  CHECK(solution.neumann_residual() < 1e-6);
  const auto osc = boundary_oscillation(solution, domain);
  CHECK(osc.max_osc > 1e-3);
}

TEST_CASE("divergence identity: total flux equals the area") {
  for (int which = 0; which < 3; ++which) {
    const PlanarDomain domain = which == 0   ? make_disk(1.0)
                                : which == 1 ? make_annulus(1.0, 0.5)
                                             : make_ellipse_domain(1.0, 0.6);
    const auto solution = solve_neumann(domain, 12);
    CHECK(flux_identity_gap(solution, domain) < 1e-6);
  }
}

TEST_CASE("gauge invariance of the oscillation") {
  // osc_k ignores the additive constant by construction; adding a constant to
  // the solution's harmonic part is not representable, so probe via two
  // different degrees instead (different fitted representations, same osc).
  const auto domain = make_annulus(1.0, 0.5);
  const auto s1 = solve_neumann(domain, 12);
  const auto s2 = solve_neumann(domain, 20);
  const auto o1 = boundary_oscillation(s1, domain);
  const auto o2 = boundary_oscillation(s2, domain);
  CHECK(std::abs((o1.c[0] - o1.c[1]) - (o2.c[0] - o2.c[1])) < 1e-7);
  CHECK(std::abs(o1.max_osc - o2.max_osc) < 1e-7);
}

TEST_CASE("oscillation decreases monotonically as a perturbed annulus relaxes") {
  const auto base = make_annulus(1.0, 0.5);
  double prev = 1e300;
  for (const double amplitude : {0.05, 0.02, 0.01}) {
    const auto perturbed = perturb_domain(base, amplitude, 3, 7);
    const auto solution = solve_neumann(perturbed, 16);
    const auto osc = boundary_oscillation(solution, perturbed);
    CHECK(osc.max_osc > 0.0);
    CHECK(osc.max_osc < prev);
    prev = osc.max_osc;
  }
  // And the limit is the extremal annulus with zero oscillation.
  const auto exact = boundary_oscillation(solve_neumann(base, 16), base);
  CHECK(exact.max_osc < prev);
  CHECK(exact.max_osc < 1e-8);
}
