#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "extremal/curve.hpp"
#include "extremal/domain.hpp"
#include "extremal/domain_io.hpp"
#include "support/oracles.hpp"

using namespace extremal;

TEST_CASE("arc length of circles") {
  const auto unit = make_circle(0.0, 1.0, Orientation::kOuter);
  CHECK(unit.arc_length_table().total == doctest::Approx(kTwoPi).epsilon(1e-12));

  const auto half = make_circle(0.0, 0.5, Orientation::kOuter);
  CHECK(half.arc_length_table().total == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("arc length of the ellipse matches adaptive quadrature") {
  const auto ellipse = make_ellipse(1.0, 0.6);
  // Independent oracle: adaptive Simpson on |z'(t)|.
  const double oracle = testsupport::adaptive_integral(
      [&](double t) { return std::abs(ellipse.derivative(t, 1)); }, 0.0, kTwoPi,
      1e-13);
  CHECK(std::abs(ellipse.arc_length_table().total - oracle) < 1e-10);
}

TEST_CASE("arc length table is strictly increasing and interpolates") {
  const auto ellipse = make_ellipse(1.0, 0.6);
  const auto table = ellipse.arc_length_table();
  for (std::size_t i = 1; i < table.s.size(); ++i) CHECK(table.s[i] > table.s[i - 1]);
  const double mid = table.at(1.2345);
  const double oracle = testsupport::adaptive_integral(
      [&](double t) { return std::abs(ellipse.derivative(t, 1)); }, 0.0, 1.2345,
      1e-13);
  CHECK(std::abs(mid - oracle) < 1e-9);
}

TEST_CASE("non-immersed curve is rejected") {
  // z(t) = e^{it} + e^{2it}/2 has z' = i e^{it}(1 + e^{it}) vanishing at t=pi.
  CHECK_THROWS_AS(AnalyticCurve({0.0, 1.0, 0.5}, 0, Orientation::kOuter),
                  std::invalid_argument);
}

TEST_CASE("self-intersecting curve is rejected") {
  // A limacon with an inner loop.
  CHECK_THROWS_AS(AnalyticCurve({0.0, 1.0, 0.8}, 0, Orientation::kOuter),
                  std::invalid_argument);
}

TEST_CASE("area and perimeter") {
  SUBCASE("unit disk") {
    const auto disk = make_disk(1.0);
    const auto [A, P] = disk.area_perimeter();
    CHECK(A == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(P == doctest::Approx(kTwoPi).epsilon(1e-12));
  }
  SUBCASE("annulus (1, 0.5)") {
    const auto annulus = make_annulus(1.0, 0.5);
    const auto [A, P] = annulus.area_perimeter();
    CHECK(A == doctest::Approx(0.75 * kPi).epsilon(1e-12));
    CHECK(P == doctest::Approx(3.0 * kPi).epsilon(1e-12));
  }
  SUBCASE("ellipse (1, 0.6): A = pi a b") {
    const auto ellipse = make_ellipse_domain(1.0, 0.6);
    CHECK(std::abs(ellipse.area() - 0.6 * kPi) < 1e-10);
  }
}

TEST_CASE("signed curvature convention") {
  // kappa = -1 on the counterclockwise unit circle; +1/R on a clockwise
  // circle of radius R (evaluated from the defining formula).
  const auto outer = make_circle(0.0, 1.0, Orientation::kOuter);
  const auto inner = make_circle(0.0, 0.5, Orientation::kInner);
  for (double t : {0.0, 0.7, 2.9, 5.5}) {
    CHECK(outer.curvature(t) == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(inner.curvature(t) == doctest::Approx(2.0).epsilon(1e-10));
  }
}

TEST_CASE("kappa equals minus the standard curvature on ccw circles") {
  for (double R : {0.5, 1.0, 2.5}) {
    const auto c = make_circle(0.0, R, Orientation::kOuter);
    for (double t : {0.3, 1.9, 4.0}) {
      const cplx dz = c.derivative(t, 1), ddz = c.derivative(t, 2);
      const double standard =
          (std::conj(dz) * ddz).imag() / std::pow(std::abs(dz), 3);
      CHECK(c.curvature(t) == doctest::Approx(-standard).epsilon(1e-10));
      CHECK(standard == doctest::Approx(1.0 / R).epsilon(1e-10));
    }
  }
}

TEST_CASE("winding check: oint kappa ds = -2pi outer, +2pi inner") {
  const auto annulus = make_annulus(1.0, 0.5);
  const auto winding = annulus.winding_check(1e-8);
  REQUIRE(winding.size() == 2);
  CHECK(winding[0] == doctest::Approx(-kTwoPi).epsilon(1e-10));
  CHECK(winding[1] == doctest::Approx(kTwoPi).epsilon(1e-10));

  const auto ellipse = make_ellipse_domain(1.0, 0.6);
  CHECK(ellipse.winding_check(1e-8)[0] == doctest::Approx(-kTwoPi).epsilon(1e-10));
}

TEST_CASE("reparametrization invariance") {
  const auto ellipse = make_ellipse(1.0, 0.6);
  const auto shifted = ellipse.reparametrized(0.8317);
  const auto padded = ellipse.padded(8);
  const double A0 = ellipse.signed_area(), L0 = ellipse.length();
  CHECK(std::abs(shifted.signed_area() - A0) < 1e-8);
  CHECK(std::abs(shifted.length() - L0) < 1e-8);
  CHECK(std::abs(padded.signed_area() - A0) < 1e-8);
  CHECK(std::abs(padded.length() - L0) < 1e-8);

  auto total_kappa = [](const AnalyticCurve& c) {
    double acc = 0.0;
    for (int i = 0; i < c.sample_count(); ++i) {
      const double t = c.sample_t(i);
      acc += c.curvature(t) * std::abs(c.derivative(t, 1));
    }
    return acc * kTwoPi / c.sample_count();
  };
  CHECK(std::abs(total_kappa(shifted) - total_kappa(ellipse)) < 1e-8);
  CHECK(std::abs(total_kappa(padded) - total_kappa(ellipse)) < 1e-8);
}

TEST_CASE("isoperimetric inequality P^2 >= 4 pi A on perturbed domains") {
  for (int mode = 2; mode <= 5; ++mode) {
    std::vector<cplx> coeffs(2 * mode + 1, cplx(0.0));
    coeffs[mode] = 0.0;       // j = 0
    coeffs[mode + 1] = 1.0;   // j = 1
    coeffs[2 * mode] = 0.04;  // j = mode
    coeffs[0] = 0.03;         // j = -mode
    const AnalyticCurve curve(coeffs, -mode, Orientation::kOuter);
    const PlanarDomain domain(curve, {});
    const auto [A, P] = domain.area_perimeter();
    CHECK(P * P >= 4.0 * kPi * A - 1e-12);
  }
}

TEST_CASE("point membership and hole points") {
  const auto annulus = make_annulus(1.0, 0.5);
  CHECK(annulus.contains({0.75, 0.0}));
  CHECK(!annulus.contains({0.0, 0.0}));
  CHECK(!annulus.contains({1.5, 0.0}));
  CHECK(annulus.hole_points()[0] == cplx(0.0, 0.0));
}

TEST_CASE("misoriented domains are rejected") {
  CHECK_THROWS_AS(
      PlanarDomain(make_circle(0.0, 1.0, Orientation::kOuter),
                   {make_circle(2.5, 0.3, Orientation::kInner)}),
      std::invalid_argument);
  // Hole point not inside the hole.
  CHECK_THROWS_AS(
      PlanarDomain(make_circle(0.0, 1.0, Orientation::kOuter),
                   {make_circle(0.0, 0.5, Orientation::kInner)}, {cplx(0.75, 0.0)}),
      std::invalid_argument);
}

TEST_CASE("domain file round trip") {
  const auto annulus = make_annulus(1.0, 0.5);
  const std::string text = domain_to_json(annulus);
  const auto parsed = parse_domain(text);
  CHECK(parsed.connectivity() == 2);
  CHECK(std::abs(parsed.area() - annulus.area()) < 1e-14);
  // Canonical form: serialize(parse(s)) == s.
  CHECK(domain_to_json(parsed) == text);
}

TEST_CASE("malformed domain files raise input errors") {
  CHECK_THROWS_AS(parse_domain("{"), std::invalid_argument);
  CHECK_THROWS_AS(parse_domain("{}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_domain(R"({"outer": {"coeffs": [[0,0]]}})"),
                  std::invalid_argument);
}
