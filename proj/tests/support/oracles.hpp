#pragma once

// Test-only oracles, independent of the library's computational paths.

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace testsupport {

// Adaptive Simpson quadrature.
inline double adaptive_integral(const std::function<double(double)>& f,
                                double a, double b, double tol, int depth = 0) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  auto simpson = [](double fa, double fm, double fb, double h) {
    return h / 6.0 * (fa + 4.0 * fm + fb);
  };
  std::function<double(double, double, double, double, double, double, int)> rec =
      [&](double a, double m, double b, double fa, double fm, double fb,
          int depth) -> double {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double whole = simpson(fa, fm, fb, b - a);
    const double left = simpson(fa, flm, fm, m - a);
    const double right = simpson(fm, frm, fb, b - m);
    if (depth > 50) throw std::runtime_error("adaptive_integral: depth exceeded");
    if (std::abs(left + right - whole) < 15.0 * tol || depth > 30)
      return left + right + (left + right - whole) / 15.0;
    return rec(a, lm, m, fa, flm, fm, depth + 1) +
           rec(m, rm, b, fm, frm, fb, depth + 1);
  };
  return rec(a, m, b, fa, fm, fb, depth);
}

// Concentric reduction of a two-circle ring by a Moebius map: outer circle
// |z| = 1, inner circle |z - c| = r (c real, 0 <= c). Returns the modulus
// log(1/rho) of the equivalent annulus {rho < |w| < 1}.
inline double two_circle_modulus(double c, double r) {
  if (c == 0.0) return std::log(1.0 / r);
  // T(z) = (z-a)/(1-az) with a the root of c a^2 - (1+c^2-r^2) a + c = 0
  // inside the unit disk; T maps both circles to concentric ones.
  const double A = c, B = -(1.0 + c * c - r * r), C = c;
  const double disc = std::sqrt(B * B - 4.0 * A * C);
  double a = (-B - disc) / (2.0 * A);
  if (std::abs(a) >= 1.0) a = (-B + disc) / (2.0 * A);
  const double rho = std::abs((c + r - a) / (1.0 - a * (c + r)));
  return std::log(1.0 / rho);
}

}  // namespace testsupport
