#include "extremal/schwarz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace extremal {

LocalSchwarzFunction schwarz_series(const AnalyticCurve& curve, double t0,
                                    int order) {
  if (order < 2) throw std::invalid_argument("schwarz_series: order too small");

  // Taylor coefficients in d = t - t0 of z(t0+d) and zbar(t0+d): the Fourier
  // modes contribute a_j (ij)^m e^{ijt0} / m!.
  PowerSeries z_series(order + 1), zbar_series(order + 1);
  const auto& coeffs = curve.coefficients();
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double j = static_cast<double>(curve.j_min() + static_cast<int>(k));
    const cplx phase = coeffs[k] * std::polar(1.0, j * t0);
    cplx pow_term = phase;        // a_j e^{ijt0} (ij)^m / m!
    cplx pow_term_c = std::conj(phase);
    for (int m = 0; m <= order + 1; ++m) {
      z_series[m] += pow_term;
      zbar_series[m] += pow_term_c;
      pow_term *= cplx(0.0, j) / static_cast<double>(m + 1);
      pow_term_c *= cplx(0.0, -j) / static_cast<double>(m + 1);
    }
  }

  LocalSchwarzFunction out;
  out.anchor_t = t0;
  out.anchor_z = z_series[0];
  out.branch_target = curve.dzbar_ds(t0);

  const double speed = std::abs(z_series[1]);
  if (speed < 1e-10 * curve.diameter())
    throw std::invalid_argument("schwarz_series: |z'(t0)| too small for reversion");

  // w(d) = z(t0+d) - z(t0); S(anchor + w) = zbar(t0 + d(w)).
  PowerSeries w = z_series;
  w[0] = 0.0;
  const PowerSeries d_of_w = w.truncated(order).revert();
  out.series = zbar_series.truncated(order).compose(d_of_w);

  // Residual scan on the curve fixes the usable window.
  const double dt = kTwoPi / curve.sample_count();
  double window = 0.0, radius = 0.0;
  for (int i = 1; i <= curve.sample_count() / 2; ++i) {
    const double lo = t0 - i * dt, hi = t0 + i * dt;
    const cplx zl = curve.point(lo), zh = curve.point(hi);
    const double res = std::max(
        std::abs(out.value(zl) - std::conj(zl)),
        std::abs(out.value(zh) - std::conj(zh)));
    if (res > 1e-8) break;
    window = i * dt;
    radius = std::min(std::abs(zl - out.anchor_z), std::abs(zh - out.anchor_z));
  }
  out.t_window = window;
  out.validity_radius = radius;
  if (window == 0.0)
    throw std::runtime_error("schwarz_series: no validity window (reversion breakdown)");
  return out;
}

RiccatiReport riccati_residual(const LocalSchwarzFunction& schwarz,
                               double lambda, int alpha,
                               const QuadraticDifferential& qd) {
  const PowerSeries s_prime = schwarz.series.derivative();
  auto residual_for = [&](cplx branch) {
    const PowerSeries u = s_prime.sqrt(branch);
    const PowerSeries up = u.derivative();
    double mx = 0.0;
    // Sample the validity disk along the real/imaginary cross through the
    // anchor (staying well inside the window).
    const double r = 0.75 * schwarz.validity_radius;
    for (int i = 0; i < 16; ++i) {
      const cplx w = std::polar(r * (0.2 + 0.05 * i), kTwoPi * i / 16.0);
      const cplx z = schwarz.anchor_z + w;
      const cplx uu = u.eval(w);
      const cplx lhs = uu * uu + cplx(0.0, 1.0) * static_cast<double>(alpha) *
                                     lambda * up.eval(w);
      mx = std::max(mx, std::abs(lhs - qd(z)));
    }
    return mx;
  };
  RiccatiReport report;
  report.alpha = alpha;
  report.residual = residual_for(schwarz.branch_target);
  const double flipped = residual_for(-schwarz.branch_target);
  if (flipped < 1e-3 * report.residual) {
    report.residual = flipped;
    report.branch_flipped = true;
  }
  return report;
}

HomogeneityReport homogeneity_check(const std::function<cplx(cplx)>& f,
                                    cplx lam, double r_min, double r_max,
                                    int samples) {
  HomogeneityReport report;
  cplx num = 0.0;
  double den = 0.0;
  double dev = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double r = r_min + (r_max - r_min) * i / (samples - 1);
    const cplx z = std::polar(r, kTwoPi * 0.37 * i);  // spiral sampling
    const double probe = 0.1 * r;
    const cplx s_here = schwarzian_at(f, z, probe);
    const cplx s_scaled = lam * lam * schwarzian_at(f, lam * z, probe * std::abs(lam));
    dev = std::max(dev, std::abs(s_scaled - s_here));
    // Least squares for c in S(f) = c / z^2.
    const cplx q = 1.0 / (z * z);
    num += s_here * std::conj(q);
    den += std::norm(q);
  }
  report.deviation = dev;
  report.c_fit = num / den;
  return report;
}

RiccatiRootsReport riccati_general_solution_check(double c) {
  RiccatiRootsReport report;
  // c0^2 + 2 c0 + 2c = 0.
  const cplx disc = std::sqrt(cplx(1.0 - 2.0 * c, 0.0));
  report.root_a = -1.0 + disc;
  report.root_b = -1.0 - disc;
  auto residual = [c](cplx c0) {
    double mx = 0.0;
    for (int i = 1; i <= 8; ++i) {
      const cplx z = std::polar(0.5 + 0.25 * i, 0.7 * i);
      // u = c0/z: u' - u^2/2 - c/z^2.
      const cplx lhs = -c0 / (z * z) - 0.5 * c0 * c0 / (z * z) - c / (z * z);
      mx = std::max(mx, std::abs(lhs) * std::norm(z));
    }
    return mx;
  };
  report.residual_a = residual(report.root_a);
  report.residual_b = residual(report.root_b);
  return report;
}

double droplet_residual(const AnalyticCurve& curve, double lambda, double c) {
  double mx = 0.0;
  for (int i = 0; i < curve.sample_count(); ++i) {
    const double t = curve.sample_t(i);
    const cplx z = curve.point(t);
    // On the curve S(z) = zbar and sqrt(S') = dzbar/ds.
    const cplx lhs = std::conj(z) - cplx(0.0, 1.0) * lambda * curve.dzbar_ds(t) -
                     c / z;
    mx = std::max(mx, std::abs(lhs));
  }
  return mx;
}

DropletGridResult droplet_grid_search(const AnalyticCurve& curve) {
  DropletGridResult best;
  best.min_residual = 1e300;
  constexpr int kLambdaSteps = 50;
  constexpr int kCSteps = 25;
  for (int i = 0; i < kLambdaSteps; ++i) {
    const double lambda =
        std::pow(10.0, -2.0 + 3.0 * i / (kLambdaSteps - 1.0));
    auto consider = [&](double c) {
      const double r = droplet_residual(curve, lambda, c);
      if (r < best.min_residual) {
        best.min_residual = r;
        best.lambda_best = lambda;
        best.c_best = c;
      }
    };
    consider(0.0);
    for (int k = 0; k < kCSteps; ++k) {
      const double mag = std::pow(10.0, -3.0 + 4.0 * k / (kCSteps - 1.0));
      consider(mag);
      consider(-mag);
    }
  }
  return best;
}

double fbp_residual(const AnalyticCurve& curve, double p, double t,
                    const std::function<cplx(cplx)>& F) {
  double mx = 0.0;
  for (int i = 0; i < curve.sample_count(); ++i) {
    const double tt = curve.sample_t(i);
    const cplx z = curve.point(tt);
    const cplx lhs = p * std::conj(z) -
                     cplx(0.0, 1.0) * t * curve.dzbar_ds(tt) - F(z);
    mx = std::max(mx, std::abs(lhs));
  }
  return mx;
}

}  // namespace extremal
