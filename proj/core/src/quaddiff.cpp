#include "extremal/quaddiff.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "extremal/threads.hpp"

namespace extremal {

namespace {

cplx horner(const std::vector<cplx>& coeffs, cplx z) {
  if (coeffs.empty()) return 0.0;
  cplx acc = coeffs.back();
  for (int k = static_cast<int>(coeffs.size()) - 2; k >= 0; --k)
    acc = acc * z + coeffs[k];
  return acc;
}

std::vector<cplx> poly_derivative(const std::vector<cplx>& coeffs) {
  std::vector<cplx> out;
  out.reserve(coeffs.size());
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    out.push_back(coeffs[k] * static_cast<double>(k));
  if (out.empty()) out.push_back(0.0);
  return out;
}

std::vector<cplx> poly_roots(std::vector<cplx> coeffs) {
  // Companion-matrix roots; trailing zero coefficients are trimmed first.
  while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
  const int n = static_cast<int>(coeffs.size()) - 1;
  if (n < 1) return {};
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) companion(i, n - 1) = -coeffs[i] / coeffs[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<cplx> roots;
  for (int i = 0; i < n; ++i) roots.push_back(solver.eigenvalues()(i));
  return roots;
}

}  // namespace

QuadraticDifferential::QuadraticDifferential(std::function<cplx(cplx)> value,
                                             std::function<cplx(cplx)> derivative,
                                             std::vector<cplx> poles)
    : value_(std::move(value)),
      derivative_(std::move(derivative)),
      poles_(std::move(poles)) {}

QuadraticDifferential QuadraticDifferential::polynomial(std::vector<cplx> coeffs) {
  auto d = poly_derivative(coeffs);
  return QuadraticDifferential(
      [c = std::move(coeffs)](cplx z) { return horner(c, z); },
      [d = std::move(d)](cplx z) { return horner(d, z); }, {});
}

QuadraticDifferential QuadraticDifferential::rational(std::vector<cplx> num,
                                                      std::vector<cplx> den) {
  auto dnum = poly_derivative(num);
  auto dden = poly_derivative(den);
  auto poles = poly_roots(den);
  auto value = [num, den](cplx z) { return horner(num, z) / horner(den, z); };
  auto deriv = [num, den, dnum, dden](cplx z) {
    const cplx n = horner(num, z), d = horner(den, z);
    return (horner(dnum, z) * d - n * horner(dden, z)) / (d * d);
  };
  return QuadraticDifferential(std::move(value), std::move(deriv), std::move(poles));
}

QuadraticDifferential QuadraticDifferential::from_result(
    const ApproximationResult& result) {
  auto value = [result](cplx z) { return result.phi_prime(z); };
  auto deriv = [result](cplx z) { return result.phi_second(z); };
  return QuadraticDifferential(std::move(value), std::move(deriv),
                               result.basis.hole_anchors());
}

// --- boundary identity ---------------------------------------------------

BoundaryIdentityReport boundary_identity(const PlanarDomain& domain,
                                         double lambda,
                                         const QuadraticDifferential& qd) {
  BoundaryIdentityReport report;
  for (int k = 0; k < domain.num_components(); ++k) {
    const auto& c = domain.component(k);
    double residual = 0.0, integral = 0.0, max_imag = 0.0;
    for (int i = 0; i < c.sample_count(); ++i) {
      const double t = c.sample_t(i);
      const cplx z = c.point(t);
      const cplx dz_ds = c.unit_tangent(t);
      const cplx lhs = qd(z) * dz_ds * dz_ds;
      const double rhs = 1.0 + lambda * c.curvature(t);
      residual = std::max(residual, std::abs(lhs - rhs));
      max_imag = std::max(max_imag, std::abs(lhs.imag()));
      integral += rhs * std::abs(c.derivative(t, 1));
    }
    integral *= kTwoPi / c.sample_count();
    const double expected = k == 0 ? c.length() - kTwoPi * lambda
                                   : c.length() + kTwoPi * lambda;
    report.component_residual.push_back(residual);
    report.max_residual = std::max(report.max_residual, residual);
    report.integral.push_back(integral);
    report.expected_integral.push_back(expected);
    report.max_integral_error =
        std::max(report.max_integral_error, std::abs(integral - expected));
    report.max_imag = std::max(report.max_imag, max_imag);
  }
  report.all_positive = true;
  for (double v : report.integral)
    if (!(v > 0.0)) report.all_positive = false;
  return report;
}

// --- zeros ---------------------------------------------------------------

namespace {

struct RectWinding {
  int winding = 0;
  bool reliable = false;
};

RectWinding rect_winding(const QuadraticDifferential& qd, cplx lo, cplx hi,
                         int nodes) {
  // Corners counterclockwise; accumulate the unwrapped phase of phi'.
  const cplx corners[4] = {lo, {hi.real(), lo.imag()}, hi, {lo.real(), hi.imag()}};
  double acc = 0.0;
  double min_abs = 1e300;
  cplx prev = qd(corners[0]);
  min_abs = std::min(min_abs, std::abs(prev));
  const int per_edge = std::max(8, nodes / 4);
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[e], b = corners[(e + 1) % 4];
    for (int i = 1; i <= per_edge; ++i) {
      const cplx z = a + (b - a) * (static_cast<double>(i) / per_edge);
      const cplx cur = qd(z);
      min_abs = std::min(min_abs, std::abs(cur));
      acc += std::arg(cur / prev);
      prev = cur;
    }
  }
  RectWinding out;
  const double turns = acc / kTwoPi;
  out.winding = static_cast<int>(std::lround(turns));
  out.reliable = std::abs(turns - out.winding) < 0.25 && min_abs > 0.0;
  return out;
}

cplx rect_zero_centroid(const QuadraticDifferential& qd, cplx lo, cplx hi,
                        int winding, int nodes) {
  // (1/2pi i w) oint z phi''/phi' dz, trapezoid per edge.
  const cplx corners[4] = {lo, {hi.real(), lo.imag()}, hi, {lo.real(), hi.imag()}};
  cplx acc = 0.0;
  const int per_edge = std::max(32, nodes / 4);
  for (int e = 0; e < 4; ++e) {
    const cplx a = corners[e], b = corners[(e + 1) % 4];
    const cplx dz = (b - a) / static_cast<double>(per_edge);
    for (int i = 0; i < per_edge; ++i) {
      const cplx z0 = a + dz * static_cast<double>(i);
      const cplx z1 = z0 + dz;
      auto integrand = [&](cplx z) { return z * qd.derivative(z) / qd(z); };
      acc += 0.5 * (integrand(z0) + integrand(z1)) * dz;
    }
  }
  return acc / (cplx(0.0, kTwoPi) * static_cast<double>(winding));
}

void subdivide_zeros(const QuadraticDifferential& qd, cplx lo, cplx hi,
                     const FindZerosOptions& opt, int depth,
                     std::vector<QdZero>& out) {
  RectWinding w = rect_winding(qd, lo, hi, opt.contour_nodes);
  for (int jitter = 0; !w.reliable && jitter < 6; ++jitter) {
    // A zero sits on (or too close to) the contour: expand deterministically.
    const cplx pad = 3e-3 * (1 + jitter) * (hi - lo);
    lo -= pad;
    hi += pad;
    w = rect_winding(qd, lo, hi, opt.contour_nodes * 2);
  }
  if (!w.reliable)
    throw std::runtime_error("find_zeros: contour winding failed to stabilize");
  if (w.winding == 0) return;

  const double diag = std::abs(hi - lo);
  if ((w.winding >= 1 && diag < 1e-4) || depth >= opt.max_depth ||
      diag < opt.min_cell) {
    if (w.winding < 0) return;  // isolated a pole, not a zero
    QdZero zero;
    zero.order = w.winding;
    zero.location = rect_zero_centroid(qd, lo, hi, w.winding, opt.contour_nodes);
    if (w.winding == 1) {
      // Newton polish.
      cplx z = zero.location;
      for (int it = 0; it < 60; ++it) {
        const cplx step = qd(z) / qd.derivative(z);
        z -= step;
        if (std::abs(step) < opt.newton_tol * std::max(1.0, std::abs(z)))
          break;
      }
      zero.location = z;
    }
    out.push_back(zero);
    return;
  }
  const cplx mid((lo.real() + hi.real()) / 2, (lo.imag() + hi.imag()) / 2);
  subdivide_zeros(qd, lo, mid, opt, depth + 1, out);
  subdivide_zeros(qd, {mid.real(), lo.imag()}, {hi.real(), mid.imag()}, opt,
                  depth + 1, out);
  subdivide_zeros(qd, {lo.real(), mid.imag()}, {mid.real(), hi.imag()}, opt,
                  depth + 1, out);
  subdivide_zeros(qd, mid, hi, opt, depth + 1, out);
}

}  // namespace

std::vector<QdZero> find_zeros(const QuadraticDifferential& qd, cplx lo,
                               cplx hi, const FindZerosOptions& options) {
  std::vector<QdZero> out;
  subdivide_zeros(qd, lo, hi, options, 0, out);
  // Merge duplicates from cells sharing a jittered zero.
  std::vector<QdZero> merged;
  for (const auto& z : out) {
    bool dup = false;
    for (auto& m : merged)
      if (std::abs(m.location - z.location) < 1e-7 * (1.0 + std::abs(hi - lo))) {
        dup = true;
        break;
      }
    if (!dup) merged.push_back(z);
  }
  std::sort(merged.begin(), merged.end(), [](const QdZero& a, const QdZero& b) {
    return a.location.real() != b.location.real()
               ? a.location.real() < b.location.real()
               : a.location.imag() < b.location.imag();
  });
  return merged;
}

// --- trajectory tracing ----------------------------------------------------

TraceOptions trace_options_for(const PlanarDomain& domain) {
  TraceOptions opt;
  opt.diameter = domain.diameter();
  opt.inside = [domain](cplx z) { return domain.contains(z); };
  return opt;
}

TraceOptions trace_options_for_rect(cplx lo, cplx hi) {
  TraceOptions opt;
  opt.diameter = std::abs(hi - lo);
  opt.inside = [lo, hi](cplx z) {
    return z.real() >= lo.real() && z.real() <= hi.real() &&
           z.imag() >= lo.imag() && z.imag() <= hi.imag();
  };
  return opt;
}

namespace {

// Direction field of the family, sign-aligned with ref.
cplx direction_field(const QuadraticDifferential& qd, cplx z,
                     TrajectoryFamily family, cplx ref) {
  cplx u = std::polar(1.0, -0.5 * std::arg(qd(z)));
  if (family == TrajectoryFamily::kVertical) u *= cplx(0.0, 1.0);
  if ((std::conj(ref) * u).real() < 0.0) u = -u;
  return u;
}

}  // namespace

Trajectory trace_trajectory(const QuadraticDifferential& qd, cplx start,
                            TrajectoryFamily family, cplx start_direction,
                            const TraceOptions& options) {
  if (!options.inside)
    throw std::invalid_argument("trace_trajectory: options.inside is required");
  Trajectory traj;
  traj.points.push_back(start);

  const double h_max = options.max_step * options.diameter;
  const double h_min = 1e-12 * options.diameter;
  const double max_length =
      options.max_length > 0.0 ? options.max_length : 25.0 * options.diameter;
  const double capture = options.zero_capture * options.diameter;

  cplx z = start;
  cplx dir = direction_field(qd, z, family, unit(start_direction));
  double h = h_max;

  // Embedded Cash-Karp 4(5) on the unit-speed field; the local error tracks
  // the field curvature. Also used with fixed steps by the closure walk.
  auto rk4 = [&](cplx z0, cplx ref, double step) -> std::pair<cplx, cplx> {
    const cplx k1 = direction_field(qd, z0, family, ref);
    const cplx k2 = direction_field(qd, z0 + 0.5 * step * k1, family, ref);
    const cplx k3 = direction_field(qd, z0 + 0.5 * step * k2, family, ref);
    const cplx k4 = direction_field(qd, z0 + step * k3, family, ref);
    const cplx znew = z0 + step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return {znew, k4};
  };
  auto cash_karp = [&](cplx z0, cplx ref, double step) -> std::pair<cplx, double> {
    const cplx k1 = direction_field(qd, z0, family, ref);
    const cplx k2 = direction_field(qd, z0 + step * (0.2 * k1), family, ref);
    const cplx k3 = direction_field(
        qd, z0 + step * (3.0 / 40.0 * k1 + 9.0 / 40.0 * k2), family, ref);
    const cplx k4 = direction_field(
        qd, z0 + step * (0.3 * k1 - 0.9 * k2 + 1.2 * k3), family, ref);
    const cplx k5 = direction_field(
        qd,
        z0 + step * (-11.0 / 54.0 * k1 + 2.5 * k2 - 70.0 / 27.0 * k3 +
                     35.0 / 27.0 * k4),
        family, ref);
    const cplx k6 = direction_field(
        qd,
        z0 + step * (1631.0 / 55296.0 * k1 + 175.0 / 512.0 * k2 +
                     575.0 / 13824.0 * k3 + 44275.0 / 110592.0 * k4 +
                     253.0 / 4096.0 * k5),
        family, ref);
    const cplx z5 = z0 + step * (37.0 / 378.0 * k1 + 250.0 / 621.0 * k3 +
                                 125.0 / 594.0 * k4 + 512.0 / 1771.0 * k6);
    const cplx z4 = z0 + step * (2825.0 / 27648.0 * k1 + 18575.0 / 48384.0 * k3 +
                                 13525.0 / 55296.0 * k4 + 277.0 / 14336.0 * k5 +
                                 0.25 * k6);
    return {z5, std::abs(z5 - z4)};
  };

  while (traj.length < max_length - 1e-15) {
    h = std::min(h, max_length - traj.length);  // land exactly on max_length
    const auto [z_step, err] = cash_karp(z, dir, h);

    if (err > options.rk_tol * options.diameter && h > h_min) {
      h = std::max(h_min, h * std::clamp(0.9 * std::pow(options.rk_tol *
                                                            options.diameter / err,
                                                        0.2),
                                         0.2, 0.9));
      continue;
    }

    cplx z_new = z_step;
    cplx d_new = direction_field(qd, z_new, family, dir);
    // Branch-tracking guard: the field may not swing more than pi/2 per step.
    if ((std::conj(dir) * d_new).real() < 0.05) {
      if (h > 4.0 * h_min) {
        h *= 0.25;
        continue;
      }
      traj.termination = TraceEnd::kBranchFailure;
      return traj;
    }

    // Zero capture.
    for (const cplx zero : options.known_zeros) {
      if (std::abs(z_new - zero) < capture &&
          std::abs(start - zero) > 2.0 * capture) {
        traj.points.push_back(zero);
        traj.length += std::abs(z_new - z);
        traj.termination = TraceEnd::kZero;
        return traj;
      }
    }

    // Region exit: bisect the crossing point.
    if (!options.inside(z_new)) {
      cplx a = z, b = z_new;
      for (int it = 0; it < 60; ++it) {
        const cplx mid = 0.5 * (a + b);
        (options.inside(mid) ? a : b) = mid;
      }
      traj.points.push_back(b);
      traj.length += std::abs(b - z);
      traj.termination = TraceEnd::kBoundary;
      return traj;
    }

    // Loop closure: closest approach of the last segment to the start.
    if (traj.length > std::max(10.0 * options.closure_tol, 3.0 * h_max)) {
      const cplx seg = z_new - z;
      const double seg2 = std::norm(seg);
      if (seg2 > 0.0) {
        double s = ((std::conj(seg) * (start - z)).real()) / seg2;
        s = std::clamp(s, 0.0, 1.0);
        // Loose chord trigger (the chord sags below the trajectory by up to
        // h^2 kappa / 8), then a fine walk along the trajectory itself to the
        // closest approach.
        const double trigger = std::max(options.closure_tol, h * h);
        if (std::abs(z + s * seg - start) < trigger &&
            (std::conj(dir) * unit(start_direction)).real() > 0.0) {
          // Fine walk along the trajectory; between substeps the chord
          // closest-approach point is on the trajectory to O(hs^2) where the
          // substep sagitta is negligible.
          cplx zc = z, dc = dir;
          cplx zbest = z;
          double best = std::abs(z - start), walked = 0.0, len_best = 0.0;
          const double hs = std::min(h / 64.0, options.closure_tol);
          for (int sub = 0; sub < 4096; ++sub) {
            const cplx zprev = zc;
            const auto [znext, dnext] = rk4(zc, dc, hs);
            zc = znext;
            dc = direction_field(qd, zc, family, dc);
            walked += hs;
            const cplx sub_seg = zc - zprev;
            const double sub_seg2 = std::norm(sub_seg);
            double ss = sub_seg2 > 0.0
                            ? std::clamp((std::conj(sub_seg) * (start - zprev)).real() /
                                             sub_seg2,
                                         0.0, 1.0)
                            : 0.0;
            const cplx cand = zprev + ss * sub_seg;
            const double dist = std::abs(cand - start);
            if (dist < best) {
              best = dist;
              zbest = cand;
              len_best = walked - (1.0 - ss) * hs;
            } else if (dist > 2.0 * best + trigger && walked > 2.0 * h) {
              break;  // walked past the closest approach
            }
            if (walked > 4.0 * h) break;
          }
          if (best < options.closure_tol) {
            traj.points.push_back(zbest);
            traj.length += len_best;
            traj.closure_error = best;
            traj.termination = TraceEnd::kClosedLoop;
            return traj;
          }
        }
      }
    }

    traj.length += std::abs(z_new - z);
    z = z_new;
    dir = d_new;
    traj.points.push_back(z);
    h = std::min(h_max, err > 0.0
                             ? h * std::clamp(0.9 * std::pow(options.rk_tol *
                                                                 options.diameter /
                                                                 err,
                                                             0.2),
                                              1.0, 5.0)
                             : h * 5.0);

    if (h <= h_min * 2.0) {
      traj.termination = TraceEnd::kStepUnderflow;
      return traj;
    }
  }
  traj.termination = TraceEnd::kMaxLength;
  return traj;
}

// --- Stokes graph ----------------------------------------------------------

int StokesGraph::arcs_of(TrajectoryFamily family) const {
  int n = 0;
  for (const auto& a : arcs)
    if (a.family == family) ++n;
  return n;
}

std::vector<int> StokesGraph::incident(int zero_index,
                                       TrajectoryFamily family) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (arcs[i].family == family &&
        (arcs[i].from_zero == zero_index || arcs[i].to_zero == zero_index))
      out.push_back(static_cast<int>(i));
  return out;
}

namespace {

// Leading behavior of phi' at z0: order m and coefficient c with
// phi' ~ c (z-z0)^m, from Fourier analysis on a probe circle.
std::pair<int, cplx> leading_term(const QuadraticDifferential& qd, cplx z0,
                                  double radius) {
  constexpr int kNodes = 256;
  constexpr int kMaxOrder = 8;
  std::vector<cplx> modes(kMaxOrder + 1, cplx(0.0));
  for (int i = 0; i < kNodes; ++i) {
    const double th = kTwoPi * i / kNodes;
    const cplx f = qd(z0 + std::polar(radius, th));
    for (int m = 0; m <= kMaxOrder; ++m)
      modes[m] += f * std::polar(1.0, -m * th);
  }
  double best = 0.0;
  for (int m = 0; m <= kMaxOrder; ++m) {
    modes[m] /= kNodes * std::pow(radius, m);
    best = std::max(best, std::abs(modes[m]) * std::pow(radius, m));
  }
  for (int m = 0; m <= kMaxOrder; ++m)
    if (std::abs(modes[m]) * std::pow(radius, m) > 1e-6 * best)
      return {m, modes[m]};
  return {0, modes[0]};
}

}  // namespace

std::vector<double> launch_angles(const QuadraticDifferential& qd,
                                  const QdZero& zero, TrajectoryFamily family,
                                  double probe_radius) {
  const auto [m, c] = leading_term(qd, zero.location, probe_radius);
  std::vector<double> out;
  const int rays = m + 2;
  for (int k = 0; k < rays; ++k) {
    double alpha = (kTwoPi * k - std::arg(c)) / rays;
    if (family == TrajectoryFamily::kVertical) alpha += kPi / rays;
    out.push_back(alpha);
  }
  return out;
}

StokesGraph build_stokes_graph(const PlanarDomain& domain,
                               const QuadraticDifferential& qd) {
  return build_stokes_graph(domain, qd, {1e-3, trace_options_for(domain)});
}

StokesGraph build_stokes_graph(const PlanarDomain& domain,
                               const QuadraticDifferential& qd,
                               const StokesGraphOptions& options) {
  StokesGraph graph;
  const double diam = domain.diameter();

  // Bounding box of the domain, padded a little.
  const auto& outer = domain.outer();
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (int i = 0; i < outer.sample_count(); ++i) {
    const cplx p = outer.point(outer.sample_t(i));
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  const double pad = 1e-3 * diam;

  // Degenerate differential (phi' ~ 0, the extremal-disk case): no
  // structure to trace.
  double scale = 0.0;
  for (int i = 0; i < outer.sample_count(); i += 3)
    scale = std::max(scale, std::abs(qd(outer.point(outer.sample_t(i)))));
  if (scale < 1e-12) return graph;

  std::vector<QdZero> all = find_zeros(qd, {xmin - pad, ymin - pad},
                                       {xmax + pad, ymax + pad});
  for (auto& z : all) {
    double bd_dist = 1e300;
    for (int k = 0; k < domain.num_components(); ++k) {
      const auto& c = domain.component(k);
      for (int i = 0; i < c.sample_count(); ++i)
        bd_dist = std::min(bd_dist, std::abs(z.location - c.point(c.sample_t(i))));
    }
    z.near_boundary = bd_dist < 1e-6 * diam;
    if (domain.contains(z.location) || z.near_boundary) graph.zeros.push_back(z);
  }

  TraceOptions trace = options.trace;
  if (!trace.inside) trace = trace_options_for(domain);
  for (const auto& z : graph.zeros) trace.known_zeros.push_back(z.location);

  const double r0 = options.launch_radius * diam;
  struct Launch {
    int zero;
    TrajectoryFamily family;
    double angle;
  };
  std::vector<Launch> launches;
  for (std::size_t zi = 0; zi < graph.zeros.size(); ++zi) {
    if (graph.zeros[zi].near_boundary) continue;  // flagged, not traced
    for (auto family : {TrajectoryFamily::kHorizontal, TrajectoryFamily::kVertical})
      for (double a : launch_angles(qd, graph.zeros[zi], family, r0))
        launches.push_back({static_cast<int>(zi), family, a});
  }

  std::vector<StokesArc> raw(launches.size());
  parallel_for(launches.size(), [&](std::size_t i) {
    const auto& L = launches[i];
    const cplx z0 = graph.zeros[L.zero].location;
    const cplx dir = std::polar(1.0, L.angle);
    Trajectory t = trace_trajectory(qd, z0 + r0 * dir, L.family, dir, trace);
    StokesArc arc;
    arc.family = L.family;
    arc.launch_angle = L.angle;
    arc.from_zero = L.zero;
    arc.end = t.termination;
    arc.points.push_back(z0);
    arc.points.insert(arc.points.end(), t.points.begin(), t.points.end());
    if (t.termination == TraceEnd::kZero) {
      const cplx endpoint = t.points.back();
      for (std::size_t zi = 0; zi < graph.zeros.size(); ++zi)
        if (std::abs(graph.zeros[zi].location - endpoint) < 1e-9 * diam)
          arc.to_zero = static_cast<int>(zi);
    }
    raw[i] = std::move(arc);
  });

  // Deduplicate zero-to-zero arcs traced from both ends (same unordered
  // endpoint pair, matching arc-length midpoints).
  auto arc_midpoint = [](const std::vector<cplx>& pts) {
    double total = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i)
      total += std::abs(pts[i] - pts[i - 1]);
    double walked = 0.0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
      const double seg = std::abs(pts[i] - pts[i - 1]);
      if (walked + seg >= 0.5 * total && seg > 0.0) {
        const double s = (0.5 * total - walked) / seg;
        return pts[i - 1] + s * (pts[i] - pts[i - 1]);
      }
      walked += seg;
    }
    return pts.back();
  };
  for (auto& arc : raw) {
    bool dup = false;
    if (arc.to_zero >= 0) {
      for (const auto& kept : graph.arcs) {
        if (kept.family != arc.family || kept.to_zero < 0) continue;
        const bool same_pair =
            (kept.from_zero == arc.from_zero && kept.to_zero == arc.to_zero) ||
            (kept.from_zero == arc.to_zero && kept.to_zero == arc.from_zero);
        if (!same_pair) continue;
        if (std::abs(arc_midpoint(kept.points) - arc_midpoint(arc.points)) <
            5e-2 * diam) {
          dup = true;
          break;
        }
      }
    }
    if (!dup) graph.arcs.push_back(std::move(arc));
  }

  // Zero-free differential: trace one representative trajectory per boundary
  // component; for extremal certificates these close (Sigma+ foliation by
  // closed curves).
  if (graph.zeros.empty()) {
    TraceOptions loose = trace;
    loose.inside = [xmin, xmax, ymin, ymax, pad, diam](cplx z) {
      return z.real() >= xmin - 0.1 * diam && z.real() <= xmax + 0.1 * diam &&
             z.imag() >= ymin - 0.1 * diam && z.imag() <= ymax + 0.1 * diam;
    };
    for (int k = 0; k < domain.num_components(); ++k) {
      const auto& c = domain.component(k);
      const cplx z0 = c.point(0.0);
      const cplx dir = c.unit_tangent(0.0);
      graph.boundary_loops.push_back(trace_trajectory(
          qd, z0, TrajectoryFamily::kHorizontal, dir, loose));
    }
  }
  return graph;
}

// --- linear ODE --------------------------------------------------------

OdeSolution ode_solve(const QuadraticDifferential& qd, double lambda,
                      const std::vector<cplx>& path, cplx v0, cplx dv0,
                      double max_step) {
  if (path.size() < 2)
    throw std::invalid_argument("ode_solve: path needs at least two vertices");
  OdeSolution sol;
  cplx v = v0, w = dv0;
  sol.v.push_back(v);
  sol.dv.push_back(w);
  const double inv_l2 = 1.0 / (lambda * lambda);
  for (std::size_t seg = 0; seg + 1 < path.size(); ++seg) {
    const cplx a = path[seg], b = path[seg + 1];
    const double len = std::abs(b - a);
    if (len == 0.0) {
      sol.v.push_back(v);
      sol.dv.push_back(w);
      continue;
    }
    const cplx zdot = (b - a) / len;
    const int n = std::max(1, static_cast<int>(std::ceil(len / max_step)));
    const double h = len / n;
    auto rhs = [&](double s, cplx vv, cplx ww) -> std::pair<cplx, cplx> {
      const cplx z = a + zdot * s;
      return {ww * zdot, -qd(z) * inv_l2 * vv * zdot};
    };
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto [k1v, k1w] = rhs(s, v, w);
      const auto [k2v, k2w] = rhs(s + h / 2, v + h / 2 * k1v, w + h / 2 * k1w);
      const auto [k3v, k3w] = rhs(s + h / 2, v + h / 2 * k2v, w + h / 2 * k2w);
      const auto [k4v, k4w] = rhs(s + h, v + h * k3v, w + h * k3w);
      v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
      w += h / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
      s += h;
    }
    if (!std::isfinite(std::abs(v)) || !std::isfinite(std::abs(w)))
      throw std::runtime_error("ode_solve: step underflow near a singularity of phi'");
    sol.v.push_back(v);
    sol.dv.push_back(w);
  }
  return sol;
}

double wronskian_drift(const QuadraticDifferential& qd, double lambda,
                       const std::vector<cplx>& path, double max_step) {
  const OdeSolution s1 = ode_solve(qd, lambda, path, 1.0, 0.0, max_step);
  const OdeSolution s2 = ode_solve(qd, lambda, path, 0.0, 1.0, max_step);
  const cplx w0 = s1.v[0] * s2.dv[0] - s2.v[0] * s1.dv[0];
  double drift = 0.0;
  for (std::size_t i = 0; i < s1.v.size(); ++i) {
    const cplx w = s1.v[i] * s2.dv[i] - s2.v[i] * s1.dv[i];
    drift = std::max(drift, std::abs(w - w0) / std::abs(w0));
  }
  return drift;
}

// --- Liouville-Green -----------------------------------------------------

namespace {

struct RaySampling {
  std::vector<double> radii;       // ascending
  std::vector<cplx> points;
  std::vector<cplx> sqrt_phi;      // branch-tracked sqrt(phi')
  std::vector<cplx> quartic;       // branch-tracked (phi')^{1/4}
  std::vector<cplx> phase;         // int_0^r sqrt(phi') dz along the ray
  cplx dir;
};

// Branch-continuous sqrt along the ray, with the phase integral accumulated
// by Simpson on the substitution r = u^2 (smooth through the zero).
RaySampling sample_ray(const QuadraticDifferential& qd, cplx z0, cplx dir,
                       const std::vector<double>& radii, int quad_nodes) {
  RaySampling out;
  out.radii = radii;
  out.dir = dir;
  const double u_max = std::sqrt(radii.back());
  const int n = quad_nodes + (quad_nodes % 2);  // even for Simpson
  const double du = u_max / n;

  std::vector<cplx> sq(n + 1), integrand(n + 1);
  cplx prev = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double u = i * du;
    const double r = u * u;
    cplx s = std::sqrt(qd(z0 + r * dir));
    if (i > 0 && std::abs(s - prev) > std::abs(s + prev)) s = -s;
    prev = s;
    sq[i] = s;
    integrand[i] = s * 2.0 * u * dir;
  }
  // Cumulative Simpson over pairs of intervals.
  std::vector<cplx> cum(n + 1, cplx(0.0));
  for (int i = 2; i <= n; i += 2)
    cum[i] = cum[i - 2] +
             (integrand[i - 2] + 4.0 * integrand[i - 1] + integrand[i]) * (du / 3.0);
  for (int i = 1; i <= n; i += 2)
    cum[i] = cum[i - 1] + (integrand[i - 1] + integrand[i]) * (du / 2.0);

  cplx prev_q = 0.0;
  for (double r : radii) {
    const cplx z = z0 + r * dir;
    const double u = std::sqrt(r);
    const int i = std::min(n, static_cast<int>(std::round(u / du)));
    // Interpolated phase: cum at the nearest node plus a trapezoid
    // correction; the branch at the sample point follows the grid branch.
    const double u_node = i * du;
    cplx phase = cum[i];
    const cplx s_node = sq[i];
    cplx s_here = std::sqrt(qd(z));
    if (std::abs(s_here - s_node) > std::abs(s_here + s_node)) s_here = -s_here;
    phase += 0.5 * (s_node * 2.0 * u_node + s_here * 2.0 * u) * (u - u_node) * dir;
    cplx q = std::sqrt(s_here);
    if (prev_q != cplx(0.0) && std::abs(q - prev_q) > std::abs(q + prev_q)) q = -q;
    prev_q = q;
    out.points.push_back(z);
    out.sqrt_phi.push_back(s_here);
    out.quartic.push_back(q);
    out.phase.push_back(phase);
  }
  return out;
}

}  // namespace

LgReport lg_compare(const QuadraticDifferential& qd, double lambda, cplx zero,
                    cplx wedge_direction, const std::vector<double>& epsilons,
                    const LgOptions& options) {
  if (epsilons.empty()) throw std::invalid_argument("lg_compare: no epsilons");

  // Snap the wedge direction to the nearest Sigma+ ray of the local structure.
  QdZero z0{zero, 1, false};
  const auto angles =
      launch_angles(qd, z0, TrajectoryFamily::kHorizontal, 1e-3);
  const double want = std::arg(wedge_direction);
  double best_angle = angles[0];
  double best_dist = 1e300;
  for (double a : angles) {
    const double d = std::abs(std::remainder(want - a, kTwoPi));
    if (d < best_dist) {
      best_dist = d;
      best_angle = a;
    }
  }
  const cplx dir = std::polar(1.0, best_angle);

  std::vector<double> radii(options.sample_count);
  for (int i = 0; i < options.sample_count; ++i)
    radii[i] = options.inner_radius +
               (options.outer_radius - options.inner_radius) * i /
                   (options.sample_count - 1);
  const RaySampling ray =
      sample_ray(qd, zero, dir, radii, options.quad_nodes);

  // Along a Sigma+ ray the phase integral is real; a large imaginary part
  // means the sampling left the wedge.
  for (std::size_t i = 0; i < ray.phase.size(); ++i)
    if (std::abs(ray.phase[i].imag()) >
        1e-6 * std::max(1.0, std::abs(ray.phase[i])))
      throw std::runtime_error("lg_compare: sampling left the Stokes wedge");

  const int n = options.sample_count;
  const int anchor = n - 1;
  const double sqrt_l = std::sqrt(lambda);

  LgReport report;
  report.epsilons = epsilons;

  auto lg_value = [&](int i, double eps, cplx C1, cplx C2) {
    const cplx ph = ray.phase[i] / (lambda * eps);
    const cplx e_plus = std::exp(cplx(0.0, 1.0) * ph);
    const cplx e_minus = std::exp(cplx(0.0, -1.0) * ph);
    return sqrt_l / ray.quartic[i] * (C1 * e_plus + C2 * e_minus);
  };
  auto lg_derivative = [&](int i, double eps, cplx C1, cplx C2) {
    // d/dz of the LG ansatz: prefactor and phase terms.
    const cplx ph = ray.phase[i] / (lambda * eps);
    const cplx e_plus = std::exp(cplx(0.0, 1.0) * ph);
    const cplx e_minus = std::exp(cplx(0.0, -1.0) * ph);
    const cplx phip = qd(ray.points[i]);
    const cplx dphip = qd.derivative(ray.points[i]);
    const cplx pre = sqrt_l / ray.quartic[i];
    const cplx dpre = -0.25 * sqrt_l * dphip / (phip * ray.quartic[i]);
    const cplx dph = ray.sqrt_phi[i] / (lambda * eps);
    return dpre * (C1 * e_plus + C2 * e_minus) +
           pre * (C1 * e_plus * cplx(0.0, 1.0) * dph +
                  C2 * e_minus * cplx(0.0, -1.0) * dph);
  };

  double max_speed = 0.0;
  for (int i = 0; i < n; ++i)
    max_speed = std::max(max_speed, std::abs(ray.sqrt_phi[i]));

  auto run_eps = [&](double eps, cplx C1, cplx C2) {
    // Integrate inward from the anchor with LG initial data.
    std::vector<cplx> path(ray.points.rbegin(), ray.points.rend());
    const double h = options.phase_steps * lambda * eps / max_speed;
    const OdeSolution sol =
        ode_solve(qd, lambda * eps, path, lg_value(anchor, eps, C1, C2),
                  lg_derivative(anchor, eps, C1, C2), h);
    // sol.v[k] corresponds to sample n-1-k.
    std::vector<cplx> v(n);
    for (int k = 0; k < n; ++k) v[n - 1 - k] = sol.v[k];
    return v;
  };

  // Collocate (C1, C2) at the largest epsilon from two interior samples.
  const double eps0 = *std::max_element(epsilons.begin(), epsilons.end());
  {
    const auto v = run_eps(eps0, 1.0, 0.0);
    const int i1 = n / 3, i2 = 2 * n / 3;
    // [e+ e-][C1 C2]^T = v * quartic / sqrt(lambda) at the two points.
    const cplx p1 = ray.phase[i1] / (lambda * eps0);
    const cplx p2 = ray.phase[i2] / (lambda * eps0);
    const cplx a11 = std::exp(cplx(0.0, 1.0) * p1), a12 = std::exp(cplx(0.0, -1.0) * p1);
    const cplx a21 = std::exp(cplx(0.0, 1.0) * p2), a22 = std::exp(cplx(0.0, -1.0) * p2);
    const cplx b1 = v[i1] * ray.quartic[i1] / sqrt_l;
    const cplx b2 = v[i2] * ray.quartic[i2] / sqrt_l;
    const cplx det = a11 * a22 - a12 * a21;
    if (std::abs(det) > 1e-8) {
      report.C1 = (b1 * a22 - b2 * a12) / det;
      report.C2 = (a11 * b2 - a21 * b1) / det;
    }
  }

  for (double eps : epsilons) {
    const auto v = run_eps(eps, report.C1, report.C2);
    double err = 0.0;
    for (int i = 0; i < n; ++i)
      err = std::max(err, std::abs(v[i] - lg_value(i, eps, report.C1, report.C2)));
    report.errors.push_back(err);
    report.ratios.push_back(err / eps);
  }
  const auto [lo, hi] =
      std::minmax_element(report.ratios.begin(), report.ratios.end());
  report.ratio_variation = *lo > 0.0 ? *hi / *lo : 0.0;
  return report;
}

}  // namespace extremal
