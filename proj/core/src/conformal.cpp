#include "extremal/conformal.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace extremal {

cplx AnnulusMap::G(cplx z) const {
  cplx acc = 0.0;
  const cplx w = (z - center_) / scale_;
  const cplx q = hole_scale_ / (z - anchor_);
  cplx wp = 1.0, qp = 1.0;
  for (int j = 0; j < degree_; ++j) {
    wp *= w;
    qp *= q;
    acc += g_coeffs_[j] * wp + g_coeffs_[degree_ + j] * qp;
  }
  return acc;
}

cplx AnnulusMap::G_prime(cplx z) const {
  cplx acc = 0.0;
  const cplx w = (z - center_) / scale_;
  const cplx q = z - anchor_;
  for (int j = 1; j <= degree_; ++j) {
    acc += g_coeffs_[j - 1] * static_cast<double>(j) / scale_ *
           std::pow(w, j - 1);
    acc += g_coeffs_[degree_ + j - 1] * (-static_cast<double>(j)) *
           std::pow(hole_scale_, j) / std::pow(q, j + 1);
  }
  return acc;
}

cplx AnnulusMap::h(cplx z) const { return (z - anchor_) * std::exp(G(z)); }

cplx AnnulusMap::h_prime(cplx z) const {
  return std::exp(G(z)) * (1.0 + (z - anchor_) * G_prime(z));
}

cplx AnnulusMap::invert(cplx w, cplx seed) const {
  cplx z = seed;
  for (int it = 0; it < 80; ++it) {
    const cplx step = (h(z) - w) / h_prime(z);
    z -= step;
    if (std::abs(step) < 1e-13 * (1.0 + std::abs(z))) return z;
  }
  throw std::runtime_error("AnnulusMap::invert: Newton iteration did not converge");
}

AnnulusMap map_to_annulus(const PlanarDomain& domain, int degree) {
  if (domain.connectivity() != 2)
    throw std::invalid_argument("map_to_annulus: domain must be doubly connected");

  AnnulusMap map;
  map.degree_ = degree;
  map.anchor_ = domain.hole_points()[0];
  map.center_ = domain.centroid();
  const auto& outer = domain.outer();
  const auto& inner = domain.inners()[0];
  double rho = 0.0;
  for (int i = 0; i < outer.sample_count(); ++i)
    rho = std::max(rho, std::abs(outer.point(outer.sample_t(i)) - map.center_));
  map.scale_ = rho;
  double hole_scale = std::numeric_limits<double>::max();
  for (int i = 0; i < inner.sample_count(); ++i)
    hole_scale = std::min(hole_scale,
                          std::abs(inner.point(inner.sample_t(i)) - map.anchor_));
  map.hole_scale_ = hole_scale;

  // Unknowns: 2*degree real coefficients for Re W_j, Im W_j of the positive
  // powers, 2*degree for the negative powers, then t1 = log R1, t2 = log R2.
  // Rows: log|z - a| + Re G(z) - t_k = 0 on component k.
  const int B = 4 * degree + 2;
  const int M = std::max(8 * (4 * degree) / 2, 256);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * M, B);
  Eigen::VectorXd rhs(2 * M);
  for (int comp = 0; comp < 2; ++comp) {
    const auto& c = domain.component(comp);
    for (int i = 0; i < M; ++i) {
      const int row = comp * M + i;
      const cplx z = c.point(kTwoPi * i / M);
      const cplx w = (z - map.center_) / map.scale_;
      const cplx q = map.hole_scale_ / (z - map.anchor_);
      cplx wp = 1.0, qp = 1.0;
      for (int j = 0; j < degree; ++j) {
        wp *= w;
        qp *= q;
        A(row, 2 * j) = wp.real();
        A(row, 2 * j + 1) = wp.imag();
        A(row, 2 * degree + 2 * j) = qp.real();
        A(row, 2 * degree + 2 * j + 1) = qp.imag();
      }
      A(row, B - 2 + comp) = -1.0;
      rhs(row) = -std::log(std::abs(z - map.anchor_));
    }
  }

  Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const double cond = svd.singularValues()(0) /
                      svd.singularValues()(svd.singularValues().size() - 1);
  if (!(cond < 1e12))
    throw std::runtime_error(
        "map_to_annulus: harmonic system is numerically singular (degenerate modulus?)");
  const Eigen::VectorXd x = svd.solve(rhs);

  // Analytic completion: Re W has completion W, Im W has completion -iW.
  map.g_coeffs_.resize(2 * degree);
  for (int j = 0; j < degree; ++j) {
    map.g_coeffs_[j] = cplx(x(2 * j), -x(2 * j + 1));
    map.g_coeffs_[degree + j] =
        cplx(x(2 * degree + 2 * j), -x(2 * degree + 2 * j + 1));
  }
  map.r1_ = std::exp(x(B - 2));
  map.r2_ = std::exp(x(B - 1));
  if (!(map.r1_ > map.r2_))
    throw std::runtime_error("map_to_annulus: fitted radii are not ordered");

  map.boundary_deviation_ = 0.0;
  double min_hprime = std::numeric_limits<double>::max();
  for (int comp = 0; comp < 2; ++comp) {
    const auto& c = domain.component(comp);
    const double target = comp == 0 ? map.r1_ : map.r2_;
    for (int i = 0; i < c.sample_count(); ++i) {
      const cplx z = c.point(c.sample_t(i));
      map.boundary_deviation_ = std::max(
          map.boundary_deviation_, std::abs(std::abs(map.h(z)) - target));
      min_hprime = std::min(min_hprime, std::abs(map.h_prime(z)));
    }
  }
  for (const cplx z : domain.interior_grid(200))
    min_hprime = std::min(min_hprime, std::abs(map.h_prime(z)));
  if (!(min_hprime > 1e-10))
    throw std::runtime_error("map_to_annulus: h' vanishes on the closure");
  return map;
}

LemmaL1Report lemma_l1_check(const PlanarDomain& domain,
                             const ApproximationResult& result,
                             const AnnulusMap& map) {
  LemmaL1Report report;
  const auto grid = domain.interior_grid(500);
  cplx num = 0.0;
  double den = 0.0;
  std::vector<cplx> phis, qs;
  for (const cplx z : grid) {
    const cplx q = map.log_h_prime(z) * map.log_h_prime(z);
    const cplx p = result.phi_prime(z);
    phis.push_back(p);
    qs.push_back(q);
    num += p * std::conj(q);
    den += std::norm(q);
  }
  report.C_fit = num / den;
  double dev = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < phis.size(); ++i) {
    dev = std::max(dev, std::abs(phis[i] - report.C_fit * qs[i]));
    scale = std::max(scale, std::abs(report.C_fit * qs[i]));
  }
  report.relative_deviation = scale > 0.0 ? dev / scale : dev;
  return report;
}

namespace {

cplx cross_ratio(cplx a, cplx b, cplx c, cplx d) {
  return (a - c) * (b - d) / ((a - d) * (b - c));
}

}  // namespace

MobiusReport mobius_check(const PlanarDomain& domain, const AnnulusMap& map) {
  if (domain.connectivity() != 2)
    throw std::invalid_argument("mobius_check: domain must be doubly connected");
  MobiusReport report;
  const auto& inner = domain.inners()[0];
  const auto& outer = domain.outer();

  // Outer boundary image table for Newton seeding.
  std::vector<cplx> outer_pts, outer_images;
  for (int i = 0; i < outer.sample_count(); ++i) {
    outer_pts.push_back(outer.point(outer.sample_t(i)));
    outer_images.push_back(map.h(outer_pts.back()));
  }

  constexpr int kSamples = 64;
  std::vector<cplx> z2(kSamples), mu(kSamples);
  std::vector<bool> ok(kSamples, false);
  for (int i = 0; i < kSamples; ++i) {
    z2[i] = inner.point(kTwoPi * i / kSamples);
    const cplx target = (map.R1() / map.R2()) * map.h(z2[i]);
    std::size_t seed_idx = 0;
    double best = std::numeric_limits<double>::max();
    for (std::size_t k = 0; k < outer_images.size(); ++k) {
      const double d = std::abs(outer_images[k] - target);
      if (d < best) {
        best = d;
        seed_idx = k;
      }
    }
    try {
      mu[i] = map.invert(target, outer_pts[seed_idx]);
      ok[i] = true;
    } catch (const std::runtime_error&) {
      ++report.failed_inversions;
    }
  }

  const int q = kSamples / 4;
  for (int i = 0; i < kSamples; i += 3) {
    const int idx[4] = {i, (i + q) % kSamples, (i + 2 * q) % kSamples,
                        (i + 3 * q) % kSamples};
    if (!(ok[idx[0]] && ok[idx[1]] && ok[idx[2]] && ok[idx[3]])) continue;
    const cplx cr_mu = cross_ratio(mu[idx[0]], mu[idx[1]], mu[idx[2]], mu[idx[3]]);
    const cplx cr_z = cross_ratio(z2[idx[0]], z2[idx[1]], z2[idx[2]], z2[idx[3]]);
    report.defect = std::max(report.defect, std::abs(cr_mu - cr_z));
    ++report.samples;
  }
  return report;
}

InverseFormFit fit_inverse_form(const PlanarDomain& domain, const AnnulusMap& map) {
  return fit_inverse_form(domain, [&map](cplx z) { return map.h(z); });
}

InverseFormFit fit_inverse_form(const PlanarDomain& domain,
                                const std::function<cplx(cplx)>& boundary_map) {
  // Pairs (w_i, z_i) on both boundary components.
  std::vector<cplx> ws, zs;
  for (int comp = 0; comp < domain.num_components(); ++comp) {
    const auto& c = domain.component(comp);
    for (int i = 0; i < c.sample_count(); i += 4) {
      const cplx z = c.point(c.sample_t(i));
      ws.push_back(boundary_map(z));
      zs.push_back(z);
    }
  }
  const int m = static_cast<int>(ws.size());
  auto fit = [&](bool inverse) {
    Eigen::MatrixXcd A(m, 2);
    Eigen::VectorXcd b(m);
    for (int i = 0; i < m; ++i) {
      A(i, 0) = inverse ? 1.0 / ws[i] : ws[i];
      A(i, 1) = 1.0;
      b(i) = zs[i];
    }
    const Eigen::Vector2cd coef = A.colPivHouseholderQr().solve(b);
    return (A * coef - b).cwiseAbs().maxCoeff();
  };
  InverseFormFit out;
  out.linear_residual = fit(false);
  out.inverse_residual = fit(true);
  out.best_residual = std::min(out.linear_residual, out.inverse_residual);
  return out;
}

double mu_invariance_residual(const PlanarDomain& domain, const AnnulusMap& map,
                              const std::function<cplx(cplx)>& phi_prime) {
  const auto& inner = domain.inners()[0];
  const auto& outer = domain.outer();
  std::vector<cplx> outer_pts, outer_images;
  for (int i = 0; i < outer.sample_count(); ++i) {
    outer_pts.push_back(outer.point(outer.sample_t(i)));
    outer_images.push_back(map.h(outer_pts.back()));
  }
  double residual = 0.0;
  constexpr int kSamples = 48;
  for (int i = 0; i < kSamples; ++i) {
    const cplx z2 = inner.point(kTwoPi * i / kSamples);
    const cplx target = (map.R1() / map.R2()) * map.h(z2);
    std::size_t seed_idx = 0;
    double best = std::numeric_limits<double>::max();
    for (std::size_t k = 0; k < outer_images.size(); ++k) {
      const double d = std::abs(outer_images[k] - target);
      if (d < best) {
        best = d;
        seed_idx = k;
      }
    }
    const cplx z1 = map.invert(target, outer_pts[seed_idx]);
    // mu'(z2) = (R1/R2) h'(z2) / h'(z1).
    const cplx mu_prime = (map.R1() / map.R2()) * map.h_prime(z2) / map.h_prime(z1);
    residual = std::max(residual, std::abs(phi_prime(z2) -
                                           phi_prime(z1) * mu_prime * mu_prime));
  }
  return residual;
}

AnalyticCurve transform_curve(const AnalyticCurve& curve,
                              const std::function<cplx(cplx)>& map,
                              int j_max_out, Orientation role) {
  const int M = std::max(16 * j_max_out, 512);
  std::vector<cplx> images(M);
  for (int i = 0; i < M; ++i) images[i] = map(curve.point(kTwoPi * i / M));
  std::vector<cplx> coeffs(2 * j_max_out + 1, cplx(0.0));
  for (int j = -j_max_out; j <= j_max_out; ++j) {
    cplx acc = 0.0;
    for (int i = 0; i < M; ++i)
      acc += images[i] * std::polar(1.0, -j * kTwoPi * i / M);
    coeffs[j + j_max_out] = acc / static_cast<double>(M);
  }
  // Decide the traversal sense before constructing (the constructor checks
  // it): winding of z' over one period from the raw coefficients.
  double acc_arg = 0.0;
  cplx prev = 0.0;
  for (int i = 0; i <= M; ++i) {
    const double t = kTwoPi * (i % M) / M;
    cplx dz = 0.0;
    for (int j = -j_max_out; j <= j_max_out; ++j)
      dz += coeffs[j + j_max_out] * cplx(0.0, j) * std::polar(1.0, j * t);
    if (i > 0) acc_arg += std::arg(dz / prev);
    prev = dz;
  }
  const int wind = static_cast<int>(std::lround(acc_arg / kTwoPi));
  const int expected = role == Orientation::kOuter ? 1 : -1;
  if (wind != expected)  // the map reversed the traversal; flip the parameter
    std::reverse(coeffs.begin(), coeffs.end());
  return AnalyticCurve(coeffs, -j_max_out, role);
}

PlanarDomain mobius_image(const PlanarDomain& domain, cplx a, cplx b, cplx c,
                          cplx d, int j_max_out) {
  if (domain.connectivity() != 2)
    throw std::invalid_argument("mobius_image: only doubly-connected domains supported");
  auto f = [a, b, c, d](cplx z) { return (a * z + b) / (c * z + d); };
  // Map both curves, then decide which image encloses the other.
  AnalyticCurve img_outer = transform_curve(domain.outer(), f, j_max_out,
                                            Orientation::kOuter);
  AnalyticCurve img_inner = transform_curve(domain.inners()[0], f, j_max_out,
                                            Orientation::kOuter);
  const bool outer_first = img_outer.encloses(img_inner.point(0.0));
  AnalyticCurve new_outer = outer_first ? img_outer : img_inner;
  AnalyticCurve new_inner_ccw = outer_first ? img_inner : img_outer;
  AnalyticCurve new_inner = new_inner_ccw.reversed(Orientation::kInner);
  const cplx hole = new_inner.region_centroid();
  return PlanarDomain(std::move(new_outer), {std::move(new_inner)}, {hole});
}

}  // namespace extremal
