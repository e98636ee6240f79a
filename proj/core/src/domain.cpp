#include "extremal/domain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace extremal {

PlanarDomain::PlanarDomain(AnalyticCurve outer, std::vector<AnalyticCurve> inners,
                           std::vector<cplx> hole_points)
    : outer_(std::move(outer)),
      inners_(std::move(inners)),
      hole_points_(std::move(hole_points)) {
  if (outer_.orientation() != Orientation::kOuter)
    throw std::invalid_argument("PlanarDomain: outer curve must be counterclockwise");
  for (const auto& c : inners_)
    if (c.orientation() != Orientation::kInner)
      throw std::invalid_argument("PlanarDomain: inner curves must be clockwise");

  if (hole_points_.empty())
    for (const auto& c : inners_) hole_points_.push_back(c.region_centroid());
  if (hole_points_.size() != inners_.size())
    throw std::invalid_argument("PlanarDomain: need one hole point per inner curve");

  // Signed areas: outer ccw is positive, inner cw negative, so the sum is the
  // domain area.
  area_ = outer_.signed_area();
  perimeter_ = outer_.length();
  cplx first_moment = outer_.region_centroid() * outer_.signed_area();
  for (const auto& c : inners_) {
    area_ += c.signed_area();
    perimeter_ += c.length();
    first_moment += c.region_centroid() * c.signed_area();
  }
  if (!(area_ > 0.0))
    throw std::invalid_argument("PlanarDomain: nonpositive area (orientation misconfiguration?)");
  centroid_ = first_moment / area_;

  validate();
}

void PlanarDomain::validate() const {
  // Inner curves inside the outer one, pairwise disjoint, each hole point in
  // its hole and outside the domain.
  for (std::size_t k = 0; k < inners_.size(); ++k) {
    const auto& c = inners_[k];
    for (int i = 0; i < c.sample_count(); i += 7)
      if (!outer_.encloses(c.point(c.sample_t(i))))
        throw std::invalid_argument("PlanarDomain: inner curve escapes the outer curve");
    for (std::size_t m = k + 1; m < inners_.size(); ++m) {
      const auto& d = inners_[m];
      // Disjointness: no sample of one inside the other and a positive gap.
      for (int i = 0; i < d.sample_count(); i += 7)
        if (c.encloses(d.point(d.sample_t(i))))
          throw std::invalid_argument("PlanarDomain: inner curves overlap");
      for (int i = 0; i < c.sample_count(); i += 7)
        if (d.encloses(c.point(c.sample_t(i))))
          throw std::invalid_argument("PlanarDomain: inner curves overlap");
    }
  }
  for (std::size_t k = 0; k < hole_points_.size(); ++k) {
    if (!inners_[k].encloses(hole_points_[k]))
      throw std::invalid_argument("PlanarDomain: hole point " + std::to_string(k) +
                                  " is not inside its hole");
    if (contains(hole_points_[k]))
      throw std::invalid_argument("PlanarDomain: hole point lies in the domain");
  }
}

bool PlanarDomain::contains(cplx z) const {
  if (!outer_.encloses(z)) return false;
  for (const auto& c : inners_)
    if (c.encloses(z)) return false;
  return true;
}

std::vector<double> PlanarDomain::winding_check(double tol) const {
  std::vector<double> out;
  for (int k = 0; k < num_components(); ++k) {
    const auto& c = component(k);
    double acc = 0.0;
    for (int i = 0; i < c.sample_count(); ++i) {
      const double t = c.sample_t(i);
      acc += c.curvature(t) * std::abs(c.derivative(t, 1));
    }
    acc *= kTwoPi / c.sample_count();
    out.push_back(acc);
    const double expected = k == 0 ? -kTwoPi : kTwoPi;
    if (std::abs(acc - expected) > tol)
      throw std::invalid_argument(
          "winding_check: component " + std::to_string(k) + " gives " +
          std::to_string(acc) + ", expected " + std::to_string(expected));
  }
  return out;
}

std::vector<cplx> PlanarDomain::interior_grid(int target) const {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  const auto& c = outer_;
  for (int i = 0; i < c.sample_count(); ++i) {
    const cplx p = c.point(c.sample_t(i));
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  const double box_area = (xmax - xmin) * (ymax - ymin);
  double h = std::sqrt(box_area / std::max(1, target));
  std::vector<cplx> pts;
  for (int attempt = 0; attempt < 8; ++attempt) {
    pts.clear();
    for (double y = ymin + h / 2; y < ymax; y += h)
      for (double x = xmin + h / 2; x < xmax; x += h)
        if (contains({x, y})) pts.emplace_back(x, y);
    if (static_cast<int>(pts.size()) >= target || pts.size() > 100000) break;
    h *= 0.8;
  }
  return pts;
}

PlanarDomain make_disk(double radius, cplx center) {
  return PlanarDomain(make_circle(center, radius, Orientation::kOuter), {});
}

PlanarDomain make_annulus(double outer_radius, double inner_radius, cplx center) {
  if (!(outer_radius > inner_radius && inner_radius > 0.0))
    throw std::invalid_argument("make_annulus: need R1 > R2 > 0");
  return PlanarDomain(make_circle(center, outer_radius, Orientation::kOuter),
                      {make_circle(center, inner_radius, Orientation::kInner)},
                      {center});
}

PlanarDomain make_ellipse_domain(double a, double b) {
  return PlanarDomain(make_ellipse(a, b), {});
}

}  // namespace extremal
