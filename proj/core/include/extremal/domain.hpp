#pragma once

#include <utility>
#include <vector>

#include "extremal/curve.hpp"
#include "extremal/types.hpp"

namespace extremal {

// Finitely-connected planar domain: one counterclockwise outer boundary and
// n-1 clockwise inner boundaries, with one marked anchor point strictly
// inside each hole. Immutable after construction.
class PlanarDomain {
 public:
  // hole_points must have one entry per inner curve; if empty, the hole
  // centroids are used.
  PlanarDomain(AnalyticCurve outer, std::vector<AnalyticCurve> inners,
               std::vector<cplx> hole_points = {});

  const AnalyticCurve& outer() const { return outer_; }
  const std::vector<AnalyticCurve>& inners() const { return inners_; }
  const std::vector<cplx>& hole_points() const { return hole_points_; }

  // Number of boundary components, n >= 1.
  int connectivity() const { return 1 + static_cast<int>(inners_.size()); }
  int num_components() const { return connectivity(); }
  // Component 0 is the outer curve, components 1..n-1 the inners.
  const AnalyticCurve& component(int k) const {
    return k == 0 ? outer_ : inners_[k - 1];
  }

  double area() const { return area_; }
  double perimeter() const { return perimeter_; }
  std::pair<double, double> area_perimeter() const { return {area_, perimeter_}; }

  cplx centroid() const { return centroid_; }
  double diameter() const { return outer_.diameter(); }

  bool contains(cplx z) const;

  // oint kappa ds per component (outer first). Expected: -2pi on the outer
  // curve, +2pi on each inner curve.
  std::vector<double> winding_check(double tol = 1e-8) const;

  // Deterministic grid of approximately `target` interior points.
  std::vector<cplx> interior_grid(int target) const;

 private:
  AnalyticCurve outer_;
  std::vector<AnalyticCurve> inners_;
  std::vector<cplx> hole_points_;
  double area_ = 0.0;
  double perimeter_ = 0.0;
  cplx centroid_;

  void validate() const;
};

PlanarDomain make_disk(double radius, cplx center = 0.0);
PlanarDomain make_annulus(double outer_radius, double inner_radius,
                          cplx center = 0.0);
PlanarDomain make_ellipse_domain(double a, double b);

}  // namespace extremal
