#pragma once

#include <vector>

#include "extremal/types.hpp"

namespace extremal {

// Traversal sense of a boundary component. Outer components run
// counterclockwise, inner (hole) components clockwise, so the domain always
// lies to the left of the tangent.
enum class Orientation { kOuter, kInner };

// Closed analytic boundary component stored as a truncated complex Fourier
// series
//
//   z(t) = sum_{j=j_min}^{j_max} a_j e^{i j t},   t in [0, 2pi).
//
// The curve must be immersed (z'(t) != 0), simple, and wind the way its
// orientation declares. Instances are immutable after construction; all
// methods are const and safe to call concurrently.
class AnalyticCurve {
 public:
  AnalyticCurve(std::vector<cplx> coefficients, int j_min,
                Orientation orientation, int sample_count = 0);

  cplx point(double t) const;
  // d^order z / dt^order.
  cplx derivative(double t, int order = 1) const;

  Orientation orientation() const { return orientation_; }
  int j_min() const { return j_min_; }
  int j_max() const { return j_min_ + static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<cplx>& coefficients() const { return coeffs_; }

  // Size M of the cached equispaced evaluation grid, t_i = 2 pi i / M.
  int sample_count() const { return samples_; }
  double sample_t(int i) const { return kTwoPi * i / samples_; }

  cplx unit_tangent(double t) const;
  cplx dzbar_ds(double t) const;

  // Signed curvature kappa = -i (d^2 zbar/ds^2) / (d zbar/ds).
  //
  // Sign convention: kappa = -1 on a counterclockwise unit circle and
  // kappa = +1/R on a clockwise circle of radius R. This is the NEGATIVE of
  // the usual differential-geometry curvature on counterclockwise curves;
  // with it, 1 + lambda*kappa vanishes identically on an extremal disk.
  double curvature(double t) const;

  // Monotone map t -> s(t) with spectral accuracy (Fourier integration of
  // |z'|), plus the total length.
  struct ArcLengthTable {
    double total = 0.0;
    double mean_speed = 0.0;               // |z'| Fourier mode 0
    std::vector<cplx> speed_modes;         // modes 1..K of |z'(t)|
    std::vector<double> t, s;              // tabulated at the sample grid
    double at(double t) const;             // s(t)
  };
  ArcLengthTable arc_length_table(int grid = 0) const;
  double length() const { return length_; }

  double min_speed() const { return min_speed_; }
  double diameter() const { return diameter_; }

  // Winding number of z'(t) over one period: +1 counterclockwise, -1
  // clockwise.
  int tangent_winding() const;

  // Throws std::invalid_argument on a non-immersed, self-intersecting, or
  // wrongly wound curve. Called by the constructor.
  void validate() const;

  // Centroid of the enclosed region (independent of orientation).
  cplx region_centroid() const;
  // Signed area enclosed by the curve: (1/2i) oint zbar dz. Positive for
  // counterclockwise traversal.
  double signed_area() const;

  // True if the point lies inside the Jordan region bounded by the curve
  // (crossing-number test on the sampled polygon).
  bool encloses(cplx p) const;

  // New curve traversed in the opposite sense (t -> -t) with the given
  // orientation tag.
  AnalyticCurve reversed(Orientation new_orientation) const;
  // Same curve with the parameter shifted: z_new(t) = z(t + shift).
  AnalyticCurve reparametrized(double shift) const;
  // Same curve zero-padded to a larger bandwidth.
  AnalyticCurve padded(int new_j_max) const;

 private:
  std::vector<cplx> coeffs_;
  int j_min_;
  Orientation orientation_;
  int samples_;
  double length_ = 0.0;
  double min_speed_ = 0.0;
  double diameter_ = 0.0;
  std::vector<cplx> grid_points_;  // cached z(t_i)

  void build_cache();
};

AnalyticCurve make_circle(cplx center, double radius, Orientation orientation);
// Ellipse x^2/a^2 + y^2/b^2 = 1, counterclockwise; a > b > 0.
AnalyticCurve make_ellipse(double a, double b);

}  // namespace extremal
