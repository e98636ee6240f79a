#include "extremal/curve.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace extremal {

namespace {

// Smallest |z'| we accept before declaring the curve non-immersed, relative
// to its mean speed.
constexpr double kImmersionTol = 1e-8;

bool segments_intersect(cplx a, cplx b, cplx c, cplx d, double eps) {
  auto cross = [](cplx u, cplx v) {
    return u.real() * v.imag() - u.imag() * v.real();
  };
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  if (((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps)) &&
      ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps)))
    return true;
  return false;
}

}  // namespace

AnalyticCurve::AnalyticCurve(std::vector<cplx> coefficients, int j_min,
                             Orientation orientation, int sample_count)
    : coeffs_(std::move(coefficients)),
      j_min_(j_min),
      orientation_(orientation),
      samples_(sample_count) {
  if (coeffs_.empty())
    throw std::invalid_argument("AnalyticCurve: empty coefficient list");
  const int band = std::max(std::abs(j_min_), std::abs(j_max()));
  if (samples_ <= 0) samples_ = std::max(256, 16 * std::max(1, band));
  if (samples_ < 8 * std::max(1, band))
    throw std::invalid_argument("AnalyticCurve: sample grid under-resolves bandwidth");
  build_cache();
  validate();
}

cplx AnalyticCurve::point(double t) const {
  cplx out = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const double j = static_cast<double>(j_min_ + static_cast<int>(k));
    out += coeffs_[k] * std::polar(1.0, j * t);
  }
  return out;
}

cplx AnalyticCurve::derivative(double t, int order) const {
  cplx out = 0.0;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const double j = static_cast<double>(j_min_ + static_cast<int>(k));
    cplx factor = 1.0;
    for (int m = 0; m < order; ++m) factor *= cplx(0.0, j);
    out += coeffs_[k] * factor * std::polar(1.0, j * t);
  }
  return out;
}

cplx AnalyticCurve::unit_tangent(double t) const {
  const cplx dz = derivative(t, 1);
  return dz / std::abs(dz);
}

cplx AnalyticCurve::dzbar_ds(double t) const {
  const cplx dz = derivative(t, 1);
  return std::conj(dz) / std::abs(dz);
}

double AnalyticCurve::curvature(double t) const {
  const cplx dz = derivative(t, 1);
  const cplx ddz = derivative(t, 2);
  const double speed = std::abs(dz);
  // d zbar/ds and d^2 zbar/ds^2 by the chain rule from t to arc length.
  const cplx zbar_s = std::conj(dz) / speed;
  const double dspeed = (std::conj(dz) * ddz).real() / speed;
  const cplx zbar_ss = (std::conj(ddz) - std::conj(dz) * dspeed / speed) / (speed * speed);
  const cplx kappa = cplx(0.0, -1.0) * zbar_ss / zbar_s;
  if (std::abs(kappa.imag()) > 1e-8 * std::max(1.0, std::abs(kappa.real())))
    throw std::runtime_error("curvature: formula produced a non-real value");
  return kappa.real();
}

void AnalyticCurve::build_cache() {
  grid_points_.resize(samples_);
  min_speed_ = std::numeric_limits<double>::max();
  double total = 0.0;
  for (int i = 0; i < samples_; ++i) {
    const double t = sample_t(i);
    grid_points_[i] = point(t);
    const double sp = std::abs(derivative(t, 1));
    min_speed_ = std::min(min_speed_, sp);
    total += sp;
  }
  length_ = total * kTwoPi / samples_;
  diameter_ = 0.0;
  // Diameter from the bounding box; cheap and adequate for tolerances.
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const cplx& p : grid_points_) {
    xmin = std::min(xmin, p.real());
    xmax = std::max(xmax, p.real());
    ymin = std::min(ymin, p.imag());
    ymax = std::max(ymax, p.imag());
  }
  diameter_ = std::hypot(xmax - xmin, ymax - ymin);
}

int AnalyticCurve::tangent_winding() const {
  double acc = 0.0;
  cplx prev = derivative(0.0, 1);
  for (int i = 1; i <= samples_; ++i) {
    const cplx cur = derivative(sample_t(i % samples_), 1);
    acc += std::arg(cur / prev);
    prev = cur;
  }
  return static_cast<int>(std::lround(acc / kTwoPi));
}

void AnalyticCurve::validate() const {
  const double mean_speed = length_ / kTwoPi;
  if (min_speed_ < kImmersionTol * mean_speed)
    throw std::invalid_argument("AnalyticCurve: |z'| vanishes, curve is not immersed");

  const int wind = tangent_winding();
  const int expected = orientation_ == Orientation::kOuter ? 1 : -1;
  if (wind != expected)
    throw std::invalid_argument(
        "AnalyticCurve: tangent winding " + std::to_string(wind) +
        " does not match declared orientation (expected " +
        std::to_string(expected) + ")");

  // Simplicity: no intersections among the M-gon edges (skipping neighbors).
  const double eps = 1e-9 * diameter_;
  const int M = samples_;
  for (int i = 0; i < M; ++i) {
    const cplx a = grid_points_[i];
    const cplx b = grid_points_[(i + 1) % M];
    const double ilo = std::min(a.real(), b.real()), ihi = std::max(a.real(), b.real());
    for (int k = i + 2; k < M; ++k) {
      if (i == 0 && k == M - 1) continue;  // wrap-around neighbors
      const cplx c = grid_points_[k];
      const cplx d = grid_points_[(k + 1) % M];
      if (std::max(c.real(), d.real()) < ilo - eps) continue;
      if (std::min(c.real(), d.real()) > ihi + eps) continue;
      if (segments_intersect(a, b, c, d, eps))
        throw std::invalid_argument("AnalyticCurve: curve self-intersects");
    }
  }
}

double AnalyticCurve::ArcLengthTable::at(double tt) const {
  double acc = mean_speed * tt;
  for (std::size_t k = 0; k < speed_modes.size(); ++k) {
    const double m = static_cast<double>(k + 1);
    const cplx e = std::polar(1.0, m * tt) - 1.0;
    acc += 2.0 * (speed_modes[k] * e / cplx(0.0, m)).real();
  }
  return acc;
}

AnalyticCurve::ArcLengthTable AnalyticCurve::arc_length_table(int grid) const {
  const int M = grid > 0 ? grid : samples_;
  const int band = std::max(std::abs(j_min_), std::abs(j_max()));
  if (M < 8 * std::max(1, band))
    throw std::invalid_argument("arc_length_table: grid under-resolves bandwidth");
  ArcLengthTable table;
  std::vector<double> speed(M);
  for (int i = 0; i < M; ++i) speed[i] = std::abs(derivative(kTwoPi * i / M, 1));
  // DFT of the (real, periodic, analytic) speed; keep modes up to M/2 - 1.
  const int K = M / 2 - 1;
  table.mean_speed = 0.0;
  for (int i = 0; i < M; ++i) table.mean_speed += speed[i];
  table.mean_speed /= M;
  table.speed_modes.resize(K);
  for (int m = 1; m <= K; ++m) {
    cplx acc = 0.0;
    for (int i = 0; i < M; ++i)
      acc += speed[i] * std::polar(1.0, -m * kTwoPi * i / M);
    table.speed_modes[m - 1] = acc / static_cast<double>(M);
  }
  table.total = table.mean_speed * kTwoPi;
  table.t.resize(M + 1);
  table.s.resize(M + 1);
  for (int i = 0; i <= M; ++i) {
    table.t[i] = kTwoPi * i / M;
    table.s[i] = table.at(table.t[i]);
  }
  for (int i = 0; i < M; ++i)
    if (table.s[i + 1] <= table.s[i])
      throw std::invalid_argument("arc_length_table: s(t) is not strictly increasing");
  return table;
}

double AnalyticCurve::signed_area() const {
  // (1/2i) oint zbar dz, trapezoid on the periodic grid (spectral accuracy).
  cplx acc = 0.0;
  for (int i = 0; i < samples_; ++i) {
    const double t = sample_t(i);
    acc += std::conj(grid_points_[i]) * derivative(t, 1);
  }
  acc *= kTwoPi / samples_;
  return (acc / cplx(0.0, 2.0)).real();
}

cplx AnalyticCurve::region_centroid() const {
  // centroid = (1/A) (1/2i) oint zbar z dz for the region bounded by the
  // curve, traversed as stored.
  cplx acc = 0.0;
  for (int i = 0; i < samples_; ++i) {
    const double t = sample_t(i);
    acc += std::conj(grid_points_[i]) * grid_points_[i] * derivative(t, 1);
  }
  acc *= kTwoPi / samples_;
  return acc / cplx(0.0, 2.0) / signed_area();
}

bool AnalyticCurve::encloses(cplx p) const {
  // Crossing-number test against the sampled polygon.
  bool inside = false;
  const int M = samples_;
  for (int i = 0; i < M; ++i) {
    const cplx a = grid_points_[i];
    const cplx b = grid_points_[(i + 1) % M];
    if ((a.imag() > p.imag()) != (b.imag() > p.imag())) {
      const double x = a.real() + (p.imag() - a.imag()) / (b.imag() - a.imag()) *
                                      (b.real() - a.real());
      if (p.real() < x) inside = !inside;
    }
  }
  return inside;
}

AnalyticCurve AnalyticCurve::reversed(Orientation new_orientation) const {
  // z(-t): coefficient of e^{ijt} becomes a_{-j}.
  std::vector<cplx> rev(coeffs_.rbegin(), coeffs_.rend());
  return AnalyticCurve(std::move(rev), -j_max(), new_orientation, samples_);
}

AnalyticCurve AnalyticCurve::reparametrized(double shift) const {
  std::vector<cplx> out(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const double j = static_cast<double>(j_min_ + static_cast<int>(k));
    out[k] = coeffs_[k] * std::polar(1.0, j * shift);
  }
  return AnalyticCurve(std::move(out), j_min_, orientation_, samples_);
}

AnalyticCurve AnalyticCurve::padded(int new_j_max) const {
  const int new_j_min = -new_j_max;
  if (new_j_min > j_min_ || new_j_max < j_max())
    throw std::invalid_argument("padded: new bandwidth must contain the old one");
  std::vector<cplx> out(2 * new_j_max + 1, cplx(0.0));
  for (std::size_t k = 0; k < coeffs_.size(); ++k)
    out[j_min_ + static_cast<int>(k) - new_j_min] = coeffs_[k];
  return AnalyticCurve(std::move(out), new_j_min, orientation_);
}

AnalyticCurve make_circle(cplx center, double radius, Orientation orientation) {
  if (orientation == Orientation::kOuter)
    return AnalyticCurve({center, radius}, 0, orientation);
  return AnalyticCurve({radius, center}, -1, orientation);
}

AnalyticCurve make_ellipse(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0))
    throw std::invalid_argument("make_ellipse: axes must be positive");
  // cos t + i (b/a) sin t scaled: (a+b)/2 e^{it} + (a-b)/2 e^{-it}.
  return AnalyticCurve({(a - b) / 2.0, 0.0, (a + b) / 2.0}, -1,
                       Orientation::kOuter);
}

}  // namespace extremal
