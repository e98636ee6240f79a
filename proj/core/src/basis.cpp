#include "extremal/basis.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace extremal {

AnalyticBasis AnalyticBasis::for_domain(const PlanarDomain& domain, int degree) {
  if (degree < 1) throw std::invalid_argument("AnalyticBasis: degree must be >= 1");
  AnalyticBasis b;
  b.degree_ = degree;
  b.center_ = domain.centroid();
  double rho = 0.0;
  const auto& outer = domain.outer();
  for (int i = 0; i < outer.sample_count(); ++i)
    rho = std::max(rho, std::abs(outer.point(outer.sample_t(i)) - b.center_));
  b.scale_ = rho > 0.0 ? rho : 1.0;
  b.hole_anchors_ = domain.hole_points();
  for (std::size_t k = 0; k < b.hole_anchors_.size(); ++k) {
    const auto& curve = domain.inners()[k];
    double d = std::numeric_limits<double>::max();
    for (int i = 0; i < curve.sample_count(); ++i)
      d = std::min(d, std::abs(curve.point(curve.sample_t(i)) - b.hole_anchors_[k]));
    b.hole_scales_.push_back(d);
  }
  return b;
}

AnalyticBasis AnalyticBasis::raw(int degree, std::vector<cplx> hole_anchors) {
  AnalyticBasis b;
  b.degree_ = degree;
  b.center_ = 0.0;
  b.scale_ = 1.0;
  b.hole_anchors_ = std::move(hole_anchors);
  b.hole_scales_.assign(b.hole_anchors_.size(), 1.0);
  return b;
}

cplx AnalyticBasis::eval(int index, cplx z) const {
  if (index <= degree_)
    return std::pow((z - center_) / scale_, index);
  const int rel = index - degree_ - 1;
  const int hole = rel / degree_;
  const int j = rel % degree_ + 1;
  return std::pow(hole_scales_[hole] / (z - hole_anchors_[hole]), j);
}

cplx AnalyticBasis::eval_derivative(int index, cplx z) const {
  if (index <= degree_) {
    if (index == 0) return 0.0;
    return (static_cast<double>(index) / scale_) *
           std::pow((z - center_) / scale_, index - 1);
  }
  const int rel = index - degree_ - 1;
  const int hole = rel / degree_;
  const int j = rel % degree_ + 1;
  const cplx w = z - hole_anchors_[hole];
  return -static_cast<double>(j) * std::pow(hole_scales_[hole], j) /
         std::pow(w, j + 1);
}

cplx AnalyticBasis::eval_second_derivative(int index, cplx z) const {
  if (index <= degree_) {
    if (index <= 1) return 0.0;
    return (static_cast<double>(index) * (index - 1) / (scale_ * scale_)) *
           std::pow((z - center_) / scale_, index - 2);
  }
  const int rel = index - degree_ - 1;
  const int hole = rel / degree_;
  const int j = rel % degree_ + 1;
  const cplx w = z - hole_anchors_[hole];
  return static_cast<double>(j) * (j + 1) * std::pow(hole_scales_[hole], j) /
         std::pow(w, j + 2);
}

std::string AnalyticBasis::label(int index) const {
  if (index <= degree_) return "z^" + std::to_string(index);
  const int rel = index - degree_ - 1;
  const int hole = rel / degree_;
  const int j = rel % degree_ + 1;
  return "(z-a" + std::to_string(hole + 1) + ")^-" + std::to_string(j);
}

cplx AnalyticBasis::combine(const std::vector<cplx>& coeffs, cplx z) const {
  cplx acc = 0.0;
  for (int i = 0; i < size(); ++i) acc += coeffs[i] * eval(i, z);
  return acc;
}

cplx AnalyticBasis::combine_derivative(const std::vector<cplx>& coeffs, cplx z) const {
  cplx acc = 0.0;
  for (int i = 0; i < size(); ++i) acc += coeffs[i] * eval_derivative(i, z);
  return acc;
}

cplx AnalyticBasis::combine_second_derivative(const std::vector<cplx>& coeffs,
                                              cplx z) const {
  cplx acc = 0.0;
  for (int i = 0; i < size(); ++i) acc += coeffs[i] * eval_second_derivative(i, z);
  return acc;
}

AnalyticBasis::RawCoefficients AnalyticBasis::to_raw(
    const std::vector<cplx>& coeffs) const {
  RawCoefficients raw;
  raw.anchors = hole_anchors_;
  raw.poly.assign(degree_ + 1, cplx(0.0));
  // ((z-c)/rho)^j = rho^-j sum_m binom(j,m) z^m (-c)^{j-m}
  for (int j = 0; j <= degree_; ++j) {
    cplx binom = 1.0;
    for (int m = j; m >= 0; --m) {
      const cplx term = coeffs[j] * binom * std::pow(-center_, j - m) /
                        std::pow(scale_, j);
      raw.poly[m] += term;
      // binom(j, m-1) = binom(j, m) * m / (j - m + 1)
      binom *= static_cast<double>(m) / static_cast<double>(j - m + 1);
    }
  }
  for (std::size_t k = 0; k < hole_anchors_.size(); ++k) {
    std::vector<cplx> neg(degree_);
    for (int j = 1; j <= degree_; ++j)
      neg[j - 1] = coeffs[degree_ + 1 + static_cast<int>(k) * degree_ + j - 1] *
                   std::pow(hole_scales_[k], j);
    raw.negative.push_back(std::move(neg));
  }
  return raw;
}

std::vector<cplx> AnalyticBasis::from_raw(const RawCoefficients& raw) const {
  std::vector<cplx> coeffs(size(), cplx(0.0));
  // z^m = (rho w + c)^m with w = (z-c)/rho: expand into scaled monomials.
  for (int m = 0; m < static_cast<int>(raw.poly.size()); ++m) {
    if (raw.poly[m] == cplx(0.0)) continue;
    if (m > degree_) throw std::invalid_argument("from_raw: degree too high");
    cplx binom = 1.0;
    for (int j = m; j >= 0; --j) {
      coeffs[j] += raw.poly[m] * binom * std::pow(scale_, j) *
                   std::pow(center_, m - j);
      binom *= static_cast<double>(j) / static_cast<double>(m - j + 1);
    }
  }
  for (std::size_t k = 0; k < raw.negative.size(); ++k)
    for (int j = 1; j <= static_cast<int>(raw.negative[k].size()); ++j) {
      if (j > degree_) throw std::invalid_argument("from_raw: negative degree too high");
      coeffs[degree_ + 1 + static_cast<int>(k) * degree_ + j - 1] =
          raw.negative[k][j - 1] / std::pow(hole_scales_[k], j);
    }
  return coeffs;
}

}  // namespace extremal
