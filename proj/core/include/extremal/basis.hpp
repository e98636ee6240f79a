#pragma once

#include <string>
#include <vector>

#include "extremal/domain.hpp"
#include "extremal/types.hpp"

namespace extremal {

// Basis for analytic candidates on the closure of a finitely-connected
// domain: scaled monomials ((z-center)/scale)^j for j = 0..degree, then for
// each hole anchor a_k the scaled negative powers (hole_scale_k/(z-a_k))^j
// for j = 1..degree. Total size (degree+1) + (n-1)*degree.
//
// The scaling keeps every element O(1) on the domain closure; raw-basis
// coefficients (plain z^j and (z-a_k)^{-j}) are recovered with to_raw().
class AnalyticBasis {
 public:
  static AnalyticBasis for_domain(const PlanarDomain& domain, int degree);
  // Unscaled variant used by closed-form certificates: elements are plain z^j
  // and (z-a_k)^{-j}.
  static AnalyticBasis raw(int degree, std::vector<cplx> hole_anchors);

  int size() const {
    return degree_ + 1 + static_cast<int>(hole_anchors_.size()) * degree_;
  }
  int degree() const { return degree_; }
  const std::vector<cplx>& hole_anchors() const { return hole_anchors_; }

  cplx eval(int index, cplx z) const;
  cplx eval_derivative(int index, cplx z) const;
  cplx eval_second_derivative(int index, cplx z) const;
  std::string label(int index) const;

  cplx combine(const std::vector<cplx>& coeffs, cplx z) const;
  cplx combine_derivative(const std::vector<cplx>& coeffs, cplx z) const;
  cplx combine_second_derivative(const std::vector<cplx>& coeffs, cplx z) const;

  struct RawCoefficients {
    std::vector<cplx> poly;                    // coefficient of z^j
    std::vector<std::vector<cplx>> negative;   // [hole][j-1] of (z-a_k)^{-j}
    std::vector<cplx> anchors;
  };
  RawCoefficients to_raw(const std::vector<cplx>& coeffs) const;
  // Inverse of to_raw for coefficients given in the raw basis.
  std::vector<cplx> from_raw(const RawCoefficients& raw) const;

 private:
  cplx center_ = 0.0;
  double scale_ = 1.0;
  int degree_ = 0;
  std::vector<cplx> hole_anchors_;
  std::vector<double> hole_scales_;
};

}  // namespace extremal
