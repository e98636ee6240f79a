#pragma once

#include <functional>
#include <vector>

#include "extremal/types.hpp"

namespace extremal {

// Truncated power series sum_{k=0}^{order} c_k x^k with complex coefficients.
// Arithmetic truncates to the shorter operand's order. This is the workhorse
// behind the Schwarz-function and Schwarzian calculus.
class PowerSeries {
 public:
  explicit PowerSeries(int order) : c_(order + 1, cplx(0.0)) {}
  PowerSeries(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {}

  int order() const { return static_cast<int>(c_.size()) - 1; }
  cplx& operator[](int k) { return c_[k]; }
  const cplx& operator[](int k) const { return c_[k]; }
  const std::vector<cplx>& coefficients() const { return c_; }

  PowerSeries truncated(int order) const;

  PowerSeries operator+(const PowerSeries& o) const;
  PowerSeries operator-(const PowerSeries& o) const;
  PowerSeries operator*(const PowerSeries& o) const;
  PowerSeries operator*(cplx s) const;

  PowerSeries derivative() const;
  PowerSeries antiderivative() const;  // constant term 0

  // 1/f; requires f(0) != 0.
  PowerSeries inverse() const;
  PowerSeries divide(const PowerSeries& den) const;
  // log f with principal log of f(0); requires f(0) != 0.
  PowerSeries log() const;
  PowerSeries exp() const;
  // sqrt with value at 0 chosen nearest to branch_hint (principal root when
  // hint is 0); requires f(0) != 0.
  PowerSeries sqrt(cplx branch_hint = 0.0) const;

  // f(g(x)); requires g(0) == 0.
  PowerSeries compose(const PowerSeries& inner) const;
  // Compositional inverse: g with f(g(x)) = x; requires f(0)=0, f(1) != 0.
  PowerSeries revert() const;

  cplx eval(cplx x) const;
  cplx eval_derivative(cplx x) const;

 private:
  std::vector<cplx> c_;
};

// Schwarzian derivative (log f')'' - (1/2)[(log f')']^2 of a series map about
// the same expansion point; requires f'(0) != 0.
PowerSeries schwarzian(const PowerSeries& f);

// Derivatives f^(1..max_order)(z) of an analytic callable via Cauchy
// integrals over a circle of the given radius (trapezoid, spectrally
// accurate). The radius must stay inside the analyticity disk.
std::vector<cplx> cauchy_derivatives(const std::function<cplx(cplx)>& f,
                                     cplx z, double radius, int max_order,
                                     int nodes = 64);

// Schwarzian of a callable at a point, from Cauchy-integral derivatives.
cplx schwarzian_at(const std::function<cplx(cplx)>& f, cplx z, double radius);

}  // namespace extremal
