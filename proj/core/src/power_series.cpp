#include "extremal/power_series.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace extremal {

namespace {
int min_order(const PowerSeries& a, const PowerSeries& b) {
  return std::min(a.order(), b.order());
}
}  // namespace

PowerSeries PowerSeries::truncated(int order) const {
  std::vector<cplx> out(order + 1, cplx(0.0));
  for (int k = 0; k <= std::min(order, this->order()); ++k) out[k] = c_[k];
  return PowerSeries(std::move(out));
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
  const int n = min_order(*this, o);
  PowerSeries out(n);
  for (int k = 0; k <= n; ++k) out[k] = c_[k] + o[k];
  return out;
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
  const int n = min_order(*this, o);
  PowerSeries out(n);
  for (int k = 0; k <= n; ++k) out[k] = c_[k] - o[k];
  return out;
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
  const int n = min_order(*this, o);
  PowerSeries out(n);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n && j <= o.order(); ++j)
      out[i + j] += c_[i] * o[j];
  return out;
}

PowerSeries PowerSeries::operator*(cplx s) const {
  PowerSeries out(order());
  for (int k = 0; k <= order(); ++k) out[k] = c_[k] * s;
  return out;
}

PowerSeries PowerSeries::derivative() const {
  if (order() == 0) return PowerSeries(0);
  PowerSeries out(order() - 1);
  for (int k = 1; k <= order(); ++k) out[k - 1] = c_[k] * static_cast<double>(k);
  return out;
}

PowerSeries PowerSeries::antiderivative() const {
  PowerSeries out(order() + 1);
  for (int k = 0; k <= order(); ++k) out[k + 1] = c_[k] / static_cast<double>(k + 1);
  return out;
}

PowerSeries PowerSeries::inverse() const {
  if (c_[0] == cplx(0.0))
    throw std::invalid_argument("PowerSeries::inverse: zero constant term");
  PowerSeries out(order());
  out[0] = 1.0 / c_[0];
  for (int k = 1; k <= order(); ++k) {
    cplx acc = 0.0;
    for (int j = 1; j <= k; ++j) acc += c_[j] * out[k - j];
    out[k] = -acc / c_[0];
  }
  return out;
}

PowerSeries PowerSeries::divide(const PowerSeries& den) const {
  return (*this) * den.inverse().truncated(min_order(*this, den));
}

PowerSeries PowerSeries::log() const {
  if (c_[0] == cplx(0.0))
    throw std::invalid_argument("PowerSeries::log: zero constant term");
  // log f = log f0 + int f'/f
  PowerSeries lf = derivative().truncated(order()).divide(truncated(order() - 1))
                       .truncated(order() - 1)
                       .antiderivative();
  lf[0] = std::log(c_[0]);
  return lf;
}

PowerSeries PowerSeries::exp() const {
  // g = exp f from g' = f' g, coefficientwise.
  PowerSeries out(order());
  out[0] = std::exp(c_[0]);
  for (int k = 1; k <= order(); ++k) {
    cplx acc = 0.0;
    for (int j = 1; j <= k; ++j)
      acc += static_cast<double>(j) * c_[j] * out[k - j];
    out[k] = acc / static_cast<double>(k);
  }
  return out;
}

PowerSeries PowerSeries::sqrt(cplx branch_hint) const {
  if (c_[0] == cplx(0.0))
    throw std::invalid_argument("PowerSeries::sqrt: zero constant term");
  cplx r0 = std::sqrt(c_[0]);
  if (branch_hint != cplx(0.0) &&
      std::abs(r0 - branch_hint) > std::abs(r0 + branch_hint))
    r0 = -r0;
  PowerSeries out(order());
  out[0] = r0;
  // (g^2 = f): f_k = sum_j g_j g_{k-j} -> g_k = (f_k - sum_{1<=j<=k-1}) / (2 g_0)
  for (int k = 1; k <= order(); ++k) {
    cplx acc = 0.0;
    for (int j = 1; j < k; ++j) acc += out[j] * out[k - j];
    out[k] = (c_[k] - acc) / (2.0 * r0);
  }
  return out;
}

PowerSeries PowerSeries::compose(const PowerSeries& inner) const {
  if (inner[0] != cplx(0.0))
    throw std::invalid_argument("PowerSeries::compose: inner constant term must vanish");
  const int n = min_order(*this, inner);
  // Horner: result = c_n; result = result*inner + c_k.
  PowerSeries result(n);
  result[0] = c_[std::min<int>(n, order())];
  for (int k = std::min<int>(n, order()) - 1; k >= 0; --k) {
    result = result * inner;
    result[0] += c_[k];
  }
  return result;
}

PowerSeries PowerSeries::revert() const {
  if (c_[0] != cplx(0.0))
    throw std::invalid_argument("PowerSeries::revert: constant term must vanish");
  if (c_[1] == cplx(0.0))
    throw std::invalid_argument("PowerSeries::revert: vanishing linear term");
  const int n = order();
  // Coefficientwise solve of f(g(x)) = x.
  PowerSeries g(n);
  g[1] = 1.0 / c_[1];
  for (int k = 2; k <= n; ++k) {
    // Composite truncated at k using the g known so far (g_k = 0 slot).
    PowerSeries partial = compose(g.truncated(k)).truncated(k);
    // f(g)_k = c_1 g_k + (terms from lower g); solve for g_k.
    g[k] = -partial[k] / c_[1];
  }
  return g;
}

cplx PowerSeries::eval(cplx x) const {
  cplx acc = c_[order()];
  for (int k = order() - 1; k >= 0; --k) acc = acc * x + c_[k];
  return acc;
}

cplx PowerSeries::eval_derivative(cplx x) const { return derivative().eval(x); }

PowerSeries schwarzian(const PowerSeries& f) {
  const PowerSeries fp = f.derivative();
  if (fp[0] == cplx(0.0))
    throw std::invalid_argument("schwarzian: f'(0) = 0");
  // g = (log f')' = f''/f'
  const PowerSeries g = fp.derivative().divide(fp);
  return g.derivative() - (g * g) * cplx(0.5);
}

std::vector<cplx> cauchy_derivatives(const std::function<cplx(cplx)>& f,
                                     cplx z, double radius, int max_order,
                                     int nodes) {
  std::vector<cplx> moments(max_order + 1, cplx(0.0));
  for (int i = 0; i < nodes; ++i) {
    const cplx w = std::polar(radius, kTwoPi * i / nodes);
    const cplx fv = f(z + w);
    cplx wk = 1.0;
    for (int k = 0; k <= max_order; ++k) {
      moments[k] += fv / wk;
      wk *= w;
    }
  }
  std::vector<cplx> out(max_order + 1);
  double factorial = 1.0;
  for (int k = 0; k <= max_order; ++k) {
    if (k > 0) factorial *= k;
    out[k] = moments[k] * factorial / static_cast<double>(nodes);
  }
  return out;
}

cplx schwarzian_at(const std::function<cplx(cplx)>& f, cplx z, double radius) {
  const auto d = cauchy_derivatives(f, z, radius, 3);
  const cplx ratio2 = d[2] / d[1];
  return d[3] / d[1] - 1.5 * ratio2 * ratio2;
}

}  // namespace extremal
