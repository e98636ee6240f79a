#pragma once

#include <complex>
#include <numbers>

namespace extremal {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline cplx unit(cplx v) { return v / std::abs(v); }

}  // namespace extremal
