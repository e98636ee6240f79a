#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "extremal/approx.hpp"
#include "extremal/domain.hpp"
#include "extremal/types.hpp"

namespace extremal {

// Analytic phi'(z) defining the quadratic differential phi'(z) dz^2.
// Carries its derivative (for Newton refinement of zeros) and declared poles.
class QuadraticDifferential {
 public:
  QuadraticDifferential() = default;
  QuadraticDifferential(std::function<cplx(cplx)> value,
                        std::function<cplx(cplx)> derivative,
                        std::vector<cplx> poles = {});

  static QuadraticDifferential polynomial(std::vector<cplx> coeffs);
  // num(z)/den(z) with polynomial coefficient lists (index = power).
  static QuadraticDifferential rational(std::vector<cplx> num,
                                        std::vector<cplx> den);
  // phi-hat' from a minimax result.
  static QuadraticDifferential from_result(const ApproximationResult& result);

  cplx operator()(cplx z) const { return value_(z); }
  cplx derivative(cplx z) const { return derivative_(z); }
  const std::vector<cplx>& poles() const { return poles_; }

 private:
  std::function<cplx(cplx)> value_;
  std::function<cplx(cplx)> derivative_;
  std::vector<cplx> poles_;
};

// --- boundary identity --------------------------------------------------

// Residual of phi'(z) (dz/ds)^2 = 1 + lambda kappa along each component,
// plus the component integrals oint (1 + lambda kappa) ds compared with
// L_1 - 2 pi lambda (outer) and L_k + 2 pi lambda (inner).
struct BoundaryIdentityReport {
  std::vector<double> component_residual;
  double max_residual = 0.0;
  std::vector<double> integral;
  std::vector<double> expected_integral;
  double max_integral_error = 0.0;
  bool all_positive = false;
  // max |Im[phi'(z) (dz/ds)^2]| over the boundary (realness of the
  // differential).
  double max_imag = 0.0;
};
BoundaryIdentityReport boundary_identity(const PlanarDomain& domain,
                                         double lambda,
                                         const QuadraticDifferential& qd);

// --- zeros ----------------------------------------------------------------

struct QdZero {
  cplx location;
  int order = 1;
  bool near_boundary = false;  // within 1e-6 diameter of the domain boundary
};

struct FindZerosOptions {
  int max_depth = 40;
  int contour_nodes = 512;
  double newton_tol = 1e-13;
  double min_cell = 1e-9;
};

// Argument-principle zero search on a rectangle [lo, hi] (corners), with
// recursive subdivision, deterministic jitter when a zero sits on a cell
// edge, and Newton polish for simple zeros.
std::vector<QdZero> find_zeros(const QuadraticDifferential& qd, cplx lo,
                               cplx hi, const FindZerosOptions& options = {});

// --- trajectory tracing -----------------------------------------------

enum class TrajectoryFamily { kHorizontal, kVertical };  // Sigma+ / Sigma-

enum class TraceEnd {
  kBoundary,
  kZero,
  kClosedLoop,
  kMaxLength,
  kStepUnderflow,
  kBranchFailure,
};

struct TraceOptions {
  double max_step = 1e-2;        // in diameter units
  double rk_tol = 1e-10;
  double closure_tol = 1e-4;
  double max_length = 0.0;       // 0 -> 25 x diameter
  double zero_capture = 1e-5;    // in diameter units
  double diameter = 1.0;
  std::function<bool(cplx)> inside;  // region membership; required
  std::vector<cplx> known_zeros;
};
TraceOptions trace_options_for(const PlanarDomain& domain);
TraceOptions trace_options_for_rect(cplx lo, cplx hi);

struct Trajectory {
  std::vector<cplx> points;
  TraceEnd termination = TraceEnd::kMaxLength;
  double length = 0.0;
  double closure_error = 0.0;  // meaningful when termination == kClosedLoop
};

// Unit-speed integration of dz/dsigma = exp(i theta(z)) with
// theta = -arg(phi')/2 (shifted by pi/2 for the vertical family), branch
// tracked by continuity. start_direction selects the branch at the start.
Trajectory trace_trajectory(const QuadraticDifferential& qd, cplx start,
                            TrajectoryFamily family, cplx start_direction,
                            const TraceOptions& options);

// --- Stokes graph ---------------------------------------------------------

struct StokesArc {
  TrajectoryFamily family = TrajectoryFamily::kHorizontal;
  std::vector<cplx> points;
  TraceEnd end = TraceEnd::kBoundary;
  int from_zero = -1;
  int to_zero = -1;
  double launch_angle = 0.0;
};

struct StokesGraph {
  std::vector<QdZero> zeros;
  std::vector<StokesArc> arcs;            // launched from zeros, deduplicated
  std::vector<Trajectory> boundary_loops; // closed foliation representatives
  int arcs_of(TrajectoryFamily family) const;
  // Arcs incident to a zero (either endpoint), per family.
  std::vector<int> incident(int zero_index, TrajectoryFamily family) const;
};

struct StokesGraphOptions {
  double launch_radius = 1e-3;  // in diameter units
  TraceOptions trace;
};

// Launches m+2 arcs per family from every zero of order m, deduplicates arcs
// traced from both ends, and classifies endpoints. For zero-free phi' the
// graph degenerates to the closed-trajectory foliation; one representative
// per boundary component is traced and stored in boundary_loops.
StokesGraph build_stokes_graph(const PlanarDomain& domain,
                               const QuadraticDifferential& qd);
StokesGraph build_stokes_graph(const PlanarDomain& domain,
                               const QuadraticDifferential& qd,
                               const StokesGraphOptions& options);

// Local ray angles of the Sigma+ family at a zero of order m (m+2 angles);
// the vertical family bisects consecutive pairs.
std::vector<double> launch_angles(const QuadraticDifferential& qd,
                                  const QdZero& zero, TrajectoryFamily family,
                                  double probe_radius);

// --- the linear ODE v'' = -(phi'/lambda^2) v -------------------------------

struct OdeSolution {
  std::vector<cplx> v;   // at the path vertices
  std::vector<cplx> dv;  // dv/dz at the path vertices
};

// Fourth-order Runge-Kutta along a polyline path in the z-plane with fixed
// step h <= max_step per segment.
OdeSolution ode_solve(const QuadraticDifferential& qd, double lambda,
                      const std::vector<cplx>& path, cplx v0, cplx dv0,
                      double max_step = 1e-3);

// Wronskian v1 v2' - v2 v1' drift along a path, relative to its initial
// value, for two solutions started from independent initial data.
double wronskian_drift(const QuadraticDifferential& qd, double lambda,
                       const std::vector<cplx>& path, double max_step = 1e-3);

// --- Liouville-Green comparison -----------------------------------------

struct LgReport {
  std::vector<double> epsilons;
  std::vector<double> errors;  // e(eps) = max over samples |v_num - v_LG|
  std::vector<double> ratios;  // e(eps)/eps
  cplx C1{1.0}, C2{0.0};
  double ratio_variation = 0.0;  // max ratio / min ratio
};

struct LgOptions {
  double inner_radius = 0.35;
  double outer_radius = 1.0;
  int sample_count = 6;
  double phase_steps = 0.004;  // RK step target: |sqrt(phi')| h / (lambda eps)
  int quad_nodes = 2000;       // phase-integral quadrature along the ray
};

// Compares RK solutions of v'' = -(phi'/(lambda eps)^2) v against the
// Liouville-Green approximation along a Sigma+ ray from a simple zero.
// Initial data at the outermost sample comes from the LG ansatz; (C1, C2)
// are collocated at the largest epsilon and then held fixed. The Borel-Ritt
// rate asserts e(eps)/eps stays bounded.
LgReport lg_compare(const QuadraticDifferential& qd, double lambda, cplx zero,
                    cplx wedge_direction, const std::vector<double>& epsilons,
                    const LgOptions& options = {});

}  // namespace extremal
