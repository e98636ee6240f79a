#pragma once

#include <cstdint>
#include <string>

#include "extremal/domain.hpp"
#include "extremal/quaddiff.hpp"

namespace extremal {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitNoConvergence = 3;

struct RunConfig {
  std::string input;
  std::string out_dir = ".";
  int degree = 12;       // basis degree
  int samples = 0;       // boundary samples per component; 0 = automatic
  double tol = 1e-3;     // extremality verdict tolerance
  std::uint64_t seed = 0;
  double amplitude = 0.0;  // cmd_perturb
  int mode = 3;            // cmd_perturb Fourier mode
  std::string phi_prime;   // cmd_stokes: "poly:..." or "rational:...|..."
};

// Each command loads config.input, writes its reports under config.out_dir,
// and returns an exit code. Reports are byte-deterministic for a fixed
// config and seed (the SVG carries one version comment line).
int cmd_analyze(const RunConfig& config);
int cmd_quadrature(const RunConfig& config);
int cmd_serrin(const RunConfig& config);
int cmd_stokes(const RunConfig& config);
int cmd_conformal(const RunConfig& config);
int cmd_droplet(const RunConfig& config);
int cmd_perturb(const RunConfig& config);

// Building blocks reused by the commands and the test suites.

struct AnalyzeOutcome {
  double lambda_hat = 0.0;
  double lower = 0.0, upper = 0.0;
  double gap_lower = 0.0, gap_upper = 0.0;
  double residual = 0.0;
  bool converged = false;
  std::string verdict;  // disk-like | annulus-like | non-extremal
};
std::string analyze_json(const PlanarDomain& domain, int degree, int samples,
                         double tol, AnalyzeOutcome* outcome = nullptr);

std::string serrin_json(const PlanarDomain& domain, int degree);
std::string conformal_json(const PlanarDomain& domain, int degree);

// Fourier-perturbed copy: outer curve scaled by 1 + amplitude cos(mode t +
// phase(seed)). Rejects amplitude >= 0.2 x the smallest centroid distance.
PlanarDomain perturb_domain(const PlanarDomain& domain, double amplitude,
                            int mode, std::uint64_t seed);

// "poly:re,im;re,im;..." or "rational:<num>|<den>" with the same pair syntax.
QuadraticDifferential parse_phi_prime(const std::string& expression);

}  // namespace extremal
