#include "extremal/pipeline.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "extremal/approx.hpp"
#include "extremal/conformal.hpp"
#include "extremal/domain_io.hpp"
#include "extremal/quadrature.hpp"
#include "extremal/schwarz.hpp"
#include "extremal/serrin.hpp"
#include "extremal/svg.hpp"

namespace extremal {

namespace {

using ordered_json = nlohmann::ordered_json;

void write_file(const std::string& dir, const std::string& name,
                const std::string& content) {
  std::filesystem::create_directories(dir);
  const std::string path = dir + "/" + name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

int auto_samples(const AnalyticBasis& basis, int requested, int components) {
  if (requested > 0) return requested;
  return std::max(256, 4 * basis.size() / components + 64);
}

ordered_json complex_json(cplx v) { return ordered_json::array({v.real(), v.imag()}); }

struct CommandGuard {
  // Maps exceptions onto the documented exit codes.
  template <typename Fn>
  static int run(Fn&& fn) {
    try {
      return fn();
    } catch (const std::invalid_argument& e) {
      std::fprintf(stderr, "input error: %s\n", e.what());
      return kExitInputError;
    } catch (const nlohmann::json::exception& e) {
      std::fprintf(stderr, "input error: %s\n", e.what());
      return kExitInputError;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "numerical error: %s\n", e.what());
      return kExitNoConvergence;
    }
  }
};

}  // namespace

std::string analyze_json(const PlanarDomain& domain, int degree, int samples,
                         double tol, AnalyzeOutcome* outcome) {
  const auto basis = AnalyticBasis::for_domain(domain, degree);
  const int M = auto_samples(basis, samples, domain.num_components());
  const auto result = solve_minimax(domain, basis, M);
  const auto residual = extremality_residual(domain, result);
  const auto bounds = content_bounds(domain);

  const bool extremal = result.gap_lower <= tol && residual.max <= tol;
  std::string verdict = !extremal               ? "non-extremal"
                        : domain.connectivity() == 1 ? "disk-like"
                                                     : "annulus-like";

  ordered_json j;
  j["lambda_hat"] = result.lambda_hat;
  j["bounds"] = {{"lower", bounds.lower}, {"upper", bounds.upper}};
  j["gap_lower"] = result.gap_lower;
  j["gap_upper"] = result.gap_upper;
  j["extremality_residual"] = residual.max;
  j["residuals_per_component"] = residual.per_component;
  j["verdict"] = verdict;
  j["converged"] = result.converged;
  j["certified"] = result.certified;
  j["certificate_gap"] = result.certificate_gap;
  j["iterations"] = result.iterations;
  const auto raw = result.raw_coefficients();
  ordered_json coeffs;
  coeffs["poly"] = ordered_json::array();
  for (cplx v : raw.poly) coeffs["poly"].push_back(complex_json(v));
  coeffs["negative"] = ordered_json::array();
  for (std::size_t k = 0; k < raw.negative.size(); ++k) {
    ordered_json hole;
    hole["anchor"] = complex_json(raw.anchors[k]);
    hole["coeffs"] = ordered_json::array();
    for (cplx v : raw.negative[k]) hole["coeffs"].push_back(complex_json(v));
    coeffs["negative"].push_back(hole);
  }
  j["coeffs"] = coeffs;

  if (outcome) {
    outcome->lambda_hat = result.lambda_hat;
    outcome->lower = bounds.lower;
    outcome->upper = bounds.upper;
    outcome->gap_lower = result.gap_lower;
    outcome->gap_upper = result.gap_upper;
    outcome->residual = residual.max;
    outcome->converged = result.converged;
    outcome->verdict = verdict;
  }
  return j.dump(2) + "\n";
}

std::string serrin_json(const PlanarDomain& domain, int degree) {
  const auto solution = solve_neumann(domain, degree);
  const auto osc = boundary_oscillation(solution, domain);
  ordered_json j;
  j["neumann_residual"] = solution.neumann_residual();
  j["neumann_target"] = solution.neumann_target();
  j["osc"] = osc.osc;
  j["c"] = osc.c;
  ordered_json betas = ordered_json::array();
  for (int k = 0; k < static_cast<int>(domain.inners().size()); ++k)
    betas.push_back(solution.beta(k));
  j["beta"] = betas;
  j["flux_gap"] = flux_identity_gap(solution, domain);
  return j.dump(2) + "\n";
}

std::string conformal_json(const PlanarDomain& domain, int degree) {
  const auto map = map_to_annulus(domain, degree);
  const auto basis = AnalyticBasis::for_domain(domain, 12);
  const auto result =
      solve_minimax(domain, basis, auto_samples(basis, 0, domain.num_components()));
  const auto lemma = lemma_l1_check(domain, result, map);
  const auto mobius = mobius_check(domain, map);
  ordered_json j;
  j["R1"] = map.R1();
  j["R2"] = map.R2();
  j["modulus"] = map.modulus();
  j["boundary_deviation"] = map.boundary_deviation();
  j["C_fit"] = complex_json(lemma.C_fit);
  j["lemma_deviation"] = lemma.relative_deviation;
  j["mobius_defect"] = mobius.defect;
  j["failed_inversions"] = mobius.failed_inversions;
  return j.dump(2) + "\n";
}

PlanarDomain perturb_domain(const PlanarDomain& domain, double amplitude,
                            int mode, std::uint64_t seed) {
  // Guard: stay well inside the immersion/simplicity regime.
  double min_radius = 1e300;
  const cplx c0 = domain.centroid();
  for (int k = 0; k < domain.num_components(); ++k) {
    const auto& c = domain.component(k);
    for (int i = 0; i < c.sample_count(); ++i)
      min_radius = std::min(min_radius, std::abs(c.point(c.sample_t(i)) - c0));
  }
  if (!(amplitude >= 0.0) || amplitude >= 0.2 * min_radius)
    throw std::invalid_argument(
        "perturb_domain: amplitude must be below 0.2 x min radius (" +
        std::to_string(0.2 * min_radius) + "); reduce it");
  if (mode < 1) throw std::invalid_argument("perturb_domain: mode must be >= 1");
  if (amplitude == 0.0) return domain;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, kTwoPi);
  const double phase = uniform(rng);

  // z(t) (1 + a cos(mode t + phase)) in Fourier form.
  const auto& outer = domain.outer();
  const auto& a = outer.coefficients();
  const int old_min = outer.j_min(), old_max = outer.j_max();
  const int new_min = old_min - mode, new_max = old_max + mode;
  std::vector<cplx> out(new_max - new_min + 1, cplx(0.0));
  const cplx half_plus = 0.5 * amplitude * std::polar(1.0, phase);
  const cplx half_minus = 0.5 * amplitude * std::polar(1.0, -phase);
  for (int j = old_min; j <= old_max; ++j) {
    const cplx aj = a[j - old_min];
    out[j - new_min] += aj;
    out[j + mode - new_min] += aj * half_plus;
    out[j - mode - new_min] += aj * half_minus;
  }
  AnalyticCurve perturbed(out, new_min, Orientation::kOuter);
  return PlanarDomain(std::move(perturbed), domain.inners(), domain.hole_points());
}

QuadraticDifferential parse_phi_prime(const std::string& expression) {
  auto parse_coeffs = [](const std::string& body) {
    std::vector<cplx> out;
    std::stringstream ss(body);
    std::string pair;
    while (std::getline(ss, pair, ';')) {
      const auto comma = pair.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("phi-prime: coefficient must be re,im");
      out.emplace_back(std::stod(pair.substr(0, comma)),
                       std::stod(pair.substr(comma + 1)));
    }
    if (out.empty()) throw std::invalid_argument("phi-prime: empty coefficient list");
    return out;
  };
  if (expression.rfind("poly:", 0) == 0)
    return QuadraticDifferential::polynomial(parse_coeffs(expression.substr(5)));
  if (expression.rfind("rational:", 0) == 0) {
    const std::string body = expression.substr(9);
    const auto bar = body.find('|');
    if (bar == std::string::npos)
      throw std::invalid_argument("phi-prime: rational needs <num>|<den>");
    return QuadraticDifferential::rational(parse_coeffs(body.substr(0, bar)),
                                           parse_coeffs(body.substr(bar + 1)));
  }
  throw std::invalid_argument("phi-prime: expected poly:... or rational:...");
}

int cmd_analyze(const RunConfig& config) {
  return CommandGuard::run([&] {
    const PlanarDomain domain = load_domain(config.input);
    AnalyzeOutcome outcome;
    write_file(config.out_dir, "analyze.json",
               analyze_json(domain, config.degree, config.samples, config.tol,
                            &outcome));
    return outcome.converged ? kExitOk : kExitNoConvergence;
  });
}

int cmd_quadrature(const RunConfig& config) {
  return CommandGuard::run([&] {
    const PlanarDomain domain = load_domain(config.input);
    const auto report = quadrature_residual(domain, std::min(config.degree, 8));
    write_file(config.out_dir, "quadrature.csv", quadrature_csv(report));

    const auto basis = AnalyticBasis::for_domain(domain, config.degree);
    const auto result = solve_minimax(
        domain, basis, auto_samples(basis, config.samples, domain.num_components()));
    const auto flow = flow_identities(domain, result);
    ordered_json j;
    j["residual"] = report.residual;
    j["boundary_speed_dev"] = flow.boundary_speed_dev;
    j["circulation"] = flow.circulation;
    j["green_gap"] = flow.green_gap;
    j["vorticity_flux_gap"] = flow.vorticity_flux_gap;
    write_file(config.out_dir, "quadrature.json", j.dump(2) + "\n");
    return result.converged ? kExitOk : kExitNoConvergence;
  });
}

int cmd_serrin(const RunConfig& config) {
  return CommandGuard::run([&] {
    const PlanarDomain domain = load_domain(config.input);
    write_file(config.out_dir, "serrin.json",
               serrin_json(domain, std::max(config.degree, 16)));
    return kExitOk;
  });
}

int cmd_stokes(const RunConfig& config) {
  return CommandGuard::run([&] {
    const PlanarDomain domain = load_domain(config.input);
    QuadraticDifferential qd;
    if (!config.phi_prime.empty()) {
      qd = parse_phi_prime(config.phi_prime);
    } else {
      const auto basis = AnalyticBasis::for_domain(domain, config.degree);
      const auto result = solve_minimax(
          domain, basis,
          auto_samples(basis, config.samples, domain.num_components()));
      if (!result.converged) return kExitNoConvergence;
      qd = QuadraticDifferential::from_result(result);
    }
    const auto graph = build_stokes_graph(domain, qd);
    write_file(config.out_dir, "stokes.svg", stokes_svg(domain, graph));

    ordered_json j;
    j["zeros"] = ordered_json::array();
    for (const auto& z : graph.zeros) {
      ordered_json zj;
      zj["location"] = complex_json(z.location);
      zj["order"] = z.order;
      zj["near_boundary"] = z.near_boundary;
      j["zeros"].push_back(zj);
    }
    j["horizontal_arcs"] = graph.arcs_of(TrajectoryFamily::kHorizontal);
    j["vertical_arcs"] = graph.arcs_of(TrajectoryFamily::kVertical);
    j["boundary_loops"] = static_cast<int>(graph.boundary_loops.size());
    write_file(config.out_dir, "stokes.json", j.dump(2) + "\n");
    return kExitOk;
  });
}

int cmd_conformal(const RunConfig& config) {
  return CommandGuard::run([&] {
    const PlanarDomain domain = load_domain(config.input);
    write_file(config.out_dir, "conformal.json",
               conformal_json(domain, std::max(config.degree, 24)));
    return kExitOk;
  });
}

int cmd_droplet(const RunConfig& config) {
  return CommandGuard::run([&] {
    const PlanarDomain domain = load_domain(config.input);
    const auto grid = droplet_grid_search(domain.outer());
    ordered_json j;
    j["min_residual"] = grid.min_residual;
    j["lambda_best"] = grid.lambda_best;
    j["c_best"] = grid.c_best;
    write_file(config.out_dir, "droplet.json", j.dump(2) + "\n");
    return kExitOk;
  });
}

int cmd_perturb(const RunConfig& config) {
  return CommandGuard::run([&] {
    const PlanarDomain domain = load_domain(config.input);
    const PlanarDomain perturbed =
        perturb_domain(domain, config.amplitude, config.mode, config.seed);
    write_file(config.out_dir, "perturbed.json", domain_to_json(perturbed));
    return kExitOk;
  });
}

}  // namespace extremal
