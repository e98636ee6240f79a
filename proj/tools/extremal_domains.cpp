// Command-line front end: loads domain description files, runs the analysis
// pipelines, and writes JSON/CSV reports plus SVG figures.

#include <CLI11.hpp>

#include "extremal/pipeline.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Analytic content and extremal-domain diagnostics"};
  app.require_subcommand(1);

  extremal::RunConfig config;

  auto add_common = [&](CLI::App* cmd, bool needs_input = true) {
    cmd->add_option("--input", config.input, "domain description file (JSON)")
        ->required(needs_input);
    cmd->add_option("--out-dir", config.out_dir, "output directory");
    cmd->add_option("--degree", config.degree, "basis degree");
    cmd->add_option("--samples", config.samples,
                    "boundary samples per component (0 = automatic)");
    cmd->add_option("--tol", config.tol, "verdict tolerance")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--seed", config.seed, "random seed");
  };

  auto* analyze = app.add_subcommand(
      "analyze", "bounds, minimax lambda, extremality residual, verdict");
  add_common(analyze);

  auto* quadrature = app.add_subcommand(
      "quadrature", "quadrature-identity table and flow identities");
  add_common(quadrature);

  auto* serrin = app.add_subcommand(
      "serrin", "Neumann solve and boundary-trace oscillation");
  add_common(serrin);

  auto* stokes = app.add_subcommand(
      "stokes", "Stokes graph of phi'(z) dz^2 with SVG output");
  add_common(stokes);
  stokes->add_option("--phi-prime", config.phi_prime,
                     "poly:re,im;... or rational:<num>|<den> (default: minimax phi-hat')");

  auto* conformal = app.add_subcommand(
      "conformal", "annulus map, modulus, Lemma checks (doubly connected)");
  add_common(conformal);

  auto* droplet = app.add_subcommand(
      "droplet", "droplet free-boundary residual grid search");
  add_common(droplet);

  auto* perturb = app.add_subcommand(
      "perturb", "emit a Fourier-perturbed copy of the domain");
  add_common(perturb);
  perturb->add_option("--amplitude", config.amplitude, "perturbation amplitude")
      ->required();
  perturb->add_option("--mode", config.mode, "Fourier mode of the perturbation");

  CLI11_PARSE(app, argc, argv);

  if (analyze->parsed()) return extremal::cmd_analyze(config);
  if (quadrature->parsed()) return extremal::cmd_quadrature(config);
  if (serrin->parsed()) return extremal::cmd_serrin(config);
  if (stokes->parsed()) return extremal::cmd_stokes(config);
  if (conformal->parsed()) return extremal::cmd_conformal(config);
  if (droplet->parsed()) return extremal::cmd_droplet(config);
  if (perturb->parsed()) return extremal::cmd_perturb(config);
  return extremal::kExitInputError;
}
