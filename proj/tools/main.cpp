#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ptdx/errors.hpp"
#include "ptdx/version.hpp"
#include "run_config.hpp"

using ptdx::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{
      "Isospectral non-Hermitian partner potentials of PT-symmetric models "
      "via Darboux transformations at excited levels"};
  app.set_version_flag("--version", ptdx::kVersion);
  app.fallthrough();
  app.set_config("--config", "", "flat key = value config file");

  RunConfig cfg;
  std::string alpha_text = "0.75";
  bool grid_given = false;

  app.add_option("--model", cfg.model, "oscillator | ginocchio")
      ->capture_default_str();
  app.add_option("--alpha", alpha_text, "complex alpha, e.g. 0.75 or 0.75+0.1i")
      ->capture_default_str();
  app.add_option("--q", cfg.q, "quasi-parity, +1 or -1")->capture_default_str();
  app.add_option("--gamma", cfg.gamma, "Ginocchio shape parameter (>= 1)")
      ->capture_default_str();
  app.add_option("--s", cfg.s, "Ginocchio depth parameter")
      ->capture_default_str();
  app.add_option("--m", cfg.m, "seed level of the Darboux transformation")
      ->capture_default_str();
  app.add_option("--epsilon", cfg.epsilon, "contour shift")
      ->capture_default_str();
  auto* hw = app.add_option("--half-width", cfg.half_width,
                            "contour half width L")->capture_default_str();
  auto* np = app.add_option("--n-points", cfg.n_points,
                            "grid points (odd)")->capture_default_str();
  app.add_option("--k", cfg.k_levels, "number of levels to compute")
      ->capture_default_str();
  app.add_option("--tol", cfg.tol, "spectral match tolerance")
      ->capture_default_str();
  app.add_option("--out-dir", cfg.out_dir, "output directory")
      ->capture_default_str();

  auto* partner = app.add_subcommand("partner", "write W, v_minus, v_plus");
  auto* verify = app.add_subcommand(
      "verify", "isospectrality, residual, orthogonality and PT checks");
  verify->add_flag("--empty-skip", cfg.empty_skip,
                   "declare no skipped level (sharpness probe)");
  auto* figure = app.add_subcommand("figure", "figure data as CSV");
  std::string which_fig = "fig1";
  figure->add_option("which", which_fig, "fig1 | fig2")->required();
  auto* spectrum =
      app.add_subcommand("spectrum", "eigenvalues of the discretized operator");
  spectrum->add_option("--which", cfg.which, "original | partner")
      ->capture_default_str();

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
    grid_given = hw->count() > 0 || np->count() > 0;
    cfg.alpha = ptdx::cli::parse_complex(alpha_text);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : ptdx::cli::kExitConfig;
  } catch (const ptdx::PreconditionError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return ptdx::cli::kExitConfig;
  }

  // ginocchio defaults: the shallow level needs a wide box
  if (cfg.model == "ginocchio" && !grid_given) {
    cfg.half_width = 40.0;
    cfg.n_points = 4001;
    if (cfg.k_levels == 6) cfg.k_levels = 3;
  }

  try {
    if (partner->parsed()) return ptdx::cli::run_partner(cfg);
    if (verify->parsed()) return ptdx::cli::run_verify(cfg);
    if (figure->parsed()) return ptdx::cli::run_figure(which_fig, cfg);
    if (spectrum->parsed()) return ptdx::cli::run_spectrum(cfg);
  } catch (const ptdx::PreconditionError& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return ptdx::cli::kExitConfig;
  } catch (const ptdx::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return ptdx::cli::kExitNumerical;
  }
  return ptdx::cli::kExitConfig;
}
