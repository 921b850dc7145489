#include <CLI11.hpp>
#include <exception>
#include <iostream>

#include "commands.hpp"

namespace {

using purity::cli::ExperimentConfig;

void add_system(CLI::App& sub, ExperimentConfig& cfg) {
  sub.add_option("--n", cfg.n, "number of sites")->required()->check(CLI::PositiveNumber);
  sub.add_flag("--pbc", cfg.pbc, "periodic boundaries (default open)");
  sub.add_option("--d", cfg.d, "local dimension")->capture_default_str();
  sub.add_option("--out", cfg.out, "output file, '-' for stdout")->capture_default_str();
}

void add_target(CLI::App& sub, ExperimentConfig& cfg) {
  auto* cut = sub.add_option("--cut", cfg.cut, "single cut: A = first k sites (default n/2)");
  auto* bp = sub.add_option("--bipartition", cfg.bipartition, "bitstring, A=1-14,28-40 or cut:k");
  cut->excludes(bp);
}

void add_matrix(CLI::App& sub, ExperimentConfig& cfg) {
  sub.add_option("--method", cfg.method, "auto, analytic or closure")->capture_default_str();
  sub.add_flag("--perturbed", cfg.perturbed, "replace the bottom-left staircase coefficient by a");
  sub.add_option("--max-basis", cfg.max_basis, "closure capacity")->capture_default_str();
}

void add_report(CLI::App& sub, ExperimentConfig& cfg) {
  sub.add_option("--report", cfg.report, "JSON summary file (default stderr)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Average purity dynamics of random circuits via reduced Markov transfer matrices"};
  app.set_version_flag("--version", PURITY_VERSION_STRING);
  app.require_subcommand(1);

  ExperimentConfig cfg;

  auto* reduce = app.add_subcommand("reduce", "write a reduced transfer matrix and its basis");
  add_system(*reduce, cfg);
  reduce->add_option("--p", cfg.p, "canonical protocol parameter")->required();
  add_target(*reduce, cfg);
  add_matrix(*reduce, cfg);

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues, nonzero spectrum or pseudospectrum");
  add_system(*spectrum, cfg);
  spectrum->add_option("--p", cfg.p, "canonical protocol parameter")->required();
  add_target(*spectrum, cfg);
  add_matrix(*spectrum, cfg);
  spectrum->add_flag("--nonzero", cfg.nonzero, "only the nonzero eigenvalues");
  spectrum->add_flag("--pseudo", cfg.pseudo, "eigenvalues of randomly perturbed copies");
  spectrum->add_option("--eps", cfg.eps, "perturbation size")->capture_default_str();
  spectrum->add_option("--samples", cfg.samples, "pseudospectrum samples (default 20)");
  spectrum->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  spectrum->add_option("--precision", cfg.precision, "auto, standard or extended")->capture_default_str();
  add_report(*spectrum, cfg);

  auto* evolve = app.add_subcommand("evolve", "purity trajectory, rates and decay report");
  add_system(*evolve, cfg);
  evolve->add_option("--p", cfg.p, "canonical protocol parameter")->required();
  add_target(*evolve, cfg);
  add_matrix(*evolve, cfg);
  evolve->add_option("--tmax", cfg.tmax, "number of steps (default 3n)");
  evolve->add_option("--window", cfg.window, "rate window lo:hi for lambda_eff");
  add_report(*evolve, cfg);

  auto* mc = app.add_subcommand("mc", "Monte Carlo average purity from Haar-random circuits");
  add_system(*mc, cfg);
  mc->add_option("--p", cfg.p, "canonical protocol parameter")->required();
  add_target(*mc, cfg);
  mc->add_option("--tmax", cfg.tmax, "number of steps (default 10)");
  mc->add_option("--samples", cfg.samples, "circuit realizations (default 20000)");
  mc->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  mc->add_option("--threads", cfg.threads, "worker threads, 0 for all cores")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "decay report for a range of protocols");
  add_system(*sweep, cfg);
  sweep->add_option("--p", cfg.p_range, "protocol parameter or range lo..hi")->required();
  add_target(*sweep, cfg);
  add_matrix(*sweep, cfg);
  sweep->add_option("--tmax", cfg.tmax, "number of steps (default 3n)");
  sweep->add_option("--window", cfg.window, "rate window lo:hi for lambda_eff");
  sweep->add_option("--threads", cfg.threads, "worker threads, 0 for all cores")->capture_default_str();
  add_report(*sweep, cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(purity::ExitCode::validation);
  }

  try {
    const auto* chosen = app.get_subcommands().front();
    cfg.command = chosen->get_name();
    if (!cfg.cut && !cfg.bipartition) cfg.cut = cfg.n / 2;
    if (chosen == reduce) return purity::cli::cmd_reduce(cfg);
    if (chosen == spectrum) return purity::cli::cmd_spectrum(cfg);
    if (chosen == evolve) return purity::cli::cmd_evolve(cfg);
    if (chosen == mc) return purity::cli::cmd_mc(cfg);
    return purity::cli::cmd_sweep(cfg);
  } catch (const purity::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
}
