// Command-line front end: state-ensemble generation, discrimination bounds,
// attainment checks, POVM construction, numerical optimization, and channel
// bounds. See README.md for the file formats.

#include "qsd/cli.hpp"

#include <CLI11.hpp>

#include <map>
#include <string>
#include <vector>

namespace {

void add_common_flags(CLI::App* cmd, qsd::RunConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "base seed; all randomness derives from it");
  cmd->add_option("--tol-psd", cfg.tol_psd, "relative PSD tolerance scale")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-ortho", cfg.tol_ortho, "orthogonality residual tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-cert", cfg.tol_cert, "optimality certificate tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_flag("--strict", cfg.strict,
                "exit 2 when numerical-health warnings appear");
}

void add_generator_flags(CLI::App* cmd, qsd::RunConfig& cfg,
                         std::vector<double>& priors) {
  cmd->add_option("--kind", cfg.kind,
                  "ginibre_full_rank | ginibre_rank_r | pure | block_orthogonal");
  cmd->add_option("--dim", cfg.dim, "Hilbert space dimension")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--m", cfg.m, "number of states")->check(CLI::PositiveNumber);
  cmd->add_option("--rank", cfg.rank, "state rank (ginibre_rank_r)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--priors", priors, "explicit priors (default uniform)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bounds and measurements for minimum-error discrimination of "
               "weighted mixed states"};
  app.require_subcommand(1);

  qsd::RunConfig cfg;
  std::vector<double> priors;
  std::map<std::string, qsd::Command> names = {
      {"gen", qsd::Command::gen},
      {"bounds", qsd::Command::bounds},
      {"check", qsd::Command::check},
      {"construct-povm", qsd::Command::construct_povm},
      {"optimize", qsd::Command::optimize},
      {"channels", qsd::Command::channels},
      {"compare", qsd::Command::compare},
      {"search-cor1", qsd::Command::search_cor1},
  };

  auto* gen = app.add_subcommand("gen", "generate a random ensemble");
  add_generator_flags(gen, cfg, priors);
  gen->add_option("-o,--output", cfg.output, "output .ens.json path");

  auto* bounds = app.add_subcommand("bounds", "compute the bounds report");
  bounds->add_option("input", cfg.inputs, "ensemble file(s) or directory")
      ->required();
  bounds->add_option("-o,--output", cfg.output, "report path (or directory)");
  bounds->add_option("--csv", cfg.csv_path, "also write a CSV sweep row per input");
  bounds->add_flag("--best-first", cfg.best_first,
                   "try every state as the distinguished one and keep the "
                   "smallest certified upper bound");

  auto* check = app.add_subcommand("check", "evaluate attainment conditions");
  check->add_option("input", cfg.inputs, "ensemble file(s) or directory")
      ->required();
  check->add_option("-o,--output", cfg.output, "condition report path");

  auto* construct =
      app.add_subcommand("construct-povm", "build the attainment POVM");
  construct->add_option("input", cfg.inputs, "ensemble file")->required();
  construct->add_option("-o,--output", cfg.output, "output .povm.json path");

  auto* optimize =
      app.add_subcommand("optimize", "fixed-point minimum-error optimizer");
  optimize->add_option("input", cfg.inputs, "ensemble file")->required();
  optimize->add_option("-o,--output", cfg.output, "oracle result path");
  optimize->add_option("--restarts", cfg.restarts, "optimizer restarts")
      ->check(CLI::PositiveNumber);

  auto* channels =
      app.add_subcommand("channels", "operation-discrimination lower bound");
  channels->add_option("input", cfg.inputs, "channel .chan.json files")
      ->required();
  channels->add_option("--priors", priors, "channel priors")->required();
  channels->add_option("--samples", cfg.samples, "input-state samples")
      ->check(CLI::PositiveNumber);
  channels->add_flag("!--no-refine", cfg.refine, "disable local refinement");
  channels->add_option("-o,--output", cfg.output, "result path");

  auto* compare =
      app.add_subcommand("compare", "bounds vs optimizer table across files");
  compare->add_option("input", cfg.inputs, "ensemble file(s) or directory")
      ->required();
  compare->add_option("--csv", cfg.csv_path, "CSV output path");
  compare->add_option("--restarts", cfg.restarts, "optimizer restarts")
      ->check(CLI::PositiveNumber);

  auto* search = app.add_subcommand(
      "search-cor1", "random search for condition-satisfying ensembles");
  add_generator_flags(search, cfg, priors);
  search->add_option("--trials", cfg.trials, "number of random ensembles")
      ->check(CLI::PositiveNumber);
  search->add_option("-o,--output", cfg.output, "hit list path");

  for (auto* cmd : {gen, bounds, check, construct, optimize, channels, compare,
                    search})
    add_common_flags(cmd, cfg);

  CLI11_PARSE(app, argc, argv);

  cfg.command = names.at(app.get_subcommands().front()->get_name());
  if (!priors.empty()) cfg.priors = priors;
  return qsd::run(cfg);
}
