#ifndef QSD_CLI_HPP
#define QSD_CLI_HPP

#include "qsd/types.hpp"

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace qsd {

enum class Command {
  gen,
  bounds,
  check,
  construct_povm,
  optimize,
  channels,
  compare,
  search_cor1,
};

struct RunConfig {
  Command command = Command::bounds;
  std::vector<std::string> inputs;  // files, or a directory of .ens.json
  std::string output;               // empty -> stdout for JSON artifacts
  std::string csv_path;

  std::uint64_t seed = 0;
  double tol_psd = tol::psd_scale;
  double tol_ortho = tol::ortho;
  double tol_cert = tol::cert;
  int trials = 100;
  int restarts = 8;
  int samples = 20000;
  bool refine = true;
  bool best_first = false;
  bool strict = false;

  // gen / search-cor1 generator parameters
  std::string kind = "ginibre_full_rank";
  int dim = 2;
  int m = 2;
  std::optional<int> rank;
  std::optional<std::vector<double>> priors;
};

// Executes one command. Artifacts are written to files (or `out` when no
// output path is set); human-readable progress goes to `out`, machine-readable
// error/warning JSON lines to `err`. Returns 0 on success, 1 on any
// validation/parse/numerical error, 2 when --strict escalates warnings.
int run(const RunConfig& cfg, std::ostream& out = std::cout,
        std::ostream& err = std::cerr);

}  // namespace qsd

#endif  // QSD_CLI_HPP
