#ifndef QSD_ORACLE_HPP
#define QSD_ORACLE_HPP

#include "qsd/ensemble.hpp"
#include "qsd/measurement.hpp"

#include <cstdint>
#include <vector>

namespace qsd {

struct OracleOptions {
  int max_iters = 2000;
  double tol = 1e-9;  // convergence threshold on success-probability change
  int restarts = 8;
  std::uint64_t seed = 0;
  double cert_tol = tol::cert;
};

struct OracleResult {
  double q_star = 1.0;
  Povm povm;
  int iterations = 0;  // iterations used by the winning restart
  Certificate certificate;
  int restarts_used = 0;
};

// Fixed-point iteration on POVMs maximizing the success probability:
//   M = sum_j G_j Pi_j G_j,   Pi_i <- M^{-1/2} G_i Pi_i G_i M^{-1/2}
// with G_i = eta_i rho_i and the pseudo-inverse square root taken on the
// support of M; identity mass outside the support is redistributed uniformly.
// Restart 0 starts from Pi_i = I/m, the rest from random PSD resolutions;
// the best success over restarts wins (ties broken by restart index).
// Throws NoProgressError if an accepted step decreases success by > 1e-8.
OracleResult optimize_min_error(const WeightedEnsemble& e,
                                const OracleOptions& opts = {});

// Pi_i = S^{-1/2} eta_i rho_i S^{-1/2} with S = sum eta_j rho_j; the part of
// the identity outside the support of S is folded into Pi_1.
Povm square_root_measurement(const WeightedEnsemble& e);

struct Cor1Hit {
  int trial = 0;
  std::uint64_t seed = 0;
  WeightedEnsemble ensemble;
  ConditionReport report;
};

// Generates `trials` ensembles from the spec (stream seed + trial index) and
// returns those passing all four exact-attainment conditions.
std::vector<Cor1Hit> search_cor1(const GeneratorSpec& spec, int trials);

}  // namespace qsd

#endif  // QSD_ORACLE_HPP
