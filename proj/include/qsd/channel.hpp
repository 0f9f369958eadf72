#ifndef QSD_CHANNEL_HPP
#define QSD_CHANNEL_HPP

#include "qsd/rng.hpp"
#include "qsd/types.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace qsd {

// Trace-preserving quantum operation in Kraus form; dim_out may differ from
// dim_in.
struct QuantumChannel {
  int dim_in = 0;
  int dim_out = 0;
  std::vector<cmat> kraus;
};

// || sum K^dag K - I ||_F <= trace_tol, shape consistency
void require_valid(const QuantumChannel& c, double trace_tol = 1e-8);

// sum_a K_a rho K_a^dag
cmat apply(const QuantumChannel& c, const cmat& rho);

struct ChannelBoundOptions {
  int samples = 20000;
  bool refine = true;
  std::uint64_t seed = 0;
};

struct ChannelBoundResult {
  double bound = 0.0;
  cmat argmin_state;  // rank-1 density on the input space
  int samples = 0;
  bool refined = false;
};

// Minimum over input states of the state-level lower bound applied to the
// channel outputs:
//   f(psi) = (1/2)(1 - (1/(m-1)) sum_{i<j} Tr|eta_j E_j(psi) - eta_i E_i(psi)|).
// f is concave on the state set (trace norm of an affine image is convex), so
// the minimum sits at an extreme point and pure inputs suffice. Seeded Haar
// samples plus an optional coordinate-wise spherical descent (step halving
// 0.1 -> 1e-4) from the best sample.
ChannelBoundResult channel_bound(const std::vector<QuantumChannel>& channels,
                                 const std::vector<double>& priors,
                                 const ChannelBoundOptions& opts = {});

}  // namespace qsd

#endif  // QSD_CHANNEL_HPP
