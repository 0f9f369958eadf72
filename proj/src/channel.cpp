#include "qsd/channel.hpp"

#include "qsd/ensemble.hpp"
#include "qsd/linalg.hpp"

#include <cmath>

namespace qsd {

void require_valid(const QuantumChannel& c, double trace_tol) {
  if (c.dim_in < 1 || c.dim_out < 1)
    throw DimensionMismatchError("channel dimensions must be positive");
  if (c.kraus.empty()) throw ValidationError("channel has no Kraus operators");
  cmat sum = cmat::Zero(c.dim_in, c.dim_in);
  for (std::size_t a = 0; a < c.kraus.size(); ++a) {
    const cmat& k = c.kraus[a];
    if (k.rows() != c.dim_out || k.cols() != c.dim_in)
      throw DimensionMismatchError("kraus operator " + std::to_string(a) +
                                   " is " + std::to_string(k.rows()) + "x" +
                                   std::to_string(k.cols()) + ", expected " +
                                   std::to_string(c.dim_out) + "x" +
                                   std::to_string(c.dim_in));
    sum += k.adjoint() * k;
  }
  const double res = (sum - cmat::Identity(c.dim_in, c.dim_in)).norm();
  if (res > trace_tol)
    throw ValidationError("channel is not trace preserving, residual " +
                          std::to_string(res));
}

cmat apply(const QuantumChannel& c, const cmat& rho) {
  if (rho.rows() != c.dim_in || rho.cols() != c.dim_in)
    throw DimensionMismatchError("apply: state dim " +
                                 std::to_string(rho.rows()) +
                                 " != channel input dim " +
                                 std::to_string(c.dim_in));
  cmat out = cmat::Zero(c.dim_out, c.dim_out);
  for (const cmat& k : c.kraus) out += k * rho * k.adjoint();
  return hermitian_part(out);
}

namespace {

double pairwise_objective(const std::vector<QuantumChannel>& channels,
                          const std::vector<double>& priors, const cvec& psi) {
  const int m = static_cast<int>(channels.size());
  const cmat rho = psi * psi.adjoint();
  std::vector<cmat> outputs(m);
  for (int i = 0; i < m; ++i) outputs[i] = apply(channels[i], rho);

  double norm_sum = 0.0;
  for (int i = 0; i < m - 1; ++i)
    for (int j = i + 1; j < m; ++j)
      norm_sum += trace_norm(priors[j] * outputs[j] - priors[i] * outputs[i]);
  return 0.5 * (1.0 - norm_sum / (m - 1));
}

}  // namespace

ChannelBoundResult channel_bound(const std::vector<QuantumChannel>& channels,
                                 const std::vector<double>& priors,
                                 const ChannelBoundOptions& opts) {
  if (channels.empty()) throw EmptyChannelListError("no channels supplied");
  const int m = static_cast<int>(channels.size());
  if (m < 2) throw WrongStateCountError("channel_bound needs m >= 2 channels");

  const int dim_in = channels.front().dim_in;
  const int dim_out = channels.front().dim_out;
  for (const QuantumChannel& c : channels) {
    require_valid(c);
    if (c.dim_in != dim_in || c.dim_out != dim_out)
      throw DimensionMismatchError("channels must share input/output dims");
  }
  const std::vector<double> eta =
      resolve_priors(std::optional<std::vector<double>>(priors), m);

  Rng rng(derive_seed(opts.seed, "channel_bound_samples"));
  cvec best_psi = rng.haar_state(dim_in);
  double best = pairwise_objective(channels, eta, best_psi);
  const int samples = std::max(opts.samples, 1);
  for (int s = 1; s < samples; ++s) {
    const cvec psi = rng.haar_state(dim_in);
    const double f = pairwise_objective(channels, eta, psi);
    if (f < best) {
      best = f;
      best_psi = psi;
    }
  }

  if (opts.refine) {
    for (double step = 0.1; step >= 1e-4;) {
      bool improved = false;
      for (int k = 0; k < dim_in; ++k) {
        for (const cplx delta :
             {cplx(step, 0), cplx(-step, 0), cplx(0, step), cplx(0, -step)}) {
          cvec cand = best_psi;
          cand(k) += delta;
          cand /= cand.norm();
          const double f = pairwise_objective(channels, eta, cand);
          if (f < best) {
            best = f;
            best_psi = cand;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
  }

  ChannelBoundResult out;
  out.bound = best;
  out.argmin_state = best_psi * best_psi.adjoint();
  out.samples = samples;
  out.refined = opts.refine;
  return out;
}

}  // namespace qsd
