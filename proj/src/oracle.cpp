#include "qsd/oracle.hpp"

#include "qsd/linalg.hpp"

#include <cmath>
#include <sstream>

namespace qsd {

namespace {

// pseudo-inverse square root on the support, plus the complement projector
struct PinvSqrt {
  cmat w;           // M^{-1/2} restricted to the support
  cmat complement;  // I - support projector
};

PinvSqrt pinv_sqrt(const cmat& m) {
  const EigenSystem sys = hermitian_eig(m);
  const double thr = default_eig_threshold(sys.eigenvalues);
  const int n = sys.dim();
  cmat w = cmat::Zero(n, n);
  cmat supp = cmat::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    if (sys.eigenvalues(k) > thr) {
      const cvec vk = sys.eigenvectors.col(k);
      w += 1.0 / std::sqrt(sys.eigenvalues(k)) * (vk * vk.adjoint());
      supp += vk * vk.adjoint();
    }
  }
  return {w, cmat::Identity(n, n) - supp};
}

struct IterationOutcome {
  Povm povm;
  double success = 0.0;
  int iterations = 0;
};

IterationOutcome iterate_from(const WeightedEnsemble& e, Povm povm,
                              const OracleOptions& opts) {
  const int m = e.size();
  std::vector<cmat> weighted(m);
  for (int i = 0; i < m; ++i) weighted[i] = e.priors[i] * e.states[i];

  double success = success_probability(e, povm);
  int iter = 0;
  for (; iter < opts.max_iters; ++iter) {
    cmat lagrangian = cmat::Zero(e.dim, e.dim);
    for (int i = 0; i < m; ++i)
      lagrangian += weighted[i] * povm.elements[i] * weighted[i];
    const PinvSqrt ps = pinv_sqrt(hermitian_part(lagrangian));

    Povm next;
    next.dim = e.dim;
    next.elements.resize(m);
    for (int i = 0; i < m; ++i) {
      const cmat g = ps.w * weighted[i];
      next.elements[i] =
          hermitian_part(g * povm.elements[i] * g.adjoint() +
                         ps.complement / static_cast<double>(m));
    }

    const double next_success = success_probability(e, next);
    if (next_success < success - 1e-8) {
      std::ostringstream os;
      os << "success probability fell from " << success << " to "
         << next_success << " at iteration " << iter;
      throw NoProgressError(os.str());
    }
    const double gain = next_success - success;
    povm = std::move(next);
    success = next_success;
    if (gain < opts.tol) {
      ++iter;
      break;
    }
  }
  return {std::move(povm), success, iter};
}

Povm uniform_povm(int dim, int m) {
  Povm p;
  p.dim = dim;
  p.elements.assign(m, cmat::Identity(dim, dim) / static_cast<double>(m));
  return p;
}

}  // namespace

OracleResult optimize_min_error(const WeightedEnsemble& e,
                                const OracleOptions& opts) {
  require_valid(e);
  const int m = e.size();

  OracleResult best;
  best.q_star = 1.0;
  double best_success = -1.0;

  Rng rng(derive_seed(opts.seed, "oracle_restart"));
  for (int r = 0; r < std::max(opts.restarts, 1); ++r) {
    Povm start = r == 0 ? uniform_povm(e.dim, m) : random_povm(e.dim, m, rng);
    IterationOutcome out = iterate_from(e, std::move(start), opts);
    if (out.success > best_success) {
      best_success = out.success;
      best.povm = std::move(out.povm);
      best.iterations = out.iterations;
    }
    ++best.restarts_used;
  }

  require_valid(best.povm);
  const double check = success_probability(e, best.povm);
  if (std::abs(check - best_success) > 1e-10)
    throw NoProgressError("success probability bookkeeping drifted by " +
                          std::to_string(std::abs(check - best_success)));

  best.q_star = std::min(std::max(1.0 - best_success, 0.0), 1.0);
  best.certificate = hykl_certificate(e, best.povm, opts.cert_tol);
  return best;
}

Povm square_root_measurement(const WeightedEnsemble& e) {
  require_valid(e);
  cmat s = cmat::Zero(e.dim, e.dim);
  for (int i = 0; i < e.size(); ++i) s += e.priors[i] * e.states[i];
  const PinvSqrt ps = pinv_sqrt(hermitian_part(s));

  Povm p;
  p.dim = e.dim;
  for (int i = 0; i < e.size(); ++i)
    p.elements.push_back(
        hermitian_part(ps.w * (e.priors[i] * e.states[i]) * ps.w));
  p.elements[0] += ps.complement;
  return p;
}

std::vector<Cor1Hit> search_cor1(const GeneratorSpec& spec, int trials) {
  if (trials < 1) throw ValidationError("search_cor1: trials must be >= 1");
  std::vector<Cor1Hit> hits;
  for (int t = 0; t < trials; ++t) {
    GeneratorSpec trial_spec = spec;
    trial_spec.seed = derive_seed(spec.seed, "search_cor1",
                                  static_cast<std::uint64_t>(t));
    WeightedEnsemble e = generate(trial_spec);
    ConditionReport rep = check_corollary1_conditions(e);
    if (rep.corollary1_pass())
      hits.push_back({t, trial_spec.seed, std::move(e), rep});
  }
  return hits;
}

}  // namespace qsd
