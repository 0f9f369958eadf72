#include "qsd/bounds.hpp"

#include <cmath>
#include <sstream>

namespace qsd {

namespace {

double lambda_norm_sum(const WeightedEnsemble& e,
                       std::vector<PairValue>* pairs = nullptr) {
  double sum = 0.0;
  for (int i = 0; i < e.size() - 1; ++i) {
    for (int j = i + 1; j < e.size(); ++j) {
      const double tn = trace_norm(e.lambda(i, j));
      sum += tn;
      if (pairs) pairs->push_back({i, j, tn});
    }
  }
  return sum;
}

double q_lower_raw(const WeightedEnsemble& e) {
  return 0.5 * (1.0 - lambda_norm_sum(e) / (e.size() - 1));
}

}  // namespace

double pairwise_lower_bound(const WeightedEnsemble& e) {
  require_valid(e);
  if (e.size() < 2)
    throw WrongStateCountError("pairwise_lower_bound needs m >= 2");
  return std::max(q_lower_raw(e), 0.0);
}

double helstrom_value(const WeightedEnsemble& e) {
  require_valid(e);
  if (e.size() != 2)
    throw WrongStateCountError("helstrom_value needs exactly 2 states, got " +
                               std::to_string(e.size()));
  return 0.5 * (1.0 - trace_norm(e.lambda(0, 1)));
}

Theorem3Result upper_bound_theorem3(const WeightedEnsemble& e,
                                    double ortho_tol) {
  require_valid(e);
  const int m = e.size();

  Theorem3Result out;
  out.conditions = check_theorem2_conditions(e, ortho_tol);
  // At m = 2 the lower bound is always attained, so the value is a correct
  // upper bound regardless of the orthogonality residuals.
  out.certified = m == 2 || out.conditions.theorem3_pass();

  double correction = 0.0;
  for (int i = 1; i < m - 1; ++i)
    for (int j = i + 1; j < m; ++j)
      correction +=
          e.priors[i] + e.priors[0] - trace_norm(e.lambda(0, i));
  out.value = q_lower_raw(e) + correction / (2.0 * (m - 1));
  return out;
}

UnambiguousBounds unambiguous_lower_bounds(const WeightedEnsemble& e) {
  require_valid(e);
  const int m = e.size();
  UnambiguousBounds out;
  double sq = 0.0;
  for (int i = 0; i < m - 1; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double fid = fidelity(e.states[i], e.states[j]);
      const double w = e.priors[i] * e.priors[j];
      sq += 2.0 * w * fid * fid;  // ordered pairs (i,j) and (j,i)
      out.pairwise += 2.0 / (m - 1) * std::sqrt(w) * fid;
    }
  }
  out.feng = std::sqrt(static_cast<double>(m) / (m - 1) * sq);
  return out;
}

Theorem4Check theorem4_check(const WeightedEnsemble& e) {
  require_valid(e);
  const int m = e.size();
  Theorem4Check out;
  out.qu_pairwise = unambiguous_lower_bounds(e).pairwise;
  out.lhs122 = lambda_norm_sum(e) / (m - 1) + out.qu_pairwise;
  out.holds = out.lhs122 >= 1.0 - 1e-8;
  out.two_qa = 2.0 * q_lower_raw(e);
  return out;
}

BoundsReport full_report(const WeightedEnsemble& e, const Povm* povm) {
  require_valid(e);
  const int m = e.size();

  BoundsReport rep;
  rep.m = m;
  rep.dim = e.dim;
  for (const std::string& w : validate(e).warnings) rep.warnings.push_back(w);

  const double norm_sum = lambda_norm_sum(e, &rep.pairwise_trace_norms);
  const double raw = 0.5 * (1.0 - norm_sum / (m - 1));
  if (raw < -1e-9) {
    std::ostringstream os;
    os << "pairwise lower bound " << raw << " below -1e-9; numerics suspect";
    rep.warnings.push_back(os.str());
  }
  rep.q_lower = std::max(raw, 0.0);

  if (m == 2) rep.helstrom = helstrom_value(e);
  rep.q_upper_t3 = upper_bound_theorem3(e);

  const UnambiguousBounds qu = unambiguous_lower_bounds(e);
  rep.qu_lower_feng = qu.feng;
  rep.qu_lower_pairwise = qu.pairwise;
  rep.ineq122_lhs = norm_sum / (m - 1) + qu.pairwise;

  // prior identity: (1/(m-1)) sum_{i<j} (eta_i + eta_j) = 1
  double prior_sum = 0.0;
  for (int i = 0; i < m - 1; ++i)
    for (int j = i + 1; j < m; ++j) prior_sum += e.priors[i] + e.priors[j];
  const double prior_res = std::abs(prior_sum / (m - 1) - 1.0);
  if (prior_res > 1e-12) {
    std::ostringstream os;
    os << "prior identity residual " << prior_res << " exceeds 1e-12";
    rep.warnings.push_back(os.str());
  }

  // spectral identity: (1/2)(1 + (1/(m-1)) sum Tr|Lambda_ij|) must equal
  // (1/(m-1)) sum_{i<j} (eta_i + sum_k a_k^{(ij)})
  double pos_sum = 0.0;
  for (int i = 0; i < m - 1; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const JordanDecomposition jd = jordan_decompose(e.lambda(i, j));
      pos_sum += e.priors[i];
      for (double a : jd.pos_eigenvalues) pos_sum += a;
    }
  }
  const double internal_res =
      std::abs(0.5 * (1.0 + norm_sum / (m - 1)) - pos_sum / (m - 1));
  if (internal_res > 1e-9) {
    std::ostringstream os;
    os << "spectral identity residual " << internal_res << " exceeds 1e-9";
    rep.warnings.push_back(os.str());
  }

  // fidelity asymmetry is a numerical-health signal, not an error
  for (int i = 0; i < m - 1; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const double asym = std::abs(fidelity(e.states[i], e.states[j]) -
                                   fidelity(e.states[j], e.states[i]));
      if (asym > 1e-8) {
        std::ostringstream os;
        os << "fidelity(" << i << "," << j << ") asymmetry " << asym;
        rep.warnings.push_back(os.str());
      }
    }
  }

  if (povm) rep.attainment_gap = attainment_residual(e, *povm);
  return rep;
}

}  // namespace qsd
