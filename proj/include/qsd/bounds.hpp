#ifndef QSD_BOUNDS_HPP
#define QSD_BOUNDS_HPP

#include "qsd/ensemble.hpp"
#include "qsd/measurement.hpp"
#include "qsd/types.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qsd {

struct PairValue {
  int i = 0;
  int j = 0;
  double value = 0.0;
};

struct Theorem3Result {
  double value = 0.0;
  ConditionReport conditions;
  bool certified = false;
};

struct UnambiguousBounds {
  double feng = 0.0;      // sqrt( m/(m-1) sum_{i != j} eta_i eta_j F_ij^2 )
  double pairwise = 0.0;  // 2/(m-1) sum_{i<j} sqrt(eta_i eta_j) F_ij
};

struct Theorem4Check {
  double lhs122 = 0.0;
  bool holds = false;
  double two_qa = 0.0;
  double qu_pairwise = 0.0;
};

struct BoundsReport {
  int m = 0;
  int dim = 0;
  std::vector<PairValue> pairwise_trace_norms;  // Tr|Lambda_ij|
  double q_lower = 0.0;
  std::optional<double> helstrom;  // m = 2 only (same formula as q_lower)
  std::optional<Theorem3Result> q_upper_t3;
  double qu_lower_feng = 0.0;
  double qu_lower_pairwise = 0.0;
  double ineq122_lhs = 0.0;
  std::optional<double> attainment_gap;  // set when a POVM is supplied
  std::vector<std::string> warnings;
};

// (1/2)(1 - (1/(m-1)) sum_{i<j} Tr|eta_j rho_j - eta_i rho_i|), clamped at 0
// when roundoff pushes it a hair negative.
double pairwise_lower_bound(const WeightedEnsemble& e);

// (1/2)(1 - Tr|eta_2 rho_2 - eta_1 rho_1|), the exact two-state optimum
double helstrom_value(const WeightedEnsemble& e);

// Lower bound plus the correction (1/(2(m-1))) sum_{2<=i<j<=m}
// (eta_i + eta_1 - Tr|Lambda_1i|). The value is a certified upper bound only
// when the orthogonality conditions hold (always at m = 2, where the lower
// bound is exact); otherwise it is returned uncertified. State 0 plays the
// distinguished role, so ordering matters.
Theorem3Result upper_bound_theorem3(const WeightedEnsemble& e,
                                    double ortho_tol = tol::ortho);

UnambiguousBounds unambiguous_lower_bounds(const WeightedEnsemble& e);

// lhs122 = (1/(m-1)) sum Tr|Lambda_ij| + pairwise bound; holds iff >= 1 up to
// 1e-8. qu_pairwise >= two_qa is the same statement rearranged.
Theorem4Check theorem4_check(const WeightedEnsemble& e);

// Aggregates every bound plus internal identity checks; violations land in
// `warnings` rather than throwing.
BoundsReport full_report(const WeightedEnsemble& e, const Povm* povm = nullptr);

}  // namespace qsd

#endif  // QSD_BOUNDS_HPP
