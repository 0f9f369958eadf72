#ifndef QSD_MEASUREMENT_HPP
#define QSD_MEASUREMENT_HPP

#include "qsd/ensemble.hpp"
#include "qsd/linalg.hpp"
#include "qsd/types.hpp"

#include <vector>

namespace qsd {

// m positive operators resolving the identity
struct Povm {
  int dim = 0;
  std::vector<cmat> elements;

  int size() const { return static_cast<int>(elements.size()); }
};

// Checks PSD of every element and || sum Pi - I ||_F; throws ValidationError.
void require_valid(const Povm& p, double psd_scale = -1.0,
                   double sum_tol = tol::povm_sum);

// Random PSD resolution of the identity: Pi_i = S^{-1/2} R_i S^{-1/2} with
// R_i full-rank Ginibre squares and S their sum.
Povm random_povm(int dim, int outcomes, Rng& rng);

// 1 - sum_i eta_i Tr(rho_i Pi_i)
double error_probability(const WeightedEnsemble& e, const Povm& p);
double success_probability(const WeightedEnsemble& e, const Povm& p);

// Two-state minimum-error measurement: Pi_2 projects onto the positive
// eigenspace of eta_2 rho_2 - eta_1 rho_1, Pi_1 = I - Pi_2.
Povm helstrom_povm(const WeightedEnsemble& e);

// Per-pair positive/negative eigenspace projectors of Lambda_ij, plus the
// accumulated subspaces S_k spanned by the positive eigenspaces of
// Lambda_1k .. Lambda_{k-1,k}, k = 2..m.
struct PairSubspaces {
  cmat pos_projector;
  cmat neg_projector;
  cmat pos_basis;
  cmat neg_basis;
  int pos_dim = 0;
  int neg_dim = 0;
};

struct SubspaceReport {
  int m = 0;
  int dim = 0;
  std::vector<PairSubspaces> pairs;  // indexed by pair_index(i, j, m)
  std::vector<cmat> s_projectors;    // P_k, k = 2..m -> index k-2
  std::vector<int> s_dims;

  const PairSubspaces& pair(int i, int j) const;
};

int pair_index(int i, int j, int m);

SubspaceReport compute_subspaces(const WeightedEnsemble& e,
                                 double eig_threshold = -1.0);

struct ConditionCheck {
  bool holds = false;
  double residual = 0.0;
};

// Residuals for the exact-attainment conditions:
//   cond_i   max over i1,i2 < j of ||P^+_{i1 j} P^-_{i2 j}||_F
//   cond_ii  max over 2 <= i < j of ||P_i P_j||_F
//   cond_s1  max over j >= 2 of ||P_{S1} P_j||_F, S1 the support of rho_1
//   cond_eta max over 2 <= i <= m-1 of |eta_i + eta_1 - Tr|Lambda_1i||
struct ConditionReport {
  ConditionCheck cond_i;
  ConditionCheck cond_ii;
  ConditionCheck cond_s1;
  ConditionCheck cond_eta;
  double tolerance = tol::ortho;

  bool theorem2_pass() const { return cond_i.holds && cond_ii.holds; }
  bool theorem3_pass() const { return theorem2_pass() && cond_s1.holds; }
  bool corollary1_pass() const { return theorem3_pass() && cond_eta.holds; }
};

ConditionReport check_theorem2_conditions(const WeightedEnsemble& e,
                                          double ortho_tol = tol::ortho);
ConditionReport check_corollary1_conditions(const WeightedEnsemble& e,
                                            double ortho_tol = tol::ortho);

// Pi_j = P_j for j >= 2, Pi_1 = I - sum. Requires the two orthogonality
// conditions; throws ConditionsFailError otherwise, NotPsdError when Pi_1
// develops an eigenvalue below -1e-8 (tolerance breakdown).
Povm theorem2_povm(const WeightedEnsemble& e, double ortho_tol = tol::ortho);

// | lhs - rhs | of the attainment identity
//   (1/(m-1)) sum_{i<j} [eta_i + Tr(Lambda_ij Pi_j)]
//     = (1/2)(1 + (1/(m-1)) sum_{i<j} Tr|Lambda_ij|)
double attainment_residual(const WeightedEnsemble& e, const Povm& p);

// Operator optimality certificate: with M = herm(sum_i eta_i rho_i Pi_i),
// every M - eta_j rho_j must be PSD up to cert_tol. The Hermitian residue of
// M is itself evidence of non-optimality, so asymmetry above 1e-6 fails the
// certificate.
struct Certificate {
  bool optimal = false;
  double worst_min_eig = 0.0;
  double asymmetry = 0.0;
};

Certificate hykl_certificate(const WeightedEnsemble& e, const Povm& p,
                             double cert_tol = tol::cert);

}  // namespace qsd

#endif  // QSD_MEASUREMENT_HPP
