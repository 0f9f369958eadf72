#ifndef QSD_TESTS_HELPERS_HPP
#define QSD_TESTS_HELPERS_HPP

// Shared fixtures and reference computations. The reference eigensolver here
// is Eigen's SelfAdjointEigenSolver, a path fully independent of the Jacobi
// sweep inside the library; reference values must never be produced by the
// code under test.

#include "qsd/ensemble.hpp"
#include "qsd/rng.hpp"
#include "qsd/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <vector>

namespace qsd::testing {

// ---- independent reference routes -----------------------------------------

inline rvec ref_eigvals_ascending(const cmat& h) {
  Eigen::SelfAdjointEigenSolver<cmat> solver(h);
  return solver.eigenvalues();
}

inline double ref_trace_norm(const cmat& h) {
  return ref_eigvals_ascending(h).cwiseAbs().sum();
}

inline double ref_min_eig(const cmat& h) {
  return ref_eigvals_ascending(h).minCoeff();
}

inline cmat ref_sqrt(const cmat& h) {
  Eigen::SelfAdjointEigenSolver<cmat> solver(h);
  rvec vals = solver.eigenvalues();
  for (int k = 0; k < vals.size(); ++k)
    vals(k) = std::sqrt(std::max(vals(k), 0.0));
  return solver.eigenvectors() * vals.asDiagonal() *
         solver.eigenvectors().adjoint();
}

inline double ref_fidelity(const cmat& a, const cmat& b) {
  const cmat sa = ref_sqrt(a);
  rvec vals = ref_eigvals_ascending(0.5 * (sa * b * sa +
                                           (sa * b * sa).adjoint()));
  double f = 0.0;
  for (int k = 0; k < vals.size(); ++k)
    f += std::sqrt(std::max(vals(k), 0.0));
  return f;
}

// ---- fixtures --------------------------------------------------------------

inline cvec basis_ket(int k, int dim) {
  cvec v = cvec::Zero(dim);
  v(k) = 1.0;
  return v;
}

inline cmat projector(const cvec& v) { return v * v.adjoint(); }

inline cvec ket_plus() {
  cvec v(2);
  v << 1.0, 1.0;
  return v / std::sqrt(2.0);
}

inline cmat random_hermitian(int dim, Rng& rng) {
  const cmat g = rng.ginibre(dim, dim);
  return 0.5 * (g + g.adjoint());
}

inline cmat random_psd(int dim, int rank, Rng& rng) {
  const cmat g = rng.ginibre(dim, rank);
  return g * g.adjoint();
}

// |0>, |+> with equal priors
inline WeightedEnsemble zero_plus_ensemble() {
  WeightedEnsemble e;
  e.dim = 2;
  e.priors = {0.5, 0.5};
  e.states = {projector(basis_ket(0, 2)), projector(ket_plus())};
  return e;
}

// three equiprobable pure qubit states with pairwise overlap 1/4 (Bloch
// vectors 120 degrees apart in the x-z plane)
inline WeightedEnsemble trine_ensemble() {
  WeightedEnsemble e;
  e.dim = 2;
  e.priors = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  for (int k = 0; k < 3; ++k) {
    const double theta = 2.0 * M_PI * k / 3.0;
    cvec v(2);
    v << std::cos(theta / 2.0), std::sin(theta / 2.0);
    e.states.push_back(projector(v));
  }
  return e;
}

// random mixed ensemble battery entry: deterministic in `index`
inline WeightedEnsemble random_ensemble(int m, int dim, std::uint64_t seed,
                                        bool random_priors = true) {
  Rng rng(derive_seed(seed, "test_random_ensemble"));
  WeightedEnsemble e;
  e.dim = dim;
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    const double w = random_priors ? 0.2 + rng.uniform() : 1.0;
    e.priors.push_back(w);
    sum += w;
  }
  for (double& p : e.priors) p /= sum;
  for (int i = 0; i < m; ++i) {
    const int rank = 1 + static_cast<int>(rng.uniform() * dim) % dim;
    const cmat g = rng.ginibre(dim, rank);
    cmat rho = g * g.adjoint();
    rho /= rho.trace().real();
    e.states.push_back(hermitian_part(rho));
  }
  return e;
}

inline WeightedEnsemble block_orthogonal_ensemble(int m, int dim,
                                                  std::uint64_t seed) {
  GeneratorSpec spec;
  spec.kind = EnsembleKind::block_orthogonal;
  spec.dim = dim;
  spec.m = m;
  spec.seed = derive_seed(seed, "test_block_ensemble");
  WeightedEnsemble e = generate(spec);
  Rng rng(derive_seed(seed, "test_block_priors"));
  double sum = 0.0;
  for (double& p : e.priors) {
    p = 0.2 + rng.uniform();
    sum += p;
  }
  for (double& p : e.priors) p /= sum;
  return e;
}

}  // namespace qsd::testing

#endif  // QSD_TESTS_HELPERS_HPP
