#ifndef QSD_LINALG_HPP
#define QSD_LINALG_HPP

#include "qsd/types.hpp"

#include <vector>

namespace qsd {

// Spectral decomposition of a Hermitian operator. Eigenvalues are sorted
// descending; eigenvectors are the matching orthonormal columns with the
// first nonzero component of each column made real positive.
struct EigenSystem {
  rvec eigenvalues;
  cmat eigenvectors;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
  cmat reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
  }
};

// H = positive_part - negative_part with orthogonal supports. Eigenvalues in
// (-threshold, threshold) belong to neither part. neg_eigenvalues are stored
// positive.
struct JordanDecomposition {
  cmat positive_part;
  cmat negative_part;
  cmat pos_projector;
  cmat neg_projector;
  cmat pos_basis;  // orthonormal columns spanning the positive eigenspace
  cmat neg_basis;
  std::vector<double> pos_eigenvalues;
  std::vector<double> neg_eigenvalues;
  double threshold = 0.0;
};

struct EigenbasisFidelity {
  double value = 0.0;
  rvec e;      // diagonal of rho_i in the basis
  rvec f;      // diagonal of rho_j in the basis
  cmat basis;  // columns |l>
  bool regularized = false;
};

// Shared zero-eigenvalue classification rule: eig_scale * max(1, max_k |l_k|).
double default_eig_threshold(const rvec& eigenvalues,
                             double scale = tol::eig_scale);

// Cyclic Jacobi diagonalization of a Hermitian matrix. Deterministic: fixed
// sweep order and a fixed eigenvector sign convention, so repeated calls on
// identical input are bit-identical.
EigenSystem hermitian_eig(const cmat& h, int max_sweeps = 100,
                          double hermiticity_tol = tol::hermiticity);

// sum_k |lambda_k| of a Hermitian operator
double trace_norm(const cmat& h);

JordanDecomposition jordan_decompose(const cmat& h, double eig_threshold = -1.0);

// Requires eigenvalues >= -psd_tol with psd_tol = psd_scale * max(1, max|l|);
// values in [-psd_tol, 0) are clamped to 0. Negative psd_scale resolves to
// runtime_psd_scale().
cmat matrix_sqrt(const cmat& h, double psd_scale = -1.0);

// psd check used across the toolkit (relative tolerance, see matrix_sqrt)
bool is_psd(const cmat& h, double psd_scale = -1.0);
double min_eigenvalue(const cmat& h);

// Tr sqrt(A^{1/2} B A^{1/2}) for positive semidefinite A, B
double fidelity(const cmat& a, const cmat& b);

// (1/2) Tr|A - B| for Hermitian A, B
double trace_distance(const cmat& a, const cmat& b);

// Projector onto the span of eigenvectors with eigenvalue > threshold
cmat support_projector(const cmat& h, double eig_threshold = -1.0);

// Orthonormal basis diagonalizing rho_j^{-1/2} (rho_j^{1/2} rho_i
// rho_j^{1/2})^{1/2} rho_j^{-1/2}, together with the diagonals e_l, f_l of the
// two states in that basis; value = sum_l sqrt(e_l f_l) recovers the fidelity.
// rho_j must be full rank unless `regularize` replaces it by
// (1-eps) rho_j + eps I/d with eps = 1e-8 (flagged in the result).
EigenbasisFidelity fidelity_eigenbasis(const cmat& rho_i, const cmat& rho_j,
                                       bool regularize = false,
                                       double rank_tol = tol::rank);

// D(A,B) - [(Tr A + Tr B)/2 - F(A,B)]; nonnegative for every PSD pair
double fact1_gap(const cmat& a, const cmat& b);

}  // namespace qsd

#endif  // QSD_LINALG_HPP
