#include "qsd/measurement.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace qsd {

void require_valid(const Povm& p, double psd_scale, double sum_tol) {
  psd_scale = resolve_psd_scale(psd_scale);
  if (p.elements.empty()) throw ValidationError("povm has no elements");
  cmat sum = cmat::Zero(p.dim, p.dim);
  for (std::size_t i = 0; i < p.elements.size(); ++i) {
    const cmat& pi = p.elements[i];
    if (pi.rows() != p.dim || pi.cols() != p.dim)
      throw DimensionMismatchError("povm element " + std::to_string(i) +
                                   " has wrong shape");
    require_hermitian(pi, "povm element");
    const double mineig = min_eigenvalue(pi);
    if (mineig < -psd_scale * std::max(1.0, pi.norm()))
      throw ValidationError("povm element " + std::to_string(i) +
                            " not PSD, min eig " + std::to_string(mineig));
    sum += pi;
  }
  const double res = (sum - cmat::Identity(p.dim, p.dim)).norm();
  if (res > sum_tol)
    throw ValidationError("povm does not resolve identity, residual " +
                          std::to_string(res));
}

Povm random_povm(int dim, int outcomes, Rng& rng) {
  std::vector<cmat> parts;
  cmat sum = cmat::Zero(dim, dim);
  for (int i = 0; i < outcomes; ++i) {
    const cmat g = rng.ginibre(dim, dim);
    parts.push_back(hermitian_part(g * g.adjoint()));
    sum += parts.back();
  }
  // S is full rank with probability 1, so the plain inverse square root works
  const EigenSystem sys = hermitian_eig(sum);
  rvec inv_sqrt(sys.dim());
  for (int k = 0; k < sys.dim(); ++k)
    inv_sqrt(k) = 1.0 / std::sqrt(sys.eigenvalues(k));
  const cmat w =
      sys.eigenvectors * inv_sqrt.asDiagonal() * sys.eigenvectors.adjoint();

  Povm p;
  p.dim = dim;
  for (const cmat& r : parts) p.elements.push_back(hermitian_part(w * r * w));
  return p;
}

static void require_match(const WeightedEnsemble& e, const Povm& p) {
  if (e.dim != p.dim)
    throw DimensionMismatchError("ensemble dim " + std::to_string(e.dim) +
                                 " != povm dim " + std::to_string(p.dim));
  if (e.size() != p.size())
    throw CountMismatchError("ensemble has " + std::to_string(e.size()) +
                             " states but povm has " + std::to_string(p.size()) +
                             " elements");
}

double success_probability(const WeightedEnsemble& e, const Povm& p) {
  require_match(e, p);
  double s = 0.0;
  for (int i = 0; i < e.size(); ++i)
    s += e.priors[i] * (e.states[i] * p.elements[i]).trace().real();
  return s;
}

double error_probability(const WeightedEnsemble& e, const Povm& p) {
  return 1.0 - success_probability(e, p);
}

Povm helstrom_povm(const WeightedEnsemble& e) {
  if (e.size() != 2)
    throw WrongStateCountError("helstrom_povm needs exactly 2 states, got " +
                               std::to_string(e.size()));
  const JordanDecomposition jd = jordan_decompose(e.lambda(0, 1));
  Povm p;
  p.dim = e.dim;
  p.elements.resize(2);
  p.elements[1] = jd.pos_projector;
  p.elements[0] = cmat::Identity(e.dim, e.dim) - jd.pos_projector;
  return p;
}

int pair_index(int i, int j, int m) {
  // pairs (i,j), i<j, in lexicographic order
  return i * m - i * (i + 1) / 2 + (j - i - 1);
}

const PairSubspaces& SubspaceReport::pair(int i, int j) const {
  return pairs[pair_index(i, j, m)];
}

namespace {

// Modified Gram-Schmidt with one re-orthogonalization pass. Columns whose
// residual drops below drop_tol times their input norm are discarded.
cmat orthonormalize(const std::vector<cvec>& vectors, int dim,
                    double drop_tol = 1e-10) {
  std::vector<cvec> basis;
  for (const cvec& v : vectors) {
    const double input_norm = v.norm();
    if (input_norm <= 0.0) continue;
    cvec w = v;
    for (int pass = 0; pass < 2; ++pass)
      for (const cvec& b : basis) w -= (b.adjoint() * w)(0, 0) * b;
    if (w.norm() > drop_tol * input_norm) basis.push_back(w / w.norm());
  }
  cmat q(dim, static_cast<int>(basis.size()));
  for (std::size_t c = 0; c < basis.size(); ++c)
    q.col(static_cast<int>(c)) = basis[c];
  return q;
}

}  // namespace

SubspaceReport compute_subspaces(const WeightedEnsemble& e,
                                 double eig_threshold) {
  require_valid(e);
  const int m = e.size();

  SubspaceReport rep;
  rep.m = m;
  rep.dim = e.dim;
  rep.pairs.resize(pair_index(m - 2, m - 1, m) + 1);

  for (int i = 0; i < m - 1; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const JordanDecomposition jd =
          jordan_decompose(e.lambda(i, j), eig_threshold);
      PairSubspaces& ps = rep.pairs[pair_index(i, j, m)];
      ps.pos_projector = jd.pos_projector;
      ps.neg_projector = jd.neg_projector;
      ps.pos_basis = jd.pos_basis;
      ps.neg_basis = jd.neg_basis;
      ps.pos_dim = static_cast<int>(jd.pos_eigenvalues.size());
      ps.neg_dim = static_cast<int>(jd.neg_eigenvalues.size());
    }
  }

  for (int k = 1; k < m; ++k) {
    std::vector<cvec> stacked;
    for (int i = 0; i < k; ++i) {
      const cmat& basis = rep.pair(i, k).pos_basis;
      for (int c = 0; c < basis.cols(); ++c) stacked.push_back(basis.col(c));
    }
    const cmat q = orthonormalize(stacked, e.dim);
    rep.s_projectors.push_back(q * q.adjoint());
    rep.s_dims.push_back(static_cast<int>(q.cols()));
  }
  return rep;
}

namespace {

// Both checkers report all four residuals; they differ only in which flags
// their callers consult.
ConditionReport check_conditions(const WeightedEnsemble& e, double ortho_tol) {
  const int m = e.size();
  const SubspaceReport sub = compute_subspaces(e);

  ConditionReport rep;
  rep.tolerance = ortho_tol;

  double worst_i = 0.0;
  for (int j = 1; j < m; ++j)
    for (int i1 = 0; i1 < j; ++i1)
      for (int i2 = 0; i2 < j; ++i2)
        worst_i = std::max(worst_i, (sub.pair(i1, j).pos_projector *
                                     sub.pair(i2, j).neg_projector)
                                        .norm());
  rep.cond_i = {worst_i <= ortho_tol, worst_i};

  double worst_ii = 0.0;
  for (int i = 1; i < m - 1; ++i)
    for (int j = i + 1; j < m; ++j)
      worst_ii = std::max(
          worst_ii,
          (sub.s_projectors[i - 1] * sub.s_projectors[j - 1]).norm());
  rep.cond_ii = {worst_ii <= ortho_tol, worst_ii};

  const cmat p_s1 = support_projector(e.states[0]);
  double worst_s1 = 0.0;
  for (int j = 1; j < m; ++j)
    worst_s1 = std::max(worst_s1, (p_s1 * sub.s_projectors[j - 1]).norm());
  rep.cond_s1 = {worst_s1 <= ortho_tol, worst_s1};

  double worst_eta = 0.0;
  for (int i = 1; i < m - 1; ++i)
    worst_eta = std::max(worst_eta, std::abs(e.priors[i] + e.priors[0] -
                                             trace_norm(e.lambda(0, i))));
  rep.cond_eta = {worst_eta <= ortho_tol, worst_eta};
  return rep;
}

}  // namespace

ConditionReport check_theorem2_conditions(const WeightedEnsemble& e,
                                          double ortho_tol) {
  return check_conditions(e, ortho_tol);
}

ConditionReport check_corollary1_conditions(const WeightedEnsemble& e,
                                            double ortho_tol) {
  return check_conditions(e, ortho_tol);
}

Povm theorem2_povm(const WeightedEnsemble& e, double ortho_tol) {
  const ConditionReport rep = check_theorem2_conditions(e, ortho_tol);
  if (!rep.theorem2_pass()) {
    std::ostringstream os;
    os << "attainment conditions fail: orthogonality residuals "
       << rep.cond_i.residual << " (eigenspaces), " << rep.cond_ii.residual
       << " (accumulated subspaces), tolerance " << rep.tolerance;
    throw ConditionsFailError(os.str());
  }

  const SubspaceReport sub = compute_subspaces(e);
  const int m = e.size();
  Povm p;
  p.dim = e.dim;
  p.elements.assign(m, cmat());
  cmat rest = cmat::Identity(e.dim, e.dim);
  for (int j = 1; j < m; ++j) {
    p.elements[j] = sub.s_projectors[j - 1];
    rest -= p.elements[j];
  }
  p.elements[0] = hermitian_part(rest);

  const double mineig = min_eigenvalue(p.elements[0]);
  if (mineig < -1e-8)
    throw NotPsdError("theorem2_povm: residual element has eigenvalue " +
                      std::to_string(mineig));
  return p;
}

double attainment_residual(const WeightedEnsemble& e, const Povm& p) {
  require_match(e, p);
  const int m = e.size();
  double lhs = 0.0;
  double norm_sum = 0.0;
  for (int i = 0; i < m - 1; ++i) {
    for (int j = i + 1; j < m; ++j) {
      const cmat lam = e.lambda(i, j);
      lhs += e.priors[i] + (lam * p.elements[j]).trace().real();
      norm_sum += trace_norm(lam);
    }
  }
  lhs /= m - 1;
  const double rhs = 0.5 * (1.0 + norm_sum / (m - 1));
  return std::abs(lhs - rhs);
}

Certificate hykl_certificate(const WeightedEnsemble& e, const Povm& p,
                             double cert_tol) {
  require_match(e, p);
  cmat lagrangian = cmat::Zero(e.dim, e.dim);
  for (int i = 0; i < e.size(); ++i)
    lagrangian += e.priors[i] * e.states[i] * p.elements[i];

  Certificate cert;
  cert.asymmetry = (lagrangian - lagrangian.adjoint()).norm();
  const cmat sym = hermitian_part(lagrangian);

  cert.worst_min_eig = std::numeric_limits<double>::infinity();
  for (int j = 0; j < e.size(); ++j)
    cert.worst_min_eig = std::min(
        cert.worst_min_eig, min_eigenvalue(sym - e.priors[j] * e.states[j]));

  cert.optimal = cert.worst_min_eig >= -cert_tol && cert.asymmetry <= 1e-6;
  return cert;
}

}  // namespace qsd
