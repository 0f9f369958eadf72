#include "qsd/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qsd {

namespace {

double offdiag_norm(const cmat& a) {
  double s = 0.0;
  for (int p = 0; p < a.rows(); ++p)
    for (int q = 0; q < a.cols(); ++q)
      if (p != q) s += std::norm(a(p, q));
  return std::sqrt(s);
}

// One two-sided rotation zeroing A(p,q). The unitary is a phase on index p
// composed with a real Givens rotation in the (p,q) plane:
//   u_p = c e^{i phi} e_p - s e_q,   u_q = s e^{i phi} e_p + c e_q,
// where phi is the phase of A(p,q). Applied as A <- U^dag A U, V <- V U.
void jacobi_rotate(cmat& a, cmat& v, int p, int q) {
  const cplx apq = a(p, q);
  const double g = std::abs(apq);
  const cplx phase = apq / g;
  const double alpha = a(p, p).real();
  const double beta = a(q, q).real();

  const double tau = (beta - alpha) / (2.0 * g);
  const double t = (tau >= 0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const int n = static_cast<int>(a.rows());
  // A <- A U (update columns p, q)
  for (int k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = c * phase * akp - s * akq;
    a(k, q) = s * phase * akp + c * akq;
  }
  // A <- U^dag A (update rows p, q)
  const cplx phase_c = std::conj(phase);
  for (int k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = c * phase_c * apk - s * aqk;
    a(q, k) = s * phase_c * apk + c * aqk;
  }
  // exact zeros on the annihilated pair; diagonal stays real
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = cplx(a(p, p).real(), 0.0);
  a(q, q) = cplx(a(q, q).real(), 0.0);

  for (int k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = c * phase * vkp - s * vkq;
    v(k, q) = s * phase * vkp + c * vkq;
  }
}

void fix_eigenvector_sign(cmat& vectors, int col) {
  for (int k = 0; k < vectors.rows(); ++k) {
    const cplx vk = vectors(k, col);
    const double a = std::abs(vk);
    if (a > 1e-12) {
      vectors.col(col) *= std::conj(vk) / a;
      return;
    }
  }
}

}  // namespace

double default_eig_threshold(const rvec& eigenvalues, double scale) {
  const double top =
      eigenvalues.size() == 0 ? 0.0 : eigenvalues.cwiseAbs().maxCoeff();
  return scale * std::max(1.0, top);
}

EigenSystem hermitian_eig(const cmat& h, int max_sweeps,
                          double hermiticity_tol) {
  require_hermitian(h, "hermitian_eig", hermiticity_tol);
  const int n = static_cast<int>(h.rows());

  cmat a = hermitian_part(h);  // symmetrize roundoff within tolerance
  cmat v = cmat::Identity(n, n);
  const double scale = std::max(1.0, a.norm());

  bool converged = n < 2;
  for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
    if (offdiag_norm(a) <= 1e-14 * scale) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > 1e-18 * scale) jacobi_rotate(a, v, p, q);
  }
  if (!converged && offdiag_norm(a) > 1e-14 * scale)
    throw NoConvergenceError("hermitian_eig: off-diagonal norm " +
                             std::to_string(offdiag_norm(a)) + " after " +
                             std::to_string(max_sweeps) + " sweeps");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&a](int i, int j) {
    return a(i, i).real() > a(j, j).real();
  });

  EigenSystem sys;
  sys.eigenvalues.resize(n);
  sys.eigenvectors.resize(n, n);
  for (int k = 0; k < n; ++k) {
    sys.eigenvalues(k) = a(order[k], order[k]).real();
    sys.eigenvectors.col(k) = v.col(order[k]);
    fix_eigenvector_sign(sys.eigenvectors, k);
  }
  return sys;
}

double trace_norm(const cmat& h) {
  return hermitian_eig(h).eigenvalues.cwiseAbs().sum();
}

JordanDecomposition jordan_decompose(const cmat& h, double eig_threshold) {
  const EigenSystem sys = hermitian_eig(h);
  const int n = sys.dim();
  const double thr = eig_threshold >= 0.0
                         ? eig_threshold
                         : default_eig_threshold(sys.eigenvalues);

  std::vector<int> pos, neg;
  for (int k = 0; k < n; ++k) {
    if (sys.eigenvalues(k) > thr)
      pos.push_back(k);
    else if (sys.eigenvalues(k) < -thr)
      neg.push_back(k);
  }

  JordanDecomposition jd;
  jd.threshold = thr;
  jd.positive_part = cmat::Zero(n, n);
  jd.negative_part = cmat::Zero(n, n);
  jd.pos_projector = cmat::Zero(n, n);
  jd.neg_projector = cmat::Zero(n, n);
  jd.pos_basis.resize(n, static_cast<int>(pos.size()));
  jd.neg_basis.resize(n, static_cast<int>(neg.size()));

  for (std::size_t c = 0; c < pos.size(); ++c) {
    const int k = pos[c];
    const cvec vk = sys.eigenvectors.col(k);
    jd.positive_part += sys.eigenvalues(k) * (vk * vk.adjoint());
    jd.pos_projector += vk * vk.adjoint();
    jd.pos_basis.col(static_cast<int>(c)) = vk;
    jd.pos_eigenvalues.push_back(sys.eigenvalues(k));
  }
  for (std::size_t c = 0; c < neg.size(); ++c) {
    const int k = neg[c];
    const cvec vk = sys.eigenvectors.col(k);
    jd.negative_part += -sys.eigenvalues(k) * (vk * vk.adjoint());
    jd.neg_projector += vk * vk.adjoint();
    jd.neg_basis.col(static_cast<int>(c)) = vk;
    jd.neg_eigenvalues.push_back(-sys.eigenvalues(k));
  }
  return jd;
}

double min_eigenvalue(const cmat& h) {
  const EigenSystem sys = hermitian_eig(h);
  return sys.dim() == 0 ? 0.0 : sys.eigenvalues(sys.dim() - 1);
}

bool is_psd(const cmat& h, double psd_scale) {
  psd_scale = resolve_psd_scale(psd_scale);
  const EigenSystem sys = hermitian_eig(h);
  if (sys.dim() == 0) return true;
  const double top = sys.eigenvalues.cwiseAbs().maxCoeff();
  return sys.eigenvalues(sys.dim() - 1) >= -psd_scale * std::max(1.0, top);
}

namespace {

// eigendecompose, clamp [-psd_tol, 0) to 0, apply f to each eigenvalue
cmat psd_function(const cmat& h, double psd_scale, const char* what,
                  double (*f)(double)) {
  psd_scale = resolve_psd_scale(psd_scale);
  const EigenSystem sys = hermitian_eig(h);
  const int n = sys.dim();
  const double top =
      n == 0 ? 0.0 : sys.eigenvalues.cwiseAbs().maxCoeff();
  const double psd_tol = psd_scale * std::max(1.0, top);

  rvec vals = sys.eigenvalues;
  for (int k = 0; k < n; ++k) {
    if (vals(k) < -psd_tol)
      throw NotPsdError(std::string(what) + ": eigenvalue " +
                        std::to_string(vals(k)) + " below -" +
                        std::to_string(psd_tol));
    vals(k) = f(std::max(vals(k), 0.0));
  }
  return sys.eigenvectors * vals.asDiagonal() * sys.eigenvectors.adjoint();
}

double sqrt_clamped(double x) { return std::sqrt(x); }

}  // namespace

cmat matrix_sqrt(const cmat& h, double psd_scale) {
  return psd_function(h, psd_scale, "matrix_sqrt", &sqrt_clamped);
}

double fidelity(const cmat& a, const cmat& b) {
  require_same_dim(a, b, "fidelity");
  // Work at unit trace and rescale afterwards; the eigenvalue roundoff near
  // zero is not scale-equivariant, while F(cA, c'B) = sqrt(cc') F(A, B) must
  // hold to full precision.
  const double ta = a.trace().real();
  const double tb = b.trace().real();
  if (ta <= 0.0 || tb <= 0.0) {
    if (ta < -runtime_psd_scale() * std::max(1.0, a.norm()) ||
        tb < -runtime_psd_scale() * std::max(1.0, b.norm()))
      throw NotPsdError("fidelity: argument has negative trace");
    return 0.0;
  }
  const cmat an = a / ta;
  const cmat bn = b / tb;
  if (!is_psd(bn)) throw NotPsdError("fidelity: second argument not PSD");
  const cmat sa = matrix_sqrt(an);
  const cmat inner = hermitian_part(sa * bn * sa);
  const EigenSystem sys = hermitian_eig(inner);
  // Rank-deficient pairs put exact zeros in the inner spectrum; their
  // +-1e-16 noise would cost ~1e-8 apiece under the square root, so zero
  // them out well above the solver noise floor.
  const double thr = default_eig_threshold(sys.eigenvalues, 1e-13);
  double f = 0.0;
  for (int k = 0; k < sys.dim(); ++k)
    if (sys.eigenvalues(k) > thr) f += std::sqrt(sys.eigenvalues(k));
  return std::sqrt(ta * tb) * f;
}

double trace_distance(const cmat& a, const cmat& b) {
  require_same_dim(a, b, "trace_distance");
  require_hermitian(a, "trace_distance");
  require_hermitian(b, "trace_distance");
  return 0.5 * trace_norm(a - b);
}

cmat support_projector(const cmat& h, double eig_threshold) {
  const EigenSystem sys = hermitian_eig(h);
  const int n = sys.dim();
  const double top =
      n == 0 ? 0.0 : sys.eigenvalues.cwiseAbs().maxCoeff();
  if (n > 0 &&
      sys.eigenvalues(n - 1) < -runtime_psd_scale() * std::max(1.0, top))
    throw NotPsdError("support_projector: min eigenvalue " +
                      std::to_string(sys.eigenvalues(n - 1)));
  const double thr = eig_threshold >= 0.0
                         ? eig_threshold
                         : default_eig_threshold(sys.eigenvalues);
  cmat p = cmat::Zero(n, n);
  for (int k = 0; k < n; ++k)
    if (sys.eigenvalues(k) > thr) {
      const cvec vk = sys.eigenvectors.col(k);
      p += vk * vk.adjoint();
    }
  return p;
}

EigenbasisFidelity fidelity_eigenbasis(const cmat& rho_i, const cmat& rho_j,
                                       bool regularize, double rank_tol) {
  require_same_dim(rho_i, rho_j, "fidelity_eigenbasis");
  const int n = static_cast<int>(rho_j.rows());

  EigenbasisFidelity out;
  cmat sigma = rho_j;
  EigenSystem jsys = hermitian_eig(sigma);
  if (jsys.dim() > 0 && jsys.eigenvalues(jsys.dim() - 1) < rank_tol) {
    if (!regularize)
      throw SingularStateError(
          "fidelity_eigenbasis: rho_j eigenvalue " +
          std::to_string(jsys.eigenvalues(jsys.dim() - 1)) +
          " below rank tolerance " + std::to_string(rank_tol));
    const double eps = 1e-8;
    sigma = (1.0 - eps) * sigma + eps / n * cmat::Identity(n, n);
    jsys = hermitian_eig(sigma);
    out.regularized = true;
  }

  rvec sqrt_vals(n), inv_sqrt_vals(n);
  for (int k = 0; k < n; ++k) {
    const double l = std::max(jsys.eigenvalues(k), 0.0);
    sqrt_vals(k) = std::sqrt(l);
    inv_sqrt_vals(k) = 1.0 / sqrt_vals(k);
  }
  const cmat vj = jsys.eigenvectors;
  const cmat sj = vj * sqrt_vals.asDiagonal() * vj.adjoint();
  const cmat sj_inv = vj * inv_sqrt_vals.asDiagonal() * vj.adjoint();

  const cmat middle = matrix_sqrt(hermitian_part(sj * rho_i * sj));
  const cmat mean_op = hermitian_part(sj_inv * middle * sj_inv);
  const EigenSystem msys = hermitian_eig(mean_op);

  out.basis = msys.eigenvectors;
  out.e.resize(n);
  out.f.resize(n);
  out.value = 0.0;
  for (int l = 0; l < n; ++l) {
    const cvec bl = out.basis.col(l);
    out.e(l) = std::max((bl.adjoint() * rho_i * bl)(0, 0).real(), 0.0);
    out.f(l) = std::max((bl.adjoint() * rho_j * bl)(0, 0).real(), 0.0);
    out.value += std::sqrt(out.e(l) * out.f(l));
  }
  return out;
}

double fact1_gap(const cmat& a, const cmat& b) {
  require_same_dim(a, b, "fact1_gap");
  const double d = trace_distance(a, b);
  const double traces = 0.5 * (a.trace().real() + b.trace().real());
  return d - (traces - fidelity(a, b));
}

}  // namespace qsd
