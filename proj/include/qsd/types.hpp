#ifndef QSD_TYPES_HPP
#define QSD_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qsd {

using cplx = std::complex<double>;
using cmat = Eigen::MatrixXcd;
using cvec = Eigen::VectorXcd;
using rvec = Eigen::VectorXd;

// Default numerical tolerances. Scale-suffixed values are relative: the
// effective tolerance is scale * max(1, magnitude of the operator).
namespace tol {
inline constexpr double hermiticity = 1e-10;
inline constexpr double psd_scale = 1e-8;   // PSD acceptance, eigenvalue clamping
inline constexpr double eig_scale = 1e-10;  // zero-eigenvalue classification
inline constexpr double ortho = 1e-8;       // projector orthogonality residual
inline constexpr double cert = 1e-7;        // optimality certificate slack
inline constexpr double rank = 1e-10;       // full-rank requirement
inline constexpr double povm_sum = 1e-8;    // || sum Pi - I ||_F
}  // namespace tol

// Base error type; `code` is a stable machine-readable identifier used by the
// CLI error channel.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(msg), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define QSD_DEFINE_ERROR(NAME, CODE)                                \
  class NAME : public Error {                                       \
   public:                                                          \
    explicit NAME(const std::string& msg) : Error(CODE, msg) {}     \
  }

QSD_DEFINE_ERROR(NonHermitianError, "non_hermitian");
QSD_DEFINE_ERROR(NoConvergenceError, "no_convergence");
QSD_DEFINE_ERROR(NotPsdError, "not_psd");
QSD_DEFINE_ERROR(DimensionMismatchError, "dimension_mismatch");
QSD_DEFINE_ERROR(SingularStateError, "singular_state");
QSD_DEFINE_ERROR(InvalidRankError, "invalid_rank");
QSD_DEFINE_ERROR(BlockTooSmallError, "block_too_small");
QSD_DEFINE_ERROR(ParseError, "parse_error");
QSD_DEFINE_ERROR(ValidationError, "validation_error");
QSD_DEFINE_ERROR(WrongStateCountError, "wrong_state_count");
QSD_DEFINE_ERROR(CountMismatchError, "count_mismatch");
QSD_DEFINE_ERROR(ConditionsFailError, "conditions_fail");
QSD_DEFINE_ERROR(NoProgressError, "no_progress");
QSD_DEFINE_ERROR(EmptyChannelListError, "empty_channel_list");

#undef QSD_DEFINE_ERROR

// Process-wide override for the relative PSD acceptance tolerance. PSD gates
// take a psd_scale parameter whose negative default resolves to this value;
// set it once at entry, before any parallel work (the CLI maps --tol-psd
// onto it).
inline double& runtime_psd_scale() {
  static double scale = tol::psd_scale;
  return scale;
}

inline double resolve_psd_scale(double psd_scale) {
  return psd_scale < 0.0 ? runtime_psd_scale() : psd_scale;
}

// (A + A^dagger)/2. Used to strip the anti-Hermitian roundoff residue of
// operator products that are Hermitian in exact arithmetic.
inline cmat hermitian_part(const cmat& a) { return 0.5 * (a + a.adjoint()); }

inline double hermiticity_residual(const cmat& h) {
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

inline void require_square(const cmat& h, const char* what) {
  if (h.rows() != h.cols())
    throw DimensionMismatchError(std::string(what) + ": matrix is " +
                                 std::to_string(h.rows()) + "x" +
                                 std::to_string(h.cols()));
}

inline void require_hermitian(const cmat& h, const char* what,
                              double tolerance = tol::hermiticity) {
  require_square(h, what);
  const double r = h.size() == 0 ? 0.0 : hermiticity_residual(h);
  if (r > tolerance)
    throw NonHermitianError(std::string(what) + ": hermiticity residual " +
                            std::to_string(r));
}

inline void require_same_dim(const cmat& a, const cmat& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatchError(std::string(what) + ": " +
                                 std::to_string(a.rows()) + "x" +
                                 std::to_string(a.cols()) + " vs " +
                                 std::to_string(b.rows()) + "x" +
                                 std::to_string(b.cols()));
}

}  // namespace qsd

#endif  // QSD_TYPES_HPP
