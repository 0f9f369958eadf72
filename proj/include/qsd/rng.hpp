#ifndef QSD_RNG_HPP
#define QSD_RNG_HPP

#include "qsd/types.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace qsd {

// Seeded stream built on std::mt19937_64. Uniform and Gaussian draws are
// derived from the raw 64-bit outputs with fixed arithmetic (Box-Muller), so
// a given seed reproduces the same stream on every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // uniform double in [0, 1), 53-bit resolution
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // standard normal via Box-Muller; second value of each pair is cached
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  cplx complex_gaussian() {
    const double re = gaussian();
    const double im = gaussian();
    return {re, im};
  }

  // dim x rank matrix of independent complex Gaussians
  cmat ginibre(int rows, int cols) {
    cmat g(rows, cols);
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) g(r, c) = complex_gaussian();
    return g;
  }

  // Haar-random unit vector
  cvec haar_state(int dim) {
    cvec v(dim);
    for (int k = 0; k < dim; ++k) v(k) = complex_gaussian();
    return v / v.norm();
  }

  // Haar-random unitary: QR of a Ginibre matrix with the R-diagonal phases
  // folded into Q.
  cmat haar_unitary(int dim) {
    const cmat g = ginibre(dim, dim);
    Eigen::HouseholderQR<cmat> qr(g);
    cmat q = qr.householderQ();
    const cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int k = 0; k < dim; ++k) {
      const cplx d = r(k, k);
      const double ad = std::abs(d);
      q.col(k) *= ad > 0 ? d / ad : cplx(1.0, 0.0);
    }
    return q;
  }

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// FNV-1a over the task name, mixed with the base seed and index through
// splitmix64. Gives every (task, index) its own decorrelated stream while
// keeping all randomness a pure function of the base seed.
std::uint64_t derive_seed(std::uint64_t base, std::string_view task,
                          std::uint64_t index = 0);

}  // namespace qsd

#endif  // QSD_RNG_HPP
