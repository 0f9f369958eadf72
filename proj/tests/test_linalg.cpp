#include "qsd/linalg.hpp"

#include "helpers.hpp"
#include "qsd/measurement.hpp"

#include <doctest.h>

#include <cmath>

using namespace qsd;
using namespace qsd::testing;

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

cmat diag2(double a, double b) {
  cmat m = cmat::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

// (1/2)|+><+| - (1/2)|0><0|, eigenvalues +-sqrt(1/8)
cmat half_plus_minus_half_zero() {
  return 0.5 * projector(ket_plus()) - 0.5 * projector(basis_ket(0, 2));
}

}  // namespace

TEST_SUITE("hermitian_eig") {
  TEST_CASE("already diagonal") {
    const EigenSystem sys = hermitian_eig(diag2(3.0, 1.0));
    CHECK(sys.eigenvalues(0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(sys.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((sys.eigenvectors.col(0) - basis_ket(0, 2)).norm() < 1e-12);
    CHECK((sys.eigenvectors.col(1) - basis_ket(1, 2)).norm() < 1e-12);
  }

  TEST_CASE("pauli x spectrum") {
    cmat x = cmat::Zero(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    const EigenSystem sys = hermitian_eig(x);
    CHECK(sys.eigenvalues(0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(sys.eigenvalues(1) == doctest::Approx(-1.0).epsilon(1e-14));
  }

  TEST_CASE("random 5x5 reconstructs and matches the reference solver") {
    Rng rng(42);
    const cmat h = random_hermitian(5, rng);
    const EigenSystem sys = hermitian_eig(h);

    const double scale = std::max(1.0, h.norm());
    CHECK((h - sys.reconstruct()).norm() <= 1e-9 * scale);

    const cmat gram = sys.eigenvectors.adjoint() * sys.eigenvectors;
    CHECK((gram - cmat::Identity(5, 5)).cwiseAbs().maxCoeff() <= 1e-9);

    const rvec ref = ref_eigvals_ascending(h).reverse();
    for (int k = 0; k < 5; ++k)
      CHECK(sys.eigenvalues(k) == doctest::Approx(ref(k)).epsilon(1e-10));
  }

  TEST_CASE("deterministic, with the sign convention applied") {
    Rng rng(7);
    const cmat h = random_hermitian(6, rng);
    const EigenSystem a = hermitian_eig(h);
    const EigenSystem b = hermitian_eig(h);
    CHECK((a.eigenvectors - b.eigenvectors).norm() == 0.0);
    CHECK((a.eigenvalues - b.eigenvalues).norm() == 0.0);
    for (int c = 0; c < 6; ++c) {
      for (int r = 0; r < 6; ++r) {
        const cplx v = a.eigenvectors(r, c);
        if (std::abs(v) > 1e-12) {
          CHECK(v.imag() == doctest::Approx(0.0).epsilon(1e-12));
          CHECK(v.real() > 0.0);
          break;
        }
      }
    }
  }

  TEST_CASE("rejects non-hermitian input") {
    cmat h = cmat::Zero(2, 2);
    h(0, 1) = 1.0;  // h(1,0) stays 0
    CHECK_THROWS_AS(hermitian_eig(h), NonHermitianError);
  }

  TEST_CASE("sweep budget exhaustion reports no convergence") {
    cmat x = cmat::Zero(2, 2);
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
    CHECK_THROWS_AS(hermitian_eig(x, /*max_sweeps=*/0), NoConvergenceError);
  }
}

TEST_SUITE("trace_norm") {
  TEST_CASE("sum of absolute eigenvalues") {
    CHECK(trace_norm(diag2(1.0, -1.0)) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(trace_norm(cmat::Zero(3, 3)) == doctest::Approx(0.0));
    CHECK(trace_norm(half_plus_minus_half_zero()) ==
          doctest::Approx(kInvSqrt2).epsilon(1e-12));
  }

  TEST_CASE("agrees with the reference solver on random hermitians") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      Rng rng(derive_seed(s, "trace_norm_battery"));
      const int dim = 2 + static_cast<int>(s % 5);
      const cmat h = random_hermitian(dim, rng);
      CHECK(trace_norm(h) ==
            doctest::Approx(ref_trace_norm(h)).epsilon(1e-11));
    }
  }
}

TEST_SUITE("jordan_decompose") {
  TEST_CASE("diagonal split") {
    const JordanDecomposition jd = jordan_decompose(diag2(2.0, -3.0));
    CHECK((jd.positive_part - diag2(2.0, 0.0)).norm() < 1e-12);
    CHECK((jd.negative_part - diag2(0.0, 3.0)).norm() < 1e-12);
    CHECK((jd.pos_projector - diag2(1.0, 0.0)).norm() < 1e-12);
    CHECK((jd.neg_projector - diag2(0.0, 1.0)).norm() < 1e-12);
  }

  TEST_CASE("psd input has empty negative part") {
    Rng rng(3);
    const cmat a = random_psd(4, 2, rng);
    const JordanDecomposition jd = jordan_decompose(a);
    CHECK(jd.negative_part.norm() < 1e-12);
    CHECK(jd.neg_eigenvalues.empty());
    CHECK((jd.pos_projector - support_projector(a)).norm() < 1e-9);
  }

  TEST_CASE("half plus minus half zero") {
    const JordanDecomposition jd =
        jordan_decompose(half_plus_minus_half_zero());
    REQUIRE(jd.pos_eigenvalues.size() == 1);
    REQUIRE(jd.neg_eigenvalues.size() == 1);
    CHECK(jd.pos_eigenvalues[0] ==
          doctest::Approx(std::sqrt(0.125)).epsilon(1e-12));
    CHECK(jd.neg_eigenvalues[0] ==
          doctest::Approx(std::sqrt(0.125)).epsilon(1e-12));
  }

  TEST_CASE("invariants on random hermitians") {
    for (std::uint64_t s = 0; s < 30; ++s) {
      Rng rng(derive_seed(s, "jordan_battery"));
      const int dim = 2 + static_cast<int>(s % 5);
      const cmat h = random_hermitian(dim, rng);
      const JordanDecomposition jd = jordan_decompose(h);
      CHECK((jd.positive_part - jd.negative_part - h).norm() <= 1e-9);
      CHECK(std::abs((jd.positive_part * jd.negative_part).trace()) <= 1e-12);
      for (double a : jd.pos_eigenvalues) CHECK(a > jd.threshold);
      for (double b : jd.neg_eigenvalues) CHECK(b > jd.threshold);
    }
  }
}

TEST_SUITE("matrix_sqrt") {
  TEST_CASE("identity and diagonal") {
    CHECK((matrix_sqrt(cmat::Identity(3, 3)) - cmat::Identity(3, 3)).norm() <
          1e-12);
    CHECK((matrix_sqrt(diag2(4.0, 9.0)) - diag2(2.0, 3.0)).norm() < 1e-12);
  }

  TEST_CASE("squaring recovers a random psd input") {
    Rng rng(7);
    const cmat a = random_psd(5, 5, rng);
    const cmat s = matrix_sqrt(a);
    CHECK((s * s - a).norm() <= 1e-8 * std::max(1.0, a.norm()));
    CHECK(min_eigenvalue(s) >= -1e-10);
  }

  TEST_CASE("rejects indefinite input") {
    CHECK_THROWS_AS(matrix_sqrt(diag2(1.0, -0.5)), NotPsdError);
  }

  TEST_CASE("clamps tiny negative noise") {
    const cmat a = diag2(1.0, -1e-12);
    CHECK((matrix_sqrt(a) - diag2(1.0, 0.0)).norm() < 1e-6);
  }
}

TEST_SUITE("fidelity") {
  TEST_CASE("self fidelity of a density matrix is 1") {
    Rng rng(11);
    cmat rho = random_psd(3, 3, rng);
    rho /= rho.trace().real();
    CHECK(fidelity(rho, rho) == doctest::Approx(1.0).epsilon(1e-10));
  }

  TEST_CASE("orthogonal pure states") {
    CHECK(fidelity(projector(basis_ket(0, 2)), projector(basis_ket(1, 2))) ==
          doctest::Approx(0.0).epsilon(1e-12));
  }

  TEST_CASE("pure state overlap") {
    CHECK(fidelity(projector(basis_ket(0, 2)), projector(ket_plus())) ==
          doctest::Approx(kInvSqrt2).epsilon(1e-10));
  }

  TEST_CASE("agrees with the reference route and is symmetric") {
    // weighted-density scale (traces <= 1), the regime the contract pins down
    for (std::uint64_t s = 0; s < 20; ++s) {
      Rng rng(derive_seed(s, "fidelity_battery"));
      const int dim = 2 + static_cast<int>(s % 4);
      cmat a = random_psd(dim, dim, rng);
      a *= (0.2 + 0.8 * rng.uniform()) / a.trace().real();
      cmat b = random_psd(dim, 1 + static_cast<int>(s % dim), rng);
      b *= (0.2 + 0.8 * rng.uniform()) / b.trace().real();
      const double f = fidelity(a, b);
      // sqrt'(0) is unbounded, so eigenvalue roundoff near zero costs ~1e-8
      // absolute in either route
      CHECK(std::abs(f - ref_fidelity(a, b)) <= 1e-8);
      CHECK(std::abs(f - fidelity(b, a)) <= 1e-8);
      CHECK(f >= 0.0);
      CHECK(f <= std::sqrt(a.trace().real() * b.trace().real()) + 1e-8);
    }
  }

  TEST_CASE("dimension mismatch") {
    CHECK_THROWS_AS(fidelity(cmat::Identity(2, 2), cmat::Identity(3, 3)),
                    DimensionMismatchError);
  }

  TEST_CASE("indefinite arguments are rejected") {
    const cmat good = 0.5 * cmat::Identity(2, 2);
    CHECK_THROWS_AS(fidelity(diag2(1.0, -0.5), good), NotPsdError);
    CHECK_THROWS_AS(fidelity(good, diag2(1.0, -0.5)), NotPsdError);
    CHECK_THROWS_AS(support_projector(diag2(1.0, -0.5)), NotPsdError);
  }
}

TEST_SUITE("trace_distance") {
  TEST_CASE("examples") {
    Rng rng(5);
    cmat rho = random_psd(3, 3, rng);
    rho /= rho.trace().real();
    CHECK(trace_distance(rho, rho) == doctest::Approx(0.0));
    CHECK(trace_distance(projector(basis_ket(0, 2)),
                         projector(basis_ket(1, 2))) ==
          doctest::Approx(1.0).epsilon(1e-12));
    CHECK(trace_distance(0.5 * projector(basis_ket(0, 2)),
                         0.5 * projector(ket_plus())) ==
          doctest::Approx(0.5 * kInvSqrt2).epsilon(1e-12));
  }
}

TEST_SUITE("support_projector") {
  TEST_CASE("examples") {
    cmat d = cmat::Zero(3, 3);
    d(0, 0) = 0.3;
    d(2, 2) = 0.7;
    cmat p = cmat::Zero(3, 3);
    p(0, 0) = 1.0;
    p(2, 2) = 1.0;
    CHECK((support_projector(d) - p).norm() < 1e-12);

    Rng rng(9);
    cmat rho = random_psd(3, 3, rng);
    rho /= rho.trace().real();
    CHECK((support_projector(rho) - cmat::Identity(3, 3)).norm() < 1e-9);

    const cmat plus = projector(ket_plus());
    CHECK((support_projector(plus) - plus).norm() < 1e-9);
  }

  TEST_CASE("idempotent and absorbing") {
    Rng rng(13);
    const cmat a = random_psd(5, 3, rng);
    const cmat p = support_projector(a);
    CHECK((p * p - p).norm() <= 1e-9);
    CHECK(hermiticity_residual(p) <= 1e-12);
    CHECK((p * a - a).norm() <= 1e-9 * std::max(1.0, a.norm()));
  }
}

TEST_SUITE("fidelity_eigenbasis") {
  TEST_CASE("maximally mixed pair") {
    const cmat half = 0.5 * cmat::Identity(2, 2);
    const EigenbasisFidelity r = fidelity_eigenbasis(half, half);
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.e(0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.f(1) == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("commuting diagonal pair gives the bhattacharyya sum") {
    const EigenbasisFidelity r =
        fidelity_eigenbasis(diag2(0.9, 0.1), diag2(0.5, 0.5));
    // sqrt(0.45) + sqrt(0.05) = 2/sqrt(5)
    CHECK(r.value == doctest::Approx(0.8944271909999159).epsilon(1e-12));
  }

  TEST_CASE("matches fidelity on random full-rank pairs") {
    for (std::uint64_t s = 0; s < 15; ++s) {
      Rng rng(derive_seed(s, "eigenbasis_battery"));
      const int dim = 2 + static_cast<int>(s % 4);
      cmat a = random_psd(dim, dim, rng);
      a /= a.trace().real();
      cmat b = random_psd(dim, dim, rng);
      b /= b.trace().real();
      const EigenbasisFidelity r = fidelity_eigenbasis(a, b);
      CHECK(std::abs(r.value - fidelity(a, b)) <= 1e-8);
      CHECK(!r.regularized);
      // the basis columns are orthonormal
      const cmat gram = r.basis.adjoint() * r.basis;
      CHECK((gram - cmat::Identity(dim, dim)).norm() <= 1e-9);
    }
  }

  TEST_CASE("refuses singular rho_j, regularizes on request") {
    const cmat pure = projector(basis_ket(0, 2));
    const cmat mixed = 0.5 * cmat::Identity(2, 2);
    CHECK_THROWS_AS(fidelity_eigenbasis(mixed, pure), SingularStateError);
    const EigenbasisFidelity r = fidelity_eigenbasis(mixed, pure, true);
    CHECK(r.regularized);
    CHECK(std::abs(r.value - fidelity(mixed, pure)) < 1e-3);
  }
}

TEST_SUITE("fact1") {
  TEST_CASE("saturation cases") {
    Rng rng(17);
    const cmat a = random_psd(3, 3, rng);
    CHECK(fact1_gap(a, a) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fact1_gap(projector(basis_ket(0, 2)), projector(basis_ket(1, 2))) ==
          doctest::Approx(0.0).epsilon(1e-9));
  }

  TEST_CASE("weighted pure pair is nonnegative") {
    CHECK(fact1_gap(0.5 * projector(basis_ket(0, 2)),
                    0.5 * projector(ket_plus())) >= -1e-8);
  }
}

// Trace-norm inequality and its equality cases
TEST_SUITE("lemma1") {
  TEST_CASE("inequality on 500 random psd pairs") {
    for (std::uint64_t s = 0; s < 500; ++s) {
      Rng rng(derive_seed(s, "lemma1_random"));
      const int dim = 2 + static_cast<int>(s % 5);
      const cmat a = random_psd(dim, 1 + static_cast<int>(rng.uniform() * dim), rng);
      const cmat b = random_psd(dim, 1 + static_cast<int>(rng.uniform() * dim), rng);
      CHECK(trace_norm(a - b) <= a.trace().real() + b.trace().real() + 1e-9);
    }
  }

  TEST_CASE("equality for block-orthogonal supports") {
    for (std::uint64_t s = 0; s < 50; ++s) {
      Rng rng(derive_seed(s, "lemma1_orthogonal"));
      const int da = 2 + static_cast<int>(s % 3);
      const int db = 2 + static_cast<int>((s / 3) % 3);
      cmat a = cmat::Zero(da + db, da + db);
      cmat b = cmat::Zero(da + db, da + db);
      a.block(0, 0, da, da) = random_psd(da, da, rng);
      b.block(da, da, db, db) = random_psd(db, db, rng);
      CHECK(std::abs(trace_norm(a - b) -
                     (a.trace().real() + b.trace().real())) <= 1e-9);
    }
  }

  TEST_CASE("strict gap when supports overlap") {
    for (std::uint64_t s = 0; s < 50; ++s) {
      Rng rng(derive_seed(s, "lemma1_overlap"));
      const int dim = 2 + static_cast<int>(s % 4);
      const cmat a = random_psd(dim, dim, rng);  // full rank: supports overlap
      const cmat b = random_psd(dim, dim, rng);
      CHECK(fidelity(support_projector(a), support_projector(b)) > 1e-3);
      CHECK(trace_norm(a - b) <
            a.trace().real() + b.trace().real() - 1e-6);
    }
  }
}

// POVM functionals of the trace distance and fidelity: one-sided bounds for
// sampled POVMs, exact attainment of D by the two-outcome split measurement
TEST_SUITE("povm_duality") {
  TEST_CASE("sampled povms never beat the closed forms") {
    for (std::uint64_t s = 0; s < 40; ++s) {
      Rng rng(derive_seed(s, "duality_battery"));
      const int dim = 2 + static_cast<int>(s % 4);
      const cmat a = random_psd(dim, dim, rng);
      const cmat b = random_psd(dim, 1 + static_cast<int>(s % dim), rng);
      const double d = trace_distance(a, b);
      const double f = fidelity(a, b);

      for (int t = 0; t < 10; ++t) {
        const Povm povm = random_povm(dim, 2 + t % 4, rng);
        double d_functional = 0.0;
        double f_functional = 0.0;
        for (const cmat& el : povm.elements) {
          const double pa = (el * a).trace().real();
          const double pb = (el * b).trace().real();
          d_functional += 0.5 * std::abs(pa - pb);
          f_functional += std::sqrt(std::max(pa, 0.0) * std::max(pb, 0.0));
        }
        CHECK(d_functional <= d + 1e-9);
        CHECK(f_functional >= f - 1e-8);
      }

      // the positive-eigenspace two-outcome measurement attains D
      const JordanDecomposition jd = jordan_decompose(a - b);
      const cmat p_plus = jd.pos_projector;
      const cmat p_rest = cmat::Identity(dim, dim) - p_plus;
      const double attained =
          0.5 * (std::abs((p_plus * (a - b)).trace().real()) +
                 std::abs((p_rest * (a - b)).trace().real()));
      CHECK(attained == doctest::Approx(d).epsilon(1e-9));
    }
  }
}

// A positive operator below the identity with unit expectation on a spanning
// set of S dominates the projector onto S.
TEST_SUITE("lemma2") {
  TEST_CASE("dominance over the subspace projector") {
    for (std::uint64_t s = 0; s < 25; ++s) {
      Rng rng(derive_seed(s, "lemma2_battery"));
      const int dim = 4 + static_cast<int>(s % 3);
      const int sub = 1 + static_cast<int>(s % 3);

      // P_S from a random orthonormal set, Q psd on the complement
      const cmat u = rng.haar_unitary(dim);
      cmat p_s = cmat::Zero(dim, dim);
      for (int k = 0; k < sub; ++k) p_s += projector(u.col(k));
      cmat q = cmat::Zero(dim, dim);
      for (int k = sub; k < dim; ++k)
        q += rng.uniform() * projector(u.col(k));
      const double c = rng.uniform();
      const cmat pi = p_s + c * q;

      CHECK(min_eigenvalue(cmat::Identity(dim, dim) - pi) >= -1e-9);
      CHECK(min_eigenvalue(pi - p_s) >= -1e-9);
    }
  }
}

TEST_SUITE("unitary_invariance") {
  TEST_CASE("fidelity and trace distance under joint conjugation") {
    for (std::uint64_t s = 0; s < 20; ++s) {
      Rng rng(derive_seed(s, "unitary_invariance"));
      const int dim = 2 + static_cast<int>(s % 4);
      const cmat a = random_psd(dim, dim, rng);
      const cmat b = random_psd(dim, dim, rng);
      const cmat u = rng.haar_unitary(dim);
      const cmat ua = u * a * u.adjoint();
      const cmat ub = u * b * u.adjoint();
      CHECK(std::abs(fidelity(ua, ub) - fidelity(a, b)) <= 1e-9);
      CHECK(std::abs(trace_distance(ua, ub) - trace_distance(a, b)) <= 1e-9);
    }
  }
}
