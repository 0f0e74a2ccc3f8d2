#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "ritzvar/errors.hpp"
#include "ritzvar/spectra.hpp"

using namespace ritzvar;

namespace {

CMat antidiag4(double a, double b) {
  CMat m = CMat::Zero(4, 4);
  m(0, 2) = m(2, 0) = a;
  m(1, 3) = m(3, 1) = b;
  return m;
}

CMat diag(std::initializer_list<double> d) {
  CMat m = CMat::Zero(static_cast<Eigen::Index>(d.size()), static_cast<Eigen::Index>(d.size()));
  Eigen::Index i = 0;
  for (double v : d) m(i, i) = v, ++i;
  return m;
}

}  // namespace

TEST_CASE("matrix validation") {
  CHECK_THROWS_AS(ComplexMatrix(CMat(0, 3)), InputError);
  CMat bad = CMat::Identity(2, 2);
  bad(0, 1) = cdouble(std::nan(""), 0);
  CHECK_THROWS_AS(ComplexMatrix{bad}, InputError);
  CHECK_THROWS_AS(HermitianMatrix(CMat::Zero(2, 3)), InputError);

  CMat skew = CMat::Identity(2, 2);
  skew(0, 1) = 1.0;
  CHECK_THROWS_AS(HermitianMatrix{skew}, InputError);

  CMat nearly = CMat::Identity(2, 2);
  nearly(0, 1) = cdouble(0.5, 1e-14);
  nearly(1, 0) = cdouble(0.5, 0.0);
  const HermitianMatrix h(nearly);
  CHECK(h.mat()(0, 1) == std::conj(h.mat()(1, 0)));
  CHECK(h.correction() > 0.0);
}

TEST_CASE("eigenvalues_desc") {
  const auto ev = eigenvalues_desc(HermitianMatrix(antidiag4(2, 1)));
  CHECK(oracle::max_abs_diff(ev.values(), {2, 1, -1, -2}) < 1e-14);
  CHECK(ev.is_sorted());
  CHECK(eigenvalues_desc(HermitianMatrix(CMat::Identity(3, 3))).values() ==
        std::vector<double>{1, 1, 1});

  SUBCASE("matches characteristic-polynomial roots for d <= 6") {
    Rng rng(101);
    for (int t = 0; t < 60; ++t) {
      const auto d = rng.uniform_int(1, 6);
      const HermitianMatrix a = gen_hermitian(rng, d);
      CHECK(oracle::max_abs_diff(eigenvalues_desc(a).values(),
                                 oracle::charpoly_eigenvalues(a.mat())) < 1e-8);
    }
  }
  SUBCASE("unitary conjugation leaves the spectrum unchanged") {
    Rng rng(102);
    for (int t = 0; t < 50; ++t) {
      const auto d = rng.uniform_int(2, 10);
      const HermitianMatrix a = gen_hermitian(rng, d);
      const CMat w = gen_unitary(rng, d);
      const HermitianMatrix b = HermitianMatrix::symmetrized(w.adjoint() * a.mat() * w);
      CHECK(oracle::max_abs_diff(eigenvalues_desc(a).values(), eigenvalues_desc(b).values()) <
            1e-12 * (1 + a.mat().norm()));
      CHECK(oracle::max_abs_diff(spectral_spread(a).values(), spectral_spread(b).values()) <
            1e-11 * (1 + a.mat().norm()));
    }
  }
}

TEST_CASE("eigen_decomposition reconstructs A") {
  Rng rng(103);
  const HermitianMatrix a = gen_hermitian(rng, 7);
  const auto [lambda, v] = eigen_decomposition(a);
  CMat l = CMat::Zero(7, 7);
  for (Eigen::Index i = 0; i < 7; ++i) l(i, i) = lambda[static_cast<std::size_t>(i)];
  CHECK((v * l * v.adjoint() - a.mat()).norm() < 1e-12);
}

TEST_CASE("singular_values") {
  CHECK(singular_values(CMat(CMat::Zero(3, 2))).values() == std::vector<double>{0, 0});
  const auto s = singular_values(diag({3, -4}));
  CHECK(oracle::max_abs_diff(s.values(), {4, 3}) < 1e-14);

  Rng rng(104);
  for (int t = 0; t < 60; ++t) {
    const auto r = rng.uniform_int(1, 8);
    const auto c = rng.uniform_int(1, 8);
    const CMat b = gen_complex(rng, r, c);
    const auto sv = singular_values(b);
    CHECK(sv.size() == static_cast<std::size_t>(std::min(r, c)));
    CHECK(oracle::max_abs_diff(sv.values(), oracle::singular_values_via_gram(b)) < 1e-7);
    CHECK(oracle::max_abs_diff(sv.values(), singular_values(CMat(b.adjoint())).values()) < 1e-12);
  }
}

TEST_CASE("spectral_spread") {
  const auto spr = spectral_spread_from_eigenvalues(OrderedSpectrum({2, 1, -1, -2}, Ordering::NonIncreasing));
  CHECK(spr.values() == std::vector<double>{4, 2});
  CHECK(spectral_spread(HermitianMatrix(CMat(3.5 * CMat::Identity(5, 5)))).values() ==
        std::vector<double>{0, 0});
  CHECK(spectral_spread_from_eigenvalues(OrderedSpectrum({2, 1, 0, 0}, Ordering::NonIncreasing))
            .values() == std::vector<double>{2, 1});
  // odd d drops the middle eigenvalue
  CHECK(spectral_spread_from_eigenvalues(OrderedSpectrum({5, 3, 1}, Ordering::NonIncreasing))
            .values() == std::vector<double>{4});

  Rng rng(105);
  for (int t = 0; t < 50; ++t) {
    const auto d = rng.uniform_int(1, 9);
    const HermitianMatrix a = gen_hermitian(rng, d);
    const auto spr_a = spectral_spread(a);
    CHECK(spr_a.size() == static_cast<std::size_t>(d / 2));
    CHECK(spr_a.all_non_negative());
    CHECK(spr_a.is_sorted());
    const double c = 3.0 * rng.normal();
    const HermitianMatrix shifted(CMat(a.mat() + c * CMat::Identity(d, d)));
    CHECK(oracle::max_abs_diff(spr_a.values(), spectral_spread(shifted).values()) < 1e-12 * (1 + std::abs(c) + a.mat().norm()));
  }
}

TEST_CASE("Weyl-type checks") {
  const ComplexMatrix c(CMat::Identity(3, 3));
  const ComplexMatrix minus_c(CMat(-CMat::Identity(3, 3)));
  const auto zero = check_weyl_additive(c, minus_c);
  CHECK(zero.holds);
  CHECK(zero.lhs_sorted == std::vector<double>{0, 0, 0});

  const auto eq = check_weyl_additive(c, c);
  CHECK(eq.holds);
  CHECK(eq.lhs_sorted == eq.rhs_sorted);
  CHECK(eq.worst_margin == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(check_weyl_additive(c, ComplexMatrix(CMat::Identity(2, 2))), InputError);
  CHECK_THROWS_AS(check_weyl_multiplicative(ComplexMatrix(CMat::Identity(3, 2)), c), InputError);
  CHECK_THROWS_AS(check_real_part(ComplexMatrix(CMat::Identity(3, 2))), InputError);

  Rng rng(106);
  for (int t = 0; t < 500; ++t) {
    const auto d = rng.uniform_int(1, 10);
    const auto m = rng.uniform_int(1, 10);
    const auto n = rng.uniform_int(1, 10);
    const ComplexMatrix x(gen_complex(rng, d, m));
    CHECK(check_weyl_additive(x, ComplexMatrix(gen_complex(rng, d, m))).holds);
    CHECK(check_weyl_multiplicative(x, ComplexMatrix(gen_complex(rng, m, n))).holds);
    CHECK(check_real_part(ComplexMatrix(gen_complex(rng, d, d))).holds);
  }
}

TEST_CASE("Lidskii checks") {
  const HermitianMatrix c(antidiag4(2, 1));
  const auto same = check_lidskii(c, c);
  CHECK(same.eigen_difference.holds);
  CHECK(same.absolute.holds);
  CHECK(same.absolute.lhs_sorted == std::vector<double>{0, 0, 0, 0});
  CHECK_THROWS_AS(check_lidskii(c, HermitianMatrix(CMat::Identity(3, 3))), InputError);

  Rng rng(107);
  for (int t = 0; t < 500; ++t) {
    const auto d = rng.uniform_int(1, 10);
    const HermitianMatrix x = gen_hermitian(rng, d);
    const HermitianMatrix y = gen_hermitian(rng, d);
    const auto v = check_lidskii(x, y);
    CHECK(v.eigen_difference.holds);
    CHECK(v.absolute.holds);
  }
}

TEST_CASE("hat embedding spectrum") {
  const auto one = hat_embedding_spectrum(ComplexMatrix(CMat::Ones(1, 1)));
  CHECK(one.holds);
  CHECK(oracle::max_abs_diff(one.eigenvalues.values(), {1, -1}) < 1e-14);

  const auto zero = hat_embedding_spectrum(ComplexMatrix(CMat::Zero(2, 3)));
  CHECK(zero.holds);
  CHECK(zero.eigenvalues.max_abs() == 0.0);
  CHECK(zero.expected.size() == 5);

  Rng rng(108);
  for (int t = 0; t < 100; ++t) {
    const auto k = rng.uniform_int(1, 6);
    const auto m = rng.uniform_int(1, 6);
    const auto rep = hat_embedding_spectrum(ComplexMatrix(gen_complex(rng, k, m)));
    CHECK(rep.holds);
    CHECK(rep.max_deviation <= 1e-10 * (1 + rep.expected.max_abs()));
  }
  const auto r34 = hat_embedding_spectrum(ComplexMatrix(gen_complex(rng, 3, 4)));
  CHECK(r34.max_deviation <= 1e-10);
}

TEST_CASE("spread subadditivity") {
  Rng rng(109);
  const HermitianMatrix a = gen_hermitian(rng, 6);
  const auto with_zero = check_spread_subadditive(a, HermitianMatrix(CMat::Zero(6, 6)));
  CHECK(with_zero.holds);
  CHECK(with_zero.lhs_sorted == with_zero.rhs_sorted);

  const auto with_neg = check_spread_subadditive(a, HermitianMatrix::symmetrized(-a.mat()));
  CHECK(with_neg.holds);
  CHECK(std::abs(with_neg.lhs_sorted[0]) < 1e-12);

  for (int t = 0; t < 500; ++t) {
    const auto d = rng.uniform_int(2, 10);
    CHECK(check_spread_subadditive(gen_hermitian(rng, d), gen_hermitian(rng, d)).holds);
  }
}

TEST_CASE("off-diagonal block") {
  CMat swap = CMat::Zero(2, 2);
  swap(0, 1) = swap(1, 0) = 1.0;
  const auto v = check_offdiag_block(HermitianMatrix(swap), 1);
  CHECK(v.holds);
  CHECK(v.lhs_sorted == std::vector<double>{2});
  CHECK(v.rhs_sorted[0] == doctest::Approx(2.0));
  CHECK(v.worst_margin == doctest::Approx(0.0).epsilon(1e-12));

  const auto blockdiag = check_offdiag_block(HermitianMatrix(diag({1, 2, 3, 4})), 2);
  CHECK(blockdiag.lhs_sorted == std::vector<double>{0, 0});

  CHECK_THROWS_AS(check_offdiag_block(HermitianMatrix(swap), 0), InputError);
  CHECK_THROWS_AS(check_offdiag_block(HermitianMatrix(swap), 2), InputError);

  Rng rng(110);
  for (int t = 0; t < 500; ++t) {
    const auto d = rng.uniform_int(2, 10);
    const HermitianMatrix h = gen_hermitian(rng, d);
    for (Eigen::Index k = 1; k < d; ++k) CHECK(check_offdiag_block(h, k).holds);
  }
}

TEST_CASE("generalized commutator") {
  const HermitianMatrix id(CMat::Identity(3, 3));
  Rng rng(111);
  const ComplexMatrix d(gen_complex(rng, 3, 3));
  const auto zero = check_generalized_commutator(id, id, d);
  CHECK(zero.holds);
  CHECK(zero.lhs_sorted[0] < 1e-14);

  const HermitianMatrix a = gen_hermitian(rng, 3);
  CHECK(check_generalized_commutator(a, a, ComplexMatrix(CMat::Identity(3, 3))).holds);
  CHECK_THROWS_AS(check_generalized_commutator(a, HermitianMatrix(CMat::Identity(2, 2)), d),
                  InputError);

  const auto sum = direct_sum(a, id);
  CHECK(sum.dim() == 6);
  CHECK(sum.mat().topRightCorner(3, 3).norm() == 0.0);

  for (int t = 0; t < 500; ++t) {
    const auto k = rng.uniform_int(1, 6);
    CHECK(check_generalized_commutator(gen_hermitian(rng, k), gen_hermitian(rng, k),
                                       ComplexMatrix(gen_complex(rng, k, k)))
              .holds);
  }
}
