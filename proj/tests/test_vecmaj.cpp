#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "oracles.hpp"
#include "ritzvar/errors.hpp"
#include "ritzvar/vecmaj.hpp"

using namespace ritzvar;

namespace {

OrderedSpectrum raw(std::vector<double> v) { return OrderedSpectrum(std::move(v)); }

std::vector<double> vals(const OrderedSpectrum& s) { return s.values(); }

}  // namespace

TEST_CASE("OrderedSpectrum rejects non-finite entries and unsorted claims") {
  CHECK_THROWS_AS(raw({1.0, std::nan("")}), InputError);
  CHECK_THROWS_AS(raw({std::numeric_limits<double>::infinity()}), InputError);
  CHECK_THROWS_AS(OrderedSpectrum({1.0, 2.0}, Ordering::NonIncreasing), InputError);
  CHECK_NOTHROW(OrderedSpectrum({2.0, 2.0, 1.0}, Ordering::NonIncreasing));
}

TEST_CASE("sort_desc") {
  CHECK(vals(sort_desc(raw({1, 3, 2}))) == std::vector<double>{3, 2, 1});
  CHECK(vals(sort_desc(raw({0, 0}))) == std::vector<double>{0, 0});
  CHECK(sort_desc(raw({1, 3, 2})).is_sorted());
  CHECK(vals(sort_asc(raw({1, 3, 2}))) == std::vector<double>{1, 2, 3});

  SUBCASE("matches insertion sort on random vectors") {
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
      auto v = oracle::random_vector(rng, 1 + rng.uniform_int(0, 20), -5, 5);
      // force ties
      if (v.size() > 3) v[1] = v[3];
      CHECK(vals(sort_desc(raw(v))) == oracle::insertion_sort_desc(v));
    }
  }
  SUBCASE("signed zero ties keep input order") {
    const auto s = sort_desc(raw({-0.0, 0.0}));
    CHECK(std::signbit(s[0]));
    CHECK_FALSE(std::signbit(s[1]));
  }
}

TEST_CASE("pad_pair") {
  auto [a, b] = pad_pair(raw({1, 1, 1}), raw({3}));
  CHECK(vals(a) == std::vector<double>{1, 1, 1});
  CHECK(vals(b) == std::vector<double>{3, 0, 0});

  auto [c, d] = pad_pair(raw({4, 2}), raw({5, 1, 0.5}));
  CHECK(vals(c) == std::vector<double>{4, 2, 0});
  CHECK(vals(d) == std::vector<double>{5, 1, 0.5});

  auto [e, f] = pad_pair(raw({1, -2}), raw({3, 4}));
  CHECK(vals(e) == std::vector<double>{1, -2});
  CHECK(vals(f) == std::vector<double>{3, 4});

  CHECK_THROWS_AS(pad_pair(raw({1, -1}), raw({3})), InputError);
}

TEST_CASE("submajorizes on hand examples") {
  const auto v = submajorizes(raw({1.73205, 0.86603}), raw({2.09440, 1.04720}));
  CHECK(v.holds);
  CHECK(v.partial_sums_rhs[0] - v.partial_sums_lhs[0] == doctest::Approx(0.36235).epsilon(1e-9));
  // second prefix margin: 3.14160 - 2.59808
  CHECK(v.partial_sums_rhs[1] - v.partial_sums_lhs[1] == doctest::Approx(0.54352).epsilon(1e-9));
  CHECK(v.worst_margin == doctest::Approx(0.36235).epsilon(1e-9));

  const auto self = submajorizes(raw({3, 1, 2}), raw({3, 1, 2}));
  CHECK(self.holds);
  CHECK(self.worst_margin == 0.0);

  const auto fail = submajorizes(raw({2, 2}), raw({3, 0}));
  CHECK_FALSE(fail.holds);
  CHECK(fail.worst_margin == doctest::Approx(-1.0));
  CHECK(fail.partial_sums_lhs.size() == fail.partial_sums_rhs.size());
}

TEST_CASE("submajorizes pads with zeros and sorts after padding") {
  const auto v = submajorizes(raw({1, 1, 1}), raw({3}));
  CHECK(v.holds);
  CHECK(v.partial_sums_rhs == std::vector<double>{3, 3, 3});
  CHECK_FALSE(submajorizes(raw({1, 1, 1.5}), raw({3})).holds);
}

TEST_CASE("submajorizes agrees with the brute-force prefix oracle") {
  Rng rng(5);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(rng.uniform_int(0, 8));
    const std::size_t m = rng.uniform() < 0.5 ? n : 1 + static_cast<std::size_t>(rng.uniform_int(0, 8));
    auto x = oracle::random_vector(rng, n, 0, 3);
    auto y = oracle::random_vector(rng, m, 0, 3);
    const double tol = 1e-12;
    CHECK(submajorizes(raw(x), raw(y), tol).holds == oracle::brute_submajorized(x, y, tol));
  }
}

TEST_CASE("verdict invariant: holds iff worst_margin >= -tolerance") {
  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    auto x = oracle::random_vector(rng, 5, -2, 2);
    auto y = oracle::random_vector(rng, 5, -2, 2);
    const auto v = submajorizes(raw(x), raw(y), 1e-3);
    CHECK(v.holds == (v.worst_margin >= -v.tolerance));
  }
}

TEST_CASE("majorizes requires equal traces") {
  CHECK(majorizes(raw({2, 1, 1}), raw({3, 1, 0})).holds);
  CHECK(submajorizes(raw({1, 1}), raw({3, 0})).holds);
  const auto v = majorizes(raw({1, 1}), raw({3, 0}));
  CHECK_FALSE(v.holds);
  CHECK(v.trace_gap == doctest::Approx(1.0));
  CHECK_THROWS_AS(majorizes(raw({1, 1}), raw({2})), InputError);
}

TEST_CASE("padded arithmetic") {
  const auto p = padded_mul(OrderedSpectrum({std::numbers::pi / 6, std::numbers::pi / 6}, Ordering::NonIncreasing),
                            OrderedSpectrum({4, 2}, Ordering::NonIncreasing));
  CHECK(p[0] == doctest::Approx(2.09440).epsilon(1e-5));
  CHECK(p[1] == doctest::Approx(1.04720).epsilon(1e-5));
  CHECK(vals(padded_add(raw({1, 2}), raw({3}))) == std::vector<double>{4, 2});
  CHECK(vals(padded_add(raw({1, 2}), raw({3}), true)) == std::vector<double>{4, 2});
  CHECK(vals(padded_mul(raw({1, 2, 3}), raw({1, 1, 1}))) == std::vector<double>{1, 2, 3});
  CHECK(vals(padded_mul(raw({1, 2, 3}), raw({1}))) == std::vector<double>{1, 0, 0});
  CHECK(vals(padded_add(raw({1, 3}), raw({0, 0}), true)) == std::vector<double>{3, 1});
  CHECK(vals(scaled(raw({2, 1}), 0.5)) == std::vector<double>{1, 0.5});
}

TEST_CASE("x is submajorized by its own rearrangement with zero margin") {
  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    auto x = oracle::random_vector(rng, 6, -1, 1);
    const auto v = submajorizes(raw(x), sort_desc(raw(x)), 0.0);
    CHECK(v.holds);
    CHECK(v.worst_margin == 0.0);
  }
}

TEST_CASE("rearrangement inequalities for sums and products") {
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform_int(0, 6));
    auto x = oracle::random_vector(rng, n, -3, 3);
    auto y = oracle::random_vector(rng, n, -3, 3);
    const auto xd = sort_desc(raw(x));
    const auto yd = sort_desc(raw(y));
    const auto ya = sort_asc(raw(y));
    const auto sum = padded_add(raw(x), raw(y));
    const double scale = 1e-12 * (1 + 6.0);
    CHECK(majorizes(padded_add(xd, ya), sum, scale).holds);
    CHECK(majorizes(sum, padded_add(xd, yd), scale).holds);

    auto xp = oracle::random_vector(rng, n, 0, 3);
    auto yp = oracle::random_vector(rng, n, 0, 3);
    const auto xpd = sort_desc(raw(xp));
    const auto prod = padded_mul(raw(xp), raw(yp));
    CHECK(submajorizes(padded_mul(xpd, sort_asc(raw(yp))), prod, 1e-12 * 10).holds);
    CHECK(submajorizes(prod, padded_mul(xpd, sort_desc(raw(yp))), 1e-12 * 10).holds);
  }
}

TEST_CASE("adding or multiplying a sorted vector preserves submajorization") {
  Rng rng(34);
  int exercised = 0;
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(rng.uniform_int(0, 5));
    auto x = oracle::random_vector(rng, n, 0, 2);
    auto y = oracle::random_vector(rng, n, 0, 2.5);
    if (!submajorizes(raw(x), raw(y), 0.0).holds) continue;
    ++exercised;
    const auto xd = sort_desc(raw(x));
    const auto yd = sort_desc(raw(y));
    const auto z = sort_desc(raw(oracle::random_vector(rng, n, 0, 2)));
    CHECK(submajorizes(padded_add(xd, z), padded_add(yd, z), 1e-12).holds);
    CHECK(submajorizes(padded_mul(xd, z), padded_mul(yd, z), 1e-12).holds);
  }
  CHECK(exercised > 20);
}

TEST_CASE("integral form: averages of pointwise submajorized samples") {
  // x(t) ≺_w z(t) with z(t) non-increasing at every node; trapezoid sums
  // keep the relation.
  Rng rng(55);
  const int nodes = 41;
  for (int t = 0; t < 50; ++t) {
    std::vector<double> ix(4, 0.0);
    std::vector<double> iz(4, 0.0);
    const auto base = oracle::random_vector(rng, 4, 0, 1);
    for (int i = 0; i < nodes; ++i) {
      const double s = static_cast<double>(i) / (nodes - 1);
      const double w = (i == 0 || i == nodes - 1) ? 0.5 : 1.0;
      std::vector<double> z(4);
      std::vector<double> x(4);
      for (int j = 0; j < 4; ++j) {
        z[j] = (4 - j) * (1 + std::sin(3 * s)) + base[j];
        x[j] = z[(j + 1) % 4] * (0.5 + 0.5 * std::cos(7 * s + j));
      }
      z = oracle::insertion_sort_desc(z);
      REQUIRE(submajorizes(raw(x), raw(z), 1e-12).holds);
      for (int j = 0; j < 4; ++j) {
        ix[j] += w * x[j] / (nodes - 1);
        iz[j] += w * z[j] / (nodes - 1);
      }
    }
    CHECK(submajorizes(raw(ix), raw(iz), 1e-12).holds);
  }
}

TEST_CASE("limit closure under small perturbations of passing pairs") {
  Rng rng(77);
  for (int t = 0; t < 100; ++t) {
    auto x = oracle::random_vector(rng, 4, 0, 1);
    auto y = x;
    for (double& v : y) v += 1e-3 * rng.uniform();
    for (double h : {1e-4, 1e-6, 1e-9}) {
      auto xn = x;
      for (double& v : xn) v -= h;
      CHECK(submajorizes(raw(xn), raw(y), 0.0).holds);
    }
    CHECK(submajorizes(raw(x), raw(y), 0.0).holds);
  }
}

TEST_CASE("default tolerance scales with the largest entry") {
  CHECK(default_tolerance(raw({1, 2}), raw({-4})) == doctest::Approx(1e-10 * 5));
  CHECK(default_tolerance(raw({0}), raw({0}), 1e-8) == doctest::Approx(1e-8));
}
