#include "doctest.h"

#include "dyadic/counting.hpp"

using namespace dyadic;

namespace {

// meas{(x, y1, z1, ..) : B(x) + sum 2 y_i z_i = rho mod 2 w^l} by plain enumeration.
Rational brute_split(const DiagonalForm& B, int planes, const RingElem& rho, int l) {
  const LocalField& k = B.field();
  const int M = l + k.e();
  const int n = B.dim() + 2 * planes;
  const std::uint64_t s = k.ring_size(M);
  std::uint64_t total = 1;
  for (int i = 0; i < n; ++i) total *= s;
  const RingElem two = k.from_int(2, M);
  const RingElem target = k.reduce(rho, M);
  std::uint64_t hits = 0;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    RingElem v = k.zero(M);
    for (int i = 0; i < B.dim(); ++i) {
      const RingElem x = k.from_index(rest % s, M);
      rest /= s;
      v = k.add(v, k.mul(k.reduce(B.coeffs()[static_cast<std::size_t>(i)], M), k.square(x)));
    }
    for (int i = 0; i < planes; ++i) {
      const RingElem y = k.from_index(rest % s, M);
      rest /= s;
      const RingElem z = k.from_index(rest % s, M);
      rest /= s;
      v = k.add(v, k.mul(two, k.mul(y, z)));
    }
    if (v == target) ++hits;
  }
  Rational r(Integer(static_cast<unsigned long>(hits)), Integer(static_cast<unsigned long>(total)));
  r.canonicalize();
  return r;
}

}  // namespace

TEST_SUITE("counting") {
  TEST_CASE("x^2 = 1 over Q2") {
    const LocalField k = LocalField::make(2, 1);
    const DiagonalForm f(k, std::vector<std::int64_t>{1});
    const TruncatedSeries s = x_series(f, k.one(k.working_level()), 4);
    const std::vector<Rational> expected = {make_rational(1, 2), make_rational(1, 2), make_rational(1, 2),
                                            make_rational(1, 4), make_rational(1, 8)};
    CHECK(s.coeffs == expected);
  }

  TEST_CASE("naive and histogram kernels agree") {
    for (const LocalField& k : {LocalField::make(2, 1), LocalField::make(2, 2), LocalField::make(3, 1),
                                LocalField::make(2, 1, FieldVariant::ramified(0, -2))}) {
      const int W = k.working_level();
      for (const auto& cs : std::vector<std::vector<std::int64_t>>{{1}, {1, 3}, {1, 1, 1}, {1, 2, 5}}) {
        const DiagonalForm f(k, cs);
        for (std::int64_t r : {0, 1, 2, 3, 6}) {
          for (int l = 0; l <= 3; ++l) {
            if (k.q() == 4 && cs.size() == 3 && l == 3) continue;
            const RingElem rho = k.from_int(r, W);
            CHECK(count_level_naive(f, rho, l) == count_level_histogram(f, rho, l));
          }
        }
      }
    }
  }

  TEST_CASE("split kernel against enumeration with 2yz planes") {
    for (const LocalField& k : {LocalField::make(2, 1), LocalField::make(3, 1)}) {
      const int W = k.working_level();
      for (const auto& cs : std::vector<std::vector<std::int64_t>>{{}, {1}, {3}}) {
        const DiagonalForm f(k, cs);
        for (std::int64_t r : {0, 1, 2, 3})
          for (int l = 0; l <= 2; ++l)
            CHECK(count_level_split(f, 1, k.from_int(r, W), l) == brute_split(f, 1, k.from_int(r, W), l));
      }
    }
  }

  TEST_CASE("stabilized series equals direct counting") {
    for (const LocalField& k : {LocalField::make(2, 1), LocalField::make(2, 1, FieldVariant::ramified(0, -2))}) {
      const int W = k.working_level();
      SeriesOptions direct;
      direct.mode = SeriesMode::Direct;
      SeriesOptions verify;
      verify.mode = SeriesMode::Verify;
      for (const auto& cs : std::vector<std::vector<std::int64_t>>{{1}, {1, 1}, {1, 1, 1}, {1, 2}}) {
        const DiagonalForm f(k, cs);
        if (!is_anisotropic(f)) {
          CHECK_THROWS_AS(x_series(f, k.one(W), 3), std::invalid_argument);
          continue;
        }
        for (std::int64_t r : {1, 2, 4, 5}) {
          const RingElem rho = k.from_int(r, W);
          const auto a = x_series(f, rho, 7);
          CHECK(a.coeffs == x_series(f, rho, 7, direct).coeffs);
          CHECK(a.coeffs == x_series(f, rho, 7, verify).coeffs);
        }
        CHECK(x_series(f, std::nullopt, 6).coeffs == x_series(f, std::nullopt, 6, direct).coeffs);
      }
    }
  }

  TEST_CASE("budgets are enforced") {
    const LocalField k = LocalField::make(2, 1);
    const DiagonalForm f(k, std::vector<std::int64_t>{1, 1, 1, 1});
    CountOptions tiny;
    tiny.enumeration_budget = 1000;
    tiny.histogram_budget = 16;
    CHECK_THROWS_AS(count_level_naive(f, k.one(k.working_level()), 6, tiny), BudgetExceeded);
    CHECK_THROWS_AS(count_level_histogram(f, k.one(k.working_level()), 12, tiny), BudgetExceeded);
  }

  TEST_CASE("thread count does not change results") {
    const LocalField k = LocalField::make(2, 1);
    const DiagonalForm f(k, std::vector<std::int64_t>{1, 3, 5});
    CountOptions one, many;
    one.threads = 1;
    many.threads = 8;
    for (int l = 0; l <= 4; ++l) {
      const RingElem rho = k.from_int(7, k.working_level());
      CHECK(count_level_naive(f, rho, l, one) == count_level_naive(f, rho, l, many));
    }
  }

  TEST_CASE("truncated Pi is the weighted sum of square targets") {
    const LocalField k = LocalField::make(2, 1);
    const DiagonalForm f(k, std::vector<std::int64_t>{1, 1});
    const Rational a = make_rational(1, 3);
    const int L = 4, Tmax = 3;
    std::vector<Rational> expected(L + 1, 0);
    Rational weight = 1;
    for (int T = 0; T <= Tmax; ++T) {
      const auto s = x_series_square(f, T, L);
      for (int l = 0; l <= L; ++l) expected[static_cast<std::size_t>(l)] += weight * s.coeffs[static_cast<std::size_t>(l)];
      weight *= a;
    }
    CHECK(pi_truncated(f, a, L, Tmax) == expected);
  }
}
