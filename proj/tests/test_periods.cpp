#include "doctest.h"

#include "dyadic/json_io.hpp"
#include "dyadic/periods.hpp"

#include <string>

using namespace dyadic;

TEST_SUITE("periods") {
  TEST_CASE("mod-4 character") {
    CHECK(chi1(2) == 0);
    CHECK(chi1(5) == 1);
    CHECK(chi1(7) == -1);
    CHECK_THROWS_AS(chi1(9), std::invalid_argument);
  }

  TEST_CASE("table rows cycle with period 8") {
    for (int n = 3; n <= 10; ++n) {
      const TableRow a = table_row(n), b = table_row(n + 8);
      CHECK(a.base == n);
      CHECK(b.base == n);
      CHECK(b.block == 1);
      CHECK(a.witt.m == b.witt.m);
    }
    CHECK_THROWS(table_row(2));
  }

  TEST_CASE("period text") {
    const TableRow r = table_row(6);
    const std::string s = period_text(r.uncorrected, r.witt.disc);
    CHECK(s.find("zeta") != std::string::npos);
  }

  TEST_CASE("uncorrected local factor is the Euler factor of the quotient") {
    // zeta(alpha - 3) at a prime: 1 / (1 - av iq^-3)
    const std::vector<PeriodFactor> f = {PeriodFactor{false, 1, -3, 1}};
    CHECK(uncorrected_local(f, 1) == RationalFunction::geometric(mono(0, -3, 1)));
    const std::vector<PeriodFactor> l = {PeriodFactor{true, 1, -3, 1}};
    const RationalFunction minus = RationalFunction(1) / RationalFunction(Polynomial(1) + Polynomial::monomial(mono(0, -3, 1)));
    CHECK(uncorrected_local(l, -1) == minus);
    CHECK(uncorrected_local(l, 0) == RationalFunction(1));
  }

  TEST_CASE("truncation bound covers the change from more primes") {
    const PeriodValue a = evaluate_period(6, 10, 97);
    const PeriodValue b = evaluate_period(6, 10, 997);
    const mpf_class va(a.value, 256), vb(b.value, 256), ta(a.tail_bound, 256), tb(b.tail_bound, 256);
    CHECK(tb < ta);
    CHECK(abs(va - vb) <= ta);
    CHECK(a.factor2 == b.factor2);
  }

  TEST_CASE("period input validation") {
    CHECK_THROWS_AS(evaluate_period(6, 7, 97), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_period(2, 10, 97), std::invalid_argument);
  }

  TEST_CASE("table checks pass away from the inconsistent rows") {
    for (int n : {3, 4, 5, 8, 9, 10, 11, 12, 13, 16, 17, 18})
      for (const CheckResult& c : verify_table_row(n)) CHECK_MESSAGE(c.passed, "n=", n, " ", c.name, ": ", c.detail);
  }

  TEST_CASE("JSON rendering is deterministic") {
    const PeriodValue v = evaluate_period(7, 12, 50);
    CHECK(to_json(v).dump() == to_json(evaluate_period(7, 12, 50)).dump());
    CHECK(to_json(make_rational(-3, 6)) == "-1/2");
    const Json rf = to_json(RationalFunction::geometric(mono(1, 1)));
    CHECK(rf["num"].size() == 1);
    CHECK(rf["den"].size() == 1);
  }
}
