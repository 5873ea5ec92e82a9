#include "doctest.h"

#include "dyadic/assembly.hpp"
#include "dyadic/closed_forms.hpp"
#include "dyadic/counting.hpp"

using namespace dyadic;

namespace {

std::array<std::optional<Rational>, kNumVars> at_iq(std::uint64_t q) {
  std::array<std::optional<Rational>, kNumVars> v;
  v[kIq] = make_rational(1, static_cast<long>(q));
  return v;
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("polynomial arithmetic") {
    const Polynomial z = Polynomial::var(kZ), iq = Polynomial::var(kIq);
    const Polynomial a = z + iq, b = z - iq;
    CHECK(a * b == z * z - iq * iq);
    CHECK((a * a).terms().size() == 3);
    CHECK(Polynomial::monomial(mono(2, 1), 3).terms().at(mono(2, 1)) == 3);
  }

  TEST_CASE("rational function arithmetic and canonical equality") {
    const RationalFunction g = RationalFunction::geometric(mono(1));
    CHECK(g * RationalFunction(RationalFunction::one_minus(mono(1))) == RationalFunction(1));
    const RationalFunction h = RationalFunction::geometric(mono(1, 1));
    CHECK(g + h == h + g);
    CHECK((g - g).is_zero());
    CHECK((g / h) * h == g);
    CHECK(g.pow(2) == g * g);
    const std::vector<Rational> s = g.z_series(4, {});
    CHECK(s == std::vector<Rational>(5, 1));
    const std::vector<Rational> t = h.z_series(3, at_iq(2));
    CHECK(t == std::vector<Rational>{1, make_rational(1, 2), make_rational(1, 4), make_rational(1, 8)});
    CHECK(proportionality_constant(g * 3, g) == std::optional<Rational>(3));
    CHECK(!proportionality_constant(g, h).has_value());
  }

  TEST_CASE("substitution") {
    const RationalFunction g = RationalFunction::geometric(mono(1));
    const RationalFunction s = g.substitute_monomial(kZ, mono(1, 2));
    CHECK(s == RationalFunction::geometric(mono(1, 2)));
    std::array<Rational, kNumVars> v{make_rational(1, 3), make_rational(1, 2), 1};
    CHECK(s.evaluate(v) == 1 / (1 - make_rational(1, 12)));
  }

  TEST_CASE("case names and dimensions") {
    CHECK(case_name(CaseTag::M0) == "m0");
    CHECK(case_name(CaseTag::U4) == "m4");
    CHECK(case_dimension(CaseTag::U3Square) == 3);
    CHECK(is_second_method(CaseTag::U2OddPlus));
    CHECK(!is_second_method(CaseTag::M2OddMinus));
  }

  TEST_CASE("second-method classes are rejected over ramified fields") {
    const LocalField k = LocalField::make(2, 1, FieldVariant::ramified(0, -2));
    const DiagonalForm f(k, std::vector<std::int64_t>{1, 1, 1, 1});
    if (is_anisotropic(f)) CHECK_THROWS_AS(classify_case(f), UnsupportedCase);
  }

  TEST_CASE("closed forms over Q2 match counting") {
    const LocalField k = LocalField::make(2, 1);
    for (const CaseInstance& ci : supported_cases(k)) {
      for (int T = 0; T <= 2; ++T) {
        const auto oracle = x_series_square(ci.form, T, 5);
        CHECK_MESSAGE(x_closed(ci.c, T).z_series(5, at_iq(2)) == oracle.coeffs, case_name(ci.c.tag), " T=", T);
      }
      const PiecewiseGeometric x = x_piecewise(ci.c);
      for (int T = 0; T <= 6; ++T) CHECK(x.at(T) == x_closed(ci.c, T));
      CHECK(x.zero_value.z_series(5, at_iq(2)) == x_series(ci.form, std::nullopt, 5).coeffs);
    }
  }

  TEST_CASE("Pi two ways") {
    for (const CaseInstance& ci : supported_cases(LocalField::make(2, 1))) {
      const PiecewiseGeometric x = x_piecewise(ci.c);
      CHECK(pi_from_x(x, 1, ci.form.dim()) == pi_geometric(x));
    }
  }

  TEST_CASE("dyadic sum identity") {
    for (int o = 0; o <= 4; ++o)
      for (int L = 0; L <= 9; ++L) CHECK(dyadic_sum_direct(o, L) == dyadic_sum_closed(o, L));
  }

  TEST_CASE("dimension reduction on the zero form") {
    // B = 0 with one plane 2yz over Q3: X_l(1) by counting against the identity.
    const LocalField k = LocalField::make(3, 1);
    const DiagonalForm zero(k, std::vector<RingElem>{});
    const RingElem one = k.one(k.working_level());
    std::vector<Rational> big;
    for (int l = 0; l <= 4; ++l) big.push_back(count_level_split(zero, 1, one, l));
    RationalFunction f;  // X^0(beta; 1) = 1 at level 0 and 0 afterwards
    f += RationalFunction(1);
    CHECK(dimension_reduce(f, 1).z_series(4, at_iq(3)) == big);
  }

  TEST_CASE("zeta factors") {
    CHECK(zeta_alpha(1, 0) == RationalFunction::geometric(mono(0, 0, 1)));
    CHECK(zeta_beta(1) == RationalFunction::geometric(mono(1, 1)));
    CHECK(zeta_Z(mono(1), 2) * RationalFunction(RationalFunction::one_minus(mono(1), 2)) == RationalFunction(1));
  }
}
