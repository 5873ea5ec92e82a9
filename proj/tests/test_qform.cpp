#include "doctest.h"

#include "dyadic/parse.hpp"
#include "dyadic/qform.hpp"

using namespace dyadic;

TEST_SUITE("qform") {
  TEST_CASE("coefficients are normalized by squares") {
    const LocalField k = LocalField::make(2, 1);
    const DiagonalForm f(k, std::vector<std::int64_t>{4, 8, 3});
    CHECK(k.ord(f.coeffs()[0]) == 0);
    CHECK(k.ord(f.coeffs()[1]) == 1);
    CHECK(f.square_scales() == std::vector<int>{1, 1, 0});
  }

  TEST_CASE("invariants of small forms over Q2") {
    const LocalField k = LocalField::make(2, 1);
    const int W = k.working_level();
    const FormInvariants a = invariants(DiagonalForm(k, std::vector<std::int64_t>{1, 1}));
    CHECK(a.m == 2);
    // disc = -1, a unit of defect 4o... -1 = 3 mod 4 has defect 2o = w^1 o over Q2
    CHECK(k.same_square_class(a.disc, k.from_int(-1, W)));
    CHECK(a.disc_kind == DiscKind::UnitDefect);
    CHECK(a.d == 1);
    CHECK(a.hmi == 1);
    const FormInvariants b = invariants(DiagonalForm(k, std::vector<std::int64_t>{-1, -1}));
    CHECK(b.hmi == -1);
    const FormInvariants c = invariants(DiagonalForm(k, std::vector<std::int64_t>{1, -2}));
    CHECK(c.disc_kind == DiscKind::NonUnit);
  }

  TEST_CASE("anisotropy rule agrees with the zero search") {
    for (const LocalField& k : {LocalField::make(2, 1), LocalField::make(3, 1),
                                LocalField::make(2, 1, FieldVariant::ramified(0, -2))}) {
      const auto R = k.square_class_representatives();
      for (std::size_t i = 0; i < R.size(); ++i)
        for (std::size_t j = i; j < R.size(); ++j) {
          const DiagonalForm f(k, std::vector<RingElem>{R[i], R[j]});
          CHECK_MESSAGE(is_anisotropic_by_rule(f) == is_anisotropic_by_search(f), f.to_string());
          for (std::size_t l = j; l < R.size(); l += 2) {
            const DiagonalForm g(k, std::vector<RingElem>{R[i], R[j], R[l]});
            CHECK_MESSAGE(is_anisotropic_by_rule(g) == is_anisotropic_by_search(g), g.to_string());
          }
        }
    }
  }

  TEST_CASE("classical anisotropic forms") {
    const LocalField k = LocalField::make(2, 1);
    CHECK(is_anisotropic(DiagonalForm(k, std::vector<std::int64_t>{1, 1, 1})));
    CHECK(is_anisotropic(DiagonalForm(k, std::vector<std::int64_t>{1, 1, 1, 1})));
    CHECK(!is_anisotropic(DiagonalForm(k, std::vector<std::int64_t>{1, 1, 1, 1, 1})));
    CHECK(!is_anisotropic(DiagonalForm(k, std::vector<std::int64_t>{1, -1})));
    CHECK(!is_anisotropic(DiagonalForm(k, std::vector<std::int64_t>{1, 1, -2})));
    CHECK(is_anisotropic(DiagonalForm(k, std::vector<std::int64_t>{1, 1, 2})));
    const LocalField k3 = LocalField::make(3, 1);
    CHECK(is_anisotropic(DiagonalForm(k3, std::vector<std::int64_t>{1, 1})));
    CHECK(!is_anisotropic(DiagonalForm(k3, std::vector<std::int64_t>{1, 2})));
  }

  TEST_CASE("representatives carry the requested invariants") {
    for (const LocalField& k : {LocalField::make(2, 1), LocalField::make(2, 2),
                                LocalField::make(2, 1, FieldVariant::ramified(0, -2))}) {
      int found = 0;
      for (int m = 1; m <= 3; ++m)
        for (const RingElem& disc : k.square_class_representatives())
          for (int hmi : {1, -1}) {
            try {
              const DiagonalForm f = anisotropic_representative(k, m, disc, hmi);
              const FormInvariants inv = invariants(f);
              CHECK(inv.m == m);
              CHECK(k.same_square_class(inv.disc, disc));
              CHECK(inv.hmi == hmi);
              CHECK(is_anisotropic_by_search(f));
              ++found;
            } catch (const std::invalid_argument&) {
            }
          }
      CHECK(found > 0);
      const DiagonalForm q4 = anisotropic_representative(k, 4, k.one(k.working_level()), quaternary_anisotropic_hmi(k));
      CHECK(is_anisotropic_by_search(q4));
      CHECK_THROWS_AS(anisotropic_representative(k, 4, k.one(k.working_level()), -quaternary_anisotropic_hmi(k)),
                      std::invalid_argument);
    }
  }

  TEST_CASE("Witt profile of the sum of squares") {
    const WittProfile w3 = witt_profile(3);
    CHECK(w3.n == 3);
    CHECK(w3.m + 2 * w3.k == 3);
    for (int n = 3; n <= 18; ++n) {
      const WittProfile w = witt_profile(n);
      CHECK(w.m <= 4);
      CHECK(w.m + 2 * w.k == n);
      CHECK(witt_profile(n + 8).m == w.m);
    }
  }

  TEST_CASE("parsing fields, elements and forms") {
    CHECK(parse_field("q2") == LocalField::make(2, 1));
    CHECK(parse_field("u4") == LocalField::make(2, 2));
    CHECK(parse_field("ram:0,-2") == LocalField::make(2, 1, FieldVariant::ramified(0, -2)));
    CHECK(parse_field("p=3") == LocalField::make(3, 1));
    CHECK(field_spec(parse_field("ram:2,2")) == "ram:2,2");
    CHECK_THROWS_AS(parse_field("q9"), std::invalid_argument);
    CHECK_THROWS_AS(parse_field("foo"), std::invalid_argument);

    const LocalField k = LocalField::make(2, 2);
    const int W = k.working_level();
    CHECK(parse_element(k, "3*w^2 - 1") == k.sub(k.mul(k.from_int(3, W), k.square(k.uniformizer(W))), k.one(W)));
    CHECK(parse_element(k, "(1+t)^2") == k.square(k.add(k.one(W), k.generator(W))));
    CHECK_THROWS_AS(parse_element(LocalField::make(2, 1), "t"), std::invalid_argument);
    CHECK_THROWS_AS(parse_element(k, "2*"), std::invalid_argument);

    const DiagonalForm f = parse_form(LocalField::make(2, 1), "x_1^2 - 3*x_2^2 + w*x_3^2");
    CHECK(f.dim() == 3);
    const LocalField q2 = LocalField::make(2, 1);
    CHECK(f.coeffs()[1] == q2.from_int(-3, q2.working_level()));
    CHECK(parse_form(q2, "0").dim() == 0);
    CHECK(parse_form(q2, "x^2 + x^2").dim() == 2);
    CHECK_THROWS_AS(parse_form(q2, "x_1^2 + x_1^2"), std::invalid_argument);
    CHECK_THROWS_AS(parse_form(q2, "x^3"), std::invalid_argument);
    CHECK_THROWS_AS(parse_form(q2, "4*x^2 - 4*x^2 + 0*x^2"), std::invalid_argument);
  }
}
