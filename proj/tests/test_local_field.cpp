#include "doctest.h"

#include "dyadic/local_field.hpp"

#include <set>

using namespace dyadic;

namespace {

std::vector<LocalField> all_fields() {
  return {LocalField::make(2, 1), LocalField::make(2, 2), LocalField::make(2, 1, FieldVariant::ramified(0, -2)),
          LocalField::make(2, 1, FieldVariant::ramified(2, 2)), LocalField::make(3, 1), LocalField::make(5, 1)};
}

int legendre(std::uint64_t a, std::uint64_t p) {
  a %= p;
  std::uint64_t r = 1, b = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

// (a, b) over Q_p from a = p^alpha u, b = p^beta v.
int hilbert_classical(std::uint64_t p, int alpha, std::uint64_t u, int beta, std::uint64_t v) {
  if (p == 2) {
    auto eps = [](std::uint64_t x) { return static_cast<int>(((x - 1) / 2) % 2); };
    auto omega = [](std::uint64_t x) { return static_cast<int>(((x % 16) * (x % 16) - 1) / 8 % 2); };
    const int s = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u);
    return s % 2 ? -1 : 1;
  }
  int s = (alpha * beta * static_cast<int>((p - 1) / 2)) % 2 ? -1 : 1;
  if (beta % 2) s *= legendre(u, p);
  if (alpha % 2) s *= legendre(v, p);
  return s;
}

}  // namespace

TEST_SUITE("local_field") {
  TEST_CASE("construction rejects bad parameters") {
    CHECK_THROWS_AS(LocalField::make(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(LocalField::make(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(LocalField::make(2, 1, FieldVariant::ramified(0, 1)), std::invalid_argument);
    CHECK(LocalField::make(2, 1, FieldVariant::ramified(0, -2)).e() == 2);
    CHECK(LocalField::make(2, 2).q() == 4);
    CHECK(LocalField::make(7, 1).e() == 0);
  }

  TEST_CASE("ring axioms on residues") {
    for (const LocalField& k : all_fields()) {
      const int l = 4;
      const std::uint64_t s = k.ring_size(l);
      for (std::uint64_t i = 0; i < s; i += 3)
        for (std::uint64_t j = 0; j < s; j += 5) {
          const RingElem x = k.from_index(i, l), y = k.from_index(j, l);
          CHECK(k.add(x, y) == k.add(y, x));
          CHECK(k.mul(x, y) == k.mul(y, x));
          CHECK(k.sub(k.add(x, y), y) == x);
          const RingElem z = k.from_index((i * 7 + j) % s, l);
          CHECK(k.mul(x, k.add(y, z)) == k.add(k.mul(x, y), k.mul(x, z)));
        }
      for (const RingElem& u : k.unit_residues(3)) CHECK(k.mul(u, k.inverse(u)) == k.one(3));
    }
  }

  TEST_CASE("index round trip and order") {
    for (const LocalField& k : all_fields()) {
      for (std::uint64_t i = 0; i < k.ring_size(3); ++i) CHECK(k.index_of(k.from_index(i, 3)) == i);
      const int W = k.working_level();
      const RingElem w = k.uniformizer(W);
      CHECK(k.ord(w) == 1);
      CHECK(k.ord(k.pow(w, 3)) == 3);
      CHECK(k.ord(k.from_int(2, W)) == k.e());
      CHECK(k.is_zero(k.zero(W)));
    }
  }

  TEST_CASE("generator of the Galois ring") {
    const LocalField k = LocalField::make(2, 2);
    const int W = k.working_level();
    const RingElem t = k.generator(W);
    CHECK(k.is_zero(k.add(k.add(k.square(t), t), k.one(W))));
  }

  TEST_CASE("square-class counts") {
    // |K^x / K^x2| = 4 q^e for dyadic fields, 4 for odd p.
    CHECK(LocalField::make(2, 1).square_class_representatives().size() == 8);
    CHECK(LocalField::make(2, 2).square_class_representatives().size() == 16);
    CHECK(LocalField::make(2, 1, FieldVariant::ramified(0, -2)).square_class_representatives().size() == 16);
    CHECK(LocalField::make(3, 1).square_class_representatives().size() == 4);
  }

  TEST_CASE("square roots match enumeration up to level 8") {
    for (const LocalField& k : all_fields()) {
      const int W = k.working_level();
      std::vector<RingElem> rhos = k.square_class_representatives();
      rhos.push_back(k.zero(W));
      rhos.push_back(k.square(k.uniformizer(W)));
      for (const RingElem& rho : rhos)
        for (int l = 0; l <= 8; ++l) {
          const std::uint64_t s = k.ring_size(l);
          if (s > (1u << 16)) continue;
          const RingElem target = k.reduce(rho, l);
          std::uint64_t hits = 0;
          for (std::uint64_t x = 0; x < s; ++x)
            if (k.square(k.from_index(x, l)) == target) ++hits;
          Rational expected(Integer(static_cast<unsigned long>(hits)), Integer(static_cast<unsigned long>(s)));
          expected.canonicalize();
          CHECK_MESSAGE(k.count_square_roots(rho, l) == expected, k.name(), " rho=", k.to_string(rho), " l=", l);
        }
    }
  }

  TEST_CASE("hilbert symbol over Q2 and Q3 matches the explicit formulas") {
    for (std::uint64_t p : {2u, 3u, 5u}) {
      const LocalField k = LocalField::make(p, 1);
      for (const RingElem& a : k.square_class_representatives())
        for (const RingElem& b : k.square_class_representatives()) {
          const int alpha = k.ord(a), beta = k.ord(b);
          std::uint64_t u = a.c[0], v = b.c[0];
          for (int i = 0; i < alpha; ++i) u /= p;
          for (int i = 0; i < beta; ++i) v /= p;
          CHECK_MESSAGE(k.hilbert_symbol(a, b) == hilbert_classical(p, alpha, u, beta, v), k.to_string(a), ",",
                        k.to_string(b));
        }
    }
  }

  TEST_CASE("known dyadic values") {
    const LocalField k = LocalField::make(2, 1);
    const int W = k.working_level();
    auto h = [&](std::int64_t a, std::int64_t b) { return k.hilbert_symbol(k.from_int(a, W), k.from_int(b, W)); };
    CHECK(h(-1, -1) == -1);
    CHECK(h(2, 3) == -1);
    CHECK(h(2, 7) == 1);
    CHECK(h(5, 2) == -1);
    CHECK(h(3, 5) == 1);
  }

  TEST_CASE("quotient of two defect-4o units is a square, modulo w^8") {
    for (const LocalField& k : {LocalField::make(2, 1), LocalField::make(2, 2),
                                LocalField::make(2, 1, FieldVariant::ramified(0, -2))}) {
      const int M = 8, e = k.e(), W = k.working_level();
      std::set<std::uint64_t> squares;
      for (const RingElem& x : k.unit_residues(M)) squares.insert(k.index_of(k.square(x)));
      std::vector<RingElem> four;
      for (const RingElem& r : k.unit_residues(M)) {
        if (squares.count(k.index_of(r))) continue;
        bool near = false;
        for (const RingElem& x : k.unit_residues(2 * e))
          if (k.is_zero(k.sub(k.reduce(r, 2 * e), k.square(x)))) near = true;
        if (near) four.push_back(r);
      }
      REQUIRE(!four.empty());
      for (std::size_t j = 0; j < 3 && j < four.size(); ++j) {
        const RingElem inv = k.inverse(four[j]);
        for (const RingElem& r : four) CHECK(squares.count(k.index_of(k.mul(r, inv))) == 1);
      }
      for (const RingElem& r : four) {
        const DefectResult d = k.quadratic_defect(k.from_coords(r.c, W));
        CHECK(!d.is_square());
        CHECK(d.d == 2 * e);
      }
    }
  }

  TEST_CASE("companion unit") {
    for (const LocalField& k : {LocalField::make(2, 1), LocalField::make(2, 2),
                                LocalField::make(2, 1, FieldVariant::ramified(0, -2))}) {
      for (const RingElem& delta : k.square_class_representatives()) {
        if (!k.is_unit(delta) || k.is_square(delta)) continue;
        const DefectResult d = k.quadratic_defect(delta);
        if (d.d == 2 * k.e()) continue;
        const RingElem a = k.pick_companion_unit(delta);
        CHECK(k.is_unit(a));
        CHECK(k.hilbert_symbol(a, delta) == -1);
      }
    }
  }

  TEST_CASE("primality") {
    CHECK(is_prime(2));
    CHECK(is_prime(97));
    CHECK(!is_prime(1));
    CHECK(!is_prime(91));
  }
}
