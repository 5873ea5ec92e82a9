#pragma once

// Laurent polynomials with exact rational coefficients in the three
// indeterminates z (= q^-beta), iq (= q^-1) and av (= q^-alpha).

#include "dyadic/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dyadic {

enum Var : int { kZ = 0, kIq = 1, kAv = 2 };
inline constexpr int kNumVars = 3;

using Monomial = std::array<int, kNumVars>;

Monomial mono(int z, int iq = 0, int av = 0);
Monomial operator*(const Monomial& a, const Monomial& b);
Monomial mono_pow(const Monomial& a, int k);
int total_degree(const Monomial& m);

class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
  Polynomial(long c) : Polynomial(Rational(c)) {}
  Polynomial(int c) : Polynomial(Rational(c)) {}
  static Polynomial monomial(const Monomial& m, const Rational& c = 1);
  static Polynomial var(Var v) { return monomial(mono(v == kZ, v == kIq, v == kAv)); }

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  Rational coeff(const Monomial& m) const;
  /// Lexicographically largest monomial (z first, then iq, then av).
  std::pair<Monomial, Rational> leading() const;
  /// Componentwise minimum exponent over all terms.
  Monomial min_exponents() const;
  int degree(Var v) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Polynomial& b) { return a *= b; }
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }

  Polynomial pow(unsigned k) const;
  Polynomial scaled(const Rational& c) const;
  Polynomial shifted(const Monomial& m) const;
  /// Replaces variable v by the monomial image (exponents may be negative).
  Polynomial substitute_monomial(Var v, const Monomial& image, const Rational& coeff = 1) const;
  /// Evaluates the variables listed in `values`, leaving the others symbolic.
  Polynomial evaluate_partial(const std::array<std::optional<Rational>, kNumVars>& values) const;
  Rational evaluate(const std::array<Rational, kNumVars>& values) const;

  /// Exact quotient when `divisor` divides *this (both with non-negative exponents).
  std::optional<Polynomial> divide_exact(const Polynomial& divisor) const;

  std::string to_string() const;

 private:
  std::map<Monomial, Rational> terms_;
  void add_term(const Monomial& m, const Rational& c);
};

std::string monomial_to_string(const Monomial& m);

}  // namespace dyadic
