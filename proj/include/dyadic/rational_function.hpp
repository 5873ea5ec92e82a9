#pragma once

// Rational functions num / prod(den factors) over the rationals in z, iq, av.
// Denominator factors are kept separately, each normalized to have no
// monomial content and first coefficient 1, so common factors cancel cheaply.

#include "dyadic/polynomial.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dyadic {

class RationalFunction {
 public:
  RationalFunction() = default;
  RationalFunction(Polynomial num);  // NOLINT: polynomials convert implicitly
  RationalFunction(const Rational& c) : RationalFunction(Polynomial(c)) {}  // NOLINT
  RationalFunction(long c) : RationalFunction(Polynomial(c)) {}             // NOLINT
  RationalFunction(int c) : RationalFunction(Polynomial(c)) {}              // NOLINT
  RationalFunction(Polynomial num, const Polynomial& den);

  static RationalFunction monomial(const Monomial& m, const Rational& c = 1) {
    return RationalFunction(Polynomial::monomial(m, c));
  }
  /// 1 / (1 - m)
  static RationalFunction geometric(const Monomial& m);
  /// 1 - m
  static Polynomial one_minus(const Monomial& m, const Rational& c = 1);

  const Polynomial& num() const { return num_; }
  const std::vector<Polynomial>& den_factors() const { return den_; }
  Polynomial den() const;
  bool is_zero() const { return num_.is_zero(); }

  RationalFunction& operator+=(const RationalFunction& o);
  RationalFunction& operator-=(const RationalFunction& o);
  RationalFunction& operator*=(const RationalFunction& o);
  RationalFunction& operator/=(const RationalFunction& o);
  friend RationalFunction operator+(RationalFunction a, const RationalFunction& b) { return a += b; }
  friend RationalFunction operator-(RationalFunction a, const RationalFunction& b) { return a -= b; }
  friend RationalFunction operator*(RationalFunction a, const RationalFunction& b) { return a *= b; }
  friend RationalFunction operator/(RationalFunction a, const RationalFunction& b) { return a /= b; }
  RationalFunction operator-() const;
  RationalFunction pow(int k) const;

  /// Equality of the represented functions (cross multiplication).
  friend bool operator==(const RationalFunction& a, const RationalFunction& b);
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  RationalFunction substitute_monomial(Var v, const Monomial& image, const Rational& coeff = 1) const;
  RationalFunction substitute(Var v, const RationalFunction& image) const;
  RationalFunction evaluate_partial(const std::array<std::optional<Rational>, kNumVars>& values) const;
  Rational evaluate(const std::array<Rational, kNumVars>& values) const;

  /// Coefficients of z^0..z^L of the expansion in z, after fixing the other
  /// variables to `others` (entries for z are ignored). Throws if the
  /// expansion has a pole at z = 0.
  std::vector<Rational> z_series(int L, const std::array<std::optional<Rational>, kNumVars>& others) const;

  std::string to_string() const;
  /// Same expression with z*iq written as w and av as a.
  std::string to_wa_string() const;

 private:
  Polynomial num_;
  std::vector<Polynomial> den_;

  void add_factor(const Polynomial& f);
  void cancel();
};

/// The constant c with f = c * g, if f / g is constant.
std::optional<Rational> proportionality_constant(const RationalFunction& f, const RationalFunction& g);

}  // namespace dyadic
