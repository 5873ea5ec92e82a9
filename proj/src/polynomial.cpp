#include "dyadic/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dyadic {

Monomial mono(int z, int iq, int av) { return {z, iq, av}; }

Monomial operator*(const Monomial& a, const Monomial& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

Monomial mono_pow(const Monomial& a, int k) { return {a[0] * k, a[1] * k, a[2] * k}; }

int total_degree(const Monomial& m) { return m[0] + m[1] + m[2]; }

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_[mono(0)] = c;
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p;
  p.add_term(m, c);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == mono(0)); }

Rational Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::pair<Monomial, Rational> Polynomial::leading() const {
  if (terms_.empty()) throw std::domain_error("leading term of zero");
  return *terms_.rbegin();
}

Monomial Polynomial::min_exponents() const {
  if (terms_.empty()) return mono(0);
  Monomial m = terms_.begin()->first;
  for (const auto& [t, c] : terms_)
    for (int i = 0; i < kNumVars; ++i) m[i] = std::min(m[i], t[i]);
  return m;
}

int Polynomial::degree(Var v) const {
  int d = 0;
  bool first = true;
  for (const auto& [t, c] : terms_) {
    d = first ? t[v] : std::max(d, t[v]);
    first = false;
  }
  return d;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Polynomial& o) {
  Polynomial out;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) out.add_term(m1 * m2, c1 * c2);
  *this = std::move(out);
  return *this;
}

Polynomial Polynomial::operator-() const { return scaled(-1); }

Polynomial Polynomial::pow(unsigned k) const {
  Polynomial r = 1, b = *this;
  while (k) {
    if (k & 1u) r *= b;
    b *= b;
    k >>= 1u;
  }
  return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
  Polynomial out;
  if (c == 0) return out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m, v * c);
  return out;
}

Polynomial Polynomial::shifted(const Monomial& s) const {
  Polynomial out;
  for (const auto& [m, v] : terms_) out.terms_.emplace(m * s, v);
  return out;
}

Polynomial Polynomial::substitute_monomial(Var v, const Monomial& image, const Rational& coeff) const {
  Polynomial out;
  for (const auto& [key, c] : terms_) {
    Monomial m = key;
    const int e = m[v];
    m[v] = 0;
    out.add_term(m * mono_pow(image, e), c * rational_pow(coeff, e));
  }
  return out;
}

Polynomial Polynomial::evaluate_partial(const std::array<std::optional<Rational>, kNumVars>& values) const {
  Polynomial out;
  for (const auto& [key, c] : terms_) {
    Monomial m = key;
    Rational f = c;
    for (int i = 0; i < kNumVars; ++i) {
      if (!values[i]) continue;
      if (*values[i] == 0 && m[i] < 0) throw std::domain_error("negative power of zero");
      f *= rational_pow(*values[i], m[i]);
      m[i] = 0;
    }
    out.add_term(m, f);
  }
  return out;
}

Rational Polynomial::evaluate(const std::array<Rational, kNumVars>& values) const {
  std::array<std::optional<Rational>, kNumVars> v;
  for (int i = 0; i < kNumVars; ++i) v[i] = values[i];
  Polynomial p = evaluate_partial(v);
  return p.coeff(mono(0));
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& divisor) const {
  if (divisor.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (is_zero()) return Polynomial();
  const Monomial sa = min_exponents(), sb = divisor.min_exponents();
  Polynomial r = shifted(mono_pow(sa, -1));
  const Polynomial b = divisor.shifted(mono_pow(sb, -1));
  const auto [lb, cb] = b.leading();
  Polynomial q;
  while (!r.is_zero()) {
    const auto [lr, cr] = r.leading();
    Monomial t;
    for (int i = 0; i < kNumVars; ++i) {
      t[i] = lr[i] - lb[i];
      if (t[i] < 0) return std::nullopt;
    }
    Polynomial step = monomial(t, cr / cb);
    q += step;
    r -= step * b;
  }
  return q.shifted(sa * mono_pow(sb, -1));
}

std::string monomial_to_string(const Monomial& m) {
  static const char* names[kNumVars] = {"z", "iq", "a"};
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < kNumVars; ++i) {
    if (m[i] == 0) continue;
    if (!first) os << "*";
    os << names[i];
    if (m[i] != 1) os << "^" << m[i];
    first = false;
  }
  return first ? "1" : os.str();
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Increasing total degree reads naturally for series-like expressions.
  std::vector<std::pair<Monomial, Rational>> ordered(terms_.begin(), terms_.end());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) {
    return total_degree(x.first) < total_degree(y.first);
  });
  for (const auto& [m, c] : ordered) {
    Rational mag = abs(c);
    const bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    const bool unit_mono = m == mono(0);
    if (unit_mono) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << monomial_to_string(m);
    }
    first = false;
  }
  return os.str();
}

}  // namespace dyadic
