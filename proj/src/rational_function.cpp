#include "dyadic/rational_function.hpp"

#include <sstream>
#include <stdexcept>

namespace dyadic {

namespace {

struct NormalizedFactor {
  Rational scale;
  Monomial content;
  Polynomial poly;  // f = scale * content * poly
};

NormalizedFactor normalize_factor(const Polynomial& f) {
  Monomial m = f.min_exponents();
  Polynomial shifted = f.shifted(mono_pow(m, -1));
  Rational c = shifted.terms().begin()->second;
  return {c, m, shifted.scaled(1 / c)};
}

Polynomial product(const std::vector<Polynomial>& fs) {
  Polynomial p = 1;
  for (const auto& f : fs) p *= f;
  return p;
}

// Splits factors of each list that are exact multiples of factors of the other.
void refine(std::vector<Polynomial>& a, std::vector<Polynomial>& b) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto pair : {std::make_pair(&a, &b), std::make_pair(&b, &a)}) {
      auto& xs = *pair.first;
      const auto& ys = *pair.second;
      for (std::size_t i = 0; i < xs.size() && !changed; ++i) {
        for (const auto& y : ys) {
          if (y == xs[i] || y.is_constant()) continue;
          if (auto q = xs[i].divide_exact(y); q && !q->is_constant()) {
            xs[i] = y;
            xs.push_back(normalize_factor(*q).poly);
            changed = true;
            break;
          }
        }
      }
      if (changed) break;
    }
  }
}

std::string wa_monomial(const Monomial& m) {
  // z^a iq^b av^c with w = z*iq pulled out.
  int w = (m[0] > 0 && m[1] > 0) ? std::min(m[0], m[1]) : 0;
  int z = m[0] - w, iq = m[1] - w, av = m[2];
  std::ostringstream os;
  bool first = true;
  auto put = [&](const char* name, int e) {
    if (e == 0) return;
    if (!first) os << "*";
    os << name;
    if (e != 1) os << "^" << e;
    first = false;
  };
  put("z", z);
  put("w", w);
  if (iq != 0) {
    if (!first) os << "*";
    os << "q^" << -iq;
    first = false;
  }
  put("a", av);
  return first ? "1" : os.str();
}

std::string wa_polynomial(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    if (m == mono(0)) {
      os << mag.get_str();
    } else {
      if (mag != 1) os << mag.get_str() << "*";
      os << wa_monomial(m);
    }
    first = false;
  }
  return os.str();
}

// Power series inverse of f with f[0] != 0, to `len` coefficients.
std::vector<Rational> series_inverse(const std::vector<Rational>& f, std::size_t len) {
  std::vector<Rational> g(len, 0);
  const Rational inv0 = 1 / f[0];
  for (std::size_t i = 0; i < len; ++i) {
    Rational acc = i == 0 ? Rational(1) : Rational(0);
    for (std::size_t j = 1; j <= i && j < f.size(); ++j) acc -= f[j] * g[i - j];
    g[i] = acc * inv0;
  }
  return g;
}

std::vector<Rational> series_multiply(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                      std::size_t len) {
  std::vector<Rational> out(len, 0);
  for (std::size_t i = 0; i < a.size() && i < len; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

// Univariate z-polynomial as (lowest exponent, dense coefficients from there).
std::pair<int, std::vector<Rational>> dense_in_z(const Polynomial& p) {
  if (p.is_zero()) return {0, {}};
  const int lo = p.min_exponents()[kZ];
  std::vector<Rational> out(static_cast<std::size_t>(p.degree(kZ) - lo + 1), 0);
  for (const auto& [m, c] : p.terms()) {
    if (m[kIq] != 0 || m[kAv] != 0) throw std::invalid_argument("series expansion needs all variables but z fixed");
    out[static_cast<std::size_t>(m[kZ] - lo)] += c;
  }
  return {lo, out};
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)) {}

RationalFunction::RationalFunction(Polynomial num, const Polynomial& den) : num_(std::move(num)) {
  add_factor(den);
  cancel();
}

RationalFunction RationalFunction::geometric(const Monomial& m) {
  return RationalFunction(Polynomial(1), one_minus(m));
}

Polynomial RationalFunction::one_minus(const Monomial& m, const Rational& c) {
  return Polynomial(1) - Polynomial::monomial(m, c);
}

Polynomial RationalFunction::den() const { return product(den_); }

void RationalFunction::add_factor(const Polynomial& f) {
  if (f.is_zero()) throw std::domain_error("division by zero");
  NormalizedFactor n = normalize_factor(f);
  num_ = num_.shifted(mono_pow(n.content, -1)).scaled(1 / n.scale);
  if (!n.poly.is_constant()) den_.push_back(n.poly);
}

void RationalFunction::cancel() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  for (std::size_t i = 0; i < den_.size();) {
    if (auto q = num_.divide_exact(den_[i])) {
      num_ = std::move(*q);
      den_.erase(den_.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
}

RationalFunction& RationalFunction::operator+=(const RationalFunction& o) {
  if (&o == this) return *this *= RationalFunction(2);
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  std::vector<Polynomial> a = den_, b = o.den_;
  refine(a, b);
  std::vector<Polynomial> common = a;
  std::vector<bool> used(a.size(), false);
  std::vector<Polynomial> extra_for_this;
  for (const auto& f : b) {
    bool matched = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!used[i] && a[i] == f) {
        used[i] = true;
        matched = true;
        break;
      }
    }
    if (!matched) {
      common.push_back(f);
      extra_for_this.push_back(f);
    }
  }
  Polynomial other_mult = 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!used[i]) other_mult *= a[i];
  num_ = num_ * product(extra_for_this) + o.num_ * other_mult;
  den_ = std::move(common);
  cancel();
  return *this;
}

RationalFunction& RationalFunction::operator-=(const RationalFunction& o) { return *this += -o; }

RationalFunction& RationalFunction::operator*=(const RationalFunction& o) {
  if (&o == this) return *this *= RationalFunction(o);
  num_ *= o.num_;
  den_.insert(den_.end(), o.den_.begin(), o.den_.end());
  cancel();
  return *this;
}

RationalFunction& RationalFunction::operator/=(const RationalFunction& o) {
  if (o.is_zero()) throw std::domain_error("division by the zero rational function");
  if (&o == this) return *this = RationalFunction(1);
  num_ *= o.den();
  add_factor(o.num_);
  cancel();
  return *this;
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::pow(int k) const {
  if (k < 0) return RationalFunction(1) / pow(-k);
  RationalFunction r(1), b = *this;
  unsigned n = static_cast<unsigned>(k);
  while (n) {
    if (n & 1u) r *= b;
    n >>= 1u;
    if (n) b *= b;
  }
  return r;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
  return a.num_ * b.den() == b.num_ * a.den();
}

RationalFunction RationalFunction::substitute_monomial(Var v, const Monomial& image, const Rational& coeff) const {
  RationalFunction r(num_.substitute_monomial(v, image, coeff));
  for (const auto& f : den_) r.add_factor(f.substitute_monomial(v, image, coeff));
  r.cancel();
  return r;
}

RationalFunction RationalFunction::substitute(Var v, const RationalFunction& image) const {
  auto apply = [&](const Polynomial& p) {
    RationalFunction out;
    for (const auto& [m, c] : p.terms()) {
      Monomial rest = m;
      rest[v] = 0;
      out += RationalFunction::monomial(rest, c) * image.pow(m[v]);
    }
    return out;
  };
  RationalFunction r = apply(num_);
  for (const auto& f : den_) r /= apply(f);
  return r;
}

RationalFunction RationalFunction::evaluate_partial(const std::array<std::optional<Rational>, kNumVars>& values) const {
  RationalFunction r(num_.evaluate_partial(values));
  for (const auto& f : den_) r.add_factor(f.evaluate_partial(values));
  r.cancel();
  return r;
}

Rational RationalFunction::evaluate(const std::array<Rational, kNumVars>& values) const {
  Rational d = 1;
  for (const auto& f : den_) d *= f.evaluate(values);
  if (d == 0) throw std::domain_error("evaluation at a pole");
  return num_.evaluate(values) / d;
}

std::vector<Rational> RationalFunction::z_series(int L, const std::array<std::optional<Rational>, kNumVars>& others) const {
  auto fixed = others;
  fixed[kZ].reset();
  const RationalFunction e = evaluate_partial(fixed);
  auto [shift, numer] = dense_in_z(e.num_);
  std::vector<std::vector<Rational>> factors;
  for (const auto& f : e.den_) {
    auto [lo, dense] = dense_in_z(f);
    shift -= lo;
    factors.push_back(std::move(dense));
  }
  if (L < 0) return {};
  if (numer.empty()) return std::vector<Rational>(static_cast<std::size_t>(L) + 1, 0);
  const int len = L - shift + 1;
  std::vector<Rational> out(static_cast<std::size_t>(L) + 1, 0);
  if (len <= 0) return out;
  std::vector<Rational> s = numer;
  s.resize(static_cast<std::size_t>(len), 0);
  for (const auto& f : factors) s = series_multiply(s, series_inverse(f, static_cast<std::size_t>(len)), len);
  for (int i = 0; i < len; ++i) {
    const int power = i + shift;
    if (power < 0) {
      if (s[static_cast<std::size_t>(i)] != 0) throw std::domain_error("expansion has a pole at z = 0");
    } else {
      out[static_cast<std::size_t>(power)] = s[static_cast<std::size_t>(i)];
    }
  }
  return out;
}

std::string RationalFunction::to_string() const {
  if (den_.empty()) return num_.to_string();
  std::ostringstream os;
  os << "(" << num_.to_string() << ") / ";
  if (den_.size() > 1) os << "(";
  for (std::size_t i = 0; i < den_.size(); ++i) os << (i ? "*(" : "(") << den_[i].to_string() << ")";
  if (den_.size() > 1) os << ")";
  return os.str();
}

std::string RationalFunction::to_wa_string() const {
  if (den_.empty()) return wa_polynomial(num_);
  std::ostringstream os;
  os << "(" << wa_polynomial(num_) << ") / ";
  if (den_.size() > 1) os << "[";
  for (std::size_t i = 0; i < den_.size(); ++i) os << "(" << wa_polynomial(den_[i]) << ")";
  if (den_.size() > 1) os << "]";
  return os.str();
}

std::optional<Rational> proportionality_constant(const RationalFunction& f, const RationalFunction& g) {
  const Polynomial P = f.num() * g.den();
  const Polynomial Q = g.num() * f.den();
  if (Q.is_zero()) return P.is_zero() ? std::optional<Rational>(1) : std::nullopt;
  if (P.is_zero()) return std::nullopt;
  const auto [mp, cp] = P.leading();
  const auto [mq, cq] = Q.leading();
  if (mp != mq) return std::nullopt;
  Rational c = cp / cq;
  if (P == Q.scaled(c)) return c;
  return std::nullopt;
}

}  // namespace dyadic
