#include "dyadic/assembly.hpp"

#include <stdexcept>

namespace dyadic {

namespace {

using RF = RationalFunction;

RF mon(const Monomial& m) { return RF::monomial(m); }

int ceil_half(int a) { return a >= 0 ? (a + 1) / 2 : -((-a) / 2); }
int floor_half(int a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }

}  // namespace

RationalFunction zeta_Z(const Monomial& m, const Rational& c) {
  return RF(Polynomial(1), RF::one_minus(m, c));
}

RationalFunction zeta_Z(const RationalFunction& M) { return RF(1) / (RF(1) - M); }

RationalFunction zeta_alpha(int j, int s) { return zeta_Z(mono(0, s, j)); }

RationalFunction zeta_beta(int s) { return zeta_Z(mono(1, s)); }

RationalFunction x_from_levels(const std::vector<Rational>& levels, int e, int T) {
  const int top = 2 * T + e + 1;
  if (static_cast<int>(levels.size()) != top + 1)
    throw std::invalid_argument("x_from_levels needs X_0 .. X_" + std::to_string(top));
  RF out;
  for (int l = 0; l < top; ++l) out += RF::monomial(mono(l), levels[static_cast<std::size_t>(l)]);
  out += RF::monomial(mono(top), levels.back()) * zeta_beta(1);
  return out;
}

RationalFunction x_from_levels_zero(const std::vector<Rational>& levels, int e, int n) {
  if (static_cast<int>(levels.size()) != e + 2)
    throw std::invalid_argument("x_from_levels_zero needs X_0 .. X_" + std::to_string(e + 1));
  RF out;
  for (int l = 0; l < e; ++l) out += RF::monomial(mono(l), levels[static_cast<std::size_t>(l)]);
  const RF geo = zeta_Z(mono(2, n));
  out += RF::monomial(mono(e), levels[static_cast<std::size_t>(e)]) * geo;
  out += RF::monomial(mono(e + 1), levels[static_cast<std::size_t>(e + 1)]) * geo;
  return out;
}

RationalFunction pi_from_x(const PiecewiseGeometric& x, int e, int n) {
  const Monomial av = mono(0, 0, 1);
  const Monomial avu = mono(2, n, 1);
  RF out;
  for (int T = 0; T < e; ++T) out += mon(mono_pow(av, T)) * x.at(T);
  const RF two_alpha = mon(mono_pow(av, e));
  out += two_alpha * zeta_Z(avu) * x.at(e);
  out += two_alpha * (mon(av) - mon(avu)) * zeta_Z(av) * zeta_Z(avu) * x.zero_value;
  return out;
}

RationalFunction pi_geometric(const PiecewiseGeometric& x) {
  const Monomial av = mono(0, 0, 1);
  RF out;
  for (int T = 0; T < x.T0; ++T) out += mon(mono_pow(av, T)) * x.exceptional.at(static_cast<std::size_t>(T));
  for (const auto& [c, r] : x.tail) {
    if (total_degree(r) < 0 || r[kZ] < 0 || r[kIq] < 0)
      throw std::invalid_argument("tail ratio " + monomial_to_string(r) + " is not contracting");
    const Monomial ar = av * r;
    out += c * mon(mono_pow(ar, x.T0)) * zeta_Z(ar);
  }
  return out;
}

RationalFunction dimension_reduce(const RationalFunction& f, int k) {
  if (k == 0) return f;
  return zeta_beta(1) / zeta_beta(k + 1) * f.substitute_monomial(kZ, mono(1, k));
}

RationalFunction local_factor(const RationalFunction& pi_m, int n, int k, int e, bool beta_zero) {
  RF pi_n = dimension_reduce(pi_m, k);
  // alpha -> alpha - beta - n
  RF shifted = pi_n.substitute_monomial(kAv, mono(-1, -n, 1));
  RF out = shifted / (mon(mono(0, 0, e)) * zeta_alpha(1, 0));
  if (beta_zero) out = out.evaluate_partial({Rational(1), std::nullopt, std::nullopt});
  return out;
}

RationalFunction dyadic_sum_direct(int o, int L) {
  RF out;
  for (int l = 0; l < L; ++l) out += mon(mono(l, ceil_half(l + o)));
  return out;
}

RationalFunction dyadic_sum_closed(int o, int L) {
  const RF zw = mon(mono(2, 1));
  return mon(mono(0, ceil_half(o))) * (RF(1) - zw.pow(ceil_half(L))) / (RF(1) - zw) +
         mon(mono(1, 1 + floor_half(o))) * (RF(1) - zw.pow(floor_half(L))) / (RF(1) - zw);
}

bool ratio_independent_of(const RationalFunction& f, const RationalFunction& g, Var v) {
  if (g.is_zero()) return f.is_zero();
  const RF r = f / g;
  for (const Rational& probe : {Rational(1, 7), Rational(3, 11), Rational(5, 13)}) {
    std::array<std::optional<Rational>, kNumVars> at;
    at[v] = probe;
    try {
      return r == r.evaluate_partial(at);
    } catch (const std::domain_error&) {
      // pole at the probe; try another
    }
  }
  throw std::domain_error("no regular probe point for the ratio");
}

}  // namespace dyadic
