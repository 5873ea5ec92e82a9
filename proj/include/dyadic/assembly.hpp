#pragma once

// Generating-function assembly: local zeta factors, X(beta; rho) from level
// counts, Pi(alpha, beta) from X, dimension reduction and the local factor.

#include "dyadic/closed_forms.hpp"

#include <vector>

namespace dyadic {

/// 1 / (1 - c m)
RationalFunction zeta_Z(const Monomial& m, const Rational& c = 1);
/// 1 / (1 - M) for an arbitrary rational function M.
RationalFunction zeta_Z(const RationalFunction& M);
/// Z(j alpha + s) = 1 / (1 - av^j iq^s)
RationalFunction zeta_alpha(int j, int s);
/// Z(beta + s) = 1 / (1 - z iq^s)
RationalFunction zeta_beta(int s);

/// X(beta; w^{2T}) from X_0 .. X_{2T+e+1}.
RationalFunction x_from_levels(const std::vector<Rational>& levels, int e, int T);
/// X(beta; 0) from X_0 .. X_{e+1} for a form of dimension n.
RationalFunction x_from_levels_zero(const std::vector<Rational>& levels, int e, int n);

/// Pi(alpha, beta) from X(T) for T < e, X(beta; 4) and X(beta; 0), with |2|^alpha = av^e.
RationalFunction pi_from_x(const PiecewiseGeometric& x, int e, int n);
/// sum_T av^T X(T) summed in closed form.
RationalFunction pi_geometric(const PiecewiseGeometric& x);

/// Z(beta + 1) / Z(beta + k + 1) * F(z -> z iq^k): passes from B^m to B^{m+2k}.
RationalFunction dimension_reduce(const RationalFunction& f, int k);

/// Pi^n(alpha - beta - n, beta) / (av^e Z(alpha)) where Pi^n is obtained from
/// the anisotropic kernel's Pi^m by removing k hyperbolic planes. With
/// beta_zero the result is specialized to z = 1. Defined up to a constant.
RationalFunction local_factor(const RationalFunction& pi_m, int n, int k, int e, bool beta_zero = true);

/// sum_{0 <= l < L} z^l iq^{ceil((l + o) / 2)}
RationalFunction dyadic_sum_direct(int o, int L);
RationalFunction dyadic_sum_closed(int o, int L);

/// True when f / g does not depend on the variable v.
bool ratio_independent_of(const RationalFunction& f, const RationalFunction& g, Var v);

}  // namespace dyadic
