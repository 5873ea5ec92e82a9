#pragma once

// Global periods over Q for the form x_1^2 + ... + x_{n+2}^2 - x_{n+3}^2:
// the tabulated X, Pi and p = 2 correction factors per residue class of n
// mod 8, their symbolic verification and truncated Euler products.

#include "dyadic/assembly.hpp"
#include "dyadic/check.hpp"

#include <string>
#include <vector>

namespace dyadic {

/// The mod-4 character; rejects non-primes.
int chi1(std::uint64_t p);

/// zeta(j alpha + s)^power or L(j alpha + s, chi)^power
struct PeriodFactor {
  bool is_l = false;
  int alpha_mult = 1;
  int shift = 0;
  int power = 1;
};

struct TableRow {
  int n = 0;
  int base = 0;   // 3..10, n = base + 8 * block
  int block = 0;
  WittProfile witt;
  /// X^m(k; t^2) up to a factor independent of T, with z = iq^k, w = iq^{k+1}, u = iq^n.
  PiecewiseGeometric x;
  /// Pi^m(alpha, k) and the same as a product of Z factors.
  RationalFunction pi;
  RationalFunction pi_zeta;
  /// Global period from the zeta / L quotient formulas.
  std::vector<PeriodFactor> uncorrected;
  /// The uncorrected period as printed in the correction table.
  std::vector<PeriodFactor> uncorrected_printed;
  RationalFunction correction;
  std::string x_text, pi_text, correction_text;
};

TableRow table_row(int n);
std::string period_text(const std::vector<PeriodFactor>& factors, int disc);

/// Product of the local factors at p of the given zeta / L quotient, as a
/// rational function in av and iq; chi_p is the character value at p.
RationalFunction uncorrected_local(const std::vector<PeriodFactor>& factors, int chi_p);

/// Checks (witt) Witt data, (a) closed form vs tabulated X, (b) Pi from X
/// vs tabulated Pi, (c) local factor vs uncorrected factor times correction.
std::vector<CheckResult> verify_table_row(int n);

/// The p = 2 local factor Pi^m(alpha - n, k) / (q^-alpha Z(alpha)) with Pi^m
/// summed from the closed form of the anisotropic kernel, at q = 2.
RationalFunction dyadic_local_factor(int n);

struct PeriodValue {
  int n = 0;
  long alpha = 0;
  std::uint64_t p_max = 0;
  Rational partial;       // exact truncated product
  Rational factor2;       // p = 2 factor
  double log_tail = 0;    // bound on |log| of the omitted factors
  std::string value;      // decimal rendering
  std::string tail_bound; // absolute bound on the omitted part
  std::string expression;
};

/// prod_{odd p <= p_max} (uncorrected local factor) * (p = 2 local factor) at
/// integer alpha > n + 1; defined up to a multiplicative constant.
PeriodValue evaluate_period(int n, long alpha, std::uint64_t p_max, int digits = 30);

/// Specialize iq to 1/q.
RationalFunction at_q(const RationalFunction& f, std::uint64_t q);

}  // namespace dyadic
