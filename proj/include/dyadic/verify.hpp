#pragma once

// Self-checks of the whole pipeline against brute-force oracles: closed forms
// against counting, stabilization, square roots and conics, assembly
// identities, dimension reduction, the Hilbert/defect layer and the tables.

#include "dyadic/check.hpp"
#include "dyadic/local_field.hpp"

#include <vector>

namespace dyadic {

/// Q2, the unramified quadratic extension, and the ramified field Q2(sqrt 2).
std::vector<LocalField> dyadic_test_fields();

/// Series of every closed form against counting, T <= T_max, to order L.
std::vector<CheckResult> check_closed_forms_against_oracle(int T_max = 3, int L = 6);
/// X_{l+1} = X_l / q for l in (ord 2rho, ord 2rho + 3] on representatives with m <= 3.
std::vector<CheckResult> check_stabilization();
/// Square-root measure against enumeration for l <= 4, rho mod w^6.
std::vector<CheckResult> check_square_roots();
/// Conic measure q^-l + q^-l-1 (and the residue condition) against enumeration.
std::vector<CheckResult> check_conics();
/// Pi two ways, X from levels against closed forms, and the dyadic sum identity.
std::vector<CheckResult> check_assembly();
/// B + k hyperbolic planes against the reduced series, k in {1, 2}, p in {2, 3}.
std::vector<CheckResult> check_dimension_reduction();
/// Symmetry, bimultiplicativity, the defect-4o rule and the defect classification.
std::vector<CheckResult> check_hilbert_layer();
/// verify_table_row for every n in [lo, hi].
std::vector<CheckResult> check_tables(int lo, int hi);

std::vector<CheckResult> verify_lemmas();
std::vector<CheckResult> verify_closed_forms();

}  // namespace dyadic
