#pragma once

// Diagonal quadratic forms B(x) = sum a_i x_i^2 with 0 <= ord a_i <= 1,
// their invariants, anisotropy and the anisotropic representatives used by
// the closed-form layer.

#include "dyadic/local_field.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dyadic {

class DiagonalForm {
 public:
  /// Coefficients are rescaled by squares so that each ord lies in {0, 1}.
  DiagonalForm(LocalField field, std::vector<RingElem> coeffs);
  DiagonalForm(LocalField field, const std::vector<std::int64_t>& coeffs);

  const LocalField& field() const { return field_; }
  const std::vector<RingElem>& coeffs() const { return coeffs_; }
  /// Exponents s_i with original a_i = w^{2 s_i} * coeffs()[i].
  const std::vector<int>& square_scales() const { return scales_; }
  int dim() const { return static_cast<int>(coeffs_.size()); }

  /// Direct sum with another form over the same field.
  DiagonalForm operator+(const DiagonalForm& other) const;
  std::string to_string() const;

 private:
  LocalField field_;
  std::vector<RingElem> coeffs_;
  std::vector<int> scales_;
};

enum class DiscKind { UnitSquare, UnitDefect, NonUnit };

struct FormInvariants {
  int m = 0;
  /// Signed discriminant (-1)^{floor(m/2)} prod a_i, normalized by squares.
  RingElem disc;
  /// Canonical square-class representative of disc.
  RingElem disc_repr;
  DiscKind disc_kind = DiscKind::UnitSquare;
  /// Defect exponent of disc for DiscKind::UnitDefect (2e means 4o).
  int d = 0;
  int hmi = 1;
};

FormInvariants invariants(const DiagonalForm& form);
std::string disc_kind_name(DiscKind kind);

/// Anisotropy by the classification rules, cross-checked against the
/// primitive-zero search; throws ConsistencyError when they disagree.
bool is_anisotropic(const DiagonalForm& form);
bool is_anisotropic_by_rule(const DiagonalForm& form);
/// True iff no primitive vector lifts to a zero of B by Hensel's lemma.
bool is_anisotropic_by_search(const DiagonalForm& form);

/// Hasse-Minkowski invariant of the unique anisotropic quaternary class.
int quaternary_anisotropic_hmi(const LocalField& field);

/// A concrete anisotropic form with the requested dimension, discriminant
/// class and Hasse-Minkowski invariant. `disc` is ignored for m = 0.
DiagonalForm anisotropic_representative(const LocalField& field, int m, const RingElem& disc, int hmi);

/// n copies of x^2 - y^2. Rationally hyperbolic; at p = 2 the lattice is odd,
/// unlike the plane 2yz used by count_level_split.
DiagonalForm hyperbolic_space(const LocalField& field, int planes);

struct WittProfile {
  int n = 0;
  int k = 0;
  int m = 0;
  /// Kernel discriminant as a rational integer (1, -1) and its hmi.
  int disc = 1;
  int hmi = 1;
};

/// Witt decomposition data of the form B^n in the rational k = Q chain at p = 2.
WittProfile witt_profile(int n);

}  // namespace dyadic
