#pragma once

// Residue-ring arithmetic for the supported non-archimedean local fields and
// the square-class layer built on top of it (quadratic defect, Hilbert symbol).
//
// Elements of the valuation ring are modelled concretely as residues modulo
// a power of the uniformizer:
//
//   odd p             Z/p^L
//   Q_2               Z/2^L
//   unramified, f=2   Galois ring GR(2^L, 2) = (Z/2^L)[t]/(t^2 + t + 1)
//   ramified, e=2     Z_2[w]/(w^2 + c1 w + c0) modulo w^L
//
// In the ramified model w^L o = 2^ceil(L/2) Z_2 + 2^floor(L/2) Z_2 w, so the two
// coordinates carry different precisions at the same level.

#include "dyadic/rational.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyadic {

inline constexpr int kInfiniteOrder = std::numeric_limits<int>::max();

enum class FieldKind { OddPrime, DyadicUnramified, DyadicRamified };

struct FieldVariant {
  bool eisenstein = false;
  std::int64_t c1 = 0;  // w^2 + c1 w + c0 = 0
  std::int64_t c0 = 0;

  static FieldVariant unramified() { return {}; }
  static FieldVariant ramified(std::int64_t c1, std::int64_t c0) { return {true, c1, c0}; }
};

/// An element of o / w^level. Coordinates are kept in canonical reduced range.
struct RingElem {
  int level = 0;
  std::array<std::uint64_t, 2> c{0, 0};

  friend bool operator==(const RingElem&, const RingElem&) = default;
};

struct DefectResult {
  enum class Kind { Square, Defect };
  Kind kind = Kind::Square;
  /// Absolute exponent: the quadratic defect is w^d o. Unused for squares.
  int d = 0;
  /// Exponent relative to the square part (d - ord rho for even ord rho).
  int relative = 0;

  bool is_square() const { return kind == Kind::Square; }
};

class LocalField {
 public:
  /// Throws std::invalid_argument for non-prime p or unsupported (e, f).
  static LocalField make(std::uint64_t p, int f, FieldVariant variant = FieldVariant::unramified());

  std::uint64_t p() const { return p_; }
  int f() const { return f_; }
  /// ord 2; zero for odd p.
  int e() const { return e_; }
  std::uint64_t q() const { return q_; }
  FieldKind kind() const { return kind_; }
  const FieldVariant& variant() const { return variant_; }
  int rank() const { return kind_ == FieldKind::OddPrime || (kind_ == FieldKind::DyadicUnramified && f_ == 1) ? 1 : 2; }
  /// Largest supported level; elements at this level stand in for exact field elements.
  int working_level() const { return max_level_; }
  std::string name() const;

  friend bool operator==(const LocalField& a, const LocalField& b) {
    return a.p_ == b.p_ && a.f_ == b.f_ && a.variant_.eisenstein == b.variant_.eisenstein &&
           a.variant_.c1 == b.variant_.c1 && a.variant_.c0 == b.variant_.c0;
  }

  // --- construction -------------------------------------------------------
  RingElem zero(int level) const;
  RingElem one(int level) const;
  RingElem from_int(std::int64_t v, int level) const;
  RingElem from_integer(const Integer& v, int level) const;
  RingElem from_coords(std::array<std::uint64_t, 2> c, int level) const;
  RingElem uniformizer(int level) const;
  /// Galois-ring generator t (t^2 + t + 1 = 0); only for the f = 2 field.
  RingElem generator(int level) const;

  // --- residue-ring structure ---------------------------------------------
  /// Exponent of p in the modulus of coordinate i at the given level.
  int coord_exponent(int i, int level) const;
  /// Number of residues q^level; throws if it does not fit in 64 bits.
  std::uint64_t ring_size(int level) const;
  std::uint64_t index_of(const RingElem& x) const;
  RingElem from_index(std::uint64_t idx, int level) const;

  // --- arithmetic ---------------------------------------------------------
  RingElem reduce(const RingElem& x, int level) const;
  RingElem add(const RingElem& x, const RingElem& y) const;
  RingElem sub(const RingElem& x, const RingElem& y) const;
  RingElem neg(const RingElem& x) const;
  RingElem mul(const RingElem& x, const RingElem& y) const;
  RingElem pow(const RingElem& x, unsigned k) const;
  RingElem square(const RingElem& x) const { return mul(x, x); }
  /// Inverse of a unit at the same level.
  RingElem inverse(const RingElem& unit) const;
  /// x / w for x with ord x >= 1; the result lives one level lower.
  RingElem divide_by_uniformizer(const RingElem& x) const;
  /// Returns (v, unit part) with x = w^v * unit; the unit loses v levels.
  std::pair<int, RingElem> split_order(const RingElem& x) const;

  /// Largest v <= level with x in w^v o, or kInfiniteOrder when x = 0.
  int ord(const RingElem& x) const;
  bool is_zero(const RingElem& x) const { return ord(x) == kInfiniteOrder; }
  bool is_unit(const RingElem& x) const { return ord(x) == 0; }

  // --- square classes -----------------------------------------------------
  /// Units modulo w^level in the fixed traversal order (increasing index).
  std::vector<RingElem> unit_residues(int level) const;
  DefectResult quadratic_defect(const RingElem& rho) const;
  bool is_square(const RingElem& x) const;
  /// Canonical representative of the square class of x (a unit
  /// representative modulo w^{2e+1} times 1 or w), lifted to the working level.
  RingElem square_class_representative(const RingElem& x) const;
  /// Representatives of all square classes in canonical order.
  std::vector<RingElem> square_class_representatives() const;
  bool same_square_class(const RingElem& x, const RingElem& y) const;

  /// (a, b) = +1 iff a x^2 + b y^2 = z^2 has a nontrivial solution.
  int hilbert_symbol(const RingElem& a, const RingElem& b) const;
  /// Ground-truth route: search for a primitive solution that lifts by Hensel.
  int hilbert_symbol_by_search(const RingElem& a, const RingElem& b) const;
  /// Closed-form route; returns 0 when no rule applies to this pair.
  int hilbert_symbol_by_rule(const RingElem& a, const RingElem& b) const;

  /// Measure of {x in o : x^2 = rho mod w^ell}, by the square-root counting rule.
  Rational count_square_roots(const RingElem& rho, int ell) const;

  /// Unit a of defect w o with (a, delta) = -1, or w when delta has defect 4o.
  RingElem pick_companion_unit(const RingElem& delta) const;

  /// Scales x by w^{-2s} so that ord is 0 or 1; returns the element and s.
  std::pair<RingElem, int> normalize_by_squares(const RingElem& x) const;

  std::string to_string(const RingElem& x) const;

 private:
  std::uint64_t p_ = 2;
  int f_ = 1;
  int e_ = 1;
  std::uint64_t q_ = 2;
  FieldKind kind_ = FieldKind::DyadicUnramified;
  FieldVariant variant_;
  int max_level_ = 62;
  std::vector<std::uint64_t> ppow_;  // p^k for k <= max coordinate exponent
  std::uint64_t c0_inv_half_ = 0;    // (c0 / 2)^{-1} mod 2^64 in the ramified model

  std::uint64_t reduce_coord(unsigned __int128 v, int exp) const;
  std::uint64_t modulus(int exp) const { return ppow_.at(static_cast<std::size_t>(exp)); }
  int symbol_tame(const RingElem& a, const RingElem& b) const;
  int symbol_q2(const RingElem& a, const RingElem& b) const;
};

/// Thrown when an internal cross-check between two independent routes disagrees.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

bool is_prime(std::uint64_t n);

}  // namespace dyadic
