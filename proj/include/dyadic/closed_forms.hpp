#pragma once

// Closed forms of X(beta; w^{2T}) for anisotropic diagonal forms of dimension
// 0..4, and their piecewise-geometric description in T.

#include "dyadic/qform.hpp"
#include "dyadic/rational_function.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace dyadic {

enum class CaseTag {
  // first method, any e
  M0,               // B = 0
  M1Defect,         // D x^2, D a non-square unit of defect w^d
  M1Square,         // D x^2, D a unit square
  M1NonUnit,        // D x^2, |D| = |w|
  M2NonUnitPlus,    // x1^2 - D x2^2, |D| = |w|
  M2NonUnitMinus,   // a (x1^2 - D x2^2), |D| = |w|, a of defect 4o
  M2Unit4Minus,     // w (x1^2 - D x2^2), D of defect 4o
  M2OddMinus,       // a (x1^2 - D x2^2), D of odd defect d, (a, D) = -1
  // second method, unramified only
  U2Unit4Plus,      // x1^2 - D x2^2, D of defect 4o
  U2OddPlus,        // x1^2 - D x2^2, D of defect 2o
  U3NonUnit,        // x1^2 - a (x2^2 - 2v x3^2), a of defect 4o
  U3Odd,            // x1^2 - a (x2^2 - D x3^2), D of defect 2o
  U3Square,         // a (x1^2 + x2^2) - x3^2
  U3Unit4,          // a (x1^2 + x2^2) - D x3^2, D of defect 4o
  U4,               // x1^2 + x2^2 - a (x3^2 + x4^2)
};

class UnsupportedCase : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ClosedFormCase {
  CaseTag tag = CaseTag::M0;
  int e = 1;
  /// Defect exponent of the discriminant for M1Defect and M2OddMinus.
  int d = 0;
};

std::string case_name(CaseTag tag);
int case_dimension(CaseTag tag);
bool is_second_method(CaseTag tag);

/// The case matching an anisotropic form's invariants. Throws UnsupportedCase
/// for second-method classes over ramified fields.
ClosedFormCase classify_case(const DiagonalForm& form);

/// X(beta; w^{2T}) as a rational function in z and iq.
RationalFunction x_closed(const ClosedFormCase& c, int T);

/// X(T) given as exceptional values for T < T0 and sum_j c_j r_j^T for T >= T0.
struct PiecewiseGeometric {
  int T0 = 0;
  std::vector<RationalFunction> exceptional;
  std::vector<std::pair<RationalFunction, Monomial>> tail;
  /// X(beta; 0).
  RationalFunction zero_value;

  RationalFunction at(int T) const;
};

/// Fits the tail C + A u^T (u = z^2 iq^m) of x_closed from T0 = e and checks
/// it against the transcribed formula for three further values of T.
PiecewiseGeometric x_piecewise(const ClosedFormCase& c);

/// Anisotropic representative of every supported case over the field.
struct CaseInstance {
  ClosedFormCase c;
  DiagonalForm form;
};
std::vector<CaseInstance> supported_cases(const LocalField& field);

/// u = z^2 iq^m
Monomial u_monomial(int m);

}  // namespace dyadic
