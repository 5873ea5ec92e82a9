#pragma once

// Text syntax for fields, ring elements and diagonal forms.
//
//   field    q2 | u4 | ram:c1,c0 | p=<prime> | q<odd prime>
//   element  sums and products of integers, w (the uniformizer), t (the
//            Galois-ring generator), powers ^k and parentheses
//   form     0 | term (+|- term)*   with term = [coeff[*]]x[_i]^2

#include "dyadic/qform.hpp"

#include <string>

namespace dyadic {

/// Throws std::invalid_argument on malformed input.
LocalField parse_field(const std::string& text);
RingElem parse_element(const LocalField& field, const std::string& text);
DiagonalForm parse_form(const LocalField& field, const std::string& text);

/// Inverse of parse_field.
std::string field_spec(const LocalField& field);

}  // namespace dyadic
