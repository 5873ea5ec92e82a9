#pragma once

// JSON renderings used by the command-line tool. Rationals are "p/q" strings.

#include "dyadic/check.hpp"
#include "dyadic/closed_forms.hpp"
#include "dyadic/counting.hpp"
#include "dyadic/periods.hpp"

#include "json.hpp"

namespace dyadic {

using Json = nlohmann::ordered_json;

Json to_json(const Rational& r);
Json to_json(const LocalField& field);
/// {coords: ["..", ".."], level}
Json to_json(const LocalField& field, const RingElem& x);
Json to_json(const DiagonalForm& form);
Json to_json(const FormInvariants& inv, const LocalField& field);
Json to_json(const DefectResult& d);
Json to_json(const TruncatedSeries& s);
/// {num: [[coeff, z, iq, av], ...], den: [[[coeff, z, iq, av], ...], ...], text}
Json to_json(const RationalFunction& f);
Json to_json(const PiecewiseGeometric& x);
Json to_json(const CheckResult& c);
Json to_json(const PeriodValue& v);

}  // namespace dyadic
