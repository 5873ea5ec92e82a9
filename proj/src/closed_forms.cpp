#include "dyadic/closed_forms.hpp"

namespace dyadic {

namespace {

using RF = RationalFunction;

int floor_div(int a, int b) { return a >= 0 ? a / b : -((-a + b - 1) / b); }
int ceil_div(int a, int b) { return -floor_div(-a, b); }

RF Z() { return RF::monomial(mono(1)); }
RF iq(int k = 1) { return RF::monomial(mono(0, k)); }
RF w(int k = 1) { return RF::monomial(mono(k, k)); }
RF zw(int k = 1) { return RF::monomial(mono(2 * k, k)); }
RF one() { return RF(1); }
RF z(int k) { return RF::monomial(mono(k)); }

RF m0(int e, int T) {
  if (2 * T < e) return 0;
  return (one() - z(2 * T + 1 - e)) / (one() - Z());
}

RF m1_defect(int e, int d, int T) {
  if (e > d + 2 * T) return 0;
  return iq(ceil_div(e, 2)) * (one() - zw(T + ceil_div(d + 1 - e, 2))) / (one() - zw()) +
         w() * iq(floor_div(e, 2)) * (one() - zw(T + floor_div(d + 1 - e, 2))) / (one() - zw());
}

RF m1_square(int e, int T) {
  return (iq(ceil_div(e, 2)) + w() * iq(floor_div(e, 2))) / (one() - zw()) -
         (one() + Z()) * w(e + 1) * zw(T) / (one() - zw()) + RF(2) * zw(T) * w(e + 1) / (one() - w());
}

RF m1_nonunit(int e, int T) {
  if (2 * T < e) return 0;
  return iq(floor_div(e, 2)) * (one() - zw(T + 1 - ceil_div(e, 2))) / (one() - zw()) +
         Z() * iq(ceil_div(e, 2)) * (one() - zw(T - floor_div(e, 2))) / (one() - zw());
}

RF m2_nonunit(int e, int T, int sign) {
  return iq(e) * (one() + RF(sign) * w(2 * T + e + 1)) / (one() - w());
}

RF m2_unit4_minus(int e, int T) {
  if (2 * T < e) return 0;
  const int neg = std::min(T - e, 0), pos = std::max(T - e, 0);
  return (iq(floor_div(e, 2)) + Z() * iq(ceil_div(e, 2)) - Z() * w(e) * zw(neg) * (w() + one())) / (one() - zw()) +
         w(e) * (Z() + w(2)) * (one() - w(2 * pos)) / (one() - w(2));
}

RF m2_odd_minus(int e, int d, int T) {
  if (d == 1 && e > 1) return iq(e) * (one() - w(2 * T + 2 * ceil_div(e + 1, 2) - e)) / (one() - w());
  if (2 * T + 2 >= e + 1 && e + 1 >= d && (d > 1 || e == 1))
    return iq(e) * iq((1 - d) / 2) * (one() - w(2 * T + 2 - e)) / (one() - w());
  if (2 * T + 2 >= e + 1 && d > e + 1)
    return (iq(ceil_div(e, 2)) + w() * iq(floor_div(e, 2))) / (one() - zw()) -
           z(d - e) * iq((d + 1) / 2) * (Z() - w()) / ((one() - w()) * (one() - zw())) -
           w(2 * T + 2 - e) * iq(e + (1 - d) / 2) / (one() - w());
  if (2 * T + 2 <= e && d > 1) return 0;
  throw std::logic_error("no regime of the binary odd-defect formula applies (e = " + std::to_string(e) +
                         ", d = " + std::to_string(d) + ", T = " + std::to_string(T) + ")");
}

RF w2iq() { return RF::monomial(mono(2, 3)); }  // w^2 q^-1

RF u2_unit4_plus(int T) {
  if (T == 0) return iq() / (one() - w());
  return iq() * (one() + Z() + w(2 * (T - 1)) * (zw() + w(3))) / (one() - w(2));
}

RF u2_odd_plus(int T) { return iq() * (one() + w(2 * T + 1)) / (one() - w()); }

RF u3_nonunit(int T) {
  if (T == 0) return iq() / (one() - w());
  return iq() * (one() + w()) / (one() - w2iq()) +
         w(2 * T) * iq(T) * (one() - w(2) * iq(2)) / ((one() - w()) * (one() - w2iq()));
}

RF u3_odd(int T) {
  return iq() * (one() + w() * iq()) / (one() - w2iq()) +
         iq() * w(2 * T + 1) * iq(T) * (one() - w(2) * iq(2)) / ((one() - w()) * (one() - w2iq()));
}

RF u3_square(int T) {
  return iq() * (one() + w() * iq()) * (one() - w(2 * T + 2) * iq(T + 1)) / (one() - w2iq());
}

RF u3_unit4(int T) {
  return iq() * (one() + w() * iq()) / (one() - w2iq()) +
         iq() * w(2 * T + 2) * iq(T + 1) * (one() + w()) * (one() - w() * iq()) /
             ((one() - w()) * (one() - w2iq()));
}

RF u4(int T) {
  if (T == 0) return iq() / (one() - w());
  return iq() / (one() - w() * iq()) +
         w(2 * T) * iq(2 * T) * (one() - w() * iq(2)) / ((one() - w()) * (one() - w() * iq()));
}

}  // namespace

std::string case_name(CaseTag tag) {
  switch (tag) {
    case CaseTag::M0: return "m0";
    case CaseTag::M1Defect: return "m1-unit-defect";
    case CaseTag::M1Square: return "m1-unit-square";
    case CaseTag::M1NonUnit: return "m1-non-unit";
    case CaseTag::M2NonUnitPlus: return "m2-non-unit-plus";
    case CaseTag::M2NonUnitMinus: return "m2-non-unit-minus";
    case CaseTag::M2Unit4Minus: return "m2-unit-4o-minus";
    case CaseTag::M2OddMinus: return "m2-odd-defect-minus";
    case CaseTag::U2Unit4Plus: return "m2-unit-4o-plus";
    case CaseTag::U2OddPlus: return "m2-odd-defect-plus";
    case CaseTag::U3NonUnit: return "m3-non-unit";
    case CaseTag::U3Odd: return "m3-odd-defect";
    case CaseTag::U3Square: return "m3-square";
    case CaseTag::U3Unit4: return "m3-unit-4o";
    case CaseTag::U4: return "m4";
  }
  return "?";
}

int case_dimension(CaseTag tag) {
  switch (tag) {
    case CaseTag::M0: return 0;
    case CaseTag::M1Defect:
    case CaseTag::M1Square:
    case CaseTag::M1NonUnit: return 1;
    case CaseTag::M2NonUnitPlus:
    case CaseTag::M2NonUnitMinus:
    case CaseTag::M2Unit4Minus:
    case CaseTag::M2OddMinus:
    case CaseTag::U2Unit4Plus:
    case CaseTag::U2OddPlus: return 2;
    case CaseTag::U3NonUnit:
    case CaseTag::U3Odd:
    case CaseTag::U3Square:
    case CaseTag::U3Unit4: return 3;
    case CaseTag::U4: return 4;
  }
  return -1;
}

bool is_second_method(CaseTag tag) {
  switch (tag) {
    case CaseTag::U2Unit4Plus:
    case CaseTag::U2OddPlus:
    case CaseTag::U3NonUnit:
    case CaseTag::U3Odd:
    case CaseTag::U3Square:
    case CaseTag::U3Unit4:
    case CaseTag::U4: return true;
    default: return false;
  }
}

ClosedFormCase classify_case(const DiagonalForm& form) {
  const LocalField& k = form.field();
  if (k.kind() == FieldKind::OddPrime) throw UnsupportedCase("closed forms are given for dyadic fields only");
  if (!is_anisotropic_by_rule(form)) throw std::invalid_argument("closed forms need an anisotropic form");
  const FormInvariants inv = invariants(form);
  const int e = k.e();
  const bool four_o = inv.disc_kind == DiscKind::UnitDefect && inv.d == 2 * e;
  ClosedFormCase c;
  c.e = e;
  c.d = inv.disc_kind == DiscKind::UnitDefect ? inv.d : 0;
  switch (inv.m) {
    case 0:
      c.tag = CaseTag::M0;
      break;
    case 1:
      c.tag = inv.disc_kind == DiscKind::UnitSquare ? CaseTag::M1Square
              : inv.disc_kind == DiscKind::NonUnit  ? CaseTag::M1NonUnit
                                                    : CaseTag::M1Defect;
      break;
    case 2:
      if (inv.disc_kind == DiscKind::NonUnit)
        c.tag = inv.hmi == 1 ? CaseTag::M2NonUnitPlus : CaseTag::M2NonUnitMinus;
      else if (four_o)
        c.tag = inv.hmi == 1 ? CaseTag::U2Unit4Plus : CaseTag::M2Unit4Minus;
      else
        c.tag = inv.hmi == 1 ? CaseTag::U2OddPlus : CaseTag::M2OddMinus;
      break;
    case 3:
      c.tag = inv.disc_kind == DiscKind::NonUnit    ? CaseTag::U3NonUnit
              : inv.disc_kind == DiscKind::UnitSquare ? CaseTag::U3Square
              : four_o                                ? CaseTag::U3Unit4
                                                      : CaseTag::U3Odd;
      break;
    case 4:
      c.tag = CaseTag::U4;
      break;
    default:
      throw std::invalid_argument("anisotropic forms have dimension at most 4");
  }
  if (is_second_method(c.tag) && !(k.kind() == FieldKind::DyadicUnramified))
    throw UnsupportedCase("case " + case_name(c.tag) + " is valid only for unramified fields");
  return c;
}

RationalFunction x_closed(const ClosedFormCase& c, int T) {
  if (T < 0) throw std::invalid_argument("T must be non-negative");
  if (is_second_method(c.tag) && c.e != 1)
    throw UnsupportedCase("case " + case_name(c.tag) + " is valid only for unramified fields");
  const int e = c.e;
  switch (c.tag) {
    case CaseTag::M0: return m0(e, T);
    case CaseTag::M1Defect: return m1_defect(e, c.d, T);
    case CaseTag::M1Square: return m1_square(e, T);
    case CaseTag::M1NonUnit: return m1_nonunit(e, T);
    case CaseTag::M2NonUnitPlus: return m2_nonunit(e, T, 1);
    case CaseTag::M2NonUnitMinus: return m2_nonunit(e, T, -1);
    case CaseTag::M2Unit4Minus: return m2_unit4_minus(e, T);
    case CaseTag::M2OddMinus: return m2_odd_minus(e, c.d, T);
    case CaseTag::U2Unit4Plus: return u2_unit4_plus(T);
    case CaseTag::U2OddPlus: return u2_odd_plus(T);
    case CaseTag::U3NonUnit: return u3_nonunit(T);
    case CaseTag::U3Odd: return u3_odd(T);
    case CaseTag::U3Square: return u3_square(T);
    case CaseTag::U3Unit4: return u3_unit4(T);
    case CaseTag::U4: return u4(T);
  }
  throw std::logic_error("unknown case");
}

Monomial u_monomial(int m) { return mono(2, m); }

RationalFunction PiecewiseGeometric::at(int T) const {
  if (T < 0) throw std::invalid_argument("T must be non-negative");
  if (T < T0) return exceptional.at(static_cast<std::size_t>(T));
  RationalFunction out;
  for (const auto& [c, r] : tail) out += c * RationalFunction::monomial(mono_pow(r, T));
  return out;
}

PiecewiseGeometric x_piecewise(const ClosedFormCase& c) {
  PiecewiseGeometric pg;
  pg.T0 = c.e;
  for (int T = 0; T < pg.T0; ++T) pg.exceptional.push_back(x_closed(c, T));
  const Monomial u = u_monomial(case_dimension(c.tag));
  const RF x0 = x_closed(c, pg.T0), x1 = x_closed(c, pg.T0 + 1);
  const RF ru = RF::monomial(u);
  // X(T0 + j) = C + A u^j
  const RF A = (x0 - x1) / (one() - ru);
  const RF C = x0 - A;
  for (int j = 2; j <= 4; ++j) {
    if (C + A * ru.pow(j) != x_closed(c, pg.T0 + j))
      throw ConsistencyError("closed form of case " + case_name(c.tag) + " is not geometric in T");
  }
  if (!C.is_zero()) pg.tail.emplace_back(C, mono(0));
  if (!A.is_zero()) pg.tail.emplace_back(A * RF::monomial(mono_pow(u, -pg.T0)), u);
  pg.zero_value = C;
  return pg;
}

std::vector<CaseInstance> supported_cases(const LocalField& k) {
  std::vector<CaseInstance> out;
  auto known = [&](const ClosedFormCase& c) {
    for (const auto& inst : out)
      if (inst.c.tag == c.tag && inst.c.d == c.d) return true;
    return false;
  };
  for (int m = 0; m <= 4; ++m) {
    for (const auto& disc : k.square_class_representatives()) {
      for (int hmi : {1, -1}) {
        try {
          DiagonalForm f = anisotropic_representative(k, m, disc, hmi);
          ClosedFormCase c = classify_case(f);
          if (!known(c)) out.push_back({c, f});
        } catch (const std::invalid_argument&) {
          // unrealizable invariants or unsupported configuration
        }
      }
    }
  }
  return out;
}

}  // namespace dyadic
