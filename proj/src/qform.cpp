#include "dyadic/qform.hpp"

#include <functional>
#include <sstream>

namespace dyadic {

namespace {

RingElem normalized_lift(const LocalField& k, const RingElem& x, int* scale) {
  auto [y, s] = k.normalize_by_squares(x);
  if (scale) *scale = s;
  return k.from_coords(y.c, k.working_level());
}

RingElem signed_product(const LocalField& k, const std::vector<RingElem>& coeffs) {
  const int W = k.working_level();
  RingElem prod = k.one(W);
  for (const auto& a : coeffs) prod = k.mul(prod, a);
  if ((coeffs.size() / 2) % 2 == 1) prod = k.neg(prod);
  return normalized_lift(k, prod, nullptr);
}

bool unit_of_four_o(const LocalField& k, const RingElem& x) {
  if (!k.is_unit(x)) return false;
  DefectResult d = k.quadratic_defect(x);
  return !d.is_square() && d.relative == 2 * k.e();
}

RingElem first_four_o_unit(const LocalField& k) {
  for (const auto& r : k.unit_residues(2 * k.e() + 1)) {
    RingElem a = k.from_coords(r.c, k.working_level());
    if (unit_of_four_o(k, a)) return a;
  }
  throw std::logic_error("no unit of defect 4o found");
}

// Does an anisotropic form with these invariants exist?
bool anisotropic_class_exists(const LocalField& k, int m, const RingElem& disc, int hmi,
                              std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  const int W = k.working_level();
  switch (m) {
    case 0:
      if (!k.is_square(disc) || hmi != 1) return fail("the empty form has square discriminant and hmi +1");
      return true;
    case 1:
      if (hmi != 1) return fail("a unary form has hmi +1");
      return true;
    case 2:
      if (k.is_square(disc)) return fail("a binary form with square discriminant is hyperbolic");
      return true;
    case 3:
      if (hmi != -k.hilbert_symbol(k.from_int(-1, W), disc))
        return fail("a ternary form is anisotropic only when hmi = -(-1, disc)");
      return true;
    case 4:
      if (!k.is_square(disc)) return fail("an anisotropic quaternary form has square discriminant");
      if (hmi != quaternary_anisotropic_hmi(k)) return fail("hmi differs from the anisotropic quaternary class");
      return true;
    default:
      return fail("forms of dimension >= 5 are isotropic");
  }
}

std::vector<RingElem> scaled(const LocalField& k, std::initializer_list<RingElem> xs) {
  std::vector<RingElem> out;
  for (const auto& x : xs) out.push_back(normalized_lift(k, x, nullptr));
  return out;
}

std::vector<RingElem> quaternary_coeffs(const LocalField& k) {
  const int W = k.working_level();
  const RingElem minus_one = k.from_int(-1, W);
  if (!k.is_square(minus_one)) {
    RingElem a = k.pick_companion_unit(minus_one);
    return scaled(k, {k.one(W), k.one(W), k.neg(a), k.neg(a)});
  }
  // Norm form of the quaternion division algebra (a, b).
  auto reps = k.square_class_representatives();
  for (const auto& a : reps)
    for (const auto& b : reps)
      if (k.hilbert_symbol(a, b) == -1)
        return scaled(k, {k.one(W), k.neg(a), k.neg(b), k.mul(a, b)});
  throw std::logic_error("no quaternion division algebra found");
}

}  // namespace

DiagonalForm::DiagonalForm(LocalField field, std::vector<RingElem> coeffs) : field_(std::move(field)) {
  for (const auto& a : coeffs) {
    if (field_.is_zero(a)) throw std::invalid_argument("diagonal coefficients must be nonzero");
    int s = 0;
    coeffs_.push_back(normalized_lift(field_, a, &s));
    scales_.push_back(s);
  }
}

DiagonalForm::DiagonalForm(LocalField field, const std::vector<std::int64_t>& coeffs)
    : DiagonalForm(field, [&] {
        std::vector<RingElem> xs;
        for (auto c : coeffs) xs.push_back(field.from_int(c, field.working_level()));
        return xs;
      }()) {}

DiagonalForm DiagonalForm::operator+(const DiagonalForm& other) const {
  if (!(field_ == other.field_)) throw std::invalid_argument("direct sum of forms over different fields");
  DiagonalForm out = *this;
  out.coeffs_.insert(out.coeffs_.end(), other.coeffs_.begin(), other.coeffs_.end());
  out.scales_.insert(out.scales_.end(), other.scales_.begin(), other.scales_.end());
  return out;
}

std::string DiagonalForm::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << " + ";
    os << "(" << field_.to_string(coeffs_[i]) << ")*x" << (i + 1) << "^2";
  }
  return os.str();
}

std::string disc_kind_name(DiscKind kind) {
  switch (kind) {
    case DiscKind::UnitSquare:
      return "unit_square";
    case DiscKind::UnitDefect:
      return "unit_defect";
    case DiscKind::NonUnit:
      return "non_unit";
  }
  return "?";
}

FormInvariants invariants(const DiagonalForm& form) {
  const LocalField& k = form.field();
  FormInvariants inv;
  inv.m = form.dim();
  inv.disc = signed_product(k, form.coeffs());
  inv.disc_repr = k.square_class_representative(inv.disc);
  if (!k.is_unit(inv.disc)) {
    inv.disc_kind = DiscKind::NonUnit;
  } else {
    DefectResult d = k.quadratic_defect(inv.disc);
    inv.disc_kind = d.is_square() ? DiscKind::UnitSquare : DiscKind::UnitDefect;
    inv.d = d.is_square() ? 0 : d.d;
  }
  const auto& a = form.coeffs();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j) inv.hmi *= k.hilbert_symbol(a[i], a[j]);
  return inv;
}

int quaternary_anisotropic_hmi(const LocalField& field) {
  DiagonalForm q(field, quaternary_coeffs(field));
  return invariants(q).hmi;
}

bool is_anisotropic_by_rule(const DiagonalForm& form) {
  if (form.dim() >= 5) return false;
  FormInvariants inv = invariants(form);
  return anisotropic_class_exists(form.field(), inv.m, inv.disc, inv.hmi, nullptr);
}

bool is_anisotropic_by_search(const DiagonalForm& form) {
  const LocalField& k = form.field();
  const int m = form.dim();
  if (m == 0) return true;
  const int digits = k.e() + 2;
  const int level = 2 * k.e() + 4;
  const std::uint64_t n = k.ring_size(digits);

  std::vector<RingElem> residues;
  std::vector<int> ords;
  for (std::uint64_t i = 0; i < n; ++i) {
    RingElem x = k.from_coords(k.from_index(i, digits).c, level);
    residues.push_back(x);
    ords.push_back(k.ord(x));
  }
  // Per coordinate: a_i x^2 and ord(a_i x) for every residue x.
  std::vector<std::vector<RingElem>> values(m);
  std::vector<std::vector<int>> weights(m);
  for (int i = 0; i < m; ++i) {
    RingElem a = k.reduce(form.coeffs()[i], level);
    int oa = k.ord(a);
    for (std::uint64_t j = 0; j < n; ++j) {
      values[i].push_back(k.mul(a, k.square(residues[j])));
      weights[i].push_back(ords[j] == kInfiniteOrder ? kInfiniteOrder : oa + ords[j]);
    }
  }
  const std::uint64_t one_index = 1;

  // Primitive vectors up to unit scaling: the first unit coordinate is 1.
  std::function<bool(int, int, RingElem, int)> search = [&](int i, int lead, RingElem sum, int r) {
    if (i == m) {
      int bound = 2 * (k.e() + r) + 1;
      return k.ord(sum) >= bound;
    }
    for (std::uint64_t j = 0; j < n; ++j) {
      bool unit = ords[j] == 0;
      if (i < lead && unit) continue;
      if (i == lead && j != one_index) continue;
      if (search(i + 1, lead, k.add(sum, values[i][j]), std::min(r, weights[i][j]))) return true;
    }
    return false;
  };
  for (int lead = 0; lead < m; ++lead)
    if (search(0, lead, k.zero(level), kInfiniteOrder)) return false;
  return true;
}

bool is_anisotropic(const DiagonalForm& form) {
  const bool rule = is_anisotropic_by_rule(form);
  const LocalField& k = form.field();
  // Search cost is about (q^{e+2})^{m-1} per leading position.
  long double cost = 1;
  for (int i = 1; i < form.dim(); ++i) cost *= static_cast<long double>(k.ring_size(k.e() + 2));
  if (cost > (1 << 22)) return rule;
  const bool searched = is_anisotropic_by_search(form);
  if (rule != searched)
    throw ConsistencyError("anisotropy rule and zero search disagree for " + form.to_string());
  return rule;
}

DiagonalForm anisotropic_representative(const LocalField& k, int m, const RingElem& disc_in, int hmi) {
  const int W = k.working_level();
  if (m < 0) throw std::invalid_argument("negative dimension");
  RingElem disc = m == 0 ? k.one(W) : normalized_lift(k, disc_in, nullptr);
  std::string reason;
  if (!anisotropic_class_exists(k, m, disc, hmi, &reason))
    throw std::invalid_argument("no anisotropic form with these invariants: " + reason);

  std::vector<RingElem> coeffs;
  auto matches = [&](const std::vector<RingElem>& cs) {
    DiagonalForm f(k, cs);
    FormInvariants inv = invariants(f);
    return k.same_square_class(inv.disc, disc) && inv.hmi == hmi && is_anisotropic_by_rule(f);
  };
  const RingElem minus_one = k.from_int(-1, W);
  switch (m) {
    case 0:
      break;
    case 1:
      coeffs = {disc};
      break;
    case 2: {
      // a (x1^2 - disc x2^2), with (a, disc) = hmi
      RingElem a = k.one(W);
      if (hmi == -1) a = k.is_unit(disc) ? k.pick_companion_unit(disc) : first_four_o_unit(k);
      coeffs = scaled(k, {a, k.neg(k.mul(a, disc))});
      break;
    }
    case 3: {
      const bool unit = k.is_unit(disc);
      DefectResult dd = unit ? k.quadratic_defect(disc) : DefectResult{};
      if (!unit || (!dd.is_square() && dd.relative != 2 * k.e())) {
        // x1^2 - a (x2^2 - disc x3^2) with (a, disc) = -1
        RingElem a;
        if (!unit) {
          a = first_four_o_unit(k);
        } else {
          bool found = false;
          for (int pass = 0; pass < 2 && !found; ++pass) {
            for (const auto& r : k.unit_residues(2 * k.e() + 1)) {
              RingElem c = k.from_coords(r.c, W);
              DefectResult dc = k.quadratic_defect(c);
              if (dc.is_square() || dc.d != 1 || k.hilbert_symbol(c, disc) != -1) continue;
              if (pass == 0) {
                DefectResult dm = k.quadratic_defect(k.neg(k.mul(c, disc)));
                if (dm.is_square() || dm.d != 1) continue;
              }
              a = c;
              found = true;
              break;
            }
          }
          if (!found) a = k.pick_companion_unit(disc);
        }
        coeffs = scaled(k, {k.one(W), k.neg(a), k.mul(a, disc)});
      } else if (!k.is_square(minus_one)) {
        // a (x1^2 + x2^2) - disc x3^2 with (a, -1) = -1
        RingElem a = k.pick_companion_unit(minus_one);
        coeffs = scaled(k, {a, a, k.neg(disc)});
      }
      if (coeffs.empty() || !matches(coeffs)) {
        coeffs.clear();
        // <a, b, -ab disc> has discriminant disc for every a, b.
        const auto reps = k.square_class_representatives();
        for (std::size_t i = 0; i < reps.size() && coeffs.empty(); ++i) {
          for (std::size_t j = i; j < reps.size(); ++j) {
            auto cs = scaled(k, {reps[i], reps[j], k.neg(k.mul(k.mul(reps[i], reps[j]), disc))});
            if (matches(cs)) {
              coeffs = cs;
              break;
            }
          }
        }
      }
      break;
    }
    case 4:
      coeffs = quaternary_coeffs(k);
      break;
  }
  DiagonalForm form(k, coeffs);
  if (m > 0 && !matches(coeffs))
    throw ConsistencyError("constructed representative does not carry the requested invariants");
  return form;
}

DiagonalForm hyperbolic_space(const LocalField& field, int planes) {
  std::vector<std::int64_t> cs;
  for (int i = 0; i < planes; ++i) {
    cs.push_back(1);
    cs.push_back(-1);
  }
  return DiagonalForm(field, cs);
}

WittProfile witt_profile(int n) {
  if (n < 3) throw std::invalid_argument("the chain needs n >= 3 (the subgroup would be anisotropic at 2)");
  const LocalField q2 = LocalField::make(2, 1);
  const int W = q2.working_level();
  // hmi of B^{n+2-2j} runs through 1, -1, -1, 1 with period four; det B^{n+2} = 1.
  static const int cycle[4] = {1, -1, -1, 1};
  for (int k = 0; 2 * k <= n; ++k) {
    const int m = n - 2 * k;
    if (m > 4) continue;
    const int det = (k + 1) % 2 == 0 ? 1 : -1;
    const int disc = ((m / 2) % 2 == 0 ? 1 : -1) * det;
    const int hmi = cycle[(k + 1) % 4];
    if (anisotropic_class_exists(q2, m, q2.from_int(disc, W), hmi, nullptr)) return {n, k, m, disc, hmi};
  }
  throw std::logic_error("no anisotropic kernel found in the chain");
}

}  // namespace dyadic
