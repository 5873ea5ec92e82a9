#include "dyadic/verify.hpp"

#include "dyadic/assembly.hpp"
#include "dyadic/counting.hpp"
#include "dyadic/periods.hpp"

#include <map>
#include <set>
#include <sstream>

namespace dyadic {

namespace {

std::array<std::optional<Rational>, kNumVars> iq_value(const LocalField& k) {
  std::array<std::optional<Rational>, kNumVars> v;
  v[kIq] = Rational(1, static_cast<long>(k.q()));
  return v;
}

std::string series_text(const std::vector<Rational>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i].get_str();
  return s;
}

std::string case_label(const LocalField& k, const ClosedFormCase& c) {
  std::string s = k.name() + " " + case_name(c.tag);
  if (c.tag == CaseTag::M1Defect || c.tag == CaseTag::M2OddMinus) s += " d=" + std::to_string(c.d);
  return s;
}

// Every anisotropic representative with m <= max_m over the field.
std::vector<DiagonalForm> anisotropic_representatives(const LocalField& k, int max_m) {
  std::vector<DiagonalForm> out;
  for (int m = 0; m <= max_m; ++m) {
    if (m == 0) {
      out.push_back(anisotropic_representative(k, 0, k.one(k.working_level()), 1));
      continue;
    }
    for (const auto& disc : k.square_class_representatives()) {
      for (int hmi : {1, -1}) {
        try {
          out.push_back(anisotropic_representative(k, m, disc, hmi));
        } catch (const std::invalid_argument&) {
          // no anisotropic class with these invariants
        }
      }
    }
  }
  return out;
}

Rational q_inverse(const LocalField& k) { return Rational(1, static_cast<long>(k.q())); }

}  // namespace

std::vector<LocalField> dyadic_test_fields() {
  return {LocalField::make(2, 1), LocalField::make(2, 2), LocalField::make(2, 1, FieldVariant::ramified(0, -2))};
}

std::vector<CheckResult> check_closed_forms_against_oracle(int T_max, int L) {
  std::vector<CheckResult> out;
  std::map<std::string, std::set<std::pair<int, int>>> seen;
  for (const LocalField& k : dyadic_test_fields()) {
    for (const CaseInstance& ci : supported_cases(k)) {
      seen[k.name()].insert({static_cast<int>(ci.c.tag), ci.c.d});
      CheckResult r{"closed form " + case_label(k, ci.c), true, ci.form.to_string()};
      for (int T = 0; T <= T_max; ++T) {
        const TruncatedSeries oracle = x_series_square(ci.form, T, L);
        const std::vector<Rational> closed = x_closed(ci.c, T).z_series(L, iq_value(k));
        if (closed != oracle.coeffs) {
          r.passed = false;
          r.detail += "; T=" + std::to_string(T) + " oracle [" + series_text(oracle.coeffs) + "] closed [" +
                      series_text(closed) + "]";
        }
      }
      out.push_back(r);
    }
  }
  // Coverage of the field configurations.
  const auto fields = dyadic_test_fields();
  auto has = [&](const LocalField& k, CaseTag t, int d) {
    return seen[k.name()].count({static_cast<int>(t), d}) > 0;
  };
  {
    std::set<int> tags;
    for (const auto& [t, d] : seen[fields[0].name()]) tags.insert(t);
    out.push_back({"coverage " + fields[0].name(), tags.size() == 15,
                   std::to_string(tags.size()) + " of 15 propositions"});
  }
  {
    int second = 0;
    for (const auto& [t, d] : seen[fields[1].name()]) second += is_second_method(static_cast<CaseTag>(t));
    out.push_back({"coverage " + fields[1].name(), second >= 2, std::to_string(second) + " second-method cases"});
  }
  {
    const LocalField& k = fields[2];
    const bool ok = has(k, CaseTag::M0, 0) && has(k, CaseTag::M1Square, 0) && has(k, CaseTag::M1NonUnit, 0) &&
                    has(k, CaseTag::M1Defect, 1) && has(k, CaseTag::M1Defect, 3) &&
                    has(k, CaseTag::M2NonUnitPlus, 0) && has(k, CaseTag::M2NonUnitMinus, 0) &&
                    has(k, CaseTag::M2Unit4Minus, 4) && has(k, CaseTag::M2OddMinus, 1) &&
                    has(k, CaseTag::M2OddMinus, 3);
    out.push_back({"coverage " + k.name(), ok, "first-method cases with d in {1, 3}"});
  }
  return out;
}

std::vector<CheckResult> check_stabilization() {
  std::vector<CheckResult> out;
  for (const LocalField& k : dyadic_test_fields()) {
    const int W = k.working_level();
    std::vector<RingElem> rhos = k.square_class_representatives();
    rhos.push_back(k.square(k.uniformizer(W)));
    CheckResult r{"stabilization " + k.name(), true, ""};
    int instances = 0;
    for (const DiagonalForm& f : anisotropic_representatives(k, 3)) {
      for (const RingElem& rho : rhos) {
        const int o2 = k.e() + k.ord(rho);
        Rational prev = count_level_histogram(f, rho, o2 + 1);
        for (int l = o2 + 1; l <= o2 + 3; ++l) {
          const Rational next = count_level_histogram(f, rho, l + 1);
          if (next != prev * q_inverse(k)) {
            r.passed = false;
            r.detail += "; " + f.to_string() + " rho=" + k.to_string(rho) + " l=" + std::to_string(l) + ": " +
                        prev.get_str() + " -> " + next.get_str();
          }
          prev = next;
          ++instances;
        }
      }
    }
    r.detail = std::to_string(instances) + " level pairs" + r.detail;
    out.push_back(r);
  }
  return out;
}

std::vector<CheckResult> check_square_roots() {
  std::vector<CheckResult> out;
  std::vector<LocalField> fields = dyadic_test_fields();
  fields.push_back(LocalField::make(2, 1, FieldVariant::ramified(2, 2)));
  fields.push_back(LocalField::make(3, 1));
  for (const LocalField& k : fields) {
    CheckResult r{"square roots " + k.name(), true, ""};
    const int W = k.working_level();
    const std::uint64_t classes = k.ring_size(6);
    for (std::uint64_t i = 0; i < classes; ++i) {
      const RingElem rho = k.from_coords(k.from_index(i, 6).c, W);
      for (int l = 0; l <= 4; ++l) {
        const std::uint64_t s = k.ring_size(l);
        const RingElem target = k.reduce(rho, l);
        std::uint64_t hits = 0;
        for (std::uint64_t x = 0; x < s; ++x)
          if (k.square(k.from_index(x, l)) == target) ++hits;
        Rational brute(Integer(static_cast<unsigned long>(hits)), Integer(static_cast<unsigned long>(s)));
        brute.canonicalize();
        const Rational rule = k.count_square_roots(rho, l);
        if (brute != rule && r.passed) {
          r.passed = false;
          r.detail = "rho=" + k.to_string(rho) + " l=" + std::to_string(l) + ": enumeration " + brute.get_str() +
                     ", rule " + rule.get_str();
        }
      }
    }
    if (r.passed) r.detail = std::to_string(classes) + " classes mod w^6, l <= 4";
    out.push_back(r);
  }
  return out;
}

std::vector<CheckResult> check_conics() {
  std::vector<CheckResult> out;
  for (const LocalField& k : {LocalField::make(2, 1), LocalField::make(2, 2)}) {
    // u x^2 + x y + v y^2 with only the trivial zero modulo 2
    const std::uint64_t F = k.ring_size(1);
    RingElem u, v;
    bool found = false;
    for (std::uint64_t i = 1; i < F && !found; ++i) {
      for (std::uint64_t j = 1; j < F && !found; ++j) {
        const RingElem a = k.from_index(i, 1), b = k.from_index(j, 1);
        bool trivial_only = true;
        for (std::uint64_t x = 0; x < F && trivial_only; ++x)
          for (std::uint64_t y = 0; y < F && trivial_only; ++y) {
            if (x == 0 && y == 0) continue;
            const RingElem X = k.from_index(x, 1), Y = k.from_index(y, 1);
            if (k.is_zero(k.add(k.add(k.mul(a, k.square(X)), k.mul(X, Y)), k.mul(b, k.square(Y)))))
              trivial_only = false;
          }
        if (trivial_only) {
          u = a;
          v = b;
          found = true;
        }
      }
    }
    CheckResult r{"conic " + k.name(), found, ""};
    if (!found) {
      r.detail = "no anisotropic residue form";
      out.push_back(r);
      continue;
    }
    const int W = k.working_level();
    u = k.from_coords(u.c, W);
    v = k.from_coords(v.c, W);
    const int coeff_level = k.q() == 2 ? 2 : 1;
    const std::uint64_t cs = k.ring_size(coeff_level);
    std::vector<RingElem> Cs = {k.one(W)};
    if (k.q() == 2) Cs.push_back(k.from_int(3, W));
    int unit_cases = 0, residue_cases = 0;
    for (const RingElem& C : Cs)
      for (std::uint64_t ia = 0; ia < cs; ++ia)
        for (std::uint64_t ib = 0; ib < cs; ++ib)
          for (std::uint64_t id = 0; id < cs; ++id) {
            const RingElem A = k.from_coords(k.from_index(ia, coeff_level).c, W);
            const RingElem B = k.from_coords(k.from_index(ib, coeff_level).c, W);
            const RingElem D = k.from_coords(k.from_index(id, coeff_level).c, W);
            auto P = [&](const RingElem& x, const RingElem& y, int l) {
              RingElem s = k.add(k.mul(k.reduce(u, l), k.square(x)), k.mul(k.reduce(C, l), k.mul(x, y)));
              s = k.add(s, k.mul(k.reduce(v, l), k.square(y)));
              s = k.add(s, k.add(k.mul(k.reduce(B, l), x), k.mul(k.reduce(A, l), y)));
              return k.add(s, k.reduce(D, l));
            };
            const bool unit = k.is_unit(P(A, B, W));
            for (int l = 1; l <= 4; ++l) {
              const std::uint64_t s = k.ring_size(l);
              std::uint64_t hits = 0;
              bool off_residue = false;
              for (std::uint64_t x = 0; x < s; ++x)
                for (std::uint64_t y = 0; y < s; ++y) {
                  const RingElem X = k.from_index(x, l), Y = k.from_index(y, l);
                  if (!k.is_zero(P(X, Y, l))) continue;
                  ++hits;
                  if (!k.is_zero(k.reduce(k.sub(X, k.reduce(A, l)), 1)) ||
                      !k.is_zero(k.reduce(k.sub(Y, k.reduce(B, l)), 1)))
                    off_residue = true;
                }
              Rational meas(Integer(static_cast<unsigned long>(hits)),
                            Integer(static_cast<unsigned long>(s)) * Integer(static_cast<unsigned long>(s)));
              meas.canonicalize();
              if (unit) {
                const Rational expected = rational_pow(q_inverse(k), l) + rational_pow(q_inverse(k), l + 1);
                ++unit_cases;
                if (meas != expected && r.passed) {
                  r.passed = false;
                  r.detail = "A=" + k.to_string(A) + " B=" + k.to_string(B) + " D=" + k.to_string(D) +
                             " l=" + std::to_string(l) + ": measure " + meas.get_str() + ", expected " +
                             expected.get_str();
                }
              } else {
                ++residue_cases;
                if (off_residue && r.passed) {
                  r.passed = false;
                  r.detail = "solution off the residue class (A, B) for A=" + k.to_string(A) +
                             " B=" + k.to_string(B) + " D=" + k.to_string(D);
                }
              }
            }
          }
    if (r.passed)
      r.detail = "u=" + k.to_string(u) + " v=" + k.to_string(v) + "; " + std::to_string(unit_cases) +
                 " unit instances, " + std::to_string(residue_cases) + " residue instances";
    out.push_back(r);
  }
  return out;
}

std::vector<CheckResult> check_assembly() {
  std::vector<CheckResult> out;
  for (const LocalField& k : dyadic_test_fields()) {
    for (const CaseInstance& ci : supported_cases(k)) {
      const PiecewiseGeometric x = x_piecewise(ci.c);
      const int e = k.e(), n = ci.form.dim();
      const bool two_ways = pi_from_x(x, e, n) == pi_geometric(x);
      out.push_back({"pi two ways " + case_label(k, ci.c), two_ways, ""});

      CheckResult lv{"levels " + case_label(k, ci.c), true, ""};
      const auto at = iq_value(k);
      for (int T = 0; T <= 3; ++T) {
        const TruncatedSeries s = x_series_square(ci.form, T, 2 * T + e + 1);
        if (x_from_levels(s.coeffs, e, T).evaluate_partial(at) != x_closed(ci.c, T).evaluate_partial(at)) {
          lv.passed = false;
          lv.detail += " T=" + std::to_string(T);
        }
      }
      const TruncatedSeries z = x_series(ci.form, std::nullopt, e + 1);
      if (x_from_levels_zero(z.coeffs, e, n).evaluate_partial(at) != x.zero_value.evaluate_partial(at)) {
        lv.passed = false;
        lv.detail += " zero target";
      }
      if (!lv.passed) lv.detail = "mismatch at" + lv.detail;
      out.push_back(lv);
    }
  }
  CheckResult ds{"dyadic sum", true, "o <= 4, L <= 9"};
  for (int o = 0; o <= 4; ++o)
    for (int L = 0; L <= 9; ++L)
      if (dyadic_sum_direct(o, L) != dyadic_sum_closed(o, L)) {
        ds.passed = false;
        ds.detail += "; fails at o=" + std::to_string(o) + " L=" + std::to_string(L);
      }
  out.push_back(ds);
  return out;
}

std::vector<CheckResult> check_dimension_reduction() {
  std::vector<CheckResult> out;
  const int L = 5;
  for (const LocalField& k : {LocalField::make(2, 1), LocalField::make(3, 1)}) {
    const int W = k.working_level();
    const std::vector<std::vector<std::int64_t>> kernels = {{}, {1}, {3}, {2}, {1, 1}, {1, -2}};
    SeriesOptions direct;
    direct.mode = SeriesMode::Direct;
    for (int planes : {1, 2}) {
      CheckResult r{"dimension reduction " + k.name() + " k=" + std::to_string(planes), true, ""};
      int instances = 0;
      for (const auto& cs : kernels) {
        const DiagonalForm B(k, cs);
        for (std::int64_t rv : {1, 2, 3, 4, 12}) {
          const RingElem rho = k.from_int(rv, W);
          std::vector<Rational> big;
          for (int l = 0; l <= L; ++l) big.push_back(count_level_split(B, planes, rho, l));
          const TruncatedSeries small = x_series(B, rho, L, direct);
          RationalFunction f;
          for (int l = 0; l <= L; ++l) f += RationalFunction::monomial(mono(l), small.coeffs[static_cast<std::size_t>(l)]);
          const std::vector<Rational> reduced = dimension_reduce(f, planes).z_series(L, iq_value(k));
          ++instances;
          if (reduced != big) {
            r.passed = false;
            r.detail += "; B=" + B.to_string() + " rho=" + std::to_string(rv) + " direct [" + series_text(big) +
                        "] reduced [" + series_text(reduced) + "]";
          }
        }
      }
      r.detail = std::to_string(instances) + " instances to order " + std::to_string(L) + r.detail;
      out.push_back(r);
    }
  }
  return out;
}

std::vector<CheckResult> check_hilbert_layer() {
  std::vector<CheckResult> out;
  std::vector<LocalField> fields = dyadic_test_fields();
  fields.push_back(LocalField::make(2, 1, FieldVariant::ramified(2, 2)));
  fields.push_back(LocalField::make(3, 1));
  fields.push_back(LocalField::make(5, 1));
  for (const LocalField& k : fields) {
    const int W = k.working_level();
    const std::vector<RingElem> R = k.square_class_representatives();
    const std::size_t nr = R.size();
    auto class_of = [&](const RingElem& x) {
      for (std::size_t i = 0; i < nr; ++i)
        if (k.same_square_class(x, R[i])) return i;
      throw std::logic_error("element outside every square class");
    };
    std::vector<std::vector<int>> S(nr, std::vector<int>(nr));
    CheckResult rule{"hilbert rule " + k.name(), true, ""};
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nr; ++j) {
        S[i][j] = k.hilbert_symbol_by_search(R[i], R[j]);
        const int byrule = k.hilbert_symbol_by_rule(R[i], R[j]);
        if (byrule != 0 && byrule != S[i][j]) {
          rule.passed = false;
          rule.detail += " (" + k.to_string(R[i]) + ", " + k.to_string(R[j]) + ")";
        }
      }
    if (rule.passed) rule.detail = std::to_string(nr * nr) + " pairs agree with the solution search";
    out.push_back(rule);

    CheckResult sym{"hilbert symmetry " + k.name(), true, ""};
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nr; ++j)
        if (S[i][j] != S[j][i]) sym.passed = false;
    out.push_back(sym);

    CheckResult bim{"hilbert bimultiplicativity " + k.name(), true, ""};
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nr; ++j)
        for (std::size_t l = 0; l < nr; ++l) {
          const std::size_t jl = class_of(k.mul(R[j], R[l]));
          if (S[i][jl] != S[i][j] * S[i][l]) bim.passed = false;
        }
    out.push_back(bim);

    if (k.kind() == FieldKind::OddPrime) continue;
    const int e = k.e();
    CheckResult four{"defect-4o symbol " + k.name(), true, ""};
    CheckResult companion{"odd-defect companion " + k.name(), true, ""};
    for (std::size_t j = 0; j < nr; ++j) {
      if (!k.is_unit(R[j])) continue;
      const DefectResult d = k.quadratic_defect(R[j]);
      if (d.is_square()) continue;
      if (d.relative == 2 * e) {
        for (std::size_t i = 0; i < nr; ++i)
          if (S[i][j] != (k.ord(R[i]) % 2 ? -1 : 1)) four.passed = false;
      } else {
        bool exists = false;
        for (std::size_t i = 0; i < nr; ++i) {
          if (!k.is_unit(R[i])) continue;
          const DefectResult da = k.quadratic_defect(R[i]);
          if (!da.is_square() && da.d == 1 && S[i][j] == -1) exists = true;
        }
        if (!exists) companion.passed = false;
      }
    }
    out.push_back(four);
    out.push_back(companion);

    // Defect of units and of elements of order one against max ord(rho - eta^2).
    CheckResult cls{"defect classification " + k.name(), true, ""};
    const int M = 2 * e + 2;
    const std::uint64_t s = k.ring_size(M);
    std::vector<RingElem> squares;
    for (std::uint64_t x = 0; x < s; ++x) squares.push_back(k.square(k.from_index(x, M)));
    int n_square = 0, n_four = 0;
    std::vector<RingElem> four_units;
    for (std::uint64_t i = 0; i < s; ++i) {
      const RingElem r = k.from_index(i, M);
      const int v = k.ord(r);
      if (v > 1) continue;
      int best = 0;
      for (const RingElem& sq : squares) best = std::max(best, std::min(k.ord(k.sub(r, sq)), M));
      const RingElem lift = k.from_coords(r.c, W);
      const DefectResult d = k.quadratic_defect(lift);
      const bool ok = v == 1 ? (!d.is_square() && d.d == 1)
                             : (best >= 2 * e + 1 ? d.is_square() : (!d.is_square() && d.d == best));
      if (!ok && cls.passed) {
        cls.passed = false;
        cls.detail = "rho=" + k.to_string(lift) + ": search " + std::to_string(best) + ", rule " +
                     (d.is_square() ? std::string("square") : std::to_string(d.d));
      }
      if (v == 0 && best >= 2 * e) {
        if (best >= 2 * e + 1) {
          ++n_square;
        } else {
          ++n_four;
          four_units.push_back(lift);
        }
      }
    }
    out.push_back(cls);
    bool quotient_square = true;
    for (std::size_t i = 0; i < four_units.size() && i < 8; ++i)
      for (std::size_t j = 0; j < four_units.size() && j < 8; ++j)
        if (!k.is_square(k.mul(four_units[i], k.inverse(four_units[j])))) quotient_square = false;
    out.push_back({"defect-4o units " + k.name(), quotient_square && n_square == n_four,
                   std::to_string(n_square) + " squares and " + std::to_string(n_four) +
                       " defect-4o units among squares plus w^{2e} o"});
  }
  return out;
}

std::vector<CheckResult> check_tables(int lo, int hi) {
  std::vector<CheckResult> out;
  for (int n = lo; n <= hi; ++n)
    for (CheckResult c : verify_table_row(n)) {
      c.name = "table n=" + std::to_string(n) + " (" + c.name + ")";
      out.push_back(std::move(c));
    }
  return out;
}

std::vector<CheckResult> verify_lemmas() {
  std::vector<CheckResult> out;
  for (auto part : {check_stabilization(), check_square_roots(), check_conics(), check_dimension_reduction(),
                    check_hilbert_layer()})
    out.insert(out.end(), part.begin(), part.end());
  return out;
}

std::vector<CheckResult> verify_closed_forms() {
  std::vector<CheckResult> out = check_closed_forms_against_oracle();
  const auto a = check_assembly();
  out.insert(out.end(), a.begin(), a.end());
  return out;
}

}  // namespace dyadic
