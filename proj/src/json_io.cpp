#include "dyadic/json_io.hpp"

#include "dyadic/parse.hpp"

namespace dyadic {

namespace {

Json terms_json(const Polynomial& p) {
  Json out = Json::array();
  for (const auto& [m, c] : p.terms()) out.push_back(Json::array({c.get_str(), m[kZ], m[kIq], m[kAv]}));
  return out;
}

}  // namespace

Json to_json(const Rational& r) { return r.get_str(); }

Json to_json(const LocalField& k) {
  Json j;
  j["p"] = k.p();
  j["f"] = k.f();
  j["variant"] = k.kind() == FieldKind::DyadicRamified ? "ramified" : "unramified";
  j["c1"] = k.variant().c1;
  j["c0"] = k.variant().c0;
  j["spec"] = field_spec(k);
  return j;
}

Json to_json(const LocalField& k, const RingElem& x) {
  Json coords = Json::array();
  for (int i = 0; i < k.rank(); ++i) coords.push_back(std::to_string(x.c[static_cast<std::size_t>(i)]));
  Json j;
  j["coords"] = coords;
  j["level"] = x.level;
  j["text"] = k.to_string(x);
  return j;
}

Json to_json(const DiagonalForm& form) {
  Json j;
  j["field"] = to_json(form.field());
  Json coeffs = Json::array();
  for (const RingElem& a : form.coeffs()) coeffs.push_back(form.field().to_string(a));
  j["coeffs"] = coeffs;
  j["text"] = form.to_string();
  return j;
}

Json to_json(const FormInvariants& inv, const LocalField& k) {
  Json j;
  j["m"] = inv.m;
  j["disc_repr"] = k.to_string(inv.disc_repr);
  j["disc_kind"] = disc_kind_name(inv.disc_kind);
  j["d"] = inv.d;
  j["hmi"] = inv.hmi;
  return j;
}

Json to_json(const DefectResult& d) {
  Json j;
  j["square"] = d.is_square();
  if (!d.is_square()) {
    j["d"] = d.d;
    j["relative"] = d.relative;
  }
  return j;
}

Json to_json(const TruncatedSeries& s) {
  Json coeffs = Json::array();
  for (const Rational& c : s.coeffs) coeffs.push_back(c.get_str());
  Json j;
  j["L"] = s.L;
  j["coeffs"] = coeffs;
  return j;
}

Json to_json(const RationalFunction& f) {
  Json den = Json::array();
  for (const Polynomial& p : f.den_factors()) den.push_back(terms_json(p));
  Json j;
  j["num"] = terms_json(f.num());
  j["den"] = den;
  j["text"] = f.to_wa_string();
  return j;
}

Json to_json(const PiecewiseGeometric& x) {
  Json j;
  j["T0"] = x.T0;
  Json exc = Json::array();
  for (const auto& f : x.exceptional) exc.push_back(to_json(f));
  j["exceptional"] = exc;
  Json tail = Json::array();
  for (const auto& [c, r] : x.tail) {
    Json t;
    t["coeff"] = to_json(c);
    t["ratio"] = Json::array({r[kZ], r[kIq], r[kAv]});
    tail.push_back(t);
  }
  j["tail"] = tail;
  j["zero_value"] = to_json(x.zero_value);
  return j;
}

Json to_json(const CheckResult& c) {
  Json j;
  j["name"] = c.name;
  j["passed"] = c.passed;
  j["detail"] = c.detail;
  return j;
}

Json to_json(const PeriodValue& v) {
  Json j;
  j["n"] = v.n;
  j["alpha"] = v.alpha;
  j["P_max"] = v.p_max;
  j["value"] = v.value;
  j["tail_bound"] = v.tail_bound;
  j["expression"] = v.expression;
  j["factor2"] = v.factor2.get_str();
  j["up_to_constant"] = true;
  return j;
}

}  // namespace dyadic
