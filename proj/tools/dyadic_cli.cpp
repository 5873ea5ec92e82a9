// Command-line front end: dyadic <command> [flags]. Exit codes: 0 success,
// 1 failed check or internal inconsistency, 2 usage error.

#include "dyadic/assembly.hpp"
#include "dyadic/closed_forms.hpp"
#include "dyadic/counting.hpp"
#include "dyadic/json_io.hpp"
#include "dyadic/parse.hpp"
#include "dyadic/periods.hpp"
#include "dyadic/verify.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace dyadic;

namespace {

struct Flags {
  bool json = false;
  std::string field = "q2";
  std::string form;
  std::string rho;
  std::string a, b;
  int ell = 0;
  int L = 6;
  int T = -1;
  bool oracle = false;
  bool closed = false;
  std::string kernel = "auto";
  std::string av;
  int t_max = 40;
  int k = 0;
  bool full_beta = false;
  int n = 6;
  long alpha = 10;
  std::uint64_t pmax = 97;
  int digits = 30;
  bool lemmas = false, closedforms = false, tables = false;
  std::string range = "3..18";
  int bench_ell = 6;
  int bench_n = 4;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void emit(const Flags& fl, const Json& j, const std::string& human) {
  if (fl.json) std::cout << j.dump(2) << "\n";
  else std::cout << human;
}

RingElem rho_of(const LocalField& k, const std::string& text) {
  if (text.empty() || text == "0") return k.zero(k.working_level());
  return parse_element(k, text);
}

int cmd_classify(const Flags& fl) {
  const LocalField k = parse_field(fl.field);
  const DiagonalForm f = parse_form(k, fl.form);
  const FormInvariants inv = invariants(f);
  Json j;
  j["form"] = to_json(f);
  j["invariants"] = to_json(inv, k);
  const bool aniso = is_anisotropic(f);
  j["anisotropic"] = aniso;
  std::ostringstream h;
  h << "form        " << f.to_string() << "\n"
    << "field       " << k.name() << "\n"
    << "m           " << inv.m << "\n"
    << "disc        " << k.to_string(inv.disc_repr) << " (" << disc_kind_name(inv.disc_kind);
  if (inv.disc_kind == DiscKind::UnitDefect) h << ", d=" << inv.d;
  h << ")\nhmi         " << inv.hmi << "\n"
    << "anisotropic " << (aniso ? "yes" : "no") << "\n";
  if (aniso && k.kind() != FieldKind::OddPrime) {
    try {
      const ClosedFormCase c = classify_case(f);
      j["case"] = case_name(c.tag);
      h << "case        " << case_name(c.tag) << "\n";
    } catch (const UnsupportedCase& e) {
      j["case"] = nullptr;
      h << "case        none (" << e.what() << ")\n";
    }
  }
  emit(fl, j, h.str());
  return 0;
}

int cmd_defect(const Flags& fl) {
  const LocalField k = parse_field(fl.field);
  const RingElem r = parse_element(k, fl.rho);
  if (k.is_zero(r)) throw UsageError("defect of zero is undefined");
  const DefectResult d = k.quadratic_defect(r);
  Json j;
  j["field"] = to_json(k);
  j["rho"] = to_json(k, r);
  j["defect"] = to_json(d);
  std::ostringstream h;
  h << "rho    " << k.to_string(r) << "\n";
  if (d.is_square()) h << "square\n";
  else h << "defect w^" << d.d << " o (relative exponent " << d.relative << ")\n";
  emit(fl, j, h.str());
  return 0;
}

int cmd_hilbert(const Flags& fl) {
  const LocalField k = parse_field(fl.field);
  const RingElem a = parse_element(k, fl.a), b = parse_element(k, fl.b);
  if (k.is_zero(a) || k.is_zero(b)) throw UsageError("Hilbert symbol needs nonzero arguments");
  const int s = k.hilbert_symbol(a, b);
  Json j;
  j["a"] = k.to_string(a);
  j["b"] = k.to_string(b);
  j["symbol"] = s;
  emit(fl, j, "(" + k.to_string(a) + ", " + k.to_string(b) + ") = " + std::to_string(s) + "\n");
  return 0;
}

int cmd_count(const Flags& fl) {
  const LocalField k = parse_field(fl.field);
  const DiagonalForm f = parse_form(k, fl.form);
  const RingElem r = rho_of(k, fl.rho);
  if (fl.ell < 0) throw UsageError("--ell must be non-negative");
  Rational v;
  if (fl.kernel == "naive") v = count_level_naive(f, r, fl.ell);
  else if (fl.kernel == "histogram") v = count_level_histogram(f, r, fl.ell);
  else if (fl.kernel == "auto") v = x_series(f, r, fl.ell).coeffs.back();
  else throw UsageError("unknown kernel " + fl.kernel);
  Json j;
  j["form"] = f.to_string();
  j["rho"] = k.to_string(r);
  j["ell"] = fl.ell;
  j["value"] = v.get_str();
  emit(fl, j, "X_" + std::to_string(fl.ell) + " = " + v.get_str() + "\n");
  return 0;
}

int cmd_xseries(const Flags& fl) {
  const LocalField k = parse_field(fl.field);
  const DiagonalForm f = parse_form(k, fl.form);
  if (fl.oracle == fl.closed) throw UsageError("choose exactly one of --oracle and --closed");
  Json j;
  j["form"] = f.to_string();
  if (fl.oracle) {
    const TruncatedSeries s =
        fl.T >= 0 ? x_series_square(f, fl.T, fl.L) : x_series(f, fl.rho.empty() ? std::nullopt
                                                                                : std::optional(rho_of(k, fl.rho)),
                                                              fl.L);
    j["rho"] = fl.T >= 0 ? "w^" + std::to_string(2 * fl.T) : k.to_string(rho_of(k, fl.rho));
    j["series"] = to_json(s);
    std::string h;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) h += (i ? ", " : "") + s.coeffs[i].get_str();
    emit(fl, j, h + "\n");
    return 0;
  }
  if (!is_anisotropic(f)) throw UsageError("closed forms exist only for anisotropic forms");
  const ClosedFormCase c = classify_case(f);
  j["case"] = case_name(c.tag);
  if (fl.T >= 0) {
    const RationalFunction x = x_closed(c, fl.T);
    j["T"] = fl.T;
    j["closed"] = to_json(x);
    emit(fl, j, case_name(c.tag) + ", T=" + std::to_string(fl.T) + ": " + x.to_wa_string() + "\n");
  } else {
    const PiecewiseGeometric x = x_piecewise(c);
    j["piecewise"] = to_json(x);
    std::ostringstream h;
    h << case_name(c.tag) << "\n";
    for (std::size_t T = 0; T < x.exceptional.size(); ++T)
      h << "  T=" << T << ": " << x.exceptional[T].to_wa_string() << "\n";
    h << "  T>=" << x.T0 << ": ";
    for (std::size_t i = 0; i < x.tail.size(); ++i) {
      const Monomial& r = x.tail[i].second;
      h << (i ? " + " : "") << "(" << x.tail[i].first.to_wa_string() << ")";
      if (r != mono(0)) h << " * (z^" << r[kZ] << " iq^" << r[kIq] << ")^T";
    }
    h << "\n  rho=0: " << x.zero_value.to_wa_string() << "\n";
    emit(fl, j, h.str());
  }
  return 0;
}

int cmd_pi(const Flags& fl) {
  const LocalField k = parse_field(fl.field);
  const DiagonalForm f = parse_form(k, fl.form);
  Json j;
  j["form"] = f.to_string();
  if (!fl.av.empty()) {
    const Rational a = parse_rational(fl.av);
    const std::vector<Rational> s = pi_truncated(f, a, fl.L, fl.t_max);
    Json coeffs = Json::array();
    std::string h;
    for (std::size_t i = 0; i < s.size(); ++i) {
      coeffs.push_back(s[i].get_str());
      h += (i ? ", " : "") + s[i].get_str();
    }
    j["av"] = a.get_str();
    j["T_max"] = fl.t_max;
    j["L"] = fl.L;
    j["coeffs"] = coeffs;
    emit(fl, j, h + "\n");
    return 0;
  }
  if (!is_anisotropic(f)) throw UsageError("symbolic Pi needs an anisotropic form");
  const RationalFunction p = pi_geometric(x_piecewise(classify_case(f)));
  j["pi"] = to_json(p);
  emit(fl, j, p.to_wa_string() + "\n");
  return 0;
}

int cmd_localfactor(const Flags& fl) {
  const LocalField k = parse_field(fl.field);
  const DiagonalForm f = parse_form(k, fl.form);
  if (fl.k < 0) throw UsageError("--k must be non-negative");
  if (!is_anisotropic(f)) throw UsageError("the kernel form must be anisotropic");
  const RationalFunction pi_m = pi_geometric(x_piecewise(classify_case(f)));
  const int n = f.dim() + 2 * fl.k;
  const RationalFunction lf = local_factor(pi_m, n, fl.k, k.e(), !fl.full_beta);
  Json j;
  j["kernel"] = f.to_string();
  j["k"] = fl.k;
  j["n"] = n;
  j["beta_zero"] = !fl.full_beta;
  j["local_factor"] = to_json(lf);
  j["up_to_constant"] = true;
  emit(fl, j, lf.to_wa_string() + "\n");
  return 0;
}

int cmd_period(const Flags& fl) {
  if (fl.n < 3) throw UsageError("--n must be at least 3");
  if (fl.alpha <= fl.n + 1) throw UsageError("--alpha must exceed n + 1");
  const PeriodValue v = evaluate_period(fl.n, fl.alpha, fl.pmax, fl.digits);
  std::ostringstream h;
  h << "period      " << v.expression << " (up to a constant)\n"
    << "value       " << v.value << "\n"
    << "tail bound  " << v.tail_bound << "\n";
  Json j = to_json(v);
  j["digits"] = fl.digits;
  emit(fl, j, h.str());
  return 0;
}

std::pair<int, int> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw UsageError("bad range '" + s + "'");
  }
}

int cmd_verify(const Flags& fl) {
  const bool all = !fl.lemmas && !fl.closedforms && !fl.tables;
  std::vector<CheckResult> rs;
  auto add = [&](std::vector<CheckResult> v) { rs.insert(rs.end(), v.begin(), v.end()); };
  if (all || fl.lemmas) add(verify_lemmas());
  if (all || fl.closedforms) add(verify_closed_forms());
  if (all || fl.tables) {
    const auto [lo, hi] = parse_range(fl.range);
    if (lo < 3 || hi < lo) throw UsageError("table rows need 3 <= lo <= hi");
    add(check_tables(lo, hi));
  }
  Json arr = Json::array();
  std::ostringstream h;
  int failed = 0;
  for (const CheckResult& c : rs) {
    arr.push_back(to_json(c));
    failed += !c.passed;
    h << (c.passed ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) h << ": " << c.detail;
    h << "\n";
  }
  h << rs.size() - static_cast<std::size_t>(failed) << "/" << rs.size() << " checks passed\n";
  Json j;
  j["checks"] = arr;
  j["passed"] = failed == 0;
  emit(fl, j, h.str());
  return failed == 0 ? 0 : 1;
}

int cmd_bench(const Flags& fl) {
  const LocalField k = LocalField::make(2, 1);
  const DiagonalForm f(k, std::vector<std::int64_t>(static_cast<std::size_t>(fl.bench_n), 1));
  const RingElem r = k.one(k.working_level());
  CountOptions unlimited;
  unlimited.enumeration_budget = std::uint64_t{1} << 40;
  using clock = std::chrono::steady_clock;
  auto time = [](auto&& fn) {
    const auto t0 = clock::now();
    Rational v = fn();
    return std::pair(v, std::chrono::duration<double>(clock::now() - t0).count());
  };
  const auto [vn, tn] = time([&] { return count_level_naive(f, r, fl.bench_ell, unlimited); });
  const auto [vh, th] = time([&] { return count_level_histogram(f, r, fl.bench_ell, unlimited); });
  const auto [vs, ts] = time([&] { return x_series(f, r, fl.bench_ell).coeffs.back(); });
  const bool agree = vn == vh && vh == vs;
  Json rows = Json::array();
  std::ostringstream h;
  h << "form " << f.to_string() << ", rho = 1, l = " << fl.bench_ell << "\n";
  h << std::left << std::setw(12) << "kernel" << std::setw(14) << "seconds" << std::setw(12) << "speedup"
    << "value\n";
  for (const auto& [name, v, t] : {std::tuple("naive", vn, tn), std::tuple("histogram", vh, th),
                                   std::tuple("stabilized", vs, ts)}) {
    const double speed = tn / std::max(t, 1e-9);
    Json row;
    row["kernel"] = name;
    row["seconds"] = t;
    row["speedup"] = speed;
    row["value"] = v.get_str();
    rows.push_back(row);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", t);
    h << std::setw(12) << name << std::setw(14) << buf;
    std::snprintf(buf, sizeof buf, "%.1fx", speed);
    h << std::setw(12) << buf << v.get_str() << "\n";
  }
  h << (agree ? "all kernels agree\n" : "KERNELS DISAGREE\n");
  Json j;
  j["n"] = fl.bench_n;
  j["ell"] = fl.bench_ell;
  j["rows"] = rows;
  j["agree"] = agree;
  emit(fl, j, h.str());
  return agree ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  Flags fl;
  CLI::App app{"Exact local densities of quadratic congruences and the periods built from them"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_flag("--json", fl.json, "JSON output");

  auto field_opt = [&](CLI::App* c) { c->add_option("--field", fl.field, "q2 | u4 | ram:c1,c0 | p=<prime>"); };
  auto form_opt = [&](CLI::App* c) { c->add_option("--form", fl.form, "e.g. \"x_1^2 - 3*x_2^2\"")->required(); };

  auto* classify = app.add_subcommand("classify", "invariants, anisotropy and closed-form case of a form");
  field_opt(classify);
  form_opt(classify);

  auto* defect = app.add_subcommand("defect", "quadratic defect of an element");
  field_opt(defect);
  defect->add_option("--rho", fl.rho, "element")->required();

  auto* hilbert = app.add_subcommand("hilbert", "Hilbert symbol (a, b)");
  field_opt(hilbert);
  hilbert->add_option("--a", fl.a)->required();
  hilbert->add_option("--b", fl.b)->required();

  auto* count = app.add_subcommand("count", "one level X_l(rho)");
  field_opt(count);
  form_opt(count);
  count->add_option("--rho", fl.rho, "element, default 0");
  count->add_option("--ell", fl.ell)->required();
  count->add_option("--kernel", fl.kernel, "naive | histogram | auto")->check(CLI::IsMember({"naive", "histogram", "auto"}));

  auto* xseries = app.add_subcommand("xseries", "X_0..X_L by counting, or the closed form");
  field_opt(xseries);
  form_opt(xseries);
  xseries->add_option("--rho", fl.rho, "element, default 0");
  xseries->add_option("--T", fl.T, "rho = w^{2T}");
  xseries->add_option("--L", fl.L);
  xseries->add_flag("--oracle", fl.oracle, "count levels");
  xseries->add_flag("--closed", fl.closed, "closed form of the anisotropic case");

  auto* pi = app.add_subcommand("pi", "Pi(alpha, beta): symbolic, or truncated at av = --av");
  field_opt(pi);
  form_opt(pi);
  pi->add_option("--av", fl.av, "rational value of |t|^alpha weight");
  pi->add_option("--L", fl.L);
  pi->add_option("--Tmax", fl.t_max);

  auto* lf = app.add_subcommand("localfactor", "local factor of the period for kernel + k hyperbolic planes");
  field_opt(lf);
  form_opt(lf);
  lf->add_option("--k", fl.k)->required();
  lf->add_flag("--full-beta", fl.full_beta, "keep beta instead of setting it to zero");

  auto* period = app.add_subcommand("period", "truncated Euler product of the global period");
  period->add_option("--n", fl.n)->required();
  period->add_option("--alpha", fl.alpha);
  period->add_option("--pmax", fl.pmax);
  period->add_option("--digits", fl.digits);

  auto* verify = app.add_subcommand("verify", "run the verification suite");
  verify->add_flag("--lemmas", fl.lemmas);
  verify->add_flag("--closedforms", fl.closedforms);
  verify->add_flag("--tables", fl.tables);
  verify->add_option("--n", fl.range, "table rows lo..hi");

  auto* bench = app.add_subcommand("bench", "naive vs histogram vs stabilized counting");
  bench->add_option("--ell", fl.bench_ell);
  bench->add_option("--n", fl.bench_n);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    Json j;
    j["error"] = "usage";
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return 2;
  }

  auto report = [](const char* kind, const std::exception& e, int code) {
    Json j;
    j["error"] = kind;
    j["message"] = e.what();
    std::cerr << j.dump() << "\n";
    return code;
  };
  try {
    if (*classify) return cmd_classify(fl);
    if (*defect) return cmd_defect(fl);
    if (*hilbert) return cmd_hilbert(fl);
    if (*count) return cmd_count(fl);
    if (*xseries) return cmd_xseries(fl);
    if (*pi) return cmd_pi(fl);
    if (*lf) return cmd_localfactor(fl);
    if (*period) return cmd_period(fl);
    if (*verify) return cmd_verify(fl);
    if (*bench) return cmd_bench(fl);
  } catch (const ConsistencyError& e) {
    return report("consistency", e, 1);
  } catch (const BudgetExceeded& e) {
    return report("budget", e, 2);
  } catch (const std::invalid_argument& e) {
    return report("usage", e, 2);
  }
  return 2;
}
