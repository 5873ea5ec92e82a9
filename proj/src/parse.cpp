#include "dyadic/parse.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace dyadic {

namespace {

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad " + what + ": '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("bad " + what + ": '" + s + "'");
  return v;
}

class ElementParser {
 public:
  ElementParser(const LocalField& k, std::string text) : k_(k), s_(std::move(text)), W_(k.working_level()) {}

  RingElem parse() {
    if (s_.empty()) throw std::invalid_argument("empty element");
    RingElem v = sum();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  const LocalField& k_;
  std::string s_;
  int W_;
  std::size_t pos_ = 0;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("element '" + s_ + "': " + msg);
  }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }

  RingElem sum() {
    RingElem acc = k_.zero(W_);
    bool first = true;
    while (true) {
      bool negate = false;
      if (peek('+') || peek('-')) {
        negate = s_[pos_] == '-';
        ++pos_;
      } else if (!first) {
        break;
      }
      RingElem t = product();
      acc = negate ? k_.sub(acc, t) : k_.add(acc, t);
      first = false;
    }
    return acc;
  }

  RingElem product() {
    RingElem acc = power();
    while (peek('*')) {
      ++pos_;
      acc = k_.mul(acc, power());
    }
    return acc;
  }

  RingElem power() {
    RingElem base = atom();
    if (peek('^')) {
      ++pos_;
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("missing exponent");
      base = k_.pow(base, static_cast<unsigned>(std::stoul(s_.substr(start, pos_ - start))));
    }
    return base;
  }

  RingElem atom() {
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      RingElem v = sum();
      if (!peek(')')) fail("missing ')'");
      ++pos_;
      return v;
    }
    if (c == 'w') {
      ++pos_;
      return k_.uniformizer(W_);
    }
    if (c == 't') {
      ++pos_;
      if (k_.kind() != FieldKind::DyadicUnramified || k_.f() != 2) fail("t exists only for u4");
      return k_.generator(W_);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return k_.from_integer(Integer(s_.substr(start, pos_ - start)), W_);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }
};

}  // namespace

LocalField parse_field(const std::string& raw) {
  const std::string s = strip(raw);
  if (s == "q2") return LocalField::make(2, 1);
  if (s == "u4") return LocalField::make(2, 2);
  if (s.rfind("ram:", 0) == 0) {
    const std::string rest = s.substr(4);
    const auto comma = rest.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("ramified field needs ram:c1,c0");
    return LocalField::make(2, 1,
                            FieldVariant::ramified(parse_int(rest.substr(0, comma), "c1"),
                                                   parse_int(rest.substr(comma + 1), "c0")));
  }
  std::string digits;
  if (s.rfind("p=", 0) == 0) digits = s.substr(2);
  else if (s.size() > 1 && s[0] == 'q') digits = s.substr(1);
  if (digits.empty()) throw std::invalid_argument("unknown field '" + raw + "'");
  const std::int64_t p = parse_int(digits, "prime");
  if (p < 2) throw std::invalid_argument("bad prime " + digits);
  return LocalField::make(static_cast<std::uint64_t>(p), 1);
}

std::string field_spec(const LocalField& k) {
  if (k.kind() == FieldKind::DyadicRamified)
    return "ram:" + std::to_string(k.variant().c1) + "," + std::to_string(k.variant().c0);
  if (k.kind() == FieldKind::DyadicUnramified) return k.f() == 2 ? "u4" : "q2";
  return "p=" + std::to_string(k.p());
}

RingElem parse_element(const LocalField& field, const std::string& text) {
  return ElementParser(field, strip(text)).parse();
}

DiagonalForm parse_form(const LocalField& field, const std::string& text) {
  const std::string s = strip(text);
  if (s.empty()) throw std::invalid_argument("empty form");
  if (s == "0") return DiagonalForm(field, std::vector<RingElem>{});
  // Split at top-level signs.
  std::vector<std::pair<bool, std::string>> terms;
  int depth = 0;
  std::string cur;
  bool negative = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == '+' || c == '-') && depth == 0 && (i == 0 || s[i - 1] != '^')) {
      if (!cur.empty()) terms.emplace_back(negative, cur);
      else if (i != 0) throw std::invalid_argument("form '" + text + "': empty term");
      cur.clear();
      negative = c == '-';
      continue;
    }
    cur += c;
  }
  if (cur.empty()) throw std::invalid_argument("form '" + text + "': trailing sign");
  terms.emplace_back(negative, cur);

  std::vector<std::pair<int, RingElem>> indexed;
  int next_index = 1;
  for (const auto& [neg, term] : terms) {
    const auto xpos = term.rfind('x');
    if (xpos == std::string::npos) throw std::invalid_argument("term '" + term + "' has no variable");
    std::string var = term.substr(xpos + 1);
    if (var.size() < 2 || var.substr(var.size() - 2) != "^2")
      throw std::invalid_argument("term '" + term + "' is not of the form c*x_i^2");
    var = var.substr(0, var.size() - 2);
    int index = next_index;
    if (!var.empty()) {
      if (var[0] != '_') throw std::invalid_argument("bad variable in '" + term + "'");
      index = static_cast<int>(parse_int(var.substr(1), "variable index"));
    }
    next_index = index + 1;
    std::string coeff = term.substr(0, xpos);
    if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
    RingElem a = coeff.empty() ? field.one(field.working_level()) : parse_element(field, coeff);
    if (neg) a = field.neg(a);
    if (field.is_zero(a)) throw std::invalid_argument("zero coefficient in '" + term + "'");
    for (const auto& [j, b] : indexed)
      if (j == index) throw std::invalid_argument("variable x_" + std::to_string(index) + " repeated");
    indexed.emplace_back(index, a);
  }
  std::sort(indexed.begin(), indexed.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<RingElem> coeffs;
  for (auto& [j, a] : indexed) coeffs.push_back(a);
  return DiagonalForm(field, std::move(coeffs));
}

}  // namespace dyadic
