#include "dyadic/local_field.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace dyadic {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

// Inverse of an odd number modulo 2^64.
std::uint64_t inverse_mod_2_64(std::uint64_t a) {
  std::uint64_t x = a;
  for (int i = 0; i < 5; ++i) x *= 2 - a * x;
  return x;
}

int trailing_zeros(std::uint64_t v) { return v == 0 ? kInfiniteOrder : std::countr_zero(v); }

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1 % m, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

int ceil_half(int v) { return (v + 1) / 2; }

}  // namespace

LocalField LocalField::make(std::uint64_t p, int f, FieldVariant variant) {
  if (!is_prime(p)) throw std::invalid_argument("p = " + std::to_string(p) + " is not prime");
  LocalField k;
  k.p_ = p;
  k.f_ = f;
  k.variant_ = variant;
  int max_exp = 0;
  if (p != 2) {
    if (f != 1) throw std::invalid_argument("odd primes are supported with residue degree 1 only");
    if (variant.eisenstein) throw std::invalid_argument("ramified extensions are supported at p = 2 only");
    k.kind_ = FieldKind::OddPrime;
    k.e_ = 0;
    k.q_ = p;
    unsigned __int128 v = 1;
    while (v * p < (static_cast<unsigned __int128>(1) << 62)) {
      v *= p;
      ++max_exp;
    }
    k.max_level_ = max_exp;
  } else if (variant.eisenstein) {
    if (f != 1) throw std::invalid_argument("ramified quadratic fields must have residue degree 1");
    if (variant.c1 % 2 != 0) throw std::invalid_argument("Eisenstein polynomial needs ord c1 >= 1");
    if (variant.c0 % 2 != 0 || (variant.c0 / 2) % 2 == 0)
      throw std::invalid_argument("Eisenstein polynomial needs ord c0 = 1");
    k.kind_ = FieldKind::DyadicRamified;
    k.e_ = 2;
    k.q_ = 2;
    max_exp = 62;
    k.max_level_ = 124;
    k.c0_inv_half_ = inverse_mod_2_64(static_cast<std::uint64_t>(variant.c0 / 2));
  } else {
    if (f != 1 && f != 2) throw std::invalid_argument("dyadic residue degree must be 1 or 2");
    k.kind_ = FieldKind::DyadicUnramified;
    k.e_ = 1;
    k.q_ = f == 1 ? 2 : 4;
    max_exp = 62;
    k.max_level_ = 62;
  }
  k.ppow_.resize(static_cast<std::size_t>(max_exp) + 1);
  k.ppow_[0] = 1;
  for (int i = 1; i <= max_exp; ++i) k.ppow_[i] = k.ppow_[i - 1] * p;
  return k;
}

std::string LocalField::name() const {
  switch (kind_) {
    case FieldKind::OddPrime:
      return "Q" + std::to_string(p_);
    case FieldKind::DyadicUnramified:
      return f_ == 1 ? "Q2" : "Q2(unramified, q=4)";
    case FieldKind::DyadicRamified:
      return "Q2[w]/(w^2+" + std::to_string(variant_.c1) + "w+" + std::to_string(variant_.c0) + ")";
  }
  return "?";
}

int LocalField::coord_exponent(int i, int level) const {
  if (kind_ == FieldKind::DyadicRamified) return i == 0 ? ceil_half(level) : level / 2;
  if (i >= rank()) return 0;
  return level;
}

std::uint64_t LocalField::ring_size(int level) const {
  unsigned __int128 size = 1;
  for (int i = 0; i < level; ++i) {
    size *= q_;
    if (size > (static_cast<unsigned __int128>(1) << 62))
      throw std::overflow_error("residue ring too large to index");
  }
  return static_cast<std::uint64_t>(size);
}

std::uint64_t LocalField::reduce_coord(unsigned __int128 v, int exp) const {
  if (p_ == 2) {
    std::uint64_t w = static_cast<std::uint64_t>(v);
    return exp >= 64 ? w : (w & ((std::uint64_t{1} << exp) - 1));
  }
  return static_cast<std::uint64_t>(v % modulus(exp));
}

RingElem LocalField::from_coords(std::array<std::uint64_t, 2> c, int level) const {
  if (level < 0 || level > max_level_) throw std::out_of_range("level out of range");
  RingElem x;
  x.level = level;
  for (int i = 0; i < 2; ++i) x.c[i] = i < rank() ? reduce_coord(c[i], coord_exponent(i, level)) : 0;
  return x;
}

RingElem LocalField::zero(int level) const { return from_coords({0, 0}, level); }
RingElem LocalField::one(int level) const { return from_coords({1, 0}, level); }

RingElem LocalField::from_int(std::int64_t v, int level) const {
  if (p_ == 2) return from_coords({static_cast<std::uint64_t>(v), 0}, level);
  std::uint64_t m = modulus(coord_exponent(0, level));
  std::int64_t r = static_cast<std::int64_t>(static_cast<__int128>(v) % static_cast<__int128>(m));
  if (r < 0) r += static_cast<std::int64_t>(m);
  return from_coords({static_cast<std::uint64_t>(r), 0}, level);
}

RingElem LocalField::from_integer(const Integer& v, int level) const {
  Integer m = static_cast<unsigned long>(modulus(coord_exponent(0, level)));
  Integer r = v % m;
  if (r < 0) r += m;
  return from_coords({r.get_ui(), 0}, level);
}

RingElem LocalField::uniformizer(int level) const {
  if (kind_ == FieldKind::DyadicRamified) return from_coords({0, 1}, level);
  return from_coords({p_, 0}, level);
}

RingElem LocalField::generator(int level) const {
  if (kind_ != FieldKind::DyadicUnramified || f_ != 2)
    throw std::invalid_argument("generator t exists only in the unramified q = 4 field");
  return from_coords({0, 1}, level);
}

std::uint64_t LocalField::index_of(const RingElem& x) const {
  if (rank() == 1) return x.c[0];
  return x.c[0] + modulus(coord_exponent(0, x.level)) * x.c[1];
}

RingElem LocalField::from_index(std::uint64_t idx, int level) const {
  if (rank() == 1) return from_coords({idx, 0}, level);
  std::uint64_t m0 = modulus(coord_exponent(0, level));
  return from_coords({idx % m0, idx / m0}, level);
}

RingElem LocalField::reduce(const RingElem& x, int level) const {
  if (level > x.level) throw std::invalid_argument("cannot raise the level of a residue");
  return from_coords(x.c, level);
}

RingElem LocalField::add(const RingElem& x, const RingElem& y) const {
  int level = std::min(x.level, y.level);
  std::array<std::uint64_t, 2> c{};
  for (int i = 0; i < rank(); ++i) {
    if (p_ == 2) {
      c[i] = x.c[i] + y.c[i];
    } else {
      c[i] = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x.c[i]) + y.c[i]) %
                                        modulus(coord_exponent(i, level)));
    }
  }
  return from_coords(c, level);
}

RingElem LocalField::neg(const RingElem& x) const {
  std::array<std::uint64_t, 2> c{};
  for (int i = 0; i < rank(); ++i) {
    if (p_ == 2) {
      c[i] = std::uint64_t{0} - x.c[i];
    } else {
      std::uint64_t m = modulus(coord_exponent(i, x.level));
      c[i] = x.c[i] == 0 ? 0 : m - x.c[i];
    }
  }
  return from_coords(c, x.level);
}

RingElem LocalField::sub(const RingElem& x, const RingElem& y) const { return add(x, neg(y)); }

RingElem LocalField::mul(const RingElem& x, const RingElem& y) const {
  int level = std::min(x.level, y.level);
  if (kind_ == FieldKind::OddPrime) {
    unsigned __int128 v = static_cast<unsigned __int128>(x.c[0]) * y.c[0];
    return from_coords({static_cast<std::uint64_t>(v % modulus(level)), 0}, level);
  }
  const std::uint64_t a0 = x.c[0], a1 = x.c[1], b0 = y.c[0], b1 = y.c[1];
  if (rank() == 1) return from_coords({a0 * b0, 0}, level);
  if (kind_ == FieldKind::DyadicUnramified) {
    // t^2 = -t - 1
    return from_coords({a0 * b0 - a1 * b1, a0 * b1 + a1 * b0 - a1 * b1}, level);
  }
  const auto c1 = static_cast<std::uint64_t>(variant_.c1);
  const auto c0 = static_cast<std::uint64_t>(variant_.c0);
  // w^2 = -c1 w - c0
  return from_coords({a0 * b0 - c0 * a1 * b1, a0 * b1 + a1 * b0 - c1 * a1 * b1}, level);
}

RingElem LocalField::pow(const RingElem& x, unsigned k) const {
  RingElem r = one(x.level), b = x;
  while (k) {
    if (k & 1u) r = mul(r, b);
    b = mul(b, b);
    k >>= 1u;
  }
  return r;
}

RingElem LocalField::inverse(const RingElem& u) const {
  if (!is_unit(u)) throw std::domain_error("inverse of a non-unit");
  if (kind_ == FieldKind::OddPrime) {
    Integer a = static_cast<unsigned long>(u.c[0]);
    Integer m = static_cast<unsigned long>(modulus(u.level));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return from_coords({inv.get_ui(), 0}, u.level);
  }
  if (rank() == 1) return from_coords({inverse_mod_2_64(u.c[0]), 0}, u.level);
  const std::uint64_t a0 = u.c[0], a1 = u.c[1];
  std::uint64_t s0, s1, norm;
  if (kind_ == FieldKind::DyadicUnramified) {
    s0 = a0 - a1;
    s1 = std::uint64_t{0} - a1;
    norm = a0 * a0 - a0 * a1 + a1 * a1;
  } else {
    const auto c1 = static_cast<std::uint64_t>(variant_.c1);
    const auto c0 = static_cast<std::uint64_t>(variant_.c0);
    s0 = a0 - c1 * a1;
    s1 = std::uint64_t{0} - a1;
    norm = a0 * a0 - c1 * a0 * a1 + c0 * a1 * a1;
  }
  std::uint64_t ninv = inverse_mod_2_64(norm);
  return from_coords({s0 * ninv, s1 * ninv}, u.level);
}

RingElem LocalField::divide_by_uniformizer(const RingElem& x) const {
  if (x.level < 1) throw std::invalid_argument("cannot divide at level 0");
  if (ord(x) < 1) throw std::domain_error("element is not divisible by the uniformizer");
  if (kind_ != FieldKind::DyadicRamified) return from_coords({x.c[0] / p_, x.c[1] / p_}, x.level - 1);
  const std::uint64_t half = x.c[0] >> 1;
  const std::uint64_t y1 = std::uint64_t{0} - half * c0_inv_half_;
  const std::uint64_t y0 = x.c[1] + static_cast<std::uint64_t>(variant_.c1) * y1;
  return from_coords({y0, y1}, x.level - 1);
}

std::pair<int, RingElem> LocalField::split_order(const RingElem& x) const {
  int v = ord(x);
  if (v == kInfiniteOrder) throw std::domain_error("zero has no unit part");
  RingElem u = x;
  for (int i = 0; i < v; ++i) u = divide_by_uniformizer(u);
  return {v, u};
}

int LocalField::ord(const RingElem& x) const {
  switch (kind_) {
    case FieldKind::OddPrime: {
      if (x.c[0] == 0) return kInfiniteOrder;
      int v = 0;
      std::uint64_t c = x.c[0];
      while (c % p_ == 0) {
        c /= p_;
        ++v;
      }
      return v;
    }
    case FieldKind::DyadicUnramified:
      return std::min(trailing_zeros(x.c[0]), trailing_zeros(x.c[1]));
    case FieldKind::DyadicRamified: {
      int v0 = trailing_zeros(x.c[0]);
      int v1 = trailing_zeros(x.c[1]);
      int o0 = v0 == kInfiniteOrder ? kInfiniteOrder : 2 * v0;
      int o1 = v1 == kInfiniteOrder ? kInfiniteOrder : 2 * v1 + 1;
      return std::min(o0, o1);
    }
  }
  return kInfiniteOrder;
}

std::vector<RingElem> LocalField::unit_residues(int level) const {
  std::vector<RingElem> out;
  const std::uint64_t n = ring_size(level);
  for (std::uint64_t i = 0; i < n; ++i) {
    RingElem x = from_index(i, level);
    if (level == 0 || ord(x) == 0) out.push_back(x);
  }
  return out;
}

DefectResult LocalField::quadratic_defect(const RingElem& rho) const {
  const int v = ord(rho);
  if (v == kInfiniteOrder) throw std::domain_error("quadratic defect of zero");
  if (rho.level < v + 2 * e_ + 2)
    throw std::invalid_argument("working level too small to decide the quadratic defect");
  if (v % 2 == 1) return {DefectResult::Kind::Defect, v, 0};

  const int j = v / 2;
  const int level = 2 * j + 2 * e_ + 1;
  const RingElem r = reduce(rho, level);
  const RingElem shift = pow(uniformizer(level), static_cast<unsigned>(j));
  int best = -1;
  for (const RingElem& unit : unit_residues(e_ + 1)) {
    RingElem eta = mul(shift, from_coords(unit.c, level));
    best = std::max(best, ord(sub(r, square(eta))));
  }
  if (best >= level) return {DefectResult::Kind::Square, 0, 0};
  if (best == 2 * j + 2 * e_) return {DefectResult::Kind::Defect, best, 2 * e_};
  if ((best - 2 * j) % 2 == 0)
    throw ConsistencyError("quadratic defect search produced an even exponent below 4o");
  return {DefectResult::Kind::Defect, best, best - 2 * j};
}

bool LocalField::is_square(const RingElem& x) const {
  if (is_zero(x)) return true;
  return quadratic_defect(x).is_square();
}

std::pair<RingElem, int> LocalField::normalize_by_squares(const RingElem& x) const {
  int v = ord(x);
  if (v == kInfiniteOrder) throw std::domain_error("cannot normalize zero");
  int s = v / 2;
  RingElem y = x;
  for (int i = 0; i < 2 * s; ++i) y = divide_by_uniformizer(y);
  return {y, s};
}

bool LocalField::same_square_class(const RingElem& x, const RingElem& y) const {
  if (is_zero(x) || is_zero(y)) throw std::domain_error("square class of zero");
  if ((ord(x) - ord(y)) % 2 != 0) return false;
  return is_square(mul(normalize_by_squares(x).first, normalize_by_squares(y).first));
}

RingElem LocalField::square_class_representative(const RingElem& x) const {
  auto [v, unit] = split_order(x);
  for (const RingElem& r : unit_residues(2 * e_ + 1)) {
    RingElem lift = from_coords(r.c, unit.level);
    if (is_square(mul(unit, lift))) {
      RingElem rep = from_coords(r.c, max_level_);
      return v % 2 == 0 ? rep : mul(rep, uniformizer(max_level_));
    }
  }
  throw ConsistencyError("no square-class representative found");
}

std::vector<RingElem> LocalField::square_class_representatives() const {
  std::vector<RingElem> units;
  for (const RingElem& r : unit_residues(2 * e_ + 1)) {
    RingElem lift = from_coords(r.c, max_level_);
    bool fresh = std::none_of(units.begin(), units.end(),
                              [&](const RingElem& u) { return is_square(mul(u, lift)); });
    if (fresh) units.push_back(lift);
  }
  std::vector<RingElem> out = units;
  for (const RingElem& u : units) out.push_back(mul(u, uniformizer(max_level_)));
  return out;
}

int LocalField::symbol_tame(const RingElem& a, const RingElem& b) const {
  auto [alpha, u] = split_order(a);
  auto [beta, v] = split_order(b);
  auto legendre = [&](const RingElem& x) {
    return powmod(x.c[0] % p_, (p_ - 1) / 2, p_) == 1 ? 1 : -1;
  };
  int sign = ((alpha * beta) % 2 == 1 && ((p_ - 1) / 2) % 2 == 1) ? -1 : 1;
  if (beta % 2) sign *= legendre(u);
  if (alpha % 2) sign *= legendre(v);
  return sign;
}

int LocalField::symbol_q2(const RingElem& a, const RingElem& b) const {
  auto [alpha, u] = split_order(a);
  auto [beta, v] = split_order(b);
  const std::uint64_t u8 = u.c[0] & 7, v8 = v.c[0] & 7;
  auto eps = [](std::uint64_t x) { return static_cast<int>(((x - 1) / 2) & 1); };
  auto omega = [](std::uint64_t x) { return static_cast<int>(((x * x - 1) / 8) & 1); };
  int exponent = eps(u8) * eps(v8) + alpha * omega(v8) + beta * omega(u8);
  return exponent % 2 == 0 ? 1 : -1;
}

int LocalField::hilbert_symbol_by_rule(const RingElem& a, const RingElem& b) const {
  if (is_zero(a) || is_zero(b)) throw std::domain_error("Hilbert symbol of zero");
  if (kind_ == FieldKind::OddPrime) return symbol_tame(a, b);
  if (kind_ == FieldKind::DyadicUnramified && f_ == 1) return symbol_q2(a, b);
  if (is_square(a) || is_square(b)) return 1;
  auto four_o_unit = [&](const RingElem& x) {
    if (!is_unit(x)) return false;
    DefectResult d = quadratic_defect(x);
    return !d.is_square() && d.relative == 2 * e_;
  };
  if (four_o_unit(b)) return ord(a) % 2 == 0 ? 1 : -1;
  if (four_o_unit(a)) return ord(b) % 2 == 0 ? 1 : -1;
  return 0;
}

int LocalField::hilbert_symbol_by_search(const RingElem& a_in, const RingElem& b_in) const {
  if (is_zero(a_in) || is_zero(b_in)) throw std::domain_error("Hilbert symbol of zero");
  const int digits = e_ + 2;
  const int level = 2 * e_ + 4;
  const RingElem a = reduce(normalize_by_squares(a_in).first, level);
  const RingElem b = reduce(normalize_by_squares(b_in).first, level);
  const int oa = ord(a), ob = ord(b);

  std::vector<RingElem> all, nonunits;
  for (std::uint64_t i = 0, n = ring_size(digits); i < n; ++i) {
    RingElem x = from_coords(from_index(i, digits).c, level);
    all.push_back(x);
    if (ord(x) >= 1) nonunits.push_back(x);
  }
  const RingElem one_elem = one(level);
  auto lifts = [&](const RingElem& x, const RingElem& y, const RingElem& z) {
    RingElem value = sub(add(mul(a, square(x)), mul(b, square(y))), square(z));
    auto safe = [](int base, int o) { return o == kInfiniteOrder ? kInfiniteOrder : base + o; };
    int r = e_ + std::min({safe(oa, ord(x)), safe(ob, ord(y)), ord(z)});
    return ord(value) >= 2 * r + 1;
  };
  for (const auto& x : all)
    for (const auto& y : all)
      if (lifts(x, y, one_elem)) return 1;
  for (const auto& z : nonunits)
    for (const auto& x : all)
      if (lifts(x, one_elem, z)) return 1;
  for (const auto& z : nonunits)
    for (const auto& y : nonunits)
      if (lifts(one_elem, y, z)) return 1;
  return -1;
}

int LocalField::hilbert_symbol(const RingElem& a, const RingElem& b) const {
  const int rule = hilbert_symbol_by_rule(a, b);
  // The search is quadratic in q^{2(e+2)}; skip it only for large odd primes.
  const bool searchable = kind_ != FieldKind::OddPrime || p_ <= 31;
  if (!searchable) return rule;
  const int searched = hilbert_symbol_by_search(a, b);
  if (rule != 0 && rule != searched)
    throw ConsistencyError("Hilbert symbol rule disagrees with solution search for (" + to_string(a) +
                           ", " + to_string(b) + ")");
  return searched;
}

Rational LocalField::count_square_roots(const RingElem& rho, int ell) const {
  if (ell < 0) throw std::invalid_argument("negative level");
  const Rational iq = Rational(1, static_cast<unsigned long>(q_));
  if (ell == 0) return 1;
  if (is_zero(rho)) return rational_pow(iq, ceil_half(ell));
  const int v = ord(rho);
  DefectResult d = quadratic_defect(rho);
  if (d.is_square()) {
    // rho = eta^2 with ord eta = v / 2
    if (ell > 2 * e_ + v) return 2 * rational_pow(iq, ell - e_ - v / 2);
    return rational_pow(iq, ceil_half(ell));
  }
  if (d.d < ell) return 0;
  return rational_pow(iq, ceil_half(ell));
}

RingElem LocalField::pick_companion_unit(const RingElem& delta) const {
  if (!is_unit(delta)) throw std::invalid_argument("companion unit requires a unit");
  DefectResult dd = quadratic_defect(delta);
  if (dd.is_square()) throw std::invalid_argument("companion unit requires a non-square unit");
  if (dd.relative == 2 * e_) return uniformizer(max_level_);
  for (const RingElem& r : unit_residues(2 * e_ + 1)) {
    RingElem a = from_coords(r.c, max_level_);
    DefectResult da = quadratic_defect(a);
    if (da.is_square() || da.d != 1) continue;
    if (hilbert_symbol(a, delta) == -1) return a;
  }
  throw std::logic_error("no companion unit found for " + to_string(delta));
}

std::string LocalField::to_string(const RingElem& x) const {
  std::ostringstream os;
  // Residues read as signed integers when the top bit of the modulus is set.
  auto coord = [&](int i) {
    std::uint64_t m = modulus(coord_exponent(i, x.level));
    std::uint64_t v = x.c[i];
    if (m > 2 && v > m / 2) return "-" + std::to_string(m - v);
    return std::to_string(v);
  };
  if (rank() == 1) return coord(0);
  os << coord(0);
  if (x.c[1] != 0) os << (kind_ == FieldKind::DyadicRamified ? " + (" : " + (") << coord(1) << ")*"
                      << (kind_ == FieldKind::DyadicRamified ? "w" : "t");
  return os.str();
}

}  // namespace dyadic
