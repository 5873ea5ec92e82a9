#include "dyadic/counting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <thread>

namespace dyadic {

namespace {

// Additive group of o / w^N in index coordinates.
struct AddGroup {
  std::uint64_t mod0 = 1, mod1 = 1;

  AddGroup(const LocalField& k, int level) {
    mod0 = 1;
    for (int i = 0; i < k.coord_exponent(0, level); ++i) mod0 *= k.p();
    mod1 = 1;
    if (k.rank() == 2)
      for (int i = 0; i < k.coord_exponent(1, level); ++i) mod1 *= k.p();
  }
  std::uint64_t size() const { return mod0 * mod1; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t c0 = a % mod0 + b % mod0, c1 = a / mod0 + b / mod0;
    if (c0 >= mod0) c0 -= mod0;
    if (c1 >= mod1) c1 -= mod1;
    return c0 + mod0 * c1;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t a0 = a % mod0, b0 = b % mod0, a1 = a / mod0, b1 = b / mod0;
    std::uint64_t c0 = a0 >= b0 ? a0 - b0 : a0 + mod0 - b0;
    std::uint64_t c1 = a1 >= b1 ? a1 - b1 : a1 + mod1 - b1;
    return c0 + mod0 * c1;
  }
};

unsigned thread_count(const CountOptions& opts) {
  unsigned t = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  return std::max(1u, t);
}

int modulus_level(const LocalField& k, int ell) {
  if (ell < 0) throw std::invalid_argument("level must be non-negative");
  int N = ell + k.e();
  if (N > k.working_level()) throw std::invalid_argument("level exceeds the working precision");
  return N;
}

Rational measure(const Integer& count, const LocalField& k, int n, int N) {
  Integer denom = 1;
  Integer q = static_cast<unsigned long>(k.q());
  mpz_pow_ui(denom.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(n) * static_cast<unsigned long>(N));
  Rational r(count, denom);
  r.canonicalize();
  return r;
}

}  // namespace

std::uint64_t CountOptions::default_enumeration_budget() {
  if (const char* env = std::getenv("DYADIC_ENUM_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t{1} << 26;
}

Rational count_level_naive(const DiagonalForm& form, const RingElem& rho, int ell, const CountOptions& opts) {
  const LocalField& k = form.field();
  const int N = modulus_level(k, ell);
  const int n = form.dim();
  const std::uint64_t s = k.ring_size(N);
  long double points = 1;
  for (int i = 0; i < n; ++i) points *= static_cast<long double>(s);
  if (points > static_cast<long double>(opts.enumeration_budget))
    throw BudgetExceeded("enumeration of " + std::to_string(static_cast<double>(points)) +
                         " points is too large, use histogram");
  const AddGroup g(k, N);
  const std::uint64_t target = k.index_of(k.reduce(rho, N));
  if (n == 0) return target == 0 ? 1 : 0;

  // values[i][x] = index of a_i x^2
  std::vector<std::vector<std::uint64_t>> values(n, std::vector<std::uint64_t>(s));
  for (int i = 0; i < n; ++i) {
    const RingElem a = k.reduce(form.coeffs()[i], N);
    for (std::uint64_t x = 0; x < s; ++x) values[i][x] = k.index_of(k.mul(a, k.square(k.from_index(x, N))));
  }

  auto count_from = [&](std::uint64_t first) {
    std::uint64_t found = 0;
    std::vector<std::uint64_t> idx(n, 0), partial(n + 1, 0);
    partial[1] = values[0][first];
    if (n == 1) return static_cast<std::uint64_t>(partial[1] == target);
    int depth = 1;
    idx[1] = 0;
    // Iterative odometer over coordinates 1..n-1.
    while (depth >= 1) {
      if (idx[depth] == s) {
        idx[depth] = 0;
        --depth;
        if (depth >= 1) ++idx[depth];
        continue;
      }
      partial[depth + 1] = g.add(partial[depth], values[depth][idx[depth]]);
      if (depth + 1 == n) {
        found += partial[n] == target;
        ++idx[depth];
      } else {
        ++depth;
        idx[depth] = 0;
      }
    }
    return found;
  };

  const unsigned t = std::min<std::uint64_t>(thread_count(opts), s);
  std::vector<std::uint64_t> per_thread(t, 0);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < t; ++w)
    pool.emplace_back([&, w] {
      for (std::uint64_t x = w; x < s; x += t) per_thread[w] += count_from(x);
    });
  for (auto& th : pool) th.join();
  Integer total = 0;
  for (auto c : per_thread) total += static_cast<unsigned long>(c);
  return measure(total, k, n, N);
}

Rational count_level_histogram(const DiagonalForm& form, const RingElem& rho, int ell, const CountOptions& opts) {
  const LocalField& k = form.field();
  const int N = modulus_level(k, ell);
  const int n = form.dim();
  const AddGroup g(k, N);
  const std::uint64_t s = g.size();
  const std::uint64_t target = k.index_of(k.reduce(rho, N));
  if (n == 0) return target == 0 ? 1 : 0;
  if (s > opts.histogram_budget)
    throw BudgetExceeded("histogram of " + std::to_string(s) + " buckets exceeds the memory budget");
  if (static_cast<long double>(n) * std::log2(static_cast<long double>(s)) >= 126)
    throw BudgetExceeded("solution counts would overflow 128 bits");

  // Every histogram below is invariant under v -> u^2 v for units u, so
  // convolutions are only evaluated on one representative per orbit.
  std::vector<RingElem> unit_squares;
  {
    std::vector<char> seen(s, 0);
    for (std::uint64_t i = 0; i < s; ++i) {
      RingElem x = k.from_index(i, N);
      if (N > 0 && !k.is_unit(x)) continue;
      std::uint64_t sq = k.index_of(k.square(x));
      if (!seen[sq]) {
        seen[sq] = 1;
        unit_squares.push_back(k.from_index(sq, N));
      }
    }
  }
  std::vector<std::uint32_t> orbit(s, UINT32_MAX);
  std::vector<std::uint64_t> reps;
  for (std::uint64_t v = 0; v < s; ++v) {
    if (orbit[v] != UINT32_MAX) continue;
    const auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(v);
    const RingElem x = k.from_index(v, N);
    for (const auto& u : unit_squares) orbit[k.index_of(k.mul(u, x))] = id;
  }

  // Dense histograms of a_i x^2; coefficients with equal residues share one.
  std::vector<std::vector<std::uint64_t>> cache;
  std::vector<RingElem> cache_keys;
  std::vector<std::size_t> which(n);
  for (int i = 0; i < n; ++i) {
    const RingElem a = k.reduce(form.coeffs()[i], N);
    auto it = std::find(cache_keys.begin(), cache_keys.end(), a);
    if (it != cache_keys.end()) {
      which[i] = static_cast<std::size_t>(it - cache_keys.begin());
      continue;
    }
    which[i] = cache.size();
    cache_keys.push_back(a);
    std::vector<std::uint64_t> dense(s, 0);
    for (std::uint64_t x = 0; x < s; ++x) ++dense[k.index_of(k.mul(a, k.square(k.from_index(x, N))))];
    cache.push_back(std::move(dense));
  }

  // F = h_1 * ... * h_j as a function on orbits.
  using Count = unsigned __int128;
  std::vector<Count> F(reps.size());
  for (std::size_t o = 0; o < reps.size(); ++o) F[o] = cache[which[0]][reps[o]];
  for (int i = 1; i + 1 < n; ++i) {
    const auto& h = cache[which[i]];
    std::vector<std::uint64_t> support;
    for (std::uint64_t x = 0; x < s; ++x)
      if (h[x]) support.push_back(x);
    std::vector<Count> next(reps.size(), 0);
    for (std::size_t o = 0; o < reps.size(); ++o) {
      Count acc = 0;
      for (std::uint64_t x : support) acc += F[orbit[g.sub(reps[o], x)]] * h[x];
      next[o] = acc;
    }
    F = std::move(next);
  }
  Count total = 0;
  if (n == 1) {
    total = F[orbit[target]];
  } else {
    const auto& h = cache[which[n - 1]];
    for (std::uint64_t x = 0; x < s; ++x)
      if (h[x]) total += F[orbit[g.sub(target, x)]] * h[x];
  }
  return measure(integer_from_u128(total), k, n, N);
}

Rational count_level_split(const DiagonalForm& form, int planes, const RingElem& rho, int ell,
                           const CountOptions& opts) {
  if (planes < 0) throw std::invalid_argument("number of planes must be non-negative");
  const LocalField& k = form.field();
  const int N = modulus_level(k, ell);
  const int n = form.dim() + 2 * planes;
  const AddGroup g(k, N);
  const std::uint64_t s = g.size();
  if (s > opts.histogram_budget || static_cast<long double>(s) * static_cast<long double>(s) >
                                       static_cast<long double>(opts.enumeration_budget))
    throw BudgetExceeded("split-form histogram of " + std::to_string(s) + " buckets is too large");
  if (static_cast<long double>(n) * std::log2(static_cast<long double>(s)) >= 126)
    throw BudgetExceeded("solution counts would overflow 128 bits");

  using Count = unsigned __int128;
  auto convolve = [&](const std::vector<Count>& a, const std::vector<Count>& b) {
    std::vector<Count> out(s, 0);
    for (std::uint64_t i = 0; i < s; ++i) {
      if (!a[i]) continue;
      for (std::uint64_t j = 0; j < s; ++j)
        if (b[j]) out[g.add(i, j)] += a[i] * b[j];
    }
    return out;
  };
  std::vector<Count> h(s, 0);
  h[0] = 1;
  for (const RingElem& c : form.coeffs()) {
    const RingElem a = k.reduce(c, N);
    std::vector<Count> hc(s, 0);
    for (std::uint64_t x = 0; x < s; ++x) ++hc[k.index_of(k.mul(a, k.square(k.from_index(x, N))))];
    h = convolve(h, hc);
  }
  if (planes > 0) {
    const RingElem two = k.from_int(2, N);
    std::vector<Count> hp(s, 0);
    for (std::uint64_t x = 0; x < s; ++x) {
      const RingElem tx = k.mul(two, k.from_index(x, N));
      for (std::uint64_t y = 0; y < s; ++y) ++hp[k.index_of(k.mul(tx, k.from_index(y, N)))];
    }
    for (int i = 0; i < planes; ++i) h = convolve(h, hp);
  }
  return measure(integer_from_u128(h[k.index_of(k.reduce(rho, N))]), k, n, N);
}

TruncatedSeries x_series(const DiagonalForm& form, const std::optional<RingElem>& rho, int L,
                         const SeriesOptions& opts) {
  if (L < 0) throw std::invalid_argument("series order must be non-negative");
  const LocalField& k = form.field();
  const RingElem target = rho ? *rho : k.zero(k.working_level());
  TruncatedSeries out;
  out.L = L;
  auto direct = [&](int ell) { return count_level_histogram(form, target, ell, opts.count); };
  if (opts.mode == SeriesMode::Direct) {
    for (int ell = 0; ell <= L; ++ell) out.coeffs.push_back(direct(ell));
    return out;
  }
  if (!is_anisotropic(form))
    throw std::invalid_argument("stabilized series need an anisotropic form; use direct mode");

  const Rational iq(1, static_cast<unsigned long>(k.q()));
  const bool zero_target = k.is_zero(target);
  // Last level counted directly.
  const int threshold = zero_target ? k.e() + 1 : k.e() + k.ord(target) + 1;
  for (int ell = 0; ell <= L; ++ell) {
    if (ell <= threshold) {
      out.coeffs.push_back(direct(ell));
    } else if (zero_target) {
      out.coeffs.push_back(rational_pow(iq, form.dim()) * out.coeffs[static_cast<std::size_t>(ell - 2)]);
    } else {
      out.coeffs.push_back(iq * out.coeffs.back());
    }
  }
  if (opts.mode == SeriesMode::Verify) {
    for (int ell = threshold + 1; ell <= std::min(L, threshold + opts.verify_levels); ++ell) {
      if (direct(ell) != out.coeffs[static_cast<std::size_t>(ell)])
        throw ConsistencyError("stabilization law fails at level " + std::to_string(ell) + " for " +
                               form.to_string());
    }
  }
  return out;
}

TruncatedSeries x_series_square(const DiagonalForm& form, int T, int L, const SeriesOptions& opts) {
  if (T < 0) throw std::invalid_argument("T must be non-negative");
  const LocalField& k = form.field();
  const int W = k.working_level();
  return x_series(form, k.pow(k.uniformizer(W), static_cast<unsigned>(2 * T)), L, opts);
}

std::vector<Rational> pi_truncated(const DiagonalForm& form, const Rational& a, int L, int T_max,
                                   const SeriesOptions& opts) {
  std::vector<Rational> out(static_cast<std::size_t>(L) + 1, 0);
  Rational weight = 1;
  for (int T = 0; T <= T_max; ++T) {
    TruncatedSeries s = x_series_square(form, T, L, opts);
    for (int i = 0; i <= L; ++i) out[static_cast<std::size_t>(i)] += weight * s.coeffs[static_cast<std::size_t>(i)];
    weight *= a;
  }
  return out;
}

}  // namespace dyadic
