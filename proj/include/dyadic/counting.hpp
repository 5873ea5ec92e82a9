#pragma once

// Exact counting of X_l(rho) = meas{a in o^n : B(a) = rho mod 2 w^l}.

#include "dyadic/qform.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace dyadic {

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CountOptions {
  /// Maximum number of points visited by naive enumeration.
  std::uint64_t enumeration_budget = default_enumeration_budget();
  /// Maximum size of a dense histogram (residues modulo 2 w^l).
  std::uint64_t histogram_budget = std::uint64_t{1} << 24;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;

  /// 2^26 unless DYADIC_ENUM_BUDGET is set in the environment.
  static std::uint64_t default_enumeration_budget();
};

Rational count_level_naive(const DiagonalForm& form, const RingElem& rho, int ell, const CountOptions& opts = {});
Rational count_level_histogram(const DiagonalForm& form, const RingElem& rho, int ell,
                               const CountOptions& opts = {});

/// X_l for B + planes copies of the hyperbolic plane 2yz, by direct
/// convolution of value histograms.
Rational count_level_split(const DiagonalForm& form, int planes, const RingElem& rho, int ell,
                           const CountOptions& opts = {});

struct TruncatedSeries {
  int L = 0;
  std::vector<Rational> coeffs;  // X_0 .. X_L
};

enum class SeriesMode {
  Stabilized,  // count up to the stabilization threshold, extend by the scaling laws
  Direct,      // count every level
  Verify,      // stabilized, then recount the extended levels and compare
};

struct SeriesOptions {
  SeriesMode mode = SeriesMode::Stabilized;
  /// Number of extended levels recounted in Verify mode.
  int verify_levels = 3;
  CountOptions count;
};

/// rho = nullopt means rho = 0.
TruncatedSeries x_series(const DiagonalForm& form, const std::optional<RingElem>& rho, int L,
                         const SeriesOptions& opts = {});
/// rho = w^{2T}.
TruncatedSeries x_series_square(const DiagonalForm& form, int T, int L, const SeriesOptions& opts = {});

/// sum_{T <= T_max} a^T X(beta; w^{2T}) truncated at z^L.
std::vector<Rational> pi_truncated(const DiagonalForm& form, const Rational& a, int L, int T_max,
                                   const SeriesOptions& opts = {});

}  // namespace dyadic
