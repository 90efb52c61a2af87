#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tds/instance.hpp"
#include "tds/rational.hpp"
#include "tds/verdict.hpp"

namespace tds {

/// Next gap after emitting digit m: beta * g - m.
Rational gap_step(const Rational& g, const Rational& digit, const DiscountFactor& lambda);

/// Digits must be the sorted natural weights of a normal-form instance.
/// Greedy: largest m with beta*g - m >= 0.
mpz_class greedy_digit(const Rational& g, const DiscountFactor& lambda,
                       const std::vector<mpz_class>& digits_sorted);

/// Lazy: smallest m with beta*g - m <= bound.
mpz_class lazy_digit(const Rational& g, const DiscountFactor& lambda,
                     const std::vector<mpz_class>& digits_sorted, const Rational& bound);

/// All m with 0 <= beta*g - m <= bound. The upper comparison is closed: the
/// all-max-digit tail attains the bound exactly. Empty result = dead branch.
std::vector<mpz_class> eligible_digits(const Rational& g, const DiscountFactor& lambda,
                                       const std::vector<mpz_class>& digits_sorted,
                                       const Rational& bound);

/// Deterministic greedy exploration from the instance's initial gap, stopping
/// on a too-big gap, a repeated gap, or the step budget.
ExplorationTrace greedy_explore(const NormalFormInstance& instance, std::size_t max_steps);

/// Decides the 0/1 target problem (summation from exponent 1).
/// lambda >= 1/2: yes iff 0 <= t <= lambda/(1-lambda); a periodic certificate
/// is attached when one exists (it may not, for non-integral bases < 2).
/// lambda < 1/2: greedy exploration is complete; budget 0 means max(d, 10^4).
Verdict decide_tds01(const DiscountFactor& lambda, const Rational& t,
                     unsigned long long budget = 0);

/// One violation of the block-growth bounds for a claimed value c/d.
struct GrowthRateViolation {
  std::size_t index;          // which 1 (0-based) broke the rule
  unsigned long long prev;    // previous 1-position (0 for the first-1 rule)
  unsigned long long pos;     // offending position
};

/// Scans 1-positions (strictly increasing, 1-based) of a base-p/q word and
/// reports the first position where a 0-block outruns the growth bound for
/// denominator d: first 1 within log d, and a 1 at position n followed by the
/// next within n*(log q + 1) + log d. Logarithm base is configurable; any
/// fixed base only rescales the linear bound.
std::optional<GrowthRateViolation> growth_rate_falsifier(
    const std::function<std::optional<unsigned long long>(std::size_t)>& one_positions,
    const Rational& base, const mpz_class& claimed_denominator, unsigned long long horizon,
    unsigned long log_base = 2);

}  // namespace tds
