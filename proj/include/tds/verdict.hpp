#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tds/lasso.hpp"
#include "tds/rational.hpp"

namespace tds {

enum class Answer { Yes, No, Unknown };

enum class ReasonKind {
  GapExceededBound,     // a gap left [0, bound]: refutation
  GapRepetition,        // a repeated gap yields the periodic witness
  CoverageGuarantee,    // range dichotomy / adjacent-weight coverage
  NoEvPeriodicExists,   // divisibility broke: no periodic solution exists
  BudgetExhausted,
  ExhaustedStateSpace,  // finite state space swept with no witness: total no
  UniqueWitnessRejected,  // the unique representation violates the constraint
  DegenerateAlphabet,   // single-weight analytic case
};

std::string reason_name(ReasonKind r);

/// Digit/gap log of one deterministic exploration.
/// Invariant: gaps[n+1] = beta * gaps[n] - digits[n], gaps[0] = initial gap.
struct ExplorationTrace {
  enum class Outcome { TooBig, Repeat, BudgetExhausted };

  std::vector<Rational> gaps;
  std::vector<mpz_class> digits;
  Outcome outcome = Outcome::BudgetExhausted;
  std::size_t repeat_from = 0, repeat_at = 0;  // gaps[repeat_from] == gaps[repeat_at]
  bool divisibility_broken = false;
  std::size_t divisibility_broken_at = 0;

  std::size_t steps() const { return digits.size(); }
  void verify(const DiscountFactor& lambda) const;  // throws on a corrupt trace
};

struct Verdict {
  Answer answer = Answer::Unknown;
  ReasonKind reason = ReasonKind::BudgetExhausted;
  std::string detail;

  std::optional<LassoWord> certificate;    // witness for infinite-word yes
  std::optional<Word> finite_witness;      // witness for finite-word yes
  std::optional<Rational> certificate_value;  // re-verified value
  std::optional<ExplorationTrace> trace;      // refutation evidence

  unsigned long long budget_consumed = 0;
  long product_size = 0;                   // |C| when a product was searched
  std::optional<Rational> witness_length_bound;  // the theorem-side bound, reported
  std::optional<unsigned long long> tree_height;  // closed refutation tree height

  bool yes() const { return answer == Answer::Yes; }
  bool no() const { return answer == Answer::No; }
  bool unknown() const { return answer == Answer::Unknown; }
};

}  // namespace tds
