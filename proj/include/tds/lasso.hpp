#pragma once

#include <map>
#include <string>
#include <vector>

#include "tds/rational.hpp"

namespace tds {

using Letter = std::string;
using Word = std::vector<Letter>;

/// u v^omega when period is nonempty; the finite word u otherwise.
struct LassoWord {
  Word prefix;
  Word period;

  bool is_finite() const { return period.empty(); }

  /// Letter at unrolled position i (0-based). Finite words require i < |prefix|.
  const Letter& at(std::size_t i) const;

  /// First n letters of the unrolled word (n <= |prefix| for finite words).
  Word unroll(std::size_t n) const;

  /// "u(v)^w" rendering, e.g. "a(ca)^w"; finite words render as-is.
  std::string str() const;
};

/// Equality as omega-words (or as plain words, for two finite lassos):
/// framing-insensitive, so "a(ca)^w" equals "(ac)^w".
bool same_omega_word(const LassoWord& a, const LassoWord& b);

using WeightMap = std::map<Letter, Rational>;

Word word_from_string(const std::string& letters);

/// Sum of weight(w(i)) * lambda^i over the finite word, starting at exponent 0.
Rational discounted_sum_finite(const Word& word, const WeightMap& weights,
                               const DiscountFactor& lambda);

/// Exact value of the lasso: sum over the prefix plus
/// lambda^|u| * (period sum) / (1 - lambda^|v|), shifted once more by lambda
/// when start_exponent is 1 (radix-point convention: first letter at beta^-1).
Rational lasso_value(const LassoWord& w, const WeightMap& digits,
                     const DiscountFactor& lambda, int start_exponent);

}  // namespace tds
