#include "tds/lasso.hpp"

#include <numeric>
#include <stdexcept>

namespace tds {

const Letter& LassoWord::at(std::size_t i) const {
  if (i < prefix.size()) return prefix[i];
  if (period.empty()) throw std::out_of_range("finite word index past the end");
  return period[(i - prefix.size()) % period.size()];
}

Word LassoWord::unroll(std::size_t n) const {
  Word out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(at(i));
  return out;
}

std::string LassoWord::str() const {
  std::string out;
  for (const auto& l : prefix) out += l;
  if (!period.empty()) {
    out += "(";
    for (const auto& l : period) out += l;
    out += ")^w";
  }
  return out;
}

bool same_omega_word(const LassoWord& a, const LassoWord& b) {
  if (a.is_finite() != b.is_finite()) return false;
  if (a.is_finite()) return a.prefix == b.prefix;
  // Two ultimately periodic words agree iff they agree up to the point where
  // both are periodic, over one common period.
  const std::size_t start = std::max(a.prefix.size(), b.prefix.size());
  const std::size_t common = std::lcm(a.period.size(), b.period.size());
  const std::size_t n = start + 2 * common;
  for (std::size_t i = 0; i < n; ++i)
    if (a.at(i) != b.at(i)) return false;
  return true;
}

Word word_from_string(const std::string& letters) {
  Word w;
  w.reserve(letters.size());
  for (char c : letters) w.push_back(std::string(1, c));
  return w;
}

namespace {

const Rational& weight_of(const WeightMap& weights, const Letter& l) {
  auto it = weights.find(l);
  if (it == weights.end()) throw input_error("letter '" + l + "' has no weight");
  return it->second;
}

}  // namespace

Rational discounted_sum_finite(const Word& word, const WeightMap& weights,
                               const DiscountFactor& lambda) {
  Rational sum(0);
  Rational factor(1);
  for (const auto& l : word) {
    sum += weight_of(weights, l) * factor;
    factor *= lambda.value();
  }
  return sum;
}

Rational lasso_value(const LassoWord& w, const WeightMap& digits,
                     const DiscountFactor& lambda, int start_exponent) {
  if (start_exponent != 0 && start_exponent != 1)
    throw input_error("start_exponent must be 0 or 1");
  Rational value = discounted_sum_finite(w.prefix, digits, lambda);
  if (!w.period.empty()) {
    const Rational period_sum = discounted_sum_finite(w.period, digits, lambda);
    const Rational lam_u = lambda.value().pow(static_cast<unsigned long>(w.prefix.size()));
    const Rational lam_v = lambda.value().pow(static_cast<unsigned long>(w.period.size()));
    value += lam_u * period_sum / (Rational(1) - lam_v);
  }
  if (start_exponent == 1) value *= lambda.value();
  return value;
}

}  // namespace tds
