#include "tds/cantor.hpp"

#include "tds/exploration.hpp"

namespace tds {

Verdict cantor_membership(long k, const Rational& t, unsigned long long budget) {
  if (k < 3) throw input_error("middle-kth Cantor sets need k >= 3");
  if (t.is_negative() || t > Rational(1))
    throw input_error("membership query outside [0, 1]: " + t.str());
  const DiscountFactor lambda(Rational(k - 1, 2 * k));
  const Rational target = t * Rational(k - 1, k + 1);
  return decide_tds01(lambda, target, budget);
}

}  // namespace tds
