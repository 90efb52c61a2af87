#pragma once

#include "tds/rational.hpp"
#include "tds/verdict.hpp"

namespace tds {

/// Membership of t in the middle-kth Cantor set, via the 0/1 target problem
/// with discount factor (k-1)/(2k) and target t*(k-1)/(k+1). Total for k = 3
/// (integral base); may be Unknown for k > 3.
Verdict cantor_membership(long k, const Rational& t, unsigned long long budget = 0);

}  // namespace tds
