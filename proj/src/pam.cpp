#include "tds/pam.hpp"

#include <set>
#include <stdexcept>

namespace tds {

bool PamPiece::contains(const Rational& x) const {
  if (lo && (lo_closed ? x < *lo : x <= *lo)) return false;
  if (hi && (hi_closed ? x > *hi : x >= *hi)) return false;
  return true;
}

std::string PamPiece::interval_str() const {
  std::string s = lo ? (lo_closed ? "[" : "(") + lo->str() : "(-inf";
  s += ", ";
  s += hi ? hi->str() + (hi_closed ? "]" : ")") : "+inf)";
  return s;
}

std::size_t Pam::piece_index(const Rational& x) const {
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (pieces[i].contains(x)) return i;
  throw input_error("point " + x.str() + " is outside every piece");
}

std::optional<Pam> build_pam_from_tds01(const DiscountFactor& lambda, const Rational& t) {
  if (lambda.value() >= Rational(1, 2))
    throw input_error("the map construction needs lambda < 1/2");
  const Rational lam = lambda.value();
  const Rational bound = lam / lambda.one_minus();
  if (t > bound || t.is_negative()) return std::nullopt;  // no solution outright

  const Rational b(t.den());
  const Rational q(lambda.p());  // base = q/p in the map's naming: lambda = p/q
  const Rational p(lambda.q());

  Pam f;
  // x < lambda: a 0 digit, gap scaled by the base.
  f.pieces.push_back({std::nullopt, lam, false, false, lam.reciprocal(), Rational(0)});
  // lambda <= x <= lambda/(1-lambda): a 1 digit.
  f.pieces.push_back({lam, bound, true, true, lam.reciprocal(), -Rational(1)});
  // bound < x < 1: expansion failed; amplify onto integers over powers of p.
  f.pieces.push_back({bound, Rational(1), false, false, b * q, Rational(0)});
  // x = 1: fixed point, the reachability target.
  f.pieces.push_back({Rational(1), Rational(1), true, true, Rational(1), Rational(0)});
  // 1 < x < 2: multiply by p to strip a power from the denominator.
  f.pieces.push_back({Rational(1), Rational(2), false, false, p, Rational(0)});
  // x >= 2: walk down to the fixed point.
  f.pieces.push_back({Rational(2), std::nullopt, true, false, Rational(1), -Rational(1)});
  return f;
}

OrbitResult pam_orbit(const Pam& f, const Rational& start, const Rational& target,
                      std::size_t budget) {
  OrbitResult out;
  std::set<Rational> visited;
  Rational x = start;
  for (std::size_t n = 0; n <= budget; ++n) {
    out.orbit.push_back(x);
    if (x == target) {
      out.status = OrbitResult::Status::Reached;
      out.steps = n;
      return out;
    }
    if (!visited.insert(x).second) {
      out.status = OrbitResult::Status::DivergedCertified;
      out.steps = n;
      out.cycle_point = x;
      return out;
    }
    const std::size_t i = f.piece_index(x);
    const Rational next = f.pieces[i].apply(x);
    // The (1, 2) band must be left within one step (its slope strips one
    // denominator power); a slope-1 band there would trap the orbit.
    if (x > Rational(1) && x < Rational(2) && next > Rational(1) && next < Rational(2))
      throw std::logic_error("orbit stalled inside (1, 2)");
    x = next;
  }
  out.status = OrbitResult::Status::Unknown;
  out.steps = budget;
  return out;
}

}  // namespace tds
