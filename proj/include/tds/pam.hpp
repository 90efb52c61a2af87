#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tds/rational.hpp"
#include "tds/verdict.hpp"

namespace tds {

/// One affine piece over an interval with explicit endpoint closure; open
/// bounds may be absent (unbounded side).
struct PamPiece {
  std::optional<Rational> lo, hi;  // absent: unbounded
  bool lo_closed = false, hi_closed = false;
  Rational slope, offset;  // f(x) = slope * x + offset

  bool contains(const Rational& x) const;
  Rational apply(const Rational& x) const { return slope * x + offset; }
  std::string interval_str() const;
};

struct Pam {
  std::vector<PamPiece> pieces;  // pairwise disjoint

  /// Index of the piece containing x; input_error when none does.
  std::size_t piece_index(const Rational& x) const;
  Rational apply(const Rational& x) const { return pieces[piece_index(x)].apply(x); }
};

/// The six-piece map whose orbit from t tracks the 0/1 expansion gaps of t in
/// base 1/lambda and funnels any out-of-range gap onto the fixed point 1.
/// Requires lambda < 1/2; nullopt when t exceeds lambda/(1-lambda) (then the
/// underlying target problem trivially has no solution).
std::optional<Pam> build_pam_from_tds01(const DiscountFactor& lambda, const Rational& t);

struct OrbitResult {
  enum class Status { Reached, DivergedCertified, Unknown };
  Status status = Status::Unknown;
  std::size_t steps = 0;           // step at which the target was hit, or steps consumed
  std::vector<Rational> orbit;     // visited points, starting with the start point
  std::optional<Rational> cycle_point;  // certifies divergence: first revisited value
};

/// Exact iteration with revisit detection, so non-reaching cyclic orbits are
/// certified rather than budget-bounded.
OrbitResult pam_orbit(const Pam& f, const Rational& start, const Rational& target,
                      std::size_t budget);

}  // namespace tds
