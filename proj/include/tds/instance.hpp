#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tds/automata.hpp"
#include "tds/lasso.hpp"
#include "tds/rational.hpp"

namespace tds {

enum class Mode { Infinite, Finite };

/// Ordered list of (letter, weight). Letters are pairwise distinct; weights
/// may repeat (transitions-as-letters encodings need that).
class WeightAlphabet {
 public:
  explicit WeightAlphabet(std::vector<std::pair<Letter, Rational>> entries);

  std::size_t size() const { return entries_.size(); }
  const Letter& letter(std::size_t i) const { return entries_[i].first; }
  const Rational& weight(std::size_t i) const { return entries_[i].second; }
  const std::vector<std::pair<Letter, Rational>>& entries() const { return entries_; }

  bool has(const Letter& l) const;
  const Rational& weight_of(const Letter& l) const;

  /// Entry indices sorted by weight (stable on ties).
  std::vector<std::size_t> order_by_weight() const;
  const Rational& min_weight() const;
  const Rational& max_weight() const;

  std::vector<Letter> letters() const;
  WeightMap to_map() const;

 private:
  std::vector<std::pair<Letter, Rational>> entries_;
};

/// Sequence constraint, as supplied: omega-regular (prefix, period) regex
/// pairs or an explicit Buchi automaton for infinite mode; a plain regex or
/// explicit NFA for finite mode. Automata are indexed against the owning
/// instance's alphabet.
struct Constraint {
  std::vector<std::pair<std::string, std::string>> omega_pairs;
  std::optional<Buchi> explicit_buchi;
  std::optional<std::string> finite_regex;
  std::optional<Nfa> explicit_nfa;
  /// Set when every word of the constraint language is ultimately periodic
  /// (e.g. after lifting a finite-word problem); makes "no periodic
  /// solution" a definitive no.
  bool only_ultimately_periodic = false;

  bool is_finite_style() const { return finite_regex.has_value() || explicit_nfa.has_value(); }
  /// |e| for the witness-length bounds: regex length or automaton state count.
  long size_measure() const;
};

struct GtdsInstance {
  std::string kind;  // echo of the input flavor: tds, tds01, gtds, ...
  DiscountFactor lambda;
  Rational target;
  WeightAlphabet alphabet;
  std::optional<Constraint> constraint;
  Mode mode = Mode::Infinite;
  int start_exponent = 0;  // summation starts at lambda^start_exponent

  LetterIndex letter_index() const { return LetterIndex(alphabet.letters()); }
};

/// orig = scale * normalized + offset.
struct AffineMap {
  Rational scale{1};
  Rational offset{0};
  Rational apply(const Rational& v) const { return scale * v + offset; }
};

/// Instance with natural-number weights, least weight 0, plus the cached
/// integers the gap solvers run on.
struct NormalFormInstance {
  GtdsInstance base;
  mpz_class c, d;                  // normalized target = c/d, reduced, d >= 1
  mpz_class p, q;                  // lambda = q/p
  std::vector<mpz_class> digits;   // per alphabet entry, natural
  Rational bound;                  // lambda * max_digit / (1 - lambda): value of the all-max tail
  mpz_class max_digit;

  /// First gap of the exploration: target for start_exponent 1, target*lambda
  /// for start_exponent 0.
  Rational initial_gap() const;
};

struct NormalizeResult {
  NormalFormInstance instance;
  AffineMap value_map;  // original value of a word from its normalized value
};

NormalizeResult normalize(const GtdsInstance& instance);

/// Two-weight reduction onto weights {0,1} with summation from exponent 1.
/// Maps the weight-a letter to 0 and the weight-b letter to 1.
struct Tds01Reduction {
  std::optional<Rational> target;  // t''' when non-degenerate
  bool degenerate = false;         // a == b: solvable iff t equals the constant-word value
  bool degenerate_solvable = false;
};

Tds01Reduction reduce_tds_to_tds01(const DiscountFactor& lambda, const Rational& t,
                                   const Rational& a, const Rational& b);

/// Finite-mode instance turned into an infinite one: constraint becomes
/// e . z^omega for a weight-0 letter z (fresh if no weight is 0, excluded
/// from e).
struct LiftResult {
  GtdsInstance lifted;
  Letter zero_letter;
  Nfa finite_nfa;  // the compiled finite constraint e, over the lifted alphabet
};

LiftResult lift_finite_to_infinite(const GtdsInstance& instance);

/// True iff adjacent weight gaps never exceed the all-max tail value, so
/// every target in [0, bound] has a solution (greedy invariant).
bool full_coverage(const NormalFormInstance& instance);

}  // namespace tds
