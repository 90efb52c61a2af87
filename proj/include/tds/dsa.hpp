#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tds/instance.hpp"
#include "tds/solver.hpp"
#include "tds/verdict.hpp"

namespace tds {

/// Discounted-sum automaton. Runs start at any initial state; a finite run
/// accepts when it ends in an accepting state, infinite-mode runs all accept.
/// The value of a word is the minimum accepting-run value.
struct Dsa {
  std::vector<Letter> alphabet;
  std::vector<std::string> state_names;
  std::vector<int> initial;
  std::vector<bool> accepting;
  struct Edge {
    int from, letter, to;
    Rational weight;
  };
  std::vector<Edge> edges;
  DiscountFactor lambda{Rational(1, 2)};
  Mode mode = Mode::Finite;
  bool functional_declared = false;

  int state_count() const { return static_cast<int>(state_names.size()); }
  const std::vector<int>& out(int state) const { return out_edges_[state]; }
  void finalize();  // validates and builds adjacency

 private:
  std::vector<std::vector<int>> out_edges_;
};

/// Minimum value over accepting runs; nullopt when no accepting run exists.
std::optional<Rational> word_value(const Dsa& a, const Word& w);

/// Random accepted words whose accepting runs disagree in value disprove the
/// functionality declaration.
struct FunctionalityViolation {
  Word word;
  std::vector<Rational> values;
};
std::optional<FunctionalityViolation> sample_functionality(const Dsa& a, int samples,
                                                           unsigned long seed);

struct SupValue {
  bool defined = false;  // false: the automaton accepts no word
  Rational value;
  bool attained = false;
  Word attaining_word;  // when attained
  std::vector<Rational> state_values;  // exact Bellman fixpoint on trimmed states
  std::vector<int> trimmed_to_original;
};

/// Supremum of word values, by policy iteration over stop/continue policies
/// with exact cycle evaluation.
SupValue sup_value(const Dsa& a);

/// Is some finite word valued exactly t? Functional automata only: the word
/// problem becomes a finite-word target problem over transition names.
Verdict exact_value(const Dsa& a, const Rational& t);

struct DecisionWitness {
  bool holds = false;
  bool vacuous = false;
  std::optional<Word> counterexample;
  std::optional<Rational> counterexample_value;
  std::string detail;
};

/// For every finite word w: A(w) < t (strict) or A(w) <= t.
DecisionWitness universality_finite(const Dsa& a, const Rational& t, bool strict);

struct InclusionResult {
  DecisionWitness decision;  // over words accepted by both automata
  std::optional<Word> only_in_a, only_in_b;
};

/// For every common word: A(w) < B(w) (strict) or A(w) <= B(w); acceptance
/// mismatches are reported alongside, not folded into the verdict.
InclusionResult inclusion_finite(const Dsa& a, const Dsa& b, bool strict);

/// Two-state automaton over {a, b} whose runs on any word w value to
/// s(w) - t and t - s(w), where s sums the 0/1 image of w from exponent 0.
/// Its <0-universality fails exactly on words with s(w) = t.
Dsa tds_to_universality_gadget(const DiscountFactor& lambda, const Rational& t);

struct SemiUniversality {
  Answer answer = Answer::Unknown;  // Yes: universality holds
  std::optional<Word> counterexample_prefix;  // every extension misses the threshold
  unsigned long long tree_height = 0;
  std::string detail;
};

/// Infinite-word universality, decided when the target-sum refuter closes its
/// exploration tree; Unknown otherwise.
SemiUniversality semi_universality_infinite(const Dsa& a, const Rational& t, bool strict,
                                            Budget budget = {});

}  // namespace tds
