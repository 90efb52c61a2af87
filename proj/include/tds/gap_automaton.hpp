#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "tds/automata.hpp"
#include "tds/instance.hpp"

namespace tds {

/// Finite safety graph of the exploration gaps, stored as unreduced integer
/// numerators over one fixed denominator D (= d*P for exponent-0 sums, = d
/// for the 0/1 radix-point convention). A transition x --m--> x' exists iff
/// Q | x and x' = P*x/Q - m*D lies in [0, floor(D*bound)].
struct GapAutomaton {
  mpz_class denominator;  // D
  Rational bound;
  mpz_class max_numer;  // floor(D * bound)
  mpz_class x0;
  bool initial_in_range = false;

  std::vector<mpz_class> states;  // reachable in-range numerators, BFS order
  std::map<mpz_class, int> index;
  std::vector<bool> recurrent;  // Q | x: may lie on a periodic solution
  std::vector<std::vector<std::pair<int, int>>> edges;  // (letter, to)
  std::vector<bool> live;  // survives dead-end removal
  int live_count = 0;

  enum class ProbeClass { Viable, NonRecurrent, OutOfRange };
  struct Probe {
    mpz_class from;
    int letter;
    Rational gap;  // exact successor gap value, possibly out of range
    ProbeClass cls;
  };
  std::vector<Probe> probes;  // every attempted successor of an expanded state

  Rational gap_of(int state) const { return Rational(states[state], denominator); }
  int initial_state() const;  // -1 when out of range
};

GapAutomaton build_gap_automaton(const NormalFormInstance& instance);

/// Emptiness of (gap safety automaton x Buchi constraint); returns a minimal
/// accepting lasso in instance letters, searched lowest-letter-first so the
/// output is reproducible.
std::optional<LassoWord> product_and_emptiness(const GapAutomaton& gap, const Buchi& constraint,
                                               const LetterIndex& letters,
                                               long* product_size_out = nullptr);

/// Shortest word leading the product of the gap automaton and the finite-word
/// constraint NFA from the initial numerator to `target_numer` at an accepting
/// NFA state. Dead-end removal does not apply here (the word may stop
/// anywhere), so the full reachable gap graph is searched.
std::optional<Word> product_reach_numerator(const GapAutomaton& gap, const Nfa& constraint,
                                            const LetterIndex& letters,
                                            const mpz_class& target_numer,
                                            long* product_size_out = nullptr);

}  // namespace tds
