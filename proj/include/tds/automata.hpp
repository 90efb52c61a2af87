#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tds/lasso.hpp"

namespace tds {

/// Letters are referred to by index into an alphabet vector throughout the
/// automata layer; letters themselves are strings (transition names of a
/// discounted-sum automaton are multi-character letters).
struct LetterIndex {
  std::vector<Letter> letters;

  explicit LetterIndex(std::vector<Letter> ls) : letters(std::move(ls)) {}
  int index_of(const Letter& l) const;
  std::optional<int> find(const Letter& l) const;
  std::size_t size() const { return letters.size(); }
};

/// Nondeterministic finite automaton over indexed letters, epsilon-free,
/// possibly with several initial states.
struct Nfa {
  int state_count = 0;
  std::vector<int> initial;
  std::vector<bool> accepting;
  std::vector<std::vector<std::pair<int, int>>> edges;  // state -> [(letter, to)]

  static Nfa single_letter(int letter, int alphabet_size);
  static Nfa universe(int alphabet_size);  // accepts every finite word
  static Nfa empty_word_only();

  bool accepts(const std::vector<int>& word) const;
  bool accepts_empty() const;
  Nfa trimmed() const;  // reachable and co-reachable states only
};

/// Buchi automaton: same shape, acceptance = some accepting state visited
/// infinitely often.
struct Buchi {
  int state_count = 0;
  std::vector<int> initial;
  std::vector<bool> accepting;
  std::vector<std::vector<std::pair<int, int>>> edges;

  static Buchi universe(int alphabet_size);  // all omega-words

  Buchi reachable_part() const;
};

/// Membership of the ultimately periodic word u v^omega, decided by boolean
/// reachability over one period (independent of any product construction).
bool buchi_accepts_lasso(const Buchi& b, const LassoWord& w, const LetterIndex& letters);

/// Buchi automaton for L(prefix) . letter(z)^omega; `finite` must be
/// epsilon-free. Used when lifting finite-word problems to infinite ones.
Buchi append_letter_omega(const Nfa& finite, int zero_letter);

/// Is L(a) a subset of L(b)? For small automata (subset construction on b).
/// Returns a shortest counterexample word when not.
std::optional<std::vector<int>> nfa_inclusion_counterexample(const Nfa& a, const Nfa& b,
                                                             int alphabet_size);

}  // namespace tds
