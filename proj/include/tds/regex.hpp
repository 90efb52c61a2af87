#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tds/automata.hpp"

namespace tds {

/// Regex syntax: single-character letters of the alphabet, concatenation,
/// union "+", star "*", parentheses, wildcard "." (any letter). The empty
/// pattern denotes the empty word.
Nfa compile_regex(const std::string& pattern, const LetterIndex& letters);

/// Buchi automaton for the union of U_i . V_i^omega. Periods must not accept
/// the empty word.
Buchi compile_omega_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                          const LetterIndex& letters);

/// Splits "U(V)^w" (or the "^ω" spelling) into its prefix and period parts.
std::pair<std::string, std::string> split_omega_expression(const std::string& text);

}  // namespace tds
