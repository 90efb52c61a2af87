#pragma once

#include <optional>

#include "tds/gap_automaton.hpp"
#include "tds/instance.hpp"
#include "tds/verdict.hpp"

namespace tds {

struct Budget {
  unsigned long long steps = 0;   // 0: derive from the instance (d-based bounds, x4 margin)
  unsigned long long states = 0;  // 0: default cap on gap-automaton size
};

/// Compiles an infinite-mode constraint to a Buchi automaton over the
/// instance alphabet (explicit automata pass through).
Buchi compile_constraint(const Constraint& c, const LetterIndex& letters);

/// Periodic-solution search for a normal-form infinite instance, with the
/// total shortcuts: coverage yes, 1/n-base no, unique-representation
/// (anti-coverage) greedy refutation. Otherwise a periodic-free instance is
/// Unknown: non-periodic solutions are not ruled out.
Verdict solve_cgtds(const NormalFormInstance& instance, Budget budget = {});

/// Finite-word solver: lift, normalize, then search the gap/constraint
/// product for the tail gap of the zero letter. Total.
Verdict solve_cgtds_f(const GtdsInstance& instance, Budget budget = {});

/// Exhaustive nondeterministic exploration over exact reduced gaps, no
/// divisibility or periodicity pruning. All branches dying within budget is a
/// definitive no (tree height in Verdict::tree_height feeds the universality
/// procedure); a repeated gap on a branch means a solution exists.
Verdict refute_gtds(const NormalFormInstance& instance, Budget budget = {});

/// Total decision for lambda = 1/n (the gap state space is finite for every
/// word, not only the periodic ones). Constraint optional.
Verdict decide_integral_base(const NormalFormInstance& instance, Budget budget = {});

/// Witness length bound reported on periodic yes verdicts:
/// 2 * d * |e| * lambda * max_digit / (1 - lambda).
Rational periodic_witness_bound(const NormalFormInstance& instance);

/// Witness length bound for finite-word instances (on the original,
/// un-normalized instance): 4 * d * (q - p) * (|e| + 2) * max(|a_k|, |a_1|)
/// * lambda * m / (1 - lambda), with lambda = p/q and m the weights' common
/// denominator.
Rational finite_witness_bound(const GtdsInstance& instance);

/// Kind dispatch: tds01 and tds run the 0/1 decision (after the two-weight
/// reduction), infinite generalized kinds normalize into solve_cgtds (or the
/// total 1/n solver), finite kinds run solve_cgtds_f. Certificates come back
/// in the instance's own letters, re-verified against the original target.
Verdict solve_instance(const GtdsInstance& instance, Budget budget = {});

}  // namespace tds
