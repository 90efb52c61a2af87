#include "tds/solver.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tds/exploration.hpp"
#include "tds/regex.hpp"

namespace tds {

Buchi compile_constraint(const Constraint& c, const LetterIndex& letters) {
  if (c.is_finite_style())
    throw input_error("finite-word constraint where an omega constraint is needed");
  if (c.explicit_buchi) {
    const Buchi& b = *c.explicit_buchi;
    for (int s = 0; s < b.state_count; ++s)
      for (auto [l, t] : b.edges[s])
        if (l < 0 || l >= static_cast<int>(letters.size()))
          throw input_error("constraint transition letter out of range");
    return b;
  }
  return compile_omega_pairs(c.omega_pairs, letters);
}

Rational periodic_witness_bound(const NormalFormInstance& nf) {
  const long e = nf.base.constraint ? nf.base.constraint->size_measure() : 1;
  return Rational(2) * Rational(nf.d) * Rational(e) * nf.bound;
}

Rational finite_witness_bound(const GtdsInstance& instance) {
  mpz_class m_lcm = 1;
  for (const auto& [l, w] : instance.alphabet.entries())
    mpz_lcm(m_lcm.get_mpz_t(), m_lcm.get_mpz_t(), w.den().get_mpz_t());
  const Rational max_abs =
      std::max(instance.alphabet.max_weight().abs(), instance.alphabet.min_weight().abs());
  const long e = instance.constraint ? instance.constraint->size_measure() : 1;
  const mpz_class qp = instance.lambda.p() - instance.lambda.q();  // q - p with lambda = p/q
  return Rational(4) * Rational(instance.target.den()) * Rational(qp) * Rational(e + 2) *
         max_abs * instance.lambda.value() * Rational(m_lcm) / instance.lambda.one_minus();
}

namespace {

void verify_periodic_certificate(const NormalFormInstance& nf, const LassoWord& cert,
                                 const std::optional<Buchi>& constraint,
                                 const LetterIndex& letters) {
  const Rational value =
      lasso_value(cert, nf.base.alphabet.to_map(), nf.base.lambda, nf.base.start_exponent);
  if (value != nf.base.target)
    throw std::logic_error("certificate " + cert.str() + " evaluates to " + value.str() +
                           ", target " + nf.base.target.str());
  if (constraint && !buchi_accepts_lasso(*constraint, cert, letters))
    throw std::logic_error("certificate " + cert.str() + " rejected by the constraint");
}

// Unique-representation regime: every pair of adjacent distinct digits is
// further apart than the bound, so at most one digit is eligible at any gap
// and the greedy exploration is complete.
bool anti_coverage(const NormalFormInstance& nf) {
  std::vector<mpz_class> sorted = nf.digits;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (Rational(mpz_class(sorted[i + 1] - sorted[i])) <= nf.bound) return false;
  return true;
}

unsigned long long default_steps(const NormalFormInstance& nf) {
  unsigned long long d = mpz_fits_ulong_p(nf.d.get_mpz_t()) ? nf.d.get_ui() : 1ull << 32;
  return std::max<unsigned long long>(4 * d, 10000);
}

}  // namespace

Verdict solve_cgtds(const NormalFormInstance& nf, Budget budget) {
  if (nf.base.mode != Mode::Infinite) throw input_error("solve_cgtds expects infinite mode");
  const LetterIndex letters(nf.base.alphabet.letters());
  Verdict v;
  v.witness_length_bound = periodic_witness_bound(nf);

  const Rational g0 = nf.initial_gap();
  if (g0.is_negative() || g0 > nf.bound) {
    v.answer = Answer::No;
    v.reason = ReasonKind::GapExceededBound;
    v.detail = "initial gap " + g0.str() + " outside [0, " + nf.bound.str() + "]";
    return v;
  }

  const GapAutomaton gap = build_gap_automaton(nf);
  std::optional<Buchi> constraint;
  if (nf.base.constraint)
    constraint = compile_constraint(*nf.base.constraint, letters);
  const Buchi buchi =
      constraint ? *constraint : Buchi::universe(static_cast<int>(letters.size()));

  long product_size = 0;
  auto cert = product_and_emptiness(gap, buchi, letters, &product_size);
  v.product_size = product_size;

  if (cert) {
    if (static_cast<long>(cert->prefix.size() + cert->period.size()) > 2 * product_size)
      throw std::logic_error("lasso longer than twice the product size");
    verify_periodic_certificate(nf, *cert, constraint, letters);
    v.answer = Answer::Yes;
    v.reason = ReasonKind::GapRepetition;
    v.certificate_value = nf.base.target;
    v.certificate = std::move(*cert);
    return v;
  }

  // No periodic solution. Decide what that means for the instance.
  if (!nf.base.constraint && full_coverage(nf)) {
    v.answer = Answer::Yes;
    v.reason = ReasonKind::CoverageGuarantee;
    v.detail = "adjacent weight gaps within the tail bound guarantee a solution; "
               "no periodic certificate exists";
    return v;
  }
  if (nf.base.lambda.integral_base()) {
    v.answer = Answer::No;
    v.reason = ReasonKind::ExhaustedStateSpace;
    v.detail = "1/n discount factor: the finite gap graph covers every solution";
    return v;
  }
  if (nf.base.constraint && nf.base.constraint->only_ultimately_periodic) {
    v.answer = Answer::No;
    v.reason = ReasonKind::ExhaustedStateSpace;
    v.detail = "constraint language is ultimately periodic only";
    return v;
  }
  if (anti_coverage(nf)) {
    const unsigned long long steps = budget.steps ? budget.steps : default_steps(nf);
    ExplorationTrace trace = greedy_explore(nf, steps);
    v.budget_consumed = trace.steps();
    switch (trace.outcome) {
      case ExplorationTrace::Outcome::TooBig:
        v.answer = Answer::No;
        v.reason = ReasonKind::GapExceededBound;
        v.trace = std::move(trace);
        return v;
      case ExplorationTrace::Outcome::Repeat:
        // The unique digit sequence is periodic, so every realization stays in
        // the product; emptiness already covered them all.
        v.answer = Answer::No;
        v.reason = ReasonKind::UniqueWitnessRejected;
        v.detail = "the unique representation violates the constraint";
        v.trace = std::move(trace);
        return v;
      case ExplorationTrace::Outcome::BudgetExhausted:
        v.answer = Answer::Unknown;
        v.reason = trace.divisibility_broken ? ReasonKind::NoEvPeriodicExists
                                             : ReasonKind::BudgetExhausted;
        v.detail = "unique candidate representation is not periodic";
        v.trace = std::move(trace);
        return v;
    }
  }
  v.answer = Answer::Unknown;
  v.reason = ReasonKind::NoEvPeriodicExists;
  v.detail = "no periodic solution; non-periodic solutions are not ruled out";
  return v;
}

Verdict solve_cgtds_f(const GtdsInstance& instance, Budget) {
  if (instance.mode != Mode::Finite) throw input_error("solve_cgtds_f expects finite mode");
  LiftResult lift = lift_finite_to_infinite(instance);
  NormalizeResult norm = normalize(lift.lifted);
  const NormalFormInstance& nf = norm.instance;
  const LetterIndex letters(nf.base.alphabet.letters());

  Verdict v;
  v.witness_length_bound = finite_witness_bound(instance);

  const Rational g0 = nf.initial_gap();
  if (g0.is_negative() || g0 > nf.bound) {
    v.answer = Answer::No;
    v.reason = ReasonKind::GapExceededBound;
    v.detail = "initial gap " + g0.str() + " outside [0, " + nf.bound.str() + "]";
    return v;
  }

  const GapAutomaton gap = build_gap_automaton(nf);

  // Gap value of the all-zero-letter tail; a finite word solves the instance
  // iff reading it lands exactly there at an accepting constraint state.
  const std::size_t z_idx =
      static_cast<std::size_t>(letters.index_of(lift.zero_letter));
  const Rational z_digit(nf.digits[z_idx]);
  const Rational tail_gap = z_digit * nf.base.lambda.value() / nf.base.lambda.one_minus();
  const Rational xz = tail_gap * Rational(gap.denominator);
  if (!xz.is_integer()) {
    v.answer = Answer::No;
    v.reason = ReasonKind::ExhaustedStateSpace;
    v.detail = "tail gap not representable over the gap denominator";
    return v;
  }

  long product_size = 0;
  auto word = product_reach_numerator(gap, lift.finite_nfa, letters, xz.num(), &product_size);
  v.product_size = product_size;
  if (!word) {
    v.answer = Answer::No;
    v.reason = ReasonKind::ExhaustedStateSpace;
    v.detail = "no path reaches the tail gap at an accepting constraint state";
    return v;
  }

  const Rational value = discounted_sum_finite(*word, instance.alphabet.to_map(), instance.lambda);
  if (value != instance.target)
    throw std::logic_error("finite witness evaluates to " + value.str() + ", target " +
                           instance.target.str());
  v.answer = Answer::Yes;
  v.reason = ReasonKind::GapRepetition;
  v.finite_witness = std::move(*word);
  v.certificate_value = value;
  return v;
}

Verdict refute_gtds(const NormalFormInstance& nf, Budget budget) {
  if (nf.base.mode != Mode::Infinite) throw input_error("refute_gtds expects infinite mode");
  if (nf.base.constraint) throw input_error("refute_gtds expects an unconstrained instance");
  const unsigned long long max_nodes = budget.steps ? budget.steps : 4 * default_steps(nf);

  std::vector<mpz_class> digits_sorted = nf.digits;
  std::sort(digits_sorted.begin(), digits_sorted.end());
  digits_sorted.erase(std::unique(digits_sorted.begin(), digits_sorted.end()),
                      digits_sorted.end());

  Verdict v;
  unsigned long long nodes = 0;
  unsigned long long deepest_death = 0;
  bool cycle_found = false;
  bool out_of_budget = false;

  struct Frame {
    Rational gap;
    std::size_t next_digit = 0;
  };
  std::vector<Frame> stack;
  std::set<Rational> on_path;

  const Rational g0 = nf.initial_gap();
  if (g0.is_negative() || g0 > nf.bound) {
    v.answer = Answer::No;
    v.reason = ReasonKind::GapExceededBound;
    v.tree_height = 1;
    v.detail = "initial gap outside [0, bound]";
    return v;
  }
  stack.push_back({g0});
  on_path.insert(g0);
  ++nodes;

  while (!stack.empty() && !cycle_found && !out_of_budget) {
    Frame& top = stack.back();
    if (top.next_digit >= digits_sorted.size()) {
      on_path.erase(top.gap);
      stack.pop_back();
      continue;
    }
    const Rational next =
        gap_step(top.gap, Rational(digits_sorted[top.next_digit]), nf.base.lambda);
    ++top.next_digit;
    if (next.is_negative() || next > nf.bound) {
      deepest_death = std::max<unsigned long long>(deepest_death, stack.size());
      continue;
    }
    if (on_path.count(next)) {
      cycle_found = true;  // a viable cycle: the instance has a solution
      break;
    }
    if (++nodes > max_nodes) {
      out_of_budget = true;
      break;
    }
    stack.push_back({next});
    on_path.insert(next);
  }

  v.budget_consumed = nodes;
  if (cycle_found) {
    v.answer = Answer::Unknown;
    v.reason = ReasonKind::GapRepetition;
    v.detail = "a viable gap cycle exists: the instance has a solution, no refutation";
    return v;
  }
  if (out_of_budget) {
    v.answer = Answer::Unknown;
    v.reason = ReasonKind::BudgetExhausted;
    return v;
  }
  v.answer = Answer::No;
  v.reason = ReasonKind::ExhaustedStateSpace;
  v.tree_height = std::max<unsigned long long>(1, deepest_death);
  v.detail = "exploration tree closed";
  return v;
}

Verdict decide_integral_base(const NormalFormInstance& nf, Budget budget) {
  if (!nf.base.lambda.integral_base())
    throw input_error("decide_integral_base expects lambda = 1/n");
  Verdict v = solve_cgtds(nf, budget);
  if (v.unknown()) throw std::logic_error("1/n-base decision cannot be unknown");
  return v;
}

namespace {

void check_state_budget(const NormalFormInstance& nf, Budget budget) {
  const unsigned long cap =
      budget.states ? static_cast<unsigned long>(budget.states) : 10000000ul;
  const Rational size = Rational(nf.base.start_exponent == 0 ? mpz_class(nf.d * nf.p) : nf.d) * nf.bound;
  if (size > Rational(mpz_class(cap)))
    throw input_error("gap state space (~" + size.floor().get_str() +
                      ") exceeds the state budget " + std::to_string(cap));
}

}  // namespace

Verdict solve_instance(const GtdsInstance& instance, Budget budget) {
  if (instance.kind == "tds01")
    return decide_tds01(instance.lambda, instance.target, budget.steps);

  if (instance.kind == "tds") {
    const Rational a = instance.alphabet.weight(0);
    const Rational b = instance.alphabet.weight(1);
    if (a == b) {
      Verdict v;
      v.reason = ReasonKind::DegenerateAlphabet;
      const Rational constant_value = a / instance.lambda.one_minus();
      if (instance.target == constant_value) {
        v.answer = Answer::Yes;
        v.certificate = LassoWord{{}, {instance.alphabet.letter(0)}};
        v.certificate_value = instance.target;
        v.detail = "equal weights: the constant word attains the target";
      } else {
        v.answer = Answer::No;
        v.detail = "equal weights: every word values to " + constant_value.str();
      }
      return v;
    }
    const Tds01Reduction red = reduce_tds_to_tds01(instance.lambda, instance.target, a, b);
    Verdict v = decide_tds01(instance.lambda, *red.target, budget.steps);
    if (v.certificate) {
      LassoWord mapped;
      for (const auto& l : v.certificate->prefix)
        mapped.prefix.push_back(l == "0" ? instance.alphabet.letter(0) : instance.alphabet.letter(1));
      for (const auto& l : v.certificate->period)
        mapped.period.push_back(l == "0" ? instance.alphabet.letter(0) : instance.alphabet.letter(1));
      // The 0/1 certificate reads from exponent 1; the two-weight word is the
      // same sequence read from exponent 0.
      const Rational value =
          lasso_value(mapped, instance.alphabet.to_map(), instance.lambda, 0);
      if (value != instance.target)
        throw std::logic_error("mapped certificate evaluates to " + value.str());
      v.certificate = std::move(mapped);
      v.certificate_value = value;
    }
    return v;
  }

  if (instance.mode == Mode::Finite) return solve_cgtds_f(instance, budget);

  NormalizeResult norm = normalize(instance);
  check_state_budget(norm.instance, budget);
  Verdict v = instance.lambda.integral_base() ? decide_integral_base(norm.instance, budget)
                                              : solve_cgtds(norm.instance, budget);
  if (v.certificate) {
    const Rational value = lasso_value(*v.certificate, instance.alphabet.to_map(),
                                       instance.lambda, instance.start_exponent);
    if (value != instance.target)
      throw std::logic_error("certificate evaluates to " + value.str() + " on the original instance");
    v.certificate_value = value;
  }
  return v;
}

}  // namespace tds
