#include "tds/exploration.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "tds/gap_automaton.hpp"

namespace tds {

std::string reason_name(ReasonKind r) {
  switch (r) {
    case ReasonKind::GapExceededBound: return "GapExceededBound";
    case ReasonKind::GapRepetition: return "GapRepetition";
    case ReasonKind::CoverageGuarantee: return "CoverageGuarantee";
    case ReasonKind::NoEvPeriodicExists: return "NoEvPeriodicExists";
    case ReasonKind::BudgetExhausted: return "BudgetExhausted";
    case ReasonKind::ExhaustedStateSpace: return "ExhaustedStateSpace";
    case ReasonKind::UniqueWitnessRejected: return "UniqueWitnessRejected";
    case ReasonKind::DegenerateAlphabet: return "DegenerateAlphabet";
  }
  return "?";
}

void ExplorationTrace::verify(const DiscountFactor& lambda) const {
  if (gaps.size() != digits.size() + 1) throw std::logic_error("trace shape mismatch");
  const Rational beta = lambda.base();
  for (std::size_t n = 0; n < digits.size(); ++n)
    if (gaps[n + 1] != beta * gaps[n] - Rational(digits[n]))
      throw std::logic_error("trace gap recurrence violated at step " + std::to_string(n));
  if (outcome == Outcome::Repeat && gaps.at(repeat_from) != gaps.at(repeat_at))
    throw std::logic_error("trace repeat positions do not match");
}

Rational gap_step(const Rational& g, const Rational& digit, const DiscountFactor& lambda) {
  return lambda.base() * g - digit;
}

mpz_class greedy_digit(const Rational& g, const DiscountFactor& lambda,
                       const std::vector<mpz_class>& digits_sorted) {
  if (g.is_negative()) throw std::logic_error("greedy digit on a negative gap");
  const Rational scaled = lambda.base() * g;
  for (auto it = digits_sorted.rbegin(); it != digits_sorted.rend(); ++it)
    if (Rational(*it) <= scaled) return *it;
  throw std::logic_error("no digit keeps the gap nonnegative");
}

mpz_class lazy_digit(const Rational& g, const DiscountFactor& lambda,
                     const std::vector<mpz_class>& digits_sorted, const Rational& bound) {
  const Rational scaled = lambda.base() * g;
  for (const auto& m : digits_sorted)
    if (scaled - Rational(m) <= bound) return m;
  throw std::logic_error("gap above bound: no eligible digit");
}

std::vector<mpz_class> eligible_digits(const Rational& g, const DiscountFactor& lambda,
                                       const std::vector<mpz_class>& digits_sorted,
                                       const Rational& bound) {
  const Rational scaled = lambda.base() * g;
  std::vector<mpz_class> out;
  for (const auto& m : digits_sorted) {
    const Rational next = scaled - Rational(m);
    if (!next.is_negative() && next <= bound) out.push_back(m);
  }
  return out;
}

ExplorationTrace greedy_explore(const NormalFormInstance& instance, std::size_t max_steps) {
  std::vector<mpz_class> digits_sorted = instance.digits;
  std::sort(digits_sorted.begin(), digits_sorted.end());
  digits_sorted.erase(std::unique(digits_sorted.begin(), digits_sorted.end()),
                      digits_sorted.end());

  ExplorationTrace trace;
  Rational gap = instance.initial_gap();
  trace.gaps.push_back(gap);
  std::map<Rational, std::size_t> seen{{gap, 0}};

  const auto check_divisibility = [&](const Rational& g, std::size_t at) {
    if (!trace.divisibility_broken && g.num() % instance.q != 0 && !g.is_negative()) {
      trace.divisibility_broken = true;
      trace.divisibility_broken_at = at;
    }
  };
  check_divisibility(gap, 0);

  if (gap.is_negative() || gap > instance.bound) {
    trace.outcome = ExplorationTrace::Outcome::TooBig;
    trace.verify(instance.base.lambda);
    return trace;
  }

  for (std::size_t step = 0; step < max_steps; ++step) {
    const mpz_class m = greedy_digit(gap, instance.base.lambda, digits_sorted);
    gap = gap_step(gap, Rational(m), instance.base.lambda);
    trace.digits.push_back(m);
    trace.gaps.push_back(gap);
    if (gap > instance.bound) {
      trace.outcome = ExplorationTrace::Outcome::TooBig;
      trace.verify(instance.base.lambda);
      return trace;
    }
    check_divisibility(gap, trace.gaps.size() - 1);
    auto [it, inserted] = seen.try_emplace(gap, trace.gaps.size() - 1);
    if (!inserted) {
      trace.outcome = ExplorationTrace::Outcome::Repeat;
      trace.repeat_from = it->second;
      trace.repeat_at = trace.gaps.size() - 1;
      trace.verify(instance.base.lambda);
      return trace;
    }
  }
  trace.outcome = ExplorationTrace::Outcome::BudgetExhausted;
  trace.verify(instance.base.lambda);
  return trace;
}

namespace {

NormalFormInstance tds01_normal_instance(const DiscountFactor& lambda, const Rational& t) {
  GtdsInstance raw{"tds01",
                   lambda,
                   t,
                   WeightAlphabet({{"0", Rational(0)}, {"1", Rational(1)}}),
                   std::nullopt,
                   Mode::Infinite,
                   1};
  return normalize(raw).instance;
}

LassoWord lasso_from_trace(const ExplorationTrace& trace) {
  LassoWord w;
  for (std::size_t i = 0; i < trace.repeat_from; ++i)
    w.prefix.push_back(trace.digits[i].get_str());
  for (std::size_t i = trace.repeat_from; i < trace.repeat_at; ++i)
    w.period.push_back(trace.digits[i].get_str());
  return w;
}

void attach_verified_tds01_certificate(Verdict& v, const LassoWord& cert,
                                       const DiscountFactor& lambda, const Rational& t) {
  const WeightMap digits{{"0", Rational(0)}, {"1", Rational(1)}};
  const Rational value = lasso_value(cert, digits, lambda, 1);
  if (value != t)
    throw std::logic_error("certificate failed verification: " + cert.str() + " evaluates to " +
                           value.str() + ", target " + t.str());
  v.certificate = cert;
  v.certificate_value = value;
}

}  // namespace

Verdict decide_tds01(const DiscountFactor& lambda, const Rational& t, unsigned long long budget) {
  Verdict v;
  const Rational bound = lambda.value() / lambda.one_minus();
  const mpz_class d = t.den();

  if (t.is_negative() || t > bound) {
    v.answer = Answer::No;
    v.reason = ReasonKind::GapExceededBound;
    v.detail = "target outside [0, " + bound.str() + "]";
    ExplorationTrace trace;  // the refutation is the initial gap itself
    trace.gaps.push_back(t);
    trace.outcome = ExplorationTrace::Outcome::TooBig;
    v.trace = std::move(trace);
    return v;
  }

  if (lambda.value() >= Rational(1, 2)) {
    // Every target in [0, bound] has a 0/1 representation in base <= 2.
    v.answer = Answer::Yes;
    v.reason = ReasonKind::CoverageGuarantee;
    const NormalFormInstance nf = tds01_normal_instance(lambda, t);
    const GapAutomaton gap = build_gap_automaton(nf);
    LetterIndex letters(nf.base.alphabet.letters());
    long product_size = 0;
    auto cert = product_and_emptiness(gap, Buchi::universe(static_cast<int>(letters.size())),
                                      letters, &product_size);
    v.product_size = product_size;
    if (cert) {
      attach_verified_tds01_certificate(v, *cert, lambda, t);
      v.reason = ReasonKind::GapRepetition;
    } else {
      v.detail = "no periodic representation exists; witnessed by the range dichotomy";
    }
    return v;
  }

  // lambda < 1/2: base > 2, so the representation is unique and the greedy
  // exploration is complete.
  unsigned long long d_steps = mpz_fits_ulong_p(d.get_mpz_t()) ? d.get_ui() : ~0ull;
  if (budget == 0) budget = std::max<unsigned long long>(d_steps, 10000);
  if (budget < d_steps)
    throw input_error("budget " + std::to_string(budget) + " below the classification bound " +
                      d.get_str());

  const NormalFormInstance nf = tds01_normal_instance(lambda, t);
  ExplorationTrace trace = greedy_explore(nf, budget);
  v.budget_consumed = trace.steps();
  switch (trace.outcome) {
    case ExplorationTrace::Outcome::TooBig:
      v.answer = Answer::No;
      v.reason = ReasonKind::GapExceededBound;
      v.trace = std::move(trace);
      return v;
    case ExplorationTrace::Outcome::Repeat: {
      v.answer = Answer::Yes;
      v.reason = ReasonKind::GapRepetition;
      attach_verified_tds01_certificate(v, lasso_from_trace(trace), lambda, t);
      v.trace = std::move(trace);
      return v;
    }
    case ExplorationTrace::Outcome::BudgetExhausted:
      if (!trace.divisibility_broken)
        throw std::logic_error("greedy exploration unresolved within the step bound");
      v.answer = Answer::Unknown;
      v.reason = ReasonKind::NoEvPeriodicExists;
      v.detail = "no periodic representation (divisibility broke at step " +
                 std::to_string(trace.divisibility_broken_at) +
                 "); a non-periodic one is not ruled out";
      v.trace = std::move(trace);
      return v;
  }
  throw std::logic_error("unreachable");
}

std::optional<GrowthRateViolation> growth_rate_falsifier(
    const std::function<std::optional<unsigned long long>(std::size_t)>& one_positions,
    const Rational& base, const mpz_class& claimed_denominator, unsigned long long horizon,
    unsigned long log_base) {
  if (base <= Rational(2)) throw input_error("growth-rate bounds need base > 2");
  if (log_base < 2) throw input_error("log base must be at least 2");
  const mpz_class q = base.den();
  const mpz_class& d = claimed_denominator;
  const mpz_class logb(static_cast<unsigned long>(log_base));

  auto pow_z = [](const mpz_class& b, unsigned long e) {
    mpz_class out;
    mpz_pow_ui(out.get_mpz_t(), b.get_mpz_t(), e);
    return out;
  };

  unsigned long long prev = 0;
  for (std::size_t k = 0;; ++k) {
    auto pos = one_positions(k);
    if (!pos) return std::nullopt;
    if (k > 0 && *pos <= prev) throw input_error("1-positions must be strictly increasing");
    if (k == 0) {
      // First 1 within log d positions: B^pos <= d.
      if (pow_z(logb, *pos) > d) return GrowthRateViolation{0, 0, *pos};
    } else {
      // Next 1 within prev*(log q + 1) + log d: B^pos <= (B*q)^prev * d.
      if (pow_z(logb, *pos) > pow_z(logb * q, static_cast<unsigned long>(prev)) * d)
        return GrowthRateViolation{k, prev, *pos};
    }
    if (*pos > horizon) return std::nullopt;
    prev = *pos;
  }
}

}  // namespace tds
