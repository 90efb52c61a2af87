#include "tds/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tds/regex.hpp"

namespace tds {

WeightAlphabet::WeightAlphabet(std::vector<std::pair<Letter, Rational>> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw input_error("alphabet must have at least one letter");
  std::set<Letter> seen;
  for (const auto& [l, w] : entries_) {
    if (l.empty()) throw input_error("empty letter");
    if (!seen.insert(l).second) throw input_error("duplicate letter '" + l + "'");
  }
}

bool WeightAlphabet::has(const Letter& l) const {
  return std::any_of(entries_.begin(), entries_.end(),
                     [&](const auto& e) { return e.first == l; });
}

const Rational& WeightAlphabet::weight_of(const Letter& l) const {
  for (const auto& [letter, w] : entries_)
    if (letter == l) return w;
  throw input_error("letter '" + l + "' is not in the alphabet");
}

std::vector<std::size_t> WeightAlphabet::order_by_weight() const {
  std::vector<std::size_t> order(entries_.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return entries_[a].second < entries_[b].second;
  });
  return order;
}

const Rational& WeightAlphabet::min_weight() const { return entries_[order_by_weight().front()].second; }
const Rational& WeightAlphabet::max_weight() const { return entries_[order_by_weight().back()].second; }

std::vector<Letter> WeightAlphabet::letters() const {
  std::vector<Letter> out;
  out.reserve(entries_.size());
  for (const auto& [l, w] : entries_) out.push_back(l);
  return out;
}

WeightMap WeightAlphabet::to_map() const {
  WeightMap m;
  for (const auto& [l, w] : entries_) m.emplace(l, w);
  return m;
}

long Constraint::size_measure() const {
  if (explicit_buchi) return std::max<long>(1, explicit_buchi->state_count);
  if (explicit_nfa) return std::max<long>(1, explicit_nfa->state_count);
  if (finite_regex) return std::max<long>(1, static_cast<long>(finite_regex->size()));
  long total = 0;
  for (const auto& [u, v] : omega_pairs) total += static_cast<long>(u.size() + v.size());
  return std::max<long>(1, total);
}

Rational NormalFormInstance::initial_gap() const {
  Rational t = base.target;
  return base.start_exponent == 0 ? t * base.lambda.value() : t;
}

NormalizeResult normalize(const GtdsInstance& instance) {
  // M: least common denominator of the weights.
  mpz_class m_lcm = 1;
  for (const auto& [l, w] : instance.alphabet.entries())
    mpz_lcm(m_lcm.get_mpz_t(), m_lcm.get_mpz_t(), w.den().get_mpz_t());
  const Rational scale_m(m_lcm);

  Rational min_w = instance.alphabet.min_weight();
  const Rational shift = min_w * scale_m;  // a1 * M, an integer

  // Value of the constant least-weight word under the instance's summation
  // convention; the shifted target differs from the scaled one by exactly it.
  const Rational geo = instance.start_exponent == 0
                           ? instance.lambda.one_minus().reciprocal()
                           : instance.lambda.value() / instance.lambda.one_minus();

  std::vector<std::pair<Letter, Rational>> new_entries;
  std::vector<mpz_class> digits;
  for (const auto& [l, w] : instance.alphabet.entries()) {
    Rational nw = w * scale_m - shift;
    new_entries.emplace_back(l, nw);
    digits.push_back(nw.num());  // nw is a nonnegative integer by construction
  }

  NormalFormInstance nf{
      GtdsInstance{instance.kind,
                   instance.lambda,
                   instance.target * scale_m - shift * geo,
                   WeightAlphabet(std::move(new_entries)),
                   instance.constraint,
                   instance.mode,
                   instance.start_exponent},
      0, 0, 0, 0, std::move(digits), Rational(0), 0};
  nf.c = nf.base.target.num();
  nf.d = nf.base.target.den();
  nf.p = instance.lambda.p();
  nf.q = instance.lambda.q();
  nf.max_digit = *std::max_element(nf.digits.begin(), nf.digits.end());
  nf.bound = instance.lambda.value() * Rational(nf.max_digit) / instance.lambda.one_minus();

  AffineMap map{scale_m.reciprocal(), min_w * geo};
  return NormalizeResult{std::move(nf), map};
}

Tds01Reduction reduce_tds_to_tds01(const DiscountFactor& lambda, const Rational& t,
                                   const Rational& a, const Rational& b) {
  Tds01Reduction out;
  if (a == b) {
    out.degenerate = true;
    out.degenerate_solvable = (t == a / lambda.one_minus());
    return out;
  }
  const Rational lam = lambda.value();
  out.target = lam * (t - lam * t - a) / (lambda.one_minus() * (b - a));
  return out;
}

LiftResult lift_finite_to_infinite(const GtdsInstance& instance) {
  if (instance.mode != Mode::Finite) throw input_error("lift expects a finite-mode instance");
  if (instance.start_exponent != 0)
    throw input_error("finite-word instances sum from exponent 0");

  // Designated zero letter: an existing weight-0 letter, else a fresh one.
  std::vector<std::pair<Letter, Rational>> entries = instance.alphabet.entries();
  Letter zero_letter;
  bool fresh = true;
  for (const auto& [l, w] : entries)
    if (w.is_zero()) { zero_letter = l; fresh = false; break; }
  if (fresh) {
    zero_letter = "_z";
    while (instance.alphabet.has(zero_letter)) zero_letter += "_";
    entries.emplace_back(zero_letter, Rational(0));
  }
  WeightAlphabet lifted_alphabet(entries);
  LetterIndex letters(lifted_alphabet.letters());

  // Compile the finite constraint e over the lifted alphabet (a fresh zero
  // letter gets no edges, so e cannot use it).
  Nfa e;
  if (!instance.constraint.has_value()) {
    // All words over the original letters; a fresh zero letter is excluded.
    e.state_count = 1;
    e.initial = {0};
    e.accepting = {true};
    e.edges.resize(1);
    for (std::size_t i = 0; i < letters.size(); ++i)
      if (!(fresh && letters.letters[i] == zero_letter))
        e.edges[0].push_back({static_cast<int>(i), 0});
  } else if (instance.constraint->explicit_nfa) {
    e = *instance.constraint->explicit_nfa;
  } else if (instance.constraint->finite_regex) {
    e = compile_regex(*instance.constraint->finite_regex, letters);
  } else {
    throw input_error("finite-mode instance carries an omega constraint");
  }

  Buchi lifted_buchi = append_letter_omega(e, letters.index_of(zero_letter));

  Constraint lifted_constraint;
  lifted_constraint.explicit_buchi = lifted_buchi;
  lifted_constraint.only_ultimately_periodic = true;

  GtdsInstance lifted{instance.kind,          instance.lambda, instance.target,
                      lifted_alphabet,        lifted_constraint, Mode::Infinite,
                      instance.start_exponent};
  return LiftResult{std::move(lifted), zero_letter, std::move(e)};
}

bool full_coverage(const NormalFormInstance& instance) {
  std::vector<mpz_class> sorted = instance.digits;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
    if (Rational(mpz_class(sorted[i + 1] - sorted[i])) > instance.bound) return false;
  return true;
}

}  // namespace tds
