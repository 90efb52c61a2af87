#include <doctest.h>

#include <random>

#include "tds/exploration.hpp"
#include "tds/instance.hpp"

using namespace tds;

namespace {

NormalFormInstance tds01_nf(const char* lambda, const char* target) {
  GtdsInstance inst{"tds01",
                    DiscountFactor::parse(lambda),
                    Rational::parse(target),
                    WeightAlphabet({{"0", Rational(0)}, {"1", Rational(1)}}),
                    std::nullopt,
                    Mode::Infinite,
                    1};
  return normalize(inst).instance;
}

const std::vector<mpz_class> kZeroOne{0, 1};
const std::vector<mpz_class> kZeroOneTwo{0, 1, 2};

}  // namespace

TEST_CASE("gap steps match the worked graph edges") {
  const DiscountFactor lam23(Rational(2, 3));
  CHECK(gap_step(Rational(8, 5), Rational(0), lam23) == Rational(12, 5));
  CHECK(gap_step(Rational(12, 5), Rational(2), lam23) == Rational(8, 5));
  CHECK(gap_step(Rational(0), Rational(0), lam23) == Rational(0));
}

TEST_CASE("greedy digit choices") {
  const DiscountFactor half(Rational(1, 2));
  CHECK(greedy_digit(Rational(5, 8), half, kZeroOne) == 1);
  CHECK(greedy_digit(Rational(1, 8), half, kZeroOne) == 0);
  const DiscountFactor lam23(Rational(2, 3));  // base 3/2
  CHECK(greedy_digit(Rational(8, 5), lam23, kZeroOneTwo) == 2);
  CHECK_THROWS(greedy_digit(Rational(-1, 2), half, kZeroOne));
}

TEST_CASE("lazy digit choices") {
  const DiscountFactor lam23(Rational(2, 3));
  CHECK(lazy_digit(Rational(8, 5), lam23, kZeroOneTwo, Rational(4)) == 0);
  CHECK(lazy_digit(Rational(3), lam23, kZeroOneTwo, Rational(4)) == 1);
  CHECK(lazy_digit(Rational(0), lam23, kZeroOneTwo, Rational(4)) == 0);
  CHECK_THROWS(lazy_digit(Rational(100), lam23, kZeroOneTwo, Rational(4)));
}

TEST_CASE("eligible digit sets use a closed upper bound") {
  const DiscountFactor lam23(Rational(2, 3));
  CHECK(eligible_digits(Rational(8, 5), lam23, kZeroOneTwo, Rational(4)) ==
        std::vector<mpz_class>{0, 1, 2});
  CHECK(eligible_digits(Rational(2, 5), lam23, kZeroOneTwo, Rational(4)) ==
        std::vector<mpz_class>{0});
  CHECK(eligible_digits(Rational(5), lam23, kZeroOneTwo, Rational(4)).empty());
  // The all-max tail attains the bound exactly: at g = bound the max digit
  // stays eligible because the comparison is closed.
  CHECK(eligible_digits(Rational(4), lam23, kZeroOneTwo, Rational(4)) ==
        std::vector<mpz_class>{2});
}

TEST_CASE("greedy dominates lazy on viable gaps") {
  std::mt19937_64 rng(3);
  const DiscountFactor lam23(Rational(2, 3));
  const Rational bound(4);
  for (int i = 0; i < 300; ++i) {
    const Rational g(static_cast<long>(rng() % 400), 100);  // [0, 4)
    if (eligible_digits(g, lam23, kZeroOneTwo, bound).empty()) continue;
    CHECK(greedy_digit(g, lam23, kZeroOneTwo) >= lazy_digit(g, lam23, kZeroOneTwo, bound));
  }
}

TEST_CASE("greedy exploration classifies the worked examples") {
  SUBCASE("repeating gaps at base 5/2") {
    const auto tr = greedy_explore(tds01_nf("2/5", "10/21"), 100);
    REQUIRE(tr.outcome == ExplorationTrace::Outcome::Repeat);
    CHECK(tr.repeat_from == 0);
    CHECK(tr.repeat_at == 2);
    CHECK(tr.digits == std::vector<mpz_class>{1, 0});
    CHECK(tr.gaps[1] == Rational(4, 21));
    CHECK(!tr.divisibility_broken);
  }
  SUBCASE("gap exceeding the bound immediately") {
    const auto tr = greedy_explore(tds01_nf("1/3", "3/4"), 100);
    CHECK(tr.outcome == ExplorationTrace::Outcome::TooBig);
    CHECK(tr.steps() == 0);
  }
  SUBCASE("fixed point at the bound") {
    const auto tr = greedy_explore(tds01_nf("1/3", "1/2"), 100);
    REQUIRE(tr.outcome == ExplorationTrace::Outcome::Repeat);
    CHECK(tr.digits == std::vector<mpz_class>{1});
  }
  SUBCASE("divisibility break flagged at once") {
    const auto small = greedy_explore(tds01_nf("2/5", "1/5"), 8);
    CHECK(small.divisibility_broken);
    CHECK(small.divisibility_broken_at == 0);
    CHECK(small.outcome == ExplorationTrace::Outcome::BudgetExhausted);
    // With enough budget the greedy chain eventually leaves the bound.
    const auto full = greedy_explore(tds01_nf("2/5", "1/5"), 50);
    CHECK(full.divisibility_broken);
    CHECK(full.outcome == ExplorationTrace::Outcome::TooBig);
    CHECK(full.steps() == 13);
  }
}

TEST_CASE("trace invariants hold and are re-verified") {
  const auto tr = greedy_explore(tds01_nf("2/5", "10/21"), 100);
  const DiscountFactor lam(Rational(2, 5));
  for (std::size_t n = 0; n + 1 < tr.gaps.size(); ++n)
    CHECK(tr.gaps[n + 1] == lam.base() * tr.gaps[n] - Rational(tr.digits[n]));
  CHECK_NOTHROW(tr.verify(lam));
  // Greedy maximality: the next-larger digit would drive the gap negative.
  for (std::size_t n = 0; n < tr.digits.size(); ++n) {
    const Rational bumped = lam.base() * tr.gaps[n] - Rational(mpz_class(tr.digits[n] + 1));
    CHECK(bumped.is_negative());
  }
}

TEST_CASE("0/1 decision: worked examples") {
  SUBCASE("at the representable supremum") {
    const Verdict v = decide_tds01(DiscountFactor(Rational(2, 3)), Rational(2));
    REQUIRE(v.yes());
    REQUIRE(v.certificate.has_value());
    CHECK(same_omega_word(*v.certificate, LassoWord{{}, {"1"}}));
  }
  SUBCASE("periodic witness within the denominator bound") {
    const Verdict v = decide_tds01(DiscountFactor(Rational(2, 5)), Rational(10, 21));
    REQUIRE(v.yes());
    REQUIRE(v.certificate.has_value());
    CHECK(same_omega_word(*v.certificate, LassoWord{{}, word_from_string("10")}));
    CHECK(v.certificate->prefix.size() + v.certificate->period.size() <= 21);
  }
  SUBCASE("refuted by the gap bound") {
    const Verdict v = decide_tds01(DiscountFactor(Rational(1, 3)), Rational(3, 4));
    CHECK(v.no());
    CHECK(v.reason == ReasonKind::GapExceededBound);
    REQUIRE(v.trace.has_value());
  }
  SUBCASE("no periodic representation: budget decides unknown vs no") {
    const Verdict small = decide_tds01(DiscountFactor(Rational(2, 5)), Rational(1, 5), 8);
    CHECK(small.unknown());
    CHECK(small.reason == ReasonKind::NoEvPeriodicExists);
    // The default budget lets the greedy chain run into the bound: total no.
    const Verdict full = decide_tds01(DiscountFactor(Rational(2, 5)), Rational(1, 5));
    CHECK(full.no());
    CHECK(full.reason == ReasonKind::GapExceededBound);
    CHECK(full.trace->divisibility_broken);
  }
  SUBCASE("budget below the classification bound is rejected") {
    CHECK_THROWS_AS(decide_tds01(DiscountFactor(Rational(2, 5)), Rational(10, 21), 5),
                    input_error);
  }
}

TEST_CASE("0/1 decision at large discount factors") {
  SUBCASE("binary expansion of 5/8") {
    const Verdict v = decide_tds01(DiscountFactor(Rational(1, 2)), Rational(5, 8));
    REQUIRE(v.yes());
    REQUIRE(v.certificate.has_value());
    CHECK(lasso_value(*v.certificate, {{"0", Rational(0)}, {"1", Rational(1)}},
                      DiscountFactor(Rational(1, 2)), 1) == Rational(5, 8));
  }
  SUBCASE("yes without a periodic certificate") {
    // 2/5 in base 3/2: in range, but no periodic 0/1 representation exists
    // (the first forced gap has an odd numerator).
    const Verdict v = decide_tds01(DiscountFactor(Rational(2, 3)), Rational(2, 5));
    CHECK(v.yes());
    CHECK(v.reason == ReasonKind::CoverageGuarantee);
    CHECK(!v.certificate.has_value());
  }
  SUBCASE("out of range") {
    const Verdict v = decide_tds01(DiscountFactor(Rational(2, 3)), Rational(3));
    CHECK(v.no());
    const Verdict neg = decide_tds01(DiscountFactor(Rational(2, 3)), Rational(-1, 2));
    CHECK(neg.no());
  }
}

TEST_CASE("0/1 decision is total at integral bases") {
  SUBCASE("1/8 in base 3") {
    const Verdict v = decide_tds01(DiscountFactor(Rational(1, 3)), Rational(1, 8));
    REQUIRE(v.yes());
    CHECK(same_omega_word(*v.certificate, LassoWord{{}, word_from_string("01")}));
  }
  SUBCASE("1/4 in base 3") {
    CHECK(decide_tds01(DiscountFactor(Rational(1, 3)), Rational(1, 4)).no());
  }
  SUBCASE("1 in base 2") {
    const Verdict v = decide_tds01(DiscountFactor(Rational(1, 2)), Rational(1));
    REQUIRE(v.yes());
    CHECK(same_omega_word(*v.certificate, LassoWord{{}, {"1"}}));
  }
}

TEST_CASE("growth-rate falsifier") {
  const Rational base52(5, 2);
  SUBCASE("ones at powers of three violate the bound") {
    auto positions = [](std::size_t k) -> std::optional<unsigned long long> {
      unsigned long long p = 1;
      for (std::size_t i = 0; i < k; ++i) p *= 3;
      return p;
    };
    const auto hit = growth_rate_falsifier(positions, base52, 1000000, 2000000);
    REQUIRE(hit.has_value());
    CHECK(hit->prev == 27);
    CHECK(hit->pos == 81);
    // Monotone in the claimed denominator: smaller d violates no later.
    const auto hit_small = growth_rate_falsifier(positions, base52, 7, 2000000);
    REQUIRE(hit_small.has_value());
    CHECK(hit_small->pos <= hit->pos);
  }
  SUBCASE("periodic position sets pass") {
    auto evens = [](std::size_t k) -> std::optional<unsigned long long> { return 2 * (k + 1); };
    CHECK(!growth_rate_falsifier(evens, base52, 7, 10000).has_value());
    auto fives = [](std::size_t k) -> std::optional<unsigned long long> { return 5 * k + 1; };
    CHECK(!growth_rate_falsifier(fives, base52, 1000, 10000).has_value());
  }
  SUBCASE("quadratic positions at an integral base") {
    auto squares = [](std::size_t k) -> std::optional<unsigned long long> {
      return (k + 1) * (k + 1);
    };
    const auto hit = growth_rate_falsifier(squares, Rational(3), 7, 10000);
    REQUIRE(hit.has_value());
    CHECK(hit->index == 1);
    CHECK(hit->prev == 1);
    CHECK(hit->pos == 4);
  }
  SUBCASE("first-one rule") {
    auto late = [](std::size_t k) -> std::optional<unsigned long long> { return 50 + k; };
    const auto hit = growth_rate_falsifier(late, base52, 1000, 10000);
    REQUIRE(hit.has_value());
    CHECK(hit->index == 0);
    CHECK(hit->pos == 50);  // 2^50 > 1000
  }
  SUBCASE("base must exceed two") {
    auto ones = [](std::size_t k) -> std::optional<unsigned long long> { return k + 1; };
    CHECK_THROWS_AS(growth_rate_falsifier(ones, Rational(3, 2), 7, 100), input_error);
  }
}
