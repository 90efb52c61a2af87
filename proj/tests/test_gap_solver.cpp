#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "tds/exploration.hpp"
#include "tds/gap_automaton.hpp"
#include "tds/regex.hpp"
#include "tds/solver.hpp"

using namespace tds;

namespace {

GtdsInstance worked_three_weight_instance(bool constrained) {
  std::optional<Constraint> c;
  if (constrained) {
    Constraint cc;
    cc.omega_pairs = {{".*", ".a"}};
    c = cc;
  }
  return GtdsInstance{constrained ? "cgtds" : "gtds",
                      DiscountFactor(Rational(2, 3)),
                      Rational(12, 5),
                      WeightAlphabet({{"a", Rational(0)}, {"b", Rational(1)}, {"c", Rational(2)}}),
                      c,
                      Mode::Infinite,
                      0};
}

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

GtdsInstance finite01(const char* lambda, const char* target, const char* regex) {
  Constraint c;
  c.finite_regex = regex;
  return GtdsInstance{"cgtds_f",
                      DiscountFactor::parse(lambda),
                      Rational::parse(target),
                      WeightAlphabet({{"0", Rational(0)}, {"1", Rational(1)}}),
                      c,
                      Mode::Finite,
                      0};
}

}  // namespace

TEST_CASE("gap automaton reproduces the worked graph bit-exactly") {
  const auto nf = normalize(worked_three_weight_instance(false)).instance;
  const GapAutomaton g = build_gap_automaton(nf);
  CHECK(g.denominator == 15);
  CHECK(g.x0 == 24);
  CHECK(g.bound == Rational(4));
  CHECK(g.max_numer == 60);
  REQUIRE(g.initial_in_range);

  // The twelve gap values of the exploration, classified exactly.
  std::map<Rational, GapAutomaton::ProbeClass> probed;
  for (const auto& p : g.probes) probed[p.gap] = p.cls;
  CHECK(probed.size() == 12);  // the initial gap 8/5 recurs as the cycle probe
  const auto viable = GapAutomaton::ProbeClass::Viable;
  const auto odd = GapAutomaton::ProbeClass::NonRecurrent;
  const auto out = GapAutomaton::ProbeClass::OutOfRange;
  CHECK(probed.at(Rational(12, 5)) == viable);
  CHECK(probed.at(Rational(18, 5)) == viable);
  CHECK(probed.at(Rational(2, 5)) == viable);
  CHECK(probed.at(Rational(8, 5)) == viable);  // the cycle edge back
  CHECK(probed.at(Rational(7, 5)) == odd);
  CHECK(probed.at(Rational(13, 5)) == odd);
  CHECK(probed.at(Rational(17, 5)) == odd);
  CHECK(probed.at(Rational(3, 5)) == odd);
  CHECK(probed.at(Rational(27, 5)) == out);
  CHECK(probed.at(Rational(22, 5)) == out);
  CHECK(probed.at(Rational(-2, 5)) == out);
  CHECK(probed.at(Rational(-7, 5)) == out);

  // Edge set before pruning: 36 reaches 54, 39, 24; 6 reaches only 9.
  auto targets_of = [&](long numer) {
    std::set<mpz_class> out_set;
    const int s = g.index.at(mpz_class(numer));
    for (auto [l, t] : g.edges[s]) out_set.insert(g.states[t]);
    return out_set;
  };
  CHECK(targets_of(24) == std::set<mpz_class>{36, 21, 6});
  CHECK(targets_of(36) == std::set<mpz_class>{54, 39, 24});
  CHECK(targets_of(6) == std::set<mpz_class>{9});
  CHECK(targets_of(54) == std::set<mpz_class>{51});

  // Dead-end removal leaves exactly the 8/5 <-> 12/5 cycle.
  std::set<mpz_class> live;
  for (std::size_t s = 0; s < g.states.size(); ++s)
    if (g.live[s]) live.insert(g.states[s]);
  CHECK(live == std::set<mpz_class>{24, 36});

  // Integer transition invariant: P*x - m*D*Q divisible by Q on every edge.
  for (std::size_t s = 0; s < g.states.size(); ++s)
    for (auto [l, t] : g.edges[s]) {
      const mpz_class lhs = nf.p * g.states[s] - nf.digits[l] * g.denominator * nf.q;
      CHECK(lhs % nf.q == 0);
    }
}

TEST_CASE("target outside the viable range short-circuits") {
  GtdsInstance inst = worked_three_weight_instance(false);
  inst.target = Rational(100);
  const auto nf = normalize(inst).instance;
  const GapAutomaton g = build_gap_automaton(nf);
  CHECK(!g.initial_in_range);
  const Verdict v = solve_cgtds(nf);
  CHECK(v.no());
  CHECK(v.reason == ReasonKind::GapExceededBound);
}

TEST_CASE("product emptiness on the worked constrained instance") {
  const auto nf = normalize(worked_three_weight_instance(true)).instance;
  const GapAutomaton g = build_gap_automaton(nf);
  const LetterIndex letters(nf.base.alphabet.letters());

  SUBCASE("compiled constraint") {
    const Buchi b = compile_omega_pairs({{".*", ".a"}}, letters);
    long size = 0;
    const auto cert = product_and_emptiness(g, b, letters, &size);
    REQUIRE(cert.has_value());
    CHECK(same_omega_word(*cert, LassoWord{{"a"}, {"c", "a"}}));
    CHECK(size > 0);
  }
  SUBCASE("explicit three-state constraint gives the same witness") {
    Buchi b;
    b.state_count = 3;
    b.initial = {0};
    b.accepting = {false, false, true};
    b.edges.resize(3);
    for (int l = 0; l < 3; ++l) {
      b.edges[0].push_back({l, 0});
      b.edges[0].push_back({l, 1});
      b.edges[1].push_back({l, 2});
    }
    b.edges[2].push_back({0, 1});
    const auto cert = product_and_emptiness(g, b, letters);
    REQUIRE(cert.has_value());
    CHECK(same_omega_word(*cert, LassoWord{{"a"}, {"c", "a"}}));
  }
  SUBCASE("unsatisfiable period over a pruned letter") {
    const Buchi b = compile_omega_pairs({{"", "b"}}, letters);
    CHECK(!product_and_emptiness(g, b, letters).has_value());
  }
}

TEST_CASE("worked constrained instance end to end") {
  const auto norm = normalize(worked_three_weight_instance(true));
  const Verdict v = solve_cgtds(norm.instance);
  REQUIRE(v.yes());
  REQUIRE(v.certificate.has_value());
  CHECK(same_omega_word(*v.certificate, LassoWord{{"a"}, {"c", "a"}}));
  CHECK(*v.certificate_value == Rational(12, 5));
  CHECK(v.product_size > 0);
  REQUIRE(v.witness_length_bound.has_value());
  CHECK(Rational(mpz_class(static_cast<long>(v.certificate->prefix.size() +
                                             v.certificate->period.size()))) <=
        *v.witness_length_bound);
}

TEST_CASE("multiple valid periodic witnesses: exactly one is emitted and verifies") {
  GtdsInstance inst{"gtds",
                    DiscountFactor(Rational(1, 2)),
                    Rational(2, 3),
                    WeightAlphabet({{"0", Rational(0)}, {"1", Rational(1)}, {"2", Rational(2)}}),
                    std::nullopt,
                    Mode::Infinite,
                    0};
  const Verdict v = solve_cgtds(normalize(inst).instance);
  REQUIRE(v.yes());
  REQUIRE(v.certificate.has_value());
  CHECK(lasso_value(*v.certificate, inst.alphabet.to_map(), inst.lambda, 0) == Rational(2, 3));
  // Both (01)^w and 0(02)^w-style words are valid; determinism pins one.
  const Verdict again = solve_cgtds(normalize(inst).instance);
  CHECK(same_omega_word(*v.certificate, *again.certificate));
}

TEST_CASE("solver refutes the out-of-bound 0/1 instance") {
  const Verdict v = solve_cgtds(tds01_nf("1/3", "3/4"));
  CHECK(v.no());
  CHECK(v.reason == ReasonKind::GapExceededBound);
}

TEST_CASE("unique-representation refutation inside the general solver") {
  // 1/4 at base 3 (exponent-1 convention): greedy dies, total no.
  const Verdict v = solve_cgtds(tds01_nf("1/3", "1/4"));
  CHECK(v.no());
  // 1/5 at base 5/2: the unique candidate breaks divisibility at once and
  // leaves the bound at step 13; small budgets stay open, larger refute.
  const Verdict u = solve_cgtds(tds01_nf("2/5", "1/5"), Budget{.steps = 8, .states = 0});
  CHECK(u.unknown());
  CHECK(u.reason == ReasonKind::NoEvPeriodicExists);
  const Verdict n = solve_cgtds(tds01_nf("2/5", "1/5"), Budget{.steps = 500, .states = 0});
  CHECK(n.no());
  CHECK(n.reason == ReasonKind::GapExceededBound);
}

TEST_CASE("constrained instance whose unique representation violates the constraint") {
  // 10/21 at base 5/2 expands uniquely to (10)^w; require a 0 first instead.
  GtdsInstance inst{"ctds",
                    DiscountFactor(Rational(2, 5)),
                    Rational(10, 21),
                    WeightAlphabet({{"0", Rational(0)}, {"1", Rational(1)}}),
                    std::nullopt,
                    Mode::Infinite,
                    1};
  Constraint c;
  c.omega_pairs = {{"0", "0+1"}};
  inst.constraint = c;
  const Verdict v = solve_cgtds(normalize(inst).instance);
  CHECK(v.no());
  CHECK(v.reason == ReasonKind::UniqueWitnessRejected);

  // A constraint the representation does satisfy is found.
  Constraint ok;
  ok.omega_pairs = {{"1", "0+1"}};
  inst.constraint = ok;
  const Verdict y = solve_cgtds(normalize(inst).instance);
  REQUIRE(y.yes());
  CHECK(same_omega_word(*y.certificate, LassoWord{{}, word_from_string("10")}));
}

TEST_CASE("integral-base decisions are total, constrained or not") {
  const Verdict yes = decide_integral_base(tds01_nf("1/3", "1/8"));
  REQUIRE(yes.yes());
  CHECK(same_omega_word(*yes.certificate, LassoWord{{}, word_from_string("01")}));
  CHECK(decide_integral_base(tds01_nf("1/3", "1/4")).no());
  const Verdict one = decide_integral_base(tds01_nf("1/2", "1"));
  REQUIRE(one.yes());
  CHECK(same_omega_word(*one.certificate, LassoWord{{}, {"1"}}));
}

TEST_CASE("finite-word solver: worked examples") {
  SUBCASE("value 5/4 over 0/1 weights") {
    const Verdict v = solve_cgtds_f(finite01("1/2", "5/4", ".*"));
    REQUIRE(v.yes());
    REQUIRE(v.finite_witness.has_value());
    CHECK(*v.finite_witness == word_from_string("101"));
    CHECK(*v.certificate_value == Rational(5, 4));
    REQUIRE(v.witness_length_bound.has_value());
    CHECK(Rational(mpz_class(static_cast<long>(v.finite_witness->size()))) <=
          *v.witness_length_bound);
  }
  SUBCASE("zero target: the empty word") {
    const Verdict v = solve_cgtds_f(finite01("1/2", "0", ".*"));
    REQUIRE(v.yes());
    CHECK(v.finite_witness->empty());
  }
  SUBCASE("unattained supremum") {
    const Verdict v = solve_cgtds_f(finite01("1/2", "2", ".*"));
    CHECK(v.no());
  }
  SUBCASE("constraint excludes the natural witness") {
    // Only words of 1s allowed: 5/4 needs a 0 in the middle.
    const Verdict v = solve_cgtds_f(finite01("1/2", "5/4", "1*"));
    CHECK(v.no());
    const Verdict y = solve_cgtds_f(finite01("1/2", "3/2", "1*"));
    REQUIRE(y.yes());
    CHECK(*y.finite_witness == word_from_string("11"));
  }
  SUBCASE("empty-word-only constraint") {
    CHECK(solve_cgtds_f(finite01("1/2", "0", "")).yes());
    CHECK(solve_cgtds_f(finite01("1/2", "1", "")).no());
  }
}

TEST_CASE("finite-word solver handles negative and fractional weights") {
  // Weights {-1/2, 1/2}: lift adds a fresh zero letter; the tail gap is
  // nonzero after the shift.
  GtdsInstance inst{"cgtds_f",
                    DiscountFactor(Rational(1, 2)),
                    Rational(0),
                    WeightAlphabet({{"m", Rational(-1, 2)}, {"p", Rational(1, 2)}}),
                    std::nullopt,
                    Mode::Finite,
                    0};
  Constraint c;
  c.finite_regex = "(m+p)(m+p)";
  inst.constraint = c;
  // Length-2 words: mm=-3/4, mp=-1/4, pm=1/4, pp=3/4; none is 0.
  CHECK(solve_cgtds_f(inst).no());
  inst.target = Rational(-1, 4);
  const Verdict v = solve_cgtds_f(inst);
  REQUIRE(v.yes());
  CHECK(*v.finite_witness == Word{"m", "p"});
}

TEST_CASE("refuter closes trees and recognizes cycles") {
  SUBCASE("immediate death") {
    const Verdict v = refute_gtds(tds01_nf("1/3", "3/4"));
    CHECK(v.no());
    CHECK(*v.tree_height == 1);
  }
  SUBCASE("viable cycle means a solution exists") {
    const Verdict v = refute_gtds(tds01_nf("1/3", "1/2"));
    CHECK(v.unknown());
    CHECK(v.reason == ReasonKind::GapRepetition);
  }
  SUBCASE("budget-bounded open case") {
    const Verdict v = refute_gtds(tds01_nf("2/5", "1/5"), Budget{.steps = 300, .states = 0});
    CHECK((v.no() || v.unknown()));
    if (v.unknown()) CHECK(v.reason == ReasonKind::BudgetExhausted);
  }
  SUBCASE("multi-weight tree with branching") {
    GtdsInstance inst{"gtds",
                      DiscountFactor(Rational(1, 3)),
                      Rational(10),
                      WeightAlphabet({{"0", Rational(0)}, {"1", Rational(1)}, {"2", Rational(2)}}),
                      std::nullopt,
                      Mode::Infinite,
                      0};
    const Verdict v = refute_gtds(normalize(inst).instance);
    CHECK(v.no());  // value range is [0, 3]
    CHECK(*v.tree_height >= 1);
  }
}

TEST_CASE("emptiness agrees with a naive simple-lasso oracle on small products") {
  std::mt19937_64 rng(61);
  for (int round = 0; round < 60; ++round) {
    // Random small 0/1 instance (both conventions) and a random constraint.
    const std::vector<const char*> lams{"1/2", "1/3", "2/5", "2/3"};
    const long den = 2 + static_cast<long>(rng() % 9);
    const long num = static_cast<long>(rng() % (den + 1));
    GtdsInstance inst{"tds01",
                      DiscountFactor::parse(lams[rng() % lams.size()]),
                      Rational(num, den),
                      WeightAlphabet({{"0", Rational(0)}, {"1", Rational(1)}}),
                      std::nullopt,
                      Mode::Infinite,
                      1};
    const auto nf = normalize(inst).instance;
    const GapAutomaton g = build_gap_automaton(nf);
    const LetterIndex letters(nf.base.alphabet.letters());
    const std::vector<std::pair<std::string, std::string>> pool{
        {"", "0+1"}, {"", "1"}, {".*", "10"}, {"0", "0+1"}, {"", "01"}};
    const auto& pick = pool[rng() % pool.size()];
    const Buchi b = compile_omega_pairs({pick}, letters);

    const auto cert = product_and_emptiness(g, b, letters);

    // Naive oracle: build the product adjacency and enumerate reachable
    // accepting states with a cycle back to themselves by plain DFS.
    struct Node { int gs, bs; };
    const int nb = b.state_count;
    auto enc = [nb](int gs, int bs) { return gs * nb + bs; };
    std::set<int> reach;
    std::vector<int> stack;
    if (g.initial_state() >= 0 && g.live[g.initial_state()])
      for (int bi : b.initial) {
        reach.insert(enc(g.initial_state(), bi));
        stack.push_back(enc(g.initial_state(), bi));
      }
    auto successors = [&](int node) {
      std::vector<int> out;
      const int gs = node / nb, bs = node % nb;
      for (auto [gl, gt] : g.edges[gs]) {
        if (!g.live[gt]) continue;
        for (auto [bl, bt] : b.edges[bs])
          if (gl == bl) out.push_back(enc(gt, bt));
      }
      return out;
    };
    while (!stack.empty()) {
      int node = stack.back();
      stack.pop_back();
      for (int nxt : successors(node))
        if (reach.insert(nxt).second) stack.push_back(nxt);
    }
    bool oracle_nonempty = false;
    for (int node : reach) {
      if (!b.accepting[node % nb]) continue;
      // DFS from node back to node.
      std::set<int> seen;
      std::vector<int> st{node};
      bool back = false;
      while (!st.empty() && !back) {
        int cur = st.back();
        st.pop_back();
        for (int nxt : successors(cur)) {
          if (nxt == node) { back = true; break; }
          if (seen.insert(nxt).second) st.push_back(nxt);
        }
      }
      if (back) { oracle_nonempty = true; break; }
    }
    CHECK(cert.has_value() == oracle_nonempty);
    if (cert) {
      CHECK(lasso_value(*cert, nf.base.alphabet.to_map(), nf.base.lambda, 1) == nf.base.target);
      CHECK(buchi_accepts_lasso(b, *cert, letters));
    }
  }
}
