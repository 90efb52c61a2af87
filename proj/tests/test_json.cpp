#include <doctest.h>

#include "tds/json_io.hpp"
#include "tds/solver.hpp"

using namespace tds;

TEST_CASE("instance parsing: the worked constrained instance") {
  const json j = json::parse(R"({
    "kind": "cgtds",
    "lambda": "2/3",
    "target": "12/5",
    "weights": [{"letter":"a","weight":"0"},{"letter":"b","weight":"1"},{"letter":"c","weight":"2"}],
    "constraint": {"omega_pairs": [{"prefix": ".*", "period": ".a"}]}
  })");
  const GtdsInstance inst = parse_instance(j);
  CHECK(inst.kind == "cgtds");
  CHECK(inst.lambda.value() == Rational(2, 3));
  CHECK(inst.target == Rational(12, 5));
  CHECK(inst.alphabet.size() == 3);
  CHECK(inst.start_exponent == 0);
  CHECK(inst.mode == Mode::Infinite);
  REQUIRE(inst.constraint.has_value());
  CHECK(inst.constraint->omega_pairs.size() == 1);
}

TEST_CASE("instance parsing defaults and validation") {
  SUBCASE("tds01 defaults") {
    const GtdsInstance inst = parse_instance(json::parse(
        R"({"kind":"tds01","lambda":"2/5","target":"10/21"})"));
    CHECK(inst.start_exponent == 1);
    CHECK(inst.alphabet.size() == 2);
    CHECK(inst.alphabet.weight_of("0") == Rational(0));
    CHECK(inst.alphabet.weight_of("1") == Rational(1));
  }
  SUBCASE("bad kind") {
    CHECK_THROWS_AS(parse_instance(json::parse(R"({"kind":"xxx","lambda":"1/2","target":"1"})")),
                    input_error);
  }
  SUBCASE("tds needs exactly two weights") {
    CHECK_THROWS_AS(parse_instance(json::parse(
                        R"({"kind":"tds","lambda":"1/2","target":"1",
                            "weights":[{"letter":"a","weight":"0"}]})")),
                    input_error);
  }
  SUBCASE("constraint required for constrained kinds") {
    CHECK_THROWS_AS(parse_instance(json::parse(
                        R"({"kind":"ctds","lambda":"1/2","target":"1",
                            "weights":[{"letter":"a","weight":"0"},{"letter":"b","weight":"1"}]})")),
                    input_error);
  }
  SUBCASE("constraint rejected for unconstrained kinds") {
    CHECK_THROWS_AS(parse_instance(json::parse(
                        R"({"kind":"gtds","lambda":"1/2","target":"1",
                            "weights":[{"letter":"a","weight":"0"}],
                            "constraint":"(a)^w"})")),
                    input_error);
  }
  SUBCASE("string constraints") {
    const GtdsInstance inst = parse_instance(json::parse(
        R"({"kind":"ctds","lambda":"2/5","target":"10/21","start_exponent":1,
            "weights":[{"letter":"0","weight":"0"},{"letter":"1","weight":"1"}],
            "constraint":"1(0+1)^w"})"));
    REQUIRE(inst.constraint.has_value());
    CHECK(inst.constraint->omega_pairs ==
          std::vector<std::pair<std::string, std::string>>{{"1", "0+1"}});
  }
  SUBCASE("finite instances take plain regexes") {
    const GtdsInstance inst = parse_instance(json::parse(
        R"({"kind":"cgtds_f","lambda":"1/2","target":"5/4",
            "weights":[{"letter":"0","weight":"0"},{"letter":"1","weight":"1"}],
            "constraint":".*"})"));
    CHECK(inst.mode == Mode::Finite);
    CHECK(inst.constraint->finite_regex == ".*");
  }
  SUBCASE("explicit buchi constraint") {
    const GtdsInstance inst = parse_instance(json::parse(R"({
      "kind":"ctds","lambda":"2/5","target":"10/21","start_exponent":1,
      "weights":[{"letter":"0","weight":"0"},{"letter":"1","weight":"1"}],
      "constraint":{"buchi":{"states":["s"],"initial":"s","accepting":["s"],
                    "transitions":[{"from":"s","letter":"0","to":"s"},
                                   {"from":"s","letter":"1","to":"s"}]}}})"));
    REQUIRE(inst.constraint->explicit_buchi.has_value());
    CHECK(inst.constraint->explicit_buchi->state_count == 1);
  }
}

TEST_CASE("dsa json round trip") {
  const json j = json::parse(R"({
    "lambda": "1/2", "mode": "finite", "functional": true,
    "states": ["q"], "initial": "q", "accepting": ["q"],
    "transitions": [{"from":"q","letter":"a","to":"q","weight":"0"},
                    {"from":"q","letter":"b","to":"q","weight":"1"}]
  })");
  const Dsa a = parse_dsa(j);
  CHECK(a.state_count() == 1);
  CHECK(a.alphabet == std::vector<Letter>{"a", "b"});
  CHECK(a.functional_declared);
  const Dsa b = parse_dsa(dsa_to_json(a));
  CHECK(b.state_count() == a.state_count());
  CHECK(b.alphabet == a.alphabet);
  CHECK(b.edges.size() == a.edges.size());
  CHECK(b.lambda == a.lambda);
}

TEST_CASE("verdict reports round-trip their verdicts and certificates") {
  const GtdsInstance inst = parse_instance(json::parse(R"({
    "kind": "cgtds", "lambda": "2/3", "target": "12/5",
    "weights": [{"letter":"a","weight":"0"},{"letter":"b","weight":"1"},{"letter":"c","weight":"2"}],
    "constraint": {"omega_pairs": [{"prefix": ".*", "period": ".a"}]}})"));
  const Verdict v = solve_instance(inst);
  REQUIRE(v.yes());
  const json rep = verdict_to_json(v, true);
  const auto [answer, cert] = parse_report(rep);
  CHECK(answer == Answer::Yes);
  REQUIRE(cert.has_value());
  CHECK(same_omega_word(*cert, *v.certificate));
  CHECK(rep["exit_code"] == 0);
  CHECK(rep["certificate_value"] == "12/5");

  // No-side report with a trace.
  const Verdict no = solve_instance(parse_instance(
      json::parse(R"({"kind":"tds01","lambda":"1/3","target":"3/4"})")));
  const json nrep = verdict_to_json(no, true);
  CHECK(parse_report(nrep).first == Answer::No);
  CHECK(nrep["exit_code"] == 1);
  CHECK(nrep["certificate"].is_null());

  const Verdict unk = solve_instance(
      parse_instance(json::parse(R"({"kind":"tds01","lambda":"2/5","target":"1/5"})")),
      Budget{.steps = 8, .states = 0});
  CHECK(verdict_to_json(unk, false)["exit_code"] == 2);
}

TEST_CASE("pam serialization carries bounds and coefficients as strings") {
  const auto f = *build_pam_from_tds01(DiscountFactor(Rational(1, 3)), Rational(1, 2));
  const json j = pam_to_json(f);
  REQUIRE(j["pieces"].size() == 6);
  CHECK(j["pieces"][0]["slope"] == "3");
  CHECK(j["pieces"][0]["lo"].is_null());
  CHECK(j["pieces"][2]["slope"] == "6");
  CHECK(j["pieces"][3]["lo"] == "1");
  CHECK(j["pieces"][5]["hi"].is_null());
}

TEST_CASE("solve_instance dispatches the two-weight reduction") {
  // TDS with weights {3, 5}: letters map onto 0/1.
  const GtdsInstance inst = parse_instance(json::parse(R"({
    "kind": "tds", "lambda": "1/3", "target": "9/2",
    "weights": [{"letter":"x","weight":"3"},{"letter":"y","weight":"5"}]})"));
  // Constant x word: 3/(1 - 1/3) = 9/2.
  const Verdict v = solve_instance(inst);
  REQUIRE(v.yes());
  REQUIRE(v.certificate.has_value());
  CHECK(lasso_value(*v.certificate, inst.alphabet.to_map(), inst.lambda, 0) == Rational(9, 2));

  // Degenerate equal weights.
  const GtdsInstance degen = parse_instance(json::parse(R"({
    "kind": "tds", "lambda": "1/2", "target": "2",
    "weights": [{"letter":"x","weight":"1"},{"letter":"y","weight":"1"}]})"));
  const Verdict dv = solve_instance(degen);
  REQUIRE(dv.yes());
  CHECK(dv.reason == ReasonKind::DegenerateAlphabet);
  CHECK(same_omega_word(*dv.certificate, LassoWord{{}, {"x"}}));
  const GtdsInstance degen_no = parse_instance(json::parse(R"({
    "kind": "tds", "lambda": "1/2", "target": "3",
    "weights": [{"letter":"x","weight":"1"},{"letter":"y","weight":"1"}]})"));
  CHECK(solve_instance(degen_no).no());
}
