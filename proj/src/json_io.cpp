#include "tds/json_io.hpp"

#include <fstream>
#include <set>

#include "tds/regex.hpp"

namespace tds {

namespace {

const json& require(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw input_error(std::string("missing field '") + key + "'");
  return *it;
}

std::string str_field(const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) throw input_error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Buchi parse_buchi(const json& j, const LetterIndex& letters) {
  Buchi b;
  std::vector<std::string> names = require(j, "states").get<std::vector<std::string>>();
  b.state_count = static_cast<int>(names.size());
  auto state_of = [&](const std::string& n) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return static_cast<int>(i);
    throw input_error("unknown automaton state '" + n + "'");
  };
  const json& init = require(j, "initial");
  if (init.is_string())
    b.initial.push_back(state_of(init.get<std::string>()));
  else
    for (const auto& n : init) b.initial.push_back(state_of(n.get<std::string>()));
  b.accepting.assign(b.state_count, false);
  for (const auto& n : require(j, "accepting")) b.accepting[state_of(n.get<std::string>())] = true;
  b.edges.resize(b.state_count);
  for (const auto& t : require(j, "transitions"))
    b.edges[state_of(str_field(t, "from"))].push_back(
        {letters.index_of(str_field(t, "letter")), state_of(str_field(t, "to"))});
  return b;
}

}  // namespace

Constraint parse_constraint(const json& j, const WeightAlphabet& alphabet, Mode mode) {
  Constraint c;
  const LetterIndex letters(alphabet.letters());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (mode == Mode::Infinite) {
      c.omega_pairs.push_back(split_omega_expression(s));
      compile_omega_pairs(c.omega_pairs, letters);  // validate eagerly
    } else {
      c.finite_regex = s;
      compile_regex(s, letters);
    }
    return c;
  }
  if (j.contains("omega_pairs")) {
    if (mode == Mode::Finite) throw input_error("omega constraint on a finite-word instance");
    for (const auto& p : j["omega_pairs"])
      c.omega_pairs.emplace_back(str_field(p, "prefix"), str_field(p, "period"));
    compile_omega_pairs(c.omega_pairs, letters);
    return c;
  }
  if (j.contains("buchi")) {
    if (mode == Mode::Finite) throw input_error("omega constraint on a finite-word instance");
    c.explicit_buchi = parse_buchi(j["buchi"], letters);
    return c;
  }
  if (j.contains("regex")) {
    if (mode == Mode::Infinite) throw input_error("finite regex on an infinite-word instance");
    c.finite_regex = j["regex"].get<std::string>();
    compile_regex(*c.finite_regex, letters);
    return c;
  }
  if (j.contains("nfa")) {
    if (mode == Mode::Infinite) throw input_error("finite constraint on an infinite-word instance");
    Buchi b = parse_buchi(j["nfa"], letters);
    Nfa n;
    n.state_count = b.state_count;
    n.initial = b.initial;
    n.accepting = b.accepting;
    n.edges = b.edges;
    c.explicit_nfa = n;
    return c;
  }
  throw input_error("constraint must be a string, omega_pairs, buchi, regex, or nfa object");
}

GtdsInstance parse_instance(const json& j) {
  const std::string kind = str_field(j, "kind");
  const std::set<std::string> kinds{"tds", "tds01", "gtds", "ctds", "cgtds", "tds_f", "cgtds_f"};
  if (!kinds.count(kind)) throw input_error("unknown instance kind '" + kind + "'");
  const bool finite = kind == "tds_f" || kind == "cgtds_f";
  const Mode mode = finite ? Mode::Finite : Mode::Infinite;

  const DiscountFactor lambda = DiscountFactor::parse(str_field(j, "lambda"));
  const Rational target = Rational::parse(str_field(j, "target"));

  std::vector<std::pair<Letter, Rational>> entries;
  if (j.contains("weights")) {
    for (const auto& w : j["weights"])
      entries.emplace_back(str_field(w, "letter"), Rational::parse(str_field(w, "weight")));
  } else if (kind == "tds01") {
    entries = {{"0", Rational(0)}, {"1", Rational(1)}};
  } else {
    throw input_error("missing field 'weights'");
  }
  WeightAlphabet alphabet(entries);

  if (kind == "tds01") {
    std::set<Rational> ws{alphabet.min_weight(), alphabet.max_weight()};
    if (alphabet.size() != 2 || !ws.count(Rational(0)) || !ws.count(Rational(1)))
      throw input_error("tds01 weights must be exactly 0 and 1");
  }
  if ((kind == "tds" || kind == "ctds" || kind == "tds_f") && alphabet.size() != 2)
    throw input_error(kind + " takes exactly two weights");

  int start_exponent = kind == "tds01" ? 1 : 0;
  if (j.contains("start_exponent")) {
    start_exponent = j["start_exponent"].get<int>();
    if (start_exponent != 0 && start_exponent != 1)
      throw input_error("start_exponent must be 0 or 1");
  }
  if (finite && start_exponent != 0)
    throw input_error("finite-word instances sum from exponent 0");

  std::optional<Constraint> constraint;
  if (j.contains("constraint") && !j["constraint"].is_null())
    constraint = parse_constraint(j["constraint"], alphabet, mode);
  const bool needs = kind == "ctds" || kind == "cgtds";
  if (needs && !constraint) throw input_error(kind + " needs a constraint");
  const bool allows = needs || kind == "cgtds_f";
  if (constraint && !allows) throw input_error(kind + " does not take a constraint");

  return GtdsInstance{kind, lambda, target, std::move(alphabet), std::move(constraint),
                      mode, start_exponent};
}

GtdsInstance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  json j = json::parse(in);  // parse errors carry byte positions
  return parse_instance(j);
}

json instance_echo(const GtdsInstance& inst) {
  json weights = json::array();
  for (const auto& [l, w] : inst.alphabet.entries())
    weights.push_back({{"letter", l}, {"weight", w.str()}});
  json out{{"kind", inst.kind},
           {"lambda", inst.lambda.value().str()},
           {"target", inst.target.str()},
           {"weights", weights},
           {"start_exponent", inst.start_exponent}};
  if (inst.constraint) {
    if (!inst.constraint->omega_pairs.empty()) {
      json pairs = json::array();
      for (const auto& [u, v] : inst.constraint->omega_pairs)
        pairs.push_back({{"prefix", u}, {"period", v}});
      out["constraint"] = {{"omega_pairs", pairs}};
    } else if (inst.constraint->finite_regex) {
      out["constraint"] = {{"regex", *inst.constraint->finite_regex}};
    } else {
      out["constraint"] = "<automaton>";
    }
  }
  return out;
}

Dsa parse_dsa(const json& j) {
  Dsa a;
  a.lambda = DiscountFactor::parse(str_field(j, "lambda"));
  const std::string mode = str_field(j, "mode");
  if (mode != "finite" && mode != "infinite") throw input_error("mode must be finite or infinite");
  a.mode = mode == "finite" ? Mode::Finite : Mode::Infinite;
  a.functional_declared = j.value("functional", false);
  a.state_names = require(j, "states").get<std::vector<std::string>>();
  auto state_of = [&](const std::string& n) {
    for (std::size_t i = 0; i < a.state_names.size(); ++i)
      if (a.state_names[i] == n) return static_cast<int>(i);
    throw input_error("unknown state '" + n + "'");
  };
  const json& init = require(j, "initial");
  if (init.is_string())
    a.initial.push_back(state_of(init.get<std::string>()));
  else
    for (const auto& n : init) a.initial.push_back(state_of(n.get<std::string>()));
  a.accepting.assign(a.state_names.size(), false);
  if (j.contains("accepting"))
    for (const auto& n : j["accepting"]) a.accepting[state_of(n.get<std::string>())] = true;
  std::vector<Letter> letters;
  auto letter_of = [&](const Letter& l) {
    for (std::size_t i = 0; i < letters.size(); ++i)
      if (letters[i] == l) return static_cast<int>(i);
    letters.push_back(l);
    return static_cast<int>(letters.size()) - 1;
  };
  for (const auto& t : require(j, "transitions"))
    a.edges.push_back({state_of(str_field(t, "from")), letter_of(str_field(t, "letter")),
                       state_of(str_field(t, "to")), Rational::parse(str_field(t, "weight"))});
  a.alphabet = letters;
  a.finalize();
  return a;
}

Dsa load_dsa(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open '" + path + "'");
  json j = json::parse(in);
  return parse_dsa(j);
}

json dsa_to_json(const Dsa& a) {
  json init = json::array();
  for (int s : a.initial) init.push_back(a.state_names[s]);
  json acc = json::array();
  for (int s = 0; s < a.state_count(); ++s)
    if (a.accepting[s]) acc.push_back(a.state_names[s]);
  json trans = json::array();
  for (const auto& e : a.edges)
    trans.push_back({{"from", a.state_names[e.from]},
                     {"letter", a.alphabet[e.letter]},
                     {"to", a.state_names[e.to]},
                     {"weight", e.weight.str()}});
  return json{{"lambda", a.lambda.value().str()},
              {"mode", a.mode == Mode::Finite ? "finite" : "infinite"},
              {"functional", a.functional_declared},
              {"states", a.state_names},
              {"initial", init},
              {"accepting", acc},
              {"transitions", trans}};
}

json pam_to_json(const Pam& f) {
  json pieces = json::array();
  for (const auto& p : f.pieces) {
    json piece{{"slope", p.slope.str()}, {"offset", p.offset.str()}};
    piece["lo"] = p.lo ? json(p.lo->str()) : json(nullptr);
    piece["hi"] = p.hi ? json(p.hi->str()) : json(nullptr);
    piece["lo_closed"] = p.lo_closed;
    piece["hi_closed"] = p.hi_closed;
    pieces.push_back(piece);
  }
  return json{{"pieces", pieces}};
}

json lasso_to_json(const LassoWord& w) {
  return json{{"prefix", w.prefix}, {"period", w.period}, {"text", w.str()}};
}

LassoWord lasso_from_json(const json& j) {
  LassoWord w;
  w.prefix = require(j, "prefix").get<std::vector<std::string>>();
  w.period = require(j, "period").get<std::vector<std::string>>();
  return w;
}

int exit_code_of(Answer a) {
  switch (a) {
    case Answer::Yes: return 0;
    case Answer::No: return 1;
    case Answer::Unknown: return 2;
  }
  return 4;
}

json verdict_to_json(const Verdict& v, bool include_trace) {
  json out;
  out["verdict"] = v.yes() ? "yes" : v.no() ? "no" : "unknown";
  out["reason"] = reason_name(v.reason);
  if (!v.detail.empty()) out["detail"] = v.detail;
  out["certificate"] = v.certificate ? lasso_to_json(*v.certificate) : json(nullptr);
  if (v.finite_witness) {
    out["witness"] = *v.finite_witness;
    out["witness_text"] = LassoWord{*v.finite_witness, {}}.str();
  }
  if (v.certificate_value) out["certificate_value"] = v.certificate_value->str();
  out["budget_consumed"] = v.budget_consumed;
  if (v.product_size > 0) out["product_size"] = v.product_size;
  if (v.witness_length_bound) out["witness_length_bound"] = v.witness_length_bound->str();
  if (v.tree_height) out["tree_height"] = *v.tree_height;
  out["exit_code"] = exit_code_of(v.answer);
  if (include_trace && v.trace) {
    json steps = json::array();
    const auto& tr = *v.trace;
    for (std::size_t n = 0; n < tr.gaps.size(); ++n) {
      json s{{"step", n}, {"gap", tr.gaps[n].num().get_str() + "/" + tr.gaps[n].den().get_str()}};
      if (n < tr.digits.size()) s["digit"] = tr.digits[n].get_str();
      steps.push_back(s);
    }
    out["trace"] = {{"steps", steps},
                    {"outcome", tr.outcome == ExplorationTrace::Outcome::TooBig ? "TooBig"
                                : tr.outcome == ExplorationTrace::Outcome::Repeat
                                    ? "Repeat"
                                    : "BudgetExhausted"}};
  }
  return out;
}

std::pair<Answer, std::optional<LassoWord>> parse_report(const json& j) {
  const std::string verdict = str_field(j, "verdict");
  Answer a = verdict == "yes" ? Answer::Yes : verdict == "no" ? Answer::No : Answer::Unknown;
  std::optional<LassoWord> cert;
  if (j.contains("certificate") && !j["certificate"].is_null())
    cert = lasso_from_json(j["certificate"]);
  else if (j.contains("witness"))
    cert = LassoWord{j["witness"].get<std::vector<std::string>>(), {}};
  return {a, cert};
}

}  // namespace tds
