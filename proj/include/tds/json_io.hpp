#pragma once

#include <optional>
#include <string>
#include <utility>

#include <json.hpp>

#include "tds/dsa.hpp"
#include "tds/instance.hpp"
#include "tds/pam.hpp"
#include "tds/verdict.hpp"

namespace tds {

using nlohmann::json;

/// Instance schema:
/// { "kind": "tds"|"tds01"|"gtds"|"ctds"|"cgtds"|"tds_f"|"cgtds_f",
///   "lambda": "Q/P", "target": "c/d",
///   "weights": [{"letter": "a", "weight": "0"}, ...],
///   "constraint": <constraint>, "start_exponent": 0|1 }
GtdsInstance parse_instance(const json& j);
GtdsInstance load_instance(const std::string& path);
json instance_echo(const GtdsInstance& instance);

/// Constraint forms: {"omega_pairs": [{"prefix": "...", "period": "..."}]},
/// {"buchi": {...}}, {"regex": "..."} (finite mode), or a bare string:
/// "U(V)^w" for omega, plain regex for finite mode.
Constraint parse_constraint(const json& j, const WeightAlphabet& alphabet, Mode mode);

/// DSA schema:
/// { "lambda": "Q/P", "mode": "finite"|"infinite", "functional": bool,
///   "states": [...], "initial": "q" | ["q", ...], "accepting": [...],
///   "transitions": [{"from": "q", "letter": "a", "to": "p", "weight": "1/2"}] }
Dsa parse_dsa(const json& j);
Dsa load_dsa(const std::string& path);
json dsa_to_json(const Dsa& a);

json pam_to_json(const Pam& f);

json lasso_to_json(const LassoWord& w);
LassoWord lasso_from_json(const json& j);

/// Machine-readable run report; verdicts and certificates round-trip.
json verdict_to_json(const Verdict& v, bool include_trace);
std::pair<Answer, std::optional<LassoWord>> parse_report(const json& j);

int exit_code_of(Answer a);

}  // namespace tds
