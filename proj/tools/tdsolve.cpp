#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tds/cantor.hpp"
#include "tds/dsa.hpp"
#include "tds/exploration.hpp"
#include "tds/json_io.hpp"
#include "tds/pam.hpp"
#include "tds/solver.hpp"

namespace {

using tds::json;

struct OutputOptions {
  std::string format = "text";
  bool trace = false;
  bool certificate_only = false;
  bool timings = false;
};

void add_output_flags(CLI::App* cmd, OutputOptions& out) {
  cmd->add_option("--format", out.format, "Output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  cmd->add_flag("--trace", out.trace, "Include the digit/gap trace");
  cmd->add_flag("--certificate-only", out.certificate_only, "Print only the witness");
  cmd->add_flag("--timings", out.timings, "Include elapsed time in JSON output");
}

std::string verdict_word(tds::Answer a) {
  switch (a) {
    case tds::Answer::Yes: return "yes";
    case tds::Answer::No: return "no";
    case tds::Answer::Unknown: return "unknown";
  }
  return "?";
}

void print_trace_text(const tds::ExplorationTrace& tr, std::ostream& os) {
  for (std::size_t n = 0; n < tr.digits.size(); ++n)
    os << "step " << n << ": gap=" << tr.gaps[n].num().get_str() << "/"
       << tr.gaps[n].den().get_str() << " digit=" << tr.digits[n].get_str() << "\n";
  if (tr.gaps.size() > tr.digits.size()) {
    const auto& last = tr.gaps.back();
    os << "step " << tr.digits.size() << ": gap=" << last.num().get_str() << "/"
       << last.den().get_str() << "\n";
  }
  switch (tr.outcome) {
    case tds::ExplorationTrace::Outcome::TooBig: os << "outcome: TooBig\n"; break;
    case tds::ExplorationTrace::Outcome::Repeat:
      os << "outcome: Repeat (step " << tr.repeat_at << " revisits step " << tr.repeat_from
         << ")\n";
      break;
    case tds::ExplorationTrace::Outcome::BudgetExhausted: os << "outcome: BudgetExhausted\n"; break;
  }
}

/// One report, rendered identically for single runs and batch lines.
std::string render_report(const json& instance_echo, const tds::Verdict& v,
                          const OutputOptions& out, double elapsed_ms) {
  if (out.certificate_only) {
    if (v.certificate) return v.certificate->str();
    if (v.finite_witness) return tds::LassoWord{*v.finite_witness, {}}.str();
    return "";
  }
  if (out.format == "json") {
    json r = tds::verdict_to_json(v, out.trace);
    r["instance"] = instance_echo;
    if (out.timings) r["elapsed_ms"] = elapsed_ms;
    return r.dump();
  }
  std::ostringstream os;
  os << "verdict: " << verdict_word(v.answer) << " (" << tds::reason_name(v.reason) << ")\n";
  if (!v.detail.empty()) os << "detail: " << v.detail << "\n";
  if (v.certificate)
    os << "certificate: " << v.certificate->str() << " = "
       << (v.certificate_value ? v.certificate_value->str() : "?") << "\n";
  if (v.finite_witness)
    os << "witness: " << tds::LassoWord{*v.finite_witness, {}}.str() << " = "
       << (v.certificate_value ? v.certificate_value->str() : "?") << "\n";
  if (v.witness_length_bound) os << "witness length bound: " << v.witness_length_bound->str();
  if (v.product_size > 0) os << " (product size " << v.product_size << ")";
  if (v.witness_length_bound || v.product_size > 0) os << "\n";
  if (v.budget_consumed > 0) os << "budget consumed: " << v.budget_consumed << "\n";
  if (v.tree_height) os << "tree height: " << *v.tree_height << "\n";
  if (out.trace && v.trace) print_trace_text(*v.trace, os);
  os << "elapsed: " << elapsed_ms << " ms\n";
  std::string s = os.str();
  if (!s.empty() && s.back() == '\n') s.pop_back();
  return s;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
  }
};

int run_solve_one(const std::string& path, const tds::Budget& budget, const OutputOptions& out,
                  std::string* rendered) {
  const tds::GtdsInstance instance = tds::load_instance(path);
  Timer timer;
  const tds::Verdict v = tds::solve_instance(instance, budget);
  *rendered = render_report(tds::instance_echo(instance), v, out, timer.ms());
  return tds::exit_code_of(v.answer);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact decision procedures for target discounted sums, discounted-sum automata,\n"
               "piecewise affine map reachability, and middle-kth Cantor membership"};
  app.require_subcommand(1);

  tds::Budget budget;
  app.add_option("--budget-steps", budget.steps, "Exploration step budget (0 = theorem bound x4)")
      ->capture_default_str();
  app.add_option("--budget-states", budget.states, "Gap state-space cap (0 = default)")
      ->capture_default_str();

  OutputOptions out;

  // solve
  std::string solve_file;
  auto* solve = app.add_subcommand("solve", "Decide one instance file");
  solve->add_option("file", solve_file, "Instance JSON file")->required();
  add_output_flags(solve, out);

  // batch
  std::string batch_dir;
  auto* batch = app.add_subcommand("batch", "Decide every .json instance in a directory");
  batch->add_option("dir", batch_dir, "Directory of instance files")->required();
  add_output_flags(batch, out);

  // expand
  std::string ex_lambda, ex_target, ex_weights;
  std::size_t ex_steps = 30;
  int ex_start_exp = 1;
  auto* expand = app.add_subcommand("expand", "Print the greedy digit/gap trace");
  expand->add_option("--lambda", ex_lambda)->required();
  expand->add_option("--target", ex_target)->required();
  expand->add_option("--steps", ex_steps, "Maximum steps")->capture_default_str();
  expand->add_option("--weights", ex_weights, "Comma-separated natural digits (default 0,1)");
  expand->add_option("--start-exponent", ex_start_exp)->capture_default_str();

  // pam
  std::string pam_lambda, pam_target, pam_start;
  std::size_t pam_budget = 100000;
  bool pam_dump = false;
  auto* pam = app.add_subcommand("pam", "Iterate the expansion map; is 1 reachable?");
  pam->add_option("--lambda", pam_lambda)->required();
  pam->add_option("--target", pam_target)->required();
  pam->add_option("--start", pam_start, "Orbit start (default: the target)");
  pam->add_option("--budget", pam_budget)->capture_default_str();
  pam->add_flag("--dump-map", pam_dump, "Print the piece list as JSON");
  add_output_flags(pam, out);

  // cantor
  long cantor_k = 0;
  std::string cantor_t;
  auto* cantor = app.add_subcommand("cantor", "Middle-kth Cantor set membership");
  cantor->add_option("--k", cantor_k)->required();
  cantor->add_option("--t", cantor_t)->required();
  add_output_flags(cantor, out);

  // dsa
  auto* dsa = app.add_subcommand("dsa", "Discounted-sum automata decisions");
  dsa->require_subcommand(1);
  std::string dsa_file, dsa_file_b, dsa_target, dsa_lambda;
  bool dsa_strict = false;

  auto* dexact = dsa->add_subcommand("exact-value", "Is some word valued exactly t?");
  dexact->add_option("file", dsa_file)->required();
  dexact->add_option("--target", dsa_target)->required();
  add_output_flags(dexact, out);

  auto* duniv = dsa->add_subcommand("universality", "Are all word values below t?");
  duniv->add_option("file", dsa_file)->required();
  duniv->add_option("--target", dsa_target)->required();
  duniv->add_flag("--strict", dsa_strict, "Strict comparison (<)");
  add_output_flags(duniv, out);

  auto* dincl = dsa->add_subcommand("inclusion", "Is A(w) below B(w) on all common words?");
  dincl->add_option("fileA", dsa_file)->required();
  dincl->add_option("fileB", dsa_file_b)->required();
  dincl->add_flag("--strict", dsa_strict, "Strict comparison (<)");
  add_output_flags(dincl, out);

  auto* dgadget = dsa->add_subcommand("gadget", "Emit the two-run threshold automaton");
  dgadget->add_option("--lambda", dsa_lambda)->required();
  dgadget->add_option("--target", dsa_target)->required();

  auto* dsemi = dsa->add_subcommand("semi-universality", "Infinite-word universality semi-procedure");
  dsemi->add_option("file", dsa_file)->required();
  dsemi->add_option("--target", dsa_target)->required();
  dsemi->add_flag("--strict", dsa_strict, "Strict comparison (<)");
  add_output_flags(dsemi, out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      std::string rendered;
      const int code = run_solve_one(solve_file, budget, out, &rendered);
      if (!rendered.empty()) std::cout << rendered << "\n";
      return code;
    }

    if (batch->parsed()) {
      namespace fs = std::filesystem;
      std::vector<fs::path> files;
      for (const auto& entry : fs::directory_iterator(batch_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
          files.push_back(entry.path());
      std::sort(files.begin(), files.end());
      for (const auto& f : files) {
        std::string rendered;
        run_solve_one(f.string(), budget, out, &rendered);
        std::cout << f.filename().string() << "\t" << rendered << "\n";
      }
      return 0;
    }

    if (expand->parsed()) {
      std::vector<std::pair<tds::Letter, tds::Rational>> entries;
      if (ex_weights.empty()) {
        entries = {{"0", tds::Rational(0)}, {"1", tds::Rational(1)}};
      } else {
        std::istringstream ss(ex_weights);
        std::string item;
        while (std::getline(ss, item, ','))
          entries.emplace_back(item, tds::Rational::parse(item));
      }
      tds::GtdsInstance inst{"gtds",
                             tds::DiscountFactor::parse(ex_lambda),
                             tds::Rational::parse(ex_target),
                             tds::WeightAlphabet(entries),
                             std::nullopt,
                             tds::Mode::Infinite,
                             ex_start_exp};
      const auto nf = tds::normalize(inst).instance;
      const auto tr = tds::greedy_explore(nf, ex_steps);
      print_trace_text(tr, std::cout);
      return 0;
    }

    if (pam->parsed()) {
      const tds::DiscountFactor lambda = tds::DiscountFactor::parse(pam_lambda);
      const tds::Rational target = tds::Rational::parse(pam_target);
      auto map = tds::build_pam_from_tds01(lambda, target);
      if (!map) {
        std::cout << "target above lambda/(1-lambda): no solution, map not built\n";
        return 1;
      }
      if (pam_dump) std::cout << tds::pam_to_json(*map).dump(2) << "\n";
      const tds::Rational start = pam_start.empty() ? target : tds::Rational::parse(pam_start);
      const auto orbit = tds::pam_orbit(*map, start, tds::Rational(1), pam_budget);
      switch (orbit.status) {
        case tds::OrbitResult::Status::Reached:
          std::cout << "reached 1 at step " << orbit.steps << "\n";
          return 0;
        case tds::OrbitResult::Status::DivergedCertified:
          std::cout << "certified not to reach 1 (value " << orbit.cycle_point->str()
                    << " revisited at step " << orbit.steps << ")\n";
          return 1;
        case tds::OrbitResult::Status::Unknown:
          std::cout << "budget exhausted after " << orbit.steps << " steps\n";
          return 2;
      }
    }

    if (cantor->parsed()) {
      const auto v = tds::cantor_membership(cantor_k, tds::Rational::parse(cantor_t), budget.steps);
      if (out.format == "json") {
        std::cout << tds::verdict_to_json(v, out.trace).dump() << "\n";
      } else {
        std::cout << (v.yes() ? "member" : v.no() ? "not a member" : "unknown") << "\n";
        if (v.certificate)
          std::cout << "expansion: 0." << v.certificate->str() << "\n";
      }
      return tds::exit_code_of(v.answer);
    }

    if (dexact->parsed()) {
      const tds::Dsa a = tds::load_dsa(dsa_file);
      const auto v = tds::exact_value(a, tds::Rational::parse(dsa_target));
      if (out.format == "json") {
        std::cout << tds::verdict_to_json(v, out.trace).dump() << "\n";
      } else if (v.yes()) {
        std::cout << "yes: witness " << tds::LassoWord{*v.finite_witness, {}}.str() << "\n";
      } else {
        std::cout << "no word attains the value\n";
      }
      return tds::exit_code_of(v.answer);
    }

    if (duniv->parsed()) {
      const tds::Dsa a = tds::load_dsa(dsa_file);
      const auto r = tds::universality_finite(a, tds::Rational::parse(dsa_target), dsa_strict);
      if (out.format == "json") {
        json j{{"holds", r.holds}, {"vacuous", r.vacuous}, {"detail", r.detail}};
        if (r.counterexample) {
          j["counterexample"] = *r.counterexample;
          j["counterexample_value"] = r.counterexample_value->str();
        }
        std::cout << j.dump() << "\n";
      } else {
        std::cout << (r.holds ? "holds" : "fails") << ": " << r.detail << "\n";
        if (r.counterexample)
          std::cout << "counterexample: " << tds::LassoWord{*r.counterexample, {}}.str() << " = "
                    << r.counterexample_value->str() << "\n";
      }
      return r.holds ? 0 : 1;
    }

    if (dincl->parsed()) {
      const tds::Dsa a = tds::load_dsa(dsa_file);
      const tds::Dsa b = tds::load_dsa(dsa_file_b);
      const auto r = tds::inclusion_finite(a, b, dsa_strict);
      if (out.format == "json") {
        json j{{"holds", r.decision.holds}, {"detail", r.decision.detail}};
        if (r.decision.counterexample) j["counterexample"] = *r.decision.counterexample;
        if (r.only_in_a) j["only_in_first"] = *r.only_in_a;
        if (r.only_in_b) j["only_in_second"] = *r.only_in_b;
        std::cout << j.dump() << "\n";
      } else {
        std::cout << (r.decision.holds ? "holds" : "fails") << " on common words: "
                  << r.decision.detail << "\n";
        if (r.decision.counterexample)
          std::cout << "counterexample: " << tds::LassoWord{*r.decision.counterexample, {}}.str()
                    << "\n";
        if (r.only_in_a)
          std::cout << "domain mismatch: only the first accepts "
                    << tds::LassoWord{*r.only_in_a, {}}.str() << "\n";
        if (r.only_in_b)
          std::cout << "domain mismatch: only the second accepts "
                    << tds::LassoWord{*r.only_in_b, {}}.str() << "\n";
      }
      return r.decision.holds ? 0 : 1;
    }

    if (dgadget->parsed()) {
      const auto g = tds::tds_to_universality_gadget(tds::DiscountFactor::parse(dsa_lambda),
                                                     tds::Rational::parse(dsa_target));
      std::cout << tds::dsa_to_json(g).dump(2) << "\n";
      return 0;
    }

    if (dsemi->parsed()) {
      const tds::Dsa a = tds::load_dsa(dsa_file);
      const auto r =
          tds::semi_universality_infinite(a, tds::Rational::parse(dsa_target), dsa_strict, budget);
      if (out.format == "json") {
        json j{{"answer", verdict_word(r.answer)},
               {"detail", r.detail},
               {"tree_height", r.tree_height}};
        if (r.counterexample_prefix) j["counterexample_prefix"] = *r.counterexample_prefix;
        std::cout << j.dump() << "\n";
      } else {
        std::cout << verdict_word(r.answer) << ": " << r.detail << "\n";
        if (r.counterexample_prefix)
          std::cout << "counterexample prefix: "
                    << tds::LassoWord{*r.counterexample_prefix, {}}.str() << "\n";
      }
      return tds::exit_code_of(r.answer);
    }
  } catch (const tds::input_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const tds::json::parse_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
  return 4;
}
