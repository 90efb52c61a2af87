#include "tds/dsa.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>

#include "tds/exploration.hpp"

namespace tds {

void Dsa::finalize() {
  if (state_names.empty()) throw input_error("automaton needs at least one state");
  if (initial.empty()) throw input_error("automaton needs an initial state");
  if (accepting.size() != state_names.size()) accepting.resize(state_names.size(), false);
  std::set<Letter> seen;
  for (const auto& l : alphabet)
    if (!seen.insert(l).second) throw input_error("duplicate alphabet letter '" + l + "'");
  out_edges_.assign(state_names.size(), {});
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    if (e.from < 0 || e.from >= state_count() || e.to < 0 || e.to >= state_count() ||
        e.letter < 0 || e.letter >= static_cast<int>(alphabet.size()))
      throw input_error("transition out of range");
    out_edges_[e.from].push_back(static_cast<int>(i));
  }
  for (auto& v : out_edges_)
    std::sort(v.begin(), v.end(), [&](int x, int y) {
      return std::tie(edges[x].letter, edges[x].to) < std::tie(edges[y].letter, edges[y].to);
    });
}

std::optional<Rational> word_value(const Dsa& a, const Word& w) {
  if (a.mode != Mode::Finite) throw input_error("word_value expects finite mode");
  const LetterIndex letters(a.alphabet);
  std::map<int, Rational> best;  // state -> min run value so far
  for (int s : a.initial) {
    auto [it, ins] = best.try_emplace(s, Rational(0));
    if (!ins) it->second = std::min(it->second, Rational(0));
  }
  Rational factor(1);
  for (const auto& l : w) {
    const int li = letters.index_of(l);
    std::map<int, Rational> next;
    for (const auto& [s, val] : best)
      for (int ei : a.out(s)) {
        const auto& e = a.edges[ei];
        if (e.letter != li) continue;
        const Rational cand = val + factor * e.weight;
        auto [it, ins] = next.try_emplace(e.to, cand);
        if (!ins) it->second = std::min(it->second, cand);
      }
    best = std::move(next);
    if (best.empty()) return std::nullopt;
    factor *= a.lambda.value();
  }
  std::optional<Rational> out;
  for (const auto& [s, val] : best)
    if (a.accepting[s] && (!out || val < *out)) out = val;
  return out;
}

namespace {

std::vector<bool> co_reachable(const Dsa& a) {
  std::vector<std::vector<int>> preds(a.state_count());
  for (const auto& e : a.edges) preds[e.to].push_back(e.from);
  std::vector<bool> mark(a.state_count(), false);
  std::deque<int> queue;
  for (int s = 0; s < a.state_count(); ++s)
    if (a.accepting[s]) { mark[s] = true; queue.push_back(s); }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int p : preds[s])
      if (!mark[p]) { mark[p] = true; queue.push_back(p); }
  }
  return mark;
}

std::vector<bool> reachable(const Dsa& a) {
  std::vector<bool> mark(a.state_count(), false);
  std::deque<int> queue;
  for (int s : a.initial)
    if (!mark[s]) { mark[s] = true; queue.push_back(s); }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int ei : a.out(s)) {
      int t = a.edges[ei].to;
      if (!mark[t]) { mark[t] = true; queue.push_back(t); }
    }
  }
  return mark;
}

}  // namespace

std::optional<FunctionalityViolation> sample_functionality(const Dsa& a, int samples,
                                                           unsigned long seed) {
  if (a.mode != Mode::Finite) return std::nullopt;
  const std::vector<bool> co = co_reachable(a);
  std::vector<int> starts;
  for (int s : a.initial)
    if (co[s]) starts.push_back(s);
  if (starts.empty()) return std::nullopt;  // no accepted words

  std::mt19937_64 rng(seed);
  const int max_len = a.state_count() + 8;
  for (int k = 0; k < samples; ++k) {
    // Random walk through co-reachable states, stopping at accepting states
    // with probability 1/2 (always when stuck).
    int s = starts[rng() % starts.size()];
    Word w;
    for (int step = 0; step < max_len; ++step) {
      std::vector<int> choices;
      for (int ei : a.out(s))
        if (co[a.edges[ei].to]) choices.push_back(ei);
      if (a.accepting[s] && (choices.empty() || rng() % 2 == 0)) break;
      if (choices.empty()) break;
      const auto& e = a.edges[choices[rng() % choices.size()]];
      w.push_back(a.alphabet[e.letter]);
      s = e.to;
    }
    if (!a.accepting[s]) continue;  // walk did not end accepting; skip sample

    // All accepting-run values of w (capped set per layer).
    const LetterIndex letters(a.alphabet);
    std::map<int, std::set<Rational>> vals;
    for (int q : a.initial) vals[q].insert(Rational(0));
    Rational factor(1);
    for (const auto& l : w) {
      const int li = letters.index_of(l);
      std::map<int, std::set<Rational>> next;
      for (const auto& [q, set] : vals)
        for (int ei : a.out(q)) {
          const auto& e = a.edges[ei];
          if (e.letter != li) continue;
          for (const auto& v : set) {
            auto& dst = next[e.to];
            if (dst.size() < 64) dst.insert(v + factor * e.weight);
          }
        }
      vals = std::move(next);
      factor *= a.lambda.value();
    }
    std::set<Rational> all;
    for (const auto& [q, set] : vals)
      if (a.accepting[q]) all.insert(set.begin(), set.end());
    if (all.size() > 1)
      return FunctionalityViolation{w, std::vector<Rational>(all.begin(), all.end())};
  }
  return std::nullopt;
}

SupValue sup_value(const Dsa& a) {
  if (a.mode != Mode::Finite) throw input_error("sup_value expects finite mode");
  const std::vector<bool> fwd = reachable(a);
  const std::vector<bool> bwd = co_reachable(a);

  SupValue out;
  std::vector<int>& keep = out.trimmed_to_original;
  std::vector<int> remap(a.state_count(), -1);
  for (int s = 0; s < a.state_count(); ++s)
    if (fwd[s] && bwd[s]) {
      remap[s] = static_cast<int>(keep.size());
      keep.push_back(s);
    }
  if (keep.empty()) return out;  // no accepted word
  const int n = static_cast<int>(keep.size());

  // Per trimmed state: candidate actions, deterministic order. Action -1 is
  // "stop here" (accepting states only); otherwise an edge into the trim.
  std::vector<std::vector<int>> actions(n);
  for (int i = 0; i < n; ++i) {
    const int s = keep[i];
    if (a.accepting[s]) actions[i].push_back(-1);
    for (int ei : a.out(s))
      if (remap[a.edges[ei].to] >= 0) actions[i].push_back(ei);
  }

  std::vector<int> policy(n);
  for (int i = 0; i < n; ++i) policy[i] = actions[i].front();

  const Rational lam = a.lambda.value();
  std::vector<Rational> value(n);

  auto evaluate = [&]() {
    std::vector<int> state_of(n, 0);  // 0 untouched, 1 on stack, 2 done
    for (int i = 0; i < n; ++i) {
      if (state_of[i] == 2) continue;
      std::vector<int> path;
      int cur = i;
      while (true) {
        if (state_of[cur] == 2) break;
        if (state_of[cur] == 1) {
          // Closed a cycle: path suffix from cur.
          auto begin = std::find(path.begin(), path.end(), cur);
          const std::size_t len = static_cast<std::size_t>(path.end() - begin);
          Rational sum(0), factor(1);
          for (auto it = begin; it != path.end(); ++it) {
            sum += factor * a.edges[policy[*it]].weight;
            factor *= lam;
          }
          value[cur] = sum / (Rational(1) - lam.pow(static_cast<unsigned long>(len)));
          state_of[cur] = 2;
          break;
        }
        state_of[cur] = 1;
        path.push_back(cur);
        if (policy[cur] == -1) {
          value[cur] = Rational(0);
          state_of[cur] = 2;
          break;
        }
        cur = remap[a.edges[policy[cur]].to];
      }
      // Back-substitute along the path.
      for (auto it = path.rbegin(); it != path.rend(); ++it) {
        if (state_of[*it] == 2) continue;
        const int next = remap[a.edges[policy[*it]].to];
        value[*it] = a.edges[policy[*it]].weight + lam * value[next];
        state_of[*it] = 2;
      }
    }
  };

  auto action_value = [&](int act) {
    if (act == -1) return Rational(0);
    return a.edges[act].weight + lam * value[remap[a.edges[act].to]];
  };

  evaluate();
  for (bool improved = true; improved;) {
    improved = false;
    for (int i = 0; i < n; ++i) {
      Rational best = action_value(policy[i]);
      int best_act = policy[i];
      for (int act : actions[i]) {
        const Rational v = action_value(act);
        if (v > best) { best = v; best_act = act; }
      }
      if (best_act != policy[i]) { policy[i] = best_act; improved = true; }
    }
    if (improved) evaluate();
  }

  out.defined = true;
  out.state_values = value;
  // At least one initial state survives the trim when any word is accepted.
  std::optional<Rational> s_best;
  for (int s : a.initial)
    if (remap[s] >= 0 && (!s_best || value[remap[s]] > *s_best)) s_best = value[remap[s]];
  out.value = *s_best;

  // Attainment: a finite accepting path achieving the supremum exactly exists
  // iff value 0 stops propagate back along optimal edges.
  std::vector<int> att_depth(n, -1);
  for (int i = 0; i < n; ++i)
    if (a.accepting[keep[i]] && value[i] == Rational(0)) att_depth[i] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (int i = 0; i < n; ++i) {
      if (att_depth[i] >= 0) continue;
      for (int act : actions[i]) {
        if (act == -1) continue;
        const int j = remap[a.edges[act].to];
        if (att_depth[j] >= 0 && action_value(act) == value[i]) {
          att_depth[i] = att_depth[j] + 1;
          changed = true;
          break;
        }
      }
    }
  }
  int from = -1;
  for (int s : a.initial)
    if (remap[s] >= 0 && value[remap[s]] == out.value && att_depth[remap[s]] >= 0) {
      from = remap[s];
      break;
    }
  if (from >= 0) {
    out.attained = true;
    int cur = from;
    while (att_depth[cur] > 0) {
      for (int act : actions[cur]) {
        if (act == -1) continue;
        const int j = remap[a.edges[act].to];
        if (att_depth[j] == att_depth[cur] - 1 && action_value(act) == value[cur]) {
          out.attaining_word.push_back(a.alphabet[a.edges[act].letter]);
          cur = j;
          break;
        }
      }
    }
  }
  return out;
}

namespace {

void require_functional(const Dsa& a, const char* op) {
  if (!a.functional_declared)
    throw input_error(std::string(op) + " needs a functional automaton (declare and sample)");
  if (auto bad = sample_functionality(a, 100, 0x5eed))
    throw input_error("functionality violation on '" +
                      LassoWord{bad->word, {}}.str() + "': " + bad->values.front().str() +
                      " vs " + bad->values.back().str());
}

/// A word with value above the threshold: unroll the optimal policy, closing
/// with a fixed accepting completion, until the exact value clears t.
Word word_above(const Dsa& a, const SupValue& sup, const Rational& t) {
  const std::vector<bool> co = co_reachable(a);
  // Shortest accepting completion per state (letters), plus its value.
  const int n = a.state_count();
  std::vector<int> comp_edge(n, -1), comp_dist(n, -1);
  for (int s = 0; s < n; ++s)
    if (a.accepting[s]) comp_dist[s] = 0;
  for (bool changed = true; changed;) {
    changed = false;
    for (int s = 0; s < n; ++s)
      for (int ei : a.out(s)) {
        int t2 = a.edges[ei].to;
        if (comp_dist[t2] < 0) continue;
        if (comp_dist[s] < 0 || comp_dist[t2] + 1 < comp_dist[s]) {
          comp_dist[s] = comp_dist[t2] + 1;
          comp_edge[s] = ei;
          changed = true;
        }
      }
  }
  std::vector<Rational> comp_value(n, Rational(0));
  {
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int x, int y) { return comp_dist[x] < comp_dist[y]; });
    for (int s : order)
      if (comp_dist[s] > 0)
        comp_value[s] =
            a.edges[comp_edge[s]].weight + a.lambda.value() * comp_value[a.edges[comp_edge[s]].to];
  }

  // Start from the best initial state and follow the optimal policy greedily.
  std::vector<int> orig_of = sup.trimmed_to_original;
  std::vector<int> remap(n, -1);
  for (std::size_t i = 0; i < orig_of.size(); ++i) remap[orig_of[i]] = static_cast<int>(i);
  int cur = -1;
  for (int s : a.initial)
    if (remap[s] >= 0 && sup.state_values[remap[s]] == sup.value) { cur = s; break; }
  Word w;
  Rational prefix(0), factor(1);
  for (int guard = 0; guard < 100000; ++guard) {
    // Exact value of prefix + completion from cur.
    if (comp_dist[cur] >= 0) {
      Rational total = prefix + factor * comp_value[cur];
      if (total > t) {
        int c = cur;
        while (comp_dist[c] > 0) {
          w.push_back(a.alphabet[a.edges[comp_edge[c]].letter]);
          c = a.edges[comp_edge[c]].to;
        }
        return w;
      }
    }
    // One optimal step.
    const int i = remap[cur];
    int chosen = -1;
    for (int ei : a.out(cur)) {
      const int j = remap[a.edges[ei].to];
      if (j < 0) continue;
      if (a.edges[ei].weight + a.lambda.value() * sup.state_values[j] == sup.state_values[i]) {
        chosen = ei;
        break;
      }
    }
    if (chosen < 0) throw std::logic_error("optimal policy step missing");
    w.push_back(a.alphabet[a.edges[chosen].letter]);
    prefix += factor * a.edges[chosen].weight;
    factor *= a.lambda.value();
    cur = a.edges[chosen].to;
  }
  throw std::logic_error("policy unrolling failed to clear the threshold");
}

}  // namespace

Verdict exact_value(const Dsa& a, const Rational& t) {
  if (a.mode != Mode::Finite) throw input_error("exact_value expects finite mode");
  require_functional(a, "exact_value");

  // Transition names become letters; the automaton shape becomes the
  // constraint, so words of the derived problem are accepting paths.
  std::vector<std::pair<Letter, Rational>> entries;
  for (std::size_t i = 0; i < a.edges.size(); ++i) {
    const auto& e = a.edges[i];
    entries.emplace_back(a.state_names[e.from] + "." + a.alphabet[e.letter] + "." +
                             a.state_names[e.to] + "#" + std::to_string(i),
                         e.weight);
  }
  if (entries.empty())  // no transitions: only the empty word can be accepted
    entries.emplace_back("#none", Rational(0));

  Nfa shape;
  shape.state_count = a.state_count();
  shape.initial = a.initial;
  shape.accepting = a.accepting;
  shape.edges.resize(a.state_count());
  for (std::size_t i = 0; i < a.edges.size(); ++i)
    shape.edges[a.edges[i].from].push_back({static_cast<int>(i), a.edges[i].to});

  Constraint constraint;
  constraint.explicit_nfa = shape;
  GtdsInstance derived{"cgtds_f", a.lambda,   t,           WeightAlphabet(std::move(entries)),
                       constraint, Mode::Finite, 0};
  Verdict v = solve_cgtds_f(derived);
  if (v.yes()) {
    Word input_word;
    for (const auto& name : *v.finite_witness) {
      const auto hash = name.rfind('#');
      const std::size_t ei = std::stoul(name.substr(hash + 1));
      input_word.push_back(a.alphabet[a.edges[ei].letter]);
    }
    const auto check = word_value(a, input_word);
    if (!check || *check != t)
      throw input_error("declared-functional automaton has run values disagreeing on '" +
                        LassoWord{input_word, {}}.str() + "'");
    v.finite_witness = std::move(input_word);
  }
  return v;
}

DecisionWitness universality_finite(const Dsa& a, const Rational& t, bool strict) {
  if (a.mode != Mode::Finite) throw input_error("universality_finite expects finite mode");
  require_functional(a, "universality");
  DecisionWitness out;
  const SupValue sup = sup_value(a);
  if (!sup.defined) {
    out.holds = true;
    out.vacuous = true;
    out.detail = "no word is accepted";
    return out;
  }
  const Rational& s = sup.value;
  if (strict ? s < t : s <= t) {
    out.holds = true;
    out.detail = "sup value " + s.str() + (sup.attained ? " (attained)" : " (not attained)");
    return out;
  }
  if (strict && s == t && !sup.attained) {
    out.holds = true;
    out.detail = "sup value " + s.str() + " equals the threshold but is not attained";
    return out;
  }
  out.holds = false;
  if (s == t) {  // strict failure with attained supremum
    out.counterexample = sup.attaining_word;
    out.counterexample_value = s;
  } else if (sup.attained) {
    out.counterexample = sup.attaining_word;
    out.counterexample_value = s;
  } else {
    Word w = word_above(a, sup, t);
    out.counterexample_value = word_value(a, w);
    out.counterexample = std::move(w);
  }
  out.detail = "sup value " + s.str();
  return out;
}

InclusionResult inclusion_finite(const Dsa& a, const Dsa& b, bool strict) {
  if (a.mode != Mode::Finite || b.mode != Mode::Finite)
    throw input_error("inclusion_finite expects finite mode");
  if (a.lambda != b.lambda)
    throw input_error("inclusion of automata with different discount factors is unsupported");
  require_functional(a, "inclusion");
  require_functional(b, "inclusion");

  // Union alphabet, by name.
  std::vector<Letter> letters = a.alphabet;
  for (const auto& l : b.alphabet)
    if (std::find(letters.begin(), letters.end(), l) == letters.end()) letters.push_back(l);
  const LetterIndex index(letters);

  auto as_nfa = [&](const Dsa& d) {
    Nfa n;
    n.state_count = d.state_count();
    n.initial = d.initial;
    n.accepting = d.accepting;
    n.edges.resize(n.state_count);
    for (const auto& e : d.edges)
      n.edges[e.from].push_back({index.index_of(d.alphabet[e.letter]), e.to});
    return n;
  };
  const Nfa na = as_nfa(a), nb = as_nfa(b);

  InclusionResult out;
  if (auto w = nfa_inclusion_counterexample(na, nb, static_cast<int>(letters.size()))) {
    Word word;
    for (int l : *w) word.push_back(letters[l]);
    out.only_in_a = word;
  }
  if (auto w = nfa_inclusion_counterexample(nb, na, static_cast<int>(letters.size()))) {
    Word word;
    for (int l : *w) word.push_back(letters[l]);
    out.only_in_b = word;
  }

  // Difference automaton on common words: any accepting run pair carries
  // A(w) - B(w) by functionality.
  Dsa c;
  c.lambda = a.lambda;
  c.mode = Mode::Finite;
  c.functional_declared = true;
  c.alphabet = letters;
  std::map<std::pair<int, int>, int> remap;
  auto state_of = [&](int qa, int qb) {
    auto [it, ins] = remap.try_emplace({qa, qb}, static_cast<int>(c.state_names.size()));
    if (ins) {
      c.state_names.push_back(a.state_names[qa] + "|" + b.state_names[qb]);
      c.accepting.push_back(a.accepting[qa] && b.accepting[qb]);
    }
    return it->second;
  };
  std::deque<std::pair<int, int>> queue;
  for (int qa : a.initial)
    for (int qb : b.initial) {
      c.initial.push_back(state_of(qa, qb));
      queue.push_back({qa, qb});
    }
  std::set<std::pair<int, int>> seen(queue.begin(), queue.end());
  while (!queue.empty()) {
    auto [qa, qb] = queue.front();
    queue.pop_front();
    for (int ea : a.out(qa))
      for (int eb : b.out(qb)) {
        if (a.alphabet[a.edges[ea].letter] != b.alphabet[b.edges[eb].letter]) continue;
        const auto key = std::make_pair(a.edges[ea].to, b.edges[eb].to);
        const int from = state_of(qa, qb), to = state_of(key.first, key.second);
        c.edges.push_back({from, index.index_of(a.alphabet[a.edges[ea].letter]), to,
                           a.edges[ea].weight - b.edges[eb].weight});
        if (seen.insert(key).second) queue.push_back(key);
      }
  }
  c.accepting.resize(c.state_names.size(), false);
  c.finalize();
  out.decision = universality_finite(c, Rational(0), strict);
  return out;
}

Dsa tds_to_universality_gadget(const DiscountFactor& lambda, const Rational& t) {
  const Rational wa = -t * lambda.one_minus();     // letter a on the tracking state
  const Rational wb = Rational(1) - t * lambda.one_minus();
  Dsa d;
  d.alphabet = {"a", "b"};
  d.state_names = {"q1", "q2"};
  d.initial = {0, 1};  // exactly two runs per word, one through each state
  d.accepting = {true, true};
  d.lambda = lambda;
  d.mode = Mode::Infinite;
  d.functional_declared = false;
  d.edges = {{0, 0, 0, wa}, {0, 1, 0, wb}, {1, 0, 1, -wa}, {1, 1, 1, -wb}};
  d.finalize();
  return d;
}

SemiUniversality semi_universality_infinite(const Dsa& a, const Rational& t, bool strict,
                                            Budget budget) {
  if (a.mode != Mode::Infinite)
    throw input_error("semi_universality_infinite expects infinite mode");
  SemiUniversality out;

  // Weight-set target problem: if it closes, every run's side of the
  // threshold resolves within the tree height.
  std::set<Rational> weight_set;
  for (const auto& e : a.edges) weight_set.insert(e.weight);
  std::vector<std::pair<Letter, Rational>> entries;
  int i = 0;
  for (const auto& w : weight_set) entries.emplace_back("w" + std::to_string(i++), w);
  GtdsInstance gtds{"gtds", a.lambda, t, WeightAlphabet(std::move(entries)),
                    std::nullopt, Mode::Infinite, 0};
  NormalizeResult norm = normalize(gtds);
  Verdict refute = refute_gtds(norm.instance, budget);
  if (!refute.no()) {
    out.answer = Answer::Unknown;
    out.detail = refute.reason == ReasonKind::GapRepetition
                     ? "the target problem has a solution: the refuter cannot close"
                     : "refuter budget exhausted";
    return out;
  }
  out.tree_height = *refute.tree_height;
  // With no exact hit possible, strict and non-strict agree.
  (void)strict;

  // Normalized digit per weight; run gaps below 0 mean the run (and all its
  // continuations) values above t, above the bound below t.
  std::map<Rational, mpz_class> digit_of;
  for (std::size_t k = 0; k < gtds.alphabet.size(); ++k) {
    // normalize keeps entry order
    digit_of[gtds.alphabet.weight(k)] = norm.instance.digits[k];
  }
  const Rational bound = norm.instance.bound;
  const Rational g0 = norm.instance.initial_gap();
  const DiscountFactor& lam = a.lambda;

  // Subset construction over (state, gap | resolved-below). A word prefix
  // with no surviving pair has only above-threshold (or no) runs on every
  // extension: universality fails there.
  struct Pair {
    int state;
    bool below;    // resolved below the threshold; gap no longer tracked
    Rational gap;  // meaningful when !below
    bool operator<(const Pair& o) const {
      if (state != o.state) return state < o.state;
      if (below != o.below) return below < o.below;
      return gap < o.gap;
    }
  };
  using Subset = std::set<Pair>;
  Subset start;
  {
    const bool below0 = g0 > bound;
    const bool above0 = g0.is_negative();
    for (int s : a.initial) {
      if (above0) continue;
      start.insert(Pair{s, below0, below0 ? Rational(0) : g0});
    }
  }
  if (start.empty()) {
    out.answer = Answer::No;
    out.counterexample_prefix = Word{};
    out.detail = "every run values above the threshold from the start";
    return out;
  }

  std::map<Subset, std::pair<Subset, int>> parent;
  std::set<Subset> seen{start};
  std::deque<Subset> queue{start};
  unsigned long long visited = 1;
  const unsigned long long max_nodes = budget.steps ? budget.steps : 200000;
  while (!queue.empty()) {
    Subset cur = queue.front();
    queue.pop_front();
    for (std::size_t li = 0; li < a.alphabet.size(); ++li) {
      Subset next;
      for (const Pair& pr : cur)
        for (int ei : a.out(pr.state)) {
          const auto& e = a.edges[ei];
          if (e.letter != static_cast<int>(li)) continue;
          if (pr.below) {
            next.insert(Pair{e.to, true, Rational(0)});
            continue;
          }
          const Rational g = gap_step(pr.gap, Rational(digit_of.at(e.weight)), lam);
          if (g.is_negative()) continue;  // run value above t: drop
          if (g > bound)
            next.insert(Pair{e.to, true, Rational(0)});
          else
            next.insert(Pair{e.to, false, g});
        }
      if (next.empty()) {
        // Reconstruct the prefix.
        Word w{a.alphabet[li]};
        Subset node = cur;
        while (parent.count(node)) {
          auto& [par, letter] = parent.at(node);
          w.push_back(a.alphabet[letter]);
          node = par;
        }
        std::reverse(w.begin(), w.end());
        out.answer = Answer::No;
        out.counterexample_prefix = std::move(w);
        out.detail = "no run stays below the threshold past this prefix";
        return out;
      }
      if (seen.insert(next).second) {
        parent[next] = {cur, static_cast<int>(li)};
        if (++visited > max_nodes) {
          out.answer = Answer::Unknown;
          out.detail = "subset search budget exhausted";
          return out;
        }
        queue.push_back(next);
      }
    }
  }
  out.answer = Answer::Yes;
  out.detail = "every word keeps a run below the threshold";
  return out;
}

}  // namespace tds
