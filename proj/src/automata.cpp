#include "tds/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace tds {

int LetterIndex::index_of(const Letter& l) const {
  auto i = find(l);
  if (!i) throw input_error("letter '" + l + "' is not in the alphabet");
  return *i;
}

std::optional<int> LetterIndex::find(const Letter& l) const {
  for (std::size_t i = 0; i < letters.size(); ++i)
    if (letters[i] == l) return static_cast<int>(i);
  return std::nullopt;
}

Nfa Nfa::single_letter(int letter, int) {
  Nfa n;
  n.state_count = 2;
  n.initial = {0};
  n.accepting = {false, true};
  n.edges.resize(2);
  n.edges[0].push_back({letter, 1});
  return n;
}

Nfa Nfa::universe(int alphabet_size) {
  Nfa n;
  n.state_count = 1;
  n.initial = {0};
  n.accepting = {true};
  n.edges.resize(1);
  for (int a = 0; a < alphabet_size; ++a) n.edges[0].push_back({a, 0});
  return n;
}

Nfa Nfa::empty_word_only() {
  Nfa n;
  n.state_count = 1;
  n.initial = {0};
  n.accepting = {true};
  n.edges.resize(1);
  return n;
}

bool Nfa::accepts(const std::vector<int>& word) const {
  std::set<int> cur(initial.begin(), initial.end());
  for (int a : word) {
    std::set<int> next;
    for (int s : cur)
      for (auto [l, t] : edges[s])
        if (l == a) next.insert(t);
    cur = std::move(next);
    if (cur.empty()) return false;
  }
  return std::any_of(cur.begin(), cur.end(), [&](int s) { return accepting[s]; });
}

bool Nfa::accepts_empty() const {
  return std::any_of(initial.begin(), initial.end(), [&](int s) { return accepting[s]; });
}

namespace {

std::vector<bool> forward_reachable(int n, const std::vector<int>& from,
                                    const std::vector<std::vector<std::pair<int, int>>>& edges) {
  std::vector<bool> seen(n, false);
  std::deque<int> queue;
  for (int s : from)
    if (!seen[s]) { seen[s] = true; queue.push_back(s); }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (auto [l, t] : edges[s])
      if (!seen[t]) { seen[t] = true; queue.push_back(t); }
  }
  return seen;
}

}  // namespace

Nfa Nfa::trimmed() const {
  std::vector<bool> fwd = forward_reachable(state_count, initial, edges);
  // Backward: states that can reach an accepting state.
  std::vector<std::vector<std::pair<int, int>>> rev(state_count);
  for (int s = 0; s < state_count; ++s)
    for (auto [l, t] : edges[s]) rev[t].push_back({l, s});
  std::vector<int> acc_states;
  for (int s = 0; s < state_count; ++s)
    if (accepting[s]) acc_states.push_back(s);
  std::vector<bool> bwd = forward_reachable(state_count, acc_states, rev);

  std::vector<int> remap(state_count, -1);
  Nfa out;
  for (int s = 0; s < state_count; ++s)
    if (fwd[s] && bwd[s]) {
      remap[s] = out.state_count++;
      out.accepting.push_back(accepting[s]);
    }
  out.edges.resize(out.state_count);
  for (int s = 0; s < state_count; ++s) {
    if (remap[s] < 0) continue;
    for (auto [l, t] : edges[s])
      if (remap[t] >= 0) out.edges[remap[s]].push_back({l, remap[t]});
  }
  for (int s : initial)
    if (remap[s] >= 0) out.initial.push_back(remap[s]);
  return out;
}

Buchi Buchi::universe(int alphabet_size) {
  Buchi b;
  b.state_count = 1;
  b.initial = {0};
  b.accepting = {true};
  b.edges.resize(1);
  for (int a = 0; a < alphabet_size; ++a) b.edges[0].push_back({a, 0});
  return b;
}

Buchi Buchi::reachable_part() const {
  std::vector<bool> seen = forward_reachable(state_count, initial, edges);
  std::vector<int> remap(state_count, -1);
  Buchi out;
  for (int s = 0; s < state_count; ++s)
    if (seen[s]) {
      remap[s] = out.state_count++;
      out.accepting.push_back(accepting[s]);
    }
  out.edges.resize(out.state_count);
  for (int s = 0; s < state_count; ++s) {
    if (remap[s] < 0) continue;
    for (auto [l, t] : edges[s]) out.edges[remap[s]].push_back({l, remap[t]});
  }
  for (int s : initial)
    if (remap[s] >= 0) out.initial.push_back(remap[s]);
  return out;
}

bool buchi_accepts_lasso(const Buchi& b, const LassoWord& w, const LetterIndex& letters) {
  if (w.is_finite()) throw input_error("omega-membership of a finite word");
  const int n = b.state_count;

  // States reachable after the prefix.
  std::set<int> after(b.initial.begin(), b.initial.end());
  for (const auto& l : w.prefix) {
    const int a = letters.index_of(l);
    std::set<int> next;
    for (int s : after)
      for (auto [al, t] : b.edges[s])
        if (al == a) next.insert(t);
    after = std::move(next);
    if (after.empty()) return false;
  }

  // step[p][q]: p reaches q reading one full period; 2 when an accepting
  // state occurs on the way (including endpoints of the period's run).
  auto compose = [n](const std::vector<std::vector<int>>& x,
                     const std::vector<std::vector<int>>& y) {
    std::vector<std::vector<int>> z(n, std::vector<int>(n, 0));
    for (int p = 0; p < n; ++p)
      for (int m = 0; m < n; ++m) {
        if (!x[p][m]) continue;
        for (int q = 0; q < n; ++q) {
          if (!y[m][q]) continue;
          int v = std::max(std::min(x[p][m], 2) + std::min(y[m][q], 2) >= 3 ? 2 : 1, z[p][q]);
          z[p][q] = std::max(z[p][q], v);
        }
      }
    return z;
  };

  std::vector<std::vector<int>> step(n, std::vector<int>(n, 0));
  for (int p = 0; p < n; ++p) step[p][p] = b.accepting[p] ? 2 : 1;
  for (const auto& l : w.period) {
    const int a = letters.index_of(l);
    std::vector<std::vector<int>> one(n, std::vector<int>(n, 0));
    for (int p = 0; p < n; ++p)
      for (auto [al, t] : b.edges[p])
        if (al == a) one[p][t] = std::max(one[p][t], b.accepting[t] ? 2 : 1);
    step = compose(step, one);
  }

  // Transitive closure of `step` (any number of periods >= 1).
  std::vector<std::vector<int>> closure = step;
  for (bool changed = true; changed;) {
    changed = false;
    auto next = compose(closure, step);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        int v = std::max(closure[p][q], next[p][q]);
        if (v != closure[p][q]) { closure[p][q] = v; changed = true; }
      }
  }

  // Accepted iff some state q, reachable from `after` by whole periods (or in
  // `after` itself), loops back to q through an accepting state.
  for (int s : after) {
    if (closure[s][s] == 2) return true;
    for (int q = 0; q < n; ++q)
      if (closure[s][q] && closure[q][q] == 2) return true;
  }
  return false;
}

Buchi append_letter_omega(const Nfa& finite, int zero_letter) {
  Buchi b;
  b.state_count = finite.state_count + 1;
  const int loop = finite.state_count;
  b.accepting.assign(b.state_count, false);
  b.accepting[loop] = true;
  b.edges.resize(b.state_count);
  for (int s = 0; s < finite.state_count; ++s) {
    b.edges[s] = finite.edges[s];
    if (finite.accepting[s]) b.edges[s].push_back({zero_letter, loop});
  }
  b.edges[loop].push_back({zero_letter, loop});
  b.initial = finite.initial;
  return b;
}

namespace {

// Subset construction, bounded use: automata here are tiny (DSA state spaces).
struct Dfa {
  std::vector<std::set<int>> states;
  std::map<std::set<int>, int> index;
  std::vector<std::vector<int>> next;  // [state][letter]
  std::vector<bool> accepting;
};

Dfa determinize(const Nfa& n, int alphabet_size) {
  Dfa d;
  std::set<int> start(n.initial.begin(), n.initial.end());
  d.states.push_back(start);
  d.index[start] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    if (static_cast<int>(d.next.size()) <= s) d.next.resize(s + 1, std::vector<int>(alphabet_size, -1));
    for (int a = 0; a < alphabet_size; ++a) {
      std::set<int> tgt;
      for (int q : d.states[s])
        for (auto [l, t] : n.edges[q])
          if (l == a) tgt.insert(t);
      auto [it, inserted] = d.index.try_emplace(tgt, static_cast<int>(d.states.size()));
      if (inserted) {
        d.states.push_back(tgt);
        queue.push_back(it->second);
      }
      d.next[s][a] = it->second;
    }
  }
  d.next.resize(d.states.size(), std::vector<int>(alphabet_size, -1));
  d.accepting.resize(d.states.size());
  for (std::size_t s = 0; s < d.states.size(); ++s)
    d.accepting[s] = std::any_of(d.states[s].begin(), d.states[s].end(),
                                 [&](int q) { return n.accepting[q]; });
  return d;
}

}  // namespace

std::optional<std::vector<int>> nfa_inclusion_counterexample(const Nfa& a, const Nfa& b,
                                                             int alphabet_size) {
  Dfa db = determinize(b, alphabet_size);
  // BFS over (a-state-set, b-dfa-state) for a word accepted by a, rejected by b.
  using Pair = std::pair<std::set<int>, int>;
  std::set<int> astart(a.initial.begin(), a.initial.end());
  Pair start{astart, 0};
  std::map<Pair, std::pair<Pair, int>> parent;  // child -> (parent, letter)
  std::set<Pair> seen{start};
  std::deque<Pair> queue{start};
  auto is_hit = [&](const Pair& p) {
    bool a_acc = std::any_of(p.first.begin(), p.first.end(), [&](int q) { return a.accepting[q]; });
    return a_acc && !db.accepting[p.second];
  };
  auto rebuild = [&](Pair p) {
    std::vector<int> w;
    while (parent.count(p)) {
      auto [par, letter] = parent.at(p);
      w.push_back(letter);
      p = par;
    }
    std::reverse(w.begin(), w.end());
    return w;
  };
  if (is_hit(start)) return rebuild(start);
  while (!queue.empty()) {
    Pair cur = queue.front();
    queue.pop_front();
    for (int l = 0; l < alphabet_size; ++l) {
      std::set<int> atgt;
      for (int q : cur.first)
        for (auto [al, t] : a.edges[q])
          if (al == l) atgt.insert(t);
      if (atgt.empty()) continue;  // word leaves a entirely: cannot be accepted by a
      Pair nxt{atgt, db.next[cur.second][l]};
      if (seen.insert(nxt).second) {
        parent[nxt] = {cur, l};
        if (is_hit(nxt)) return rebuild(nxt);
        queue.push_back(nxt);
      }
    }
  }
  return std::nullopt;
}

}  // namespace tds
