#include "tds/gap_automaton.hpp"

#include <algorithm>
#include <deque>

namespace tds {

int GapAutomaton::initial_state() const {
  if (!initial_in_range) return -1;
  auto it = index.find(x0);
  return it == index.end() ? -1 : it->second;
}

GapAutomaton build_gap_automaton(const NormalFormInstance& instance) {
  GapAutomaton a;
  const mpz_class& p = instance.p;
  const mpz_class& q = instance.q;
  a.bound = instance.bound;
  a.denominator = instance.base.start_exponent == 0 ? instance.d * p : instance.d;
  a.x0 = instance.base.start_exponent == 0 ? instance.c * q : instance.c;
  a.max_numer = (Rational(a.denominator) * a.bound).floor();
  a.initial_in_range = a.x0 >= 0 && a.x0 <= a.max_numer;
  if (!a.initial_in_range) return a;

  auto add_state = [&](const mpz_class& x) {
    auto [it, inserted] = a.index.try_emplace(x, static_cast<int>(a.states.size()));
    if (inserted) {
      a.states.push_back(x);
      a.recurrent.push_back(x % q == 0);
      a.edges.emplace_back();
    }
    return it->second;
  };

  std::deque<int> queue{add_state(a.x0)};
  std::vector<bool> expanded;
  while (!queue.empty()) {
    const int s = queue.front();
    queue.pop_front();
    if (static_cast<std::size_t>(s) < expanded.size() && expanded[s]) continue;
    expanded.resize(std::max(expanded.size(), static_cast<std::size_t>(s) + 1), false);
    expanded[s] = true;
    if (!a.recurrent[s]) continue;  // no periodic continuation: keep as a dead node

    const mpz_class x = a.states[s];
    const mpz_class px_q = p * x / q;  // integral: q | x
    for (std::size_t li = 0; li < instance.digits.size(); ++li) {
      const mpz_class next = px_q - instance.digits[li] * a.denominator;
      const bool in_range = next >= 0 && next <= a.max_numer;
      GapAutomaton::ProbeClass cls =
          !in_range ? GapAutomaton::ProbeClass::OutOfRange
                    : (next % q == 0 ? GapAutomaton::ProbeClass::Viable
                                     : GapAutomaton::ProbeClass::NonRecurrent);
      a.probes.push_back({x, static_cast<int>(li), Rational(next, a.denominator), cls});
      if (!in_range) continue;
      const int t = add_state(next);
      a.edges[s].push_back({static_cast<int>(li), t});
      if (static_cast<std::size_t>(t) >= expanded.size() || !expanded[t]) queue.push_back(t);
    }
  }

  // Dead-end removal: a state is live iff some transition stays live forever.
  a.live.assign(a.states.size(), false);
  std::vector<int> out_live(a.states.size(), 0);
  for (std::size_t s = 0; s < a.states.size(); ++s) {
    out_live[s] = static_cast<int>(a.edges[s].size());
    a.live[s] = out_live[s] > 0;
  }
  std::vector<std::vector<int>> preds(a.states.size());
  for (std::size_t s = 0; s < a.states.size(); ++s)
    for (auto [l, t] : a.edges[s]) preds[t].push_back(static_cast<int>(s));
  std::deque<int> dead;
  for (std::size_t s = 0; s < a.states.size(); ++s)
    if (!a.live[s]) dead.push_back(static_cast<int>(s));
  while (!dead.empty()) {
    const int t = dead.front();
    dead.pop_front();
    for (int s : preds[t]) {
      if (!a.live[s]) continue;
      int remaining = 0;
      for (auto [l, u] : a.edges[s])
        if (a.live[u]) ++remaining;
      if (remaining == 0) {
        a.live[s] = false;
        dead.push_back(s);
      }
    }
  }
  a.live_count = static_cast<int>(std::count(a.live.begin(), a.live.end(), true));
  return a;
}

namespace {

struct ProductGraph {
  // node = gap_state * |B| + buchi_state
  std::vector<int> nodes;  // discovery order
  std::map<int, int> order;
  std::vector<std::vector<std::pair<int, int>>> adj;  // per discovered node: (letter, node)
};

}  // namespace

std::optional<LassoWord> product_and_emptiness(const GapAutomaton& gap, const Buchi& constraint,
                                               const LetterIndex& letters,
                                               long* product_size_out) {
  if (product_size_out) *product_size_out = 0;
  const int init_gap = gap.initial_state();
  if (init_gap < 0 || !gap.live[init_gap]) return std::nullopt;

  const int nb = constraint.state_count;
  auto encode = [nb](int g, int b) { return g * nb + b; };

  // Deterministic adjacency: sort successors by (letter, gap target, buchi target).
  std::vector<std::vector<std::pair<int, int>>> gap_adj(gap.states.size());
  for (std::size_t s = 0; s < gap.states.size(); ++s) {
    if (!gap.live[s]) continue;
    for (auto [l, t] : gap.edges[s])
      if (gap.live[t]) gap_adj[s].push_back({l, t});
    std::sort(gap_adj[s].begin(), gap_adj[s].end());
  }
  std::vector<std::vector<std::pair<int, int>>> buchi_adj(nb);
  for (int s = 0; s < nb; ++s) {
    buchi_adj[s] = constraint.edges[s];
    std::sort(buchi_adj[s].begin(), buchi_adj[s].end());
  }

  // BFS over reachable product nodes.
  std::map<int, std::pair<int, int>> parent;  // node -> (parent node, letter)
  std::map<int, int> dist;
  std::vector<int> discovery;
  std::deque<int> queue;
  for (int b : constraint.initial) {
    const int n0 = encode(init_gap, b);
    if (!dist.count(n0)) {
      dist[n0] = 0;
      discovery.push_back(n0);
      queue.push_back(n0);
    }
  }
  auto expand = [&](int node, auto&& visit) {
    const int g = node / nb, b = node % nb;
    for (auto [gl, gt] : gap_adj[g])
      for (auto [bl, bt] : buchi_adj[b])
        if (gl == bl) visit(gl, encode(gt, bt));
  };
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop_front();
    expand(node, [&](int letter, int next) {
      if (!dist.count(next)) {
        dist[next] = dist[node] + 1;
        parent[next] = {node, letter};
        discovery.push_back(next);
        queue.push_back(next);
      }
    });
  }
  if (product_size_out) *product_size_out = static_cast<long>(discovery.size());

  // Shortest accepting lasso: for each reachable accepting node, shortest
  // cycle back to itself; minimize |u| + |v|.
  long best_total = -1;
  int best_node = -1;
  std::map<int, std::pair<int, int>> best_cycle_parent;
  for (int node : discovery) {
    if (!constraint.accepting[node % nb]) continue;
    if (best_total >= 0 && dist[node] + 1 >= best_total) continue;  // cycle adds >= 1
    // BFS from node back to node.
    std::map<int, std::pair<int, int>> cparent;
    std::map<int, int> cdist;
    std::deque<int> cqueue{node};
    cdist[node] = 0;
    int found_len = -1;
    while (!cqueue.empty() && found_len < 0) {
      const int cur = cqueue.front();
      cqueue.pop_front();
      expand(cur, [&](int letter, int next) {
        if (found_len >= 0) return;
        if (next == node) {
          cparent[-1] = {cur, letter};  // sentinel: closing edge
          found_len = cdist[cur] + 1;
          return;
        }
        if (!cdist.count(next)) {
          cdist[next] = cdist[cur] + 1;
          cparent[next] = {cur, letter};
          cqueue.push_back(next);
        }
      });
    }
    if (found_len < 0) continue;
    const long total = dist[node] + found_len;
    if (best_total < 0 || total < best_total) {
      best_total = total;
      best_node = node;
      best_cycle_parent = std::move(cparent);
    }
  }
  if (best_node < 0) return std::nullopt;

  LassoWord lasso;
  {
    std::vector<int> rev;
    int cur = best_node;
    while (parent.count(cur)) {
      auto [prev, letter] = parent.at(cur);
      rev.push_back(letter);
      cur = prev;
    }
    for (auto it = rev.rbegin(); it != rev.rend(); ++it)
      lasso.prefix.push_back(letters.letters[*it]);
  }
  {
    std::vector<int> rev;
    auto [cur, letter] = best_cycle_parent.at(-1);
    rev.push_back(letter);
    while (cur != best_node) {
      auto [prev, l] = best_cycle_parent.at(cur);
      rev.push_back(l);
      cur = prev;
    }
    for (auto it = rev.rbegin(); it != rev.rend(); ++it)
      lasso.period.push_back(letters.letters[*it]);
  }
  return lasso;
}

std::optional<Word> product_reach_numerator(const GapAutomaton& gap, const Nfa& constraint,
                                            const LetterIndex& letters,
                                            const mpz_class& target_numer,
                                            long* product_size_out) {
  if (product_size_out) *product_size_out = 0;
  const int init_gap = gap.initial_state();
  if (init_gap < 0) return std::nullopt;
  auto target_it = gap.index.find(target_numer);
  const int target_gap = target_it == gap.index.end() ? -1 : target_it->second;

  const int nb = constraint.state_count;
  auto encode = [nb](int g, int b) { return g * nb + b; };
  std::vector<std::vector<std::pair<int, int>>> gap_adj(gap.states.size());
  for (std::size_t s = 0; s < gap.states.size(); ++s) {
    gap_adj[s] = gap.edges[s];
    std::sort(gap_adj[s].begin(), gap_adj[s].end());
  }
  std::vector<std::vector<std::pair<int, int>>> nfa_adj(nb);
  for (int s = 0; s < nb; ++s) {
    nfa_adj[s] = constraint.edges[s];
    std::sort(nfa_adj[s].begin(), nfa_adj[s].end());
  }

  std::map<int, std::pair<int, int>> parent;
  std::map<int, int> dist;
  long reached = 0;
  std::deque<int> queue;
  auto is_goal = [&](int node) {
    return node / nb == target_gap && constraint.accepting[node % nb];
  };
  auto emit = [&](int node) {
    std::vector<int> rev;
    while (parent.count(node)) {
      auto [prev, letter] = parent.at(node);
      rev.push_back(letter);
      node = prev;
    }
    Word w;
    for (auto it = rev.rbegin(); it != rev.rend(); ++it) w.push_back(letters.letters[*it]);
    return w;
  };
  for (int b : constraint.initial) {
    const int n0 = encode(init_gap, b);
    if (!dist.count(n0)) {
      dist[n0] = 0;
      ++reached;
      queue.push_back(n0);
    }
  }
  while (!queue.empty()) {
    const int node = queue.front();
    queue.pop_front();
    if (is_goal(node)) {
      if (product_size_out) *product_size_out = reached;
      return emit(node);
    }
    const int g = node / nb, b = node % nb;
    for (auto [gl, gt] : gap_adj[g])
      for (auto [bl, bt] : nfa_adj[b])
        if (gl == bl) {
          const int next = encode(gt, bt);
          if (!dist.count(next)) {
            dist[next] = dist[node] + 1;
            parent[next] = {node, gl};
            ++reached;
            queue.push_back(next);
          }
        }
  }
  if (product_size_out) *product_size_out = reached;
  return std::nullopt;
}

}  // namespace tds
