#include "tds/regex.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace tds {

namespace {

constexpr int kEps = -1;

// Thompson-style fragments over an epsilon-NFA shared state pool.
struct ENfa {
  std::vector<std::vector<std::pair<int, int>>> edges;  // (letter or kEps, to)

  int add_state() {
    edges.emplace_back();
    return static_cast<int>(edges.size()) - 1;
  }
  void link(int from, int letter, int to) { edges[from].push_back({letter, to}); }
};

struct Frag {
  int start;
  int accept;
};

class Parser {
 public:
  Parser(const std::string& text, const LetterIndex& letters, ENfa& nfa)
      : text_(text), letters_(letters), nfa_(nfa) {}

  Frag parse() {
    Frag f = parse_union();
    if (pos_ != text_.size())
      throw input_error("regex '" + text_ + "': unexpected '" + std::string(1, text_[pos_]) +
                        "' at offset " + std::to_string(pos_));
    return f;
  }

 private:
  Frag parse_union() {
    Frag f = parse_concat();
    while (peek() == '+') {
      ++pos_;
      Frag g = parse_concat();
      int s = nfa_.add_state(), a = nfa_.add_state();
      nfa_.link(s, kEps, f.start);
      nfa_.link(s, kEps, g.start);
      nfa_.link(f.accept, kEps, a);
      nfa_.link(g.accept, kEps, a);
      f = {s, a};
    }
    return f;
  }

  Frag parse_concat() {
    Frag f = epsilon_frag();
    while (pos_ < text_.size() && peek() != '+' && peek() != ')') {
      Frag g = parse_star();
      nfa_.link(f.accept, kEps, g.start);
      f = {f.start, g.accept};
    }
    return f;
  }

  Frag parse_star() {
    Frag f = parse_atom();
    while (peek() == '*') {
      ++pos_;
      int s = nfa_.add_state(), a = nfa_.add_state();
      nfa_.link(s, kEps, f.start);
      nfa_.link(s, kEps, a);
      nfa_.link(f.accept, kEps, f.start);
      nfa_.link(f.accept, kEps, a);
      f = {s, a};
    }
    return f;
  }

  Frag parse_atom() {
    if (pos_ >= text_.size()) throw input_error("regex '" + text_ + "': expected atom at end");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Frag f = parse_union();
      if (peek() != ')') throw input_error("regex '" + text_ + "': missing ')'");
      ++pos_;
      return f;
    }
    if (c == '*') throw input_error("regex '" + text_ + "': '*' with nothing to repeat");
    ++pos_;
    int s = nfa_.add_state(), a = nfa_.add_state();
    if (c == '.') {
      for (std::size_t l = 0; l < letters_.size(); ++l)
        nfa_.link(s, static_cast<int>(l), a);
    } else {
      auto idx = letters_.find(std::string(1, c));
      if (!idx)
        throw input_error("regex '" + text_ + "': letter '" + std::string(1, c) +
                          "' is not in the alphabet");
      nfa_.link(s, *idx, a);
    }
    return {s, a};
  }

  Frag epsilon_frag() {
    int s = nfa_.add_state(), a = nfa_.add_state();
    nfa_.link(s, kEps, a);
    return {s, a};
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  const std::string& text_;
  const LetterIndex& letters_;
  ENfa& nfa_;
  std::size_t pos_ = 0;
};

std::vector<int> eps_closure(const ENfa& nfa, int from) {
  std::vector<int> out;
  std::vector<bool> seen(nfa.edges.size(), false);
  std::deque<int> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    out.push_back(s);
    for (auto [l, t] : nfa.edges[s])
      if (l == kEps && !seen[t]) { seen[t] = true; queue.push_back(t); }
  }
  return out;
}

Nfa eliminate_epsilon(const ENfa& nfa, int start, int accept) {
  const int n = static_cast<int>(nfa.edges.size());
  Nfa out;
  out.state_count = n;
  out.initial = {start};
  out.accepting.assign(n, false);
  out.edges.resize(n);
  for (int q = 0; q < n; ++q) {
    for (int r : eps_closure(nfa, q)) {
      if (r == accept) out.accepting[q] = true;
      for (auto [l, t] : nfa.edges[r])
        if (l != kEps) out.edges[q].push_back({l, t});
    }
  }
  return out.trimmed();
}

}  // namespace

Nfa compile_regex(const std::string& pattern, const LetterIndex& letters) {
  ENfa nfa;
  Parser parser(pattern, letters, nfa);
  Frag f = parser.parse();
  return eliminate_epsilon(nfa, f.start, f.accept);
}

Buchi compile_omega_pairs(const std::vector<std::pair<std::string, std::string>>& pairs,
                          const LetterIndex& letters) {
  if (pairs.empty()) throw input_error("omega constraint with no (prefix, period) pairs");
  ENfa nfa;
  std::vector<int> initials;
  std::vector<bool> is_loop_state;
  for (const auto& [prefix, period] : pairs) {
    Parser pp(prefix, letters, nfa);
    Frag u = pp.parse();
    Parser vp(period, letters, nfa);
    Frag v = vp.parse();
    {
      auto cl = eps_closure(nfa, v.start);
      if (std::find(cl.begin(), cl.end(), v.accept) != cl.end())
        throw input_error("omega period '" + period + "' accepts the empty word");
    }
    int loop = nfa.add_state();
    nfa.link(u.accept, kEps, loop);
    nfa.link(loop, kEps, v.start);
    nfa.link(v.accept, kEps, loop);
    initials.push_back(u.start);
    is_loop_state.resize(nfa.edges.size(), false);
    is_loop_state[loop] = true;
  }
  is_loop_state.resize(nfa.edges.size(), false);

  const int n = static_cast<int>(nfa.edges.size());
  // reach[q][r]: 1 = epsilon-reachable, 2 = via some loop state.
  std::vector<std::map<int, int>> reach(n);
  for (int q = 0; q < n; ++q) {
    // BFS maximizing the via-loop flag.
    std::map<int, int> best;
    std::deque<std::pair<int, int>> queue;
    int self = is_loop_state[q] ? 2 : 1;
    best[q] = self;
    queue.push_back({q, self});
    while (!queue.empty()) {
      auto [s, flag] = queue.front();
      queue.pop_front();
      for (auto [l, t] : nfa.edges[s]) {
        if (l != kEps) continue;
        int nf = std::max(flag, is_loop_state[t] ? 2 : 1);
        auto it = best.find(t);
        if (it == best.end() || it->second < nf) {
          best[t] = nf;
          queue.push_back({t, nf});
        }
      }
    }
    reach[q] = std::move(best);
  }

  // Double states with a "passed an accepting loop point since the previous
  // letter" flag; acceptance is on flagged states.
  Buchi out;
  out.state_count = 2 * n;
  out.accepting.assign(out.state_count, false);
  out.edges.resize(out.state_count);
  for (int q = 0; q < n; ++q) out.accepting[2 * q + 1] = true;
  for (int q = 0; q < n; ++q) {
    std::set<std::pair<int, int>> added;  // (letter, 2*target+flag)
    for (const auto& [r, via1] : reach[q]) {
      for (auto [l, s] : nfa.edges[r]) {
        if (l == kEps) continue;
        for (const auto& [t, via2] : reach[s]) {
          int flag = (via1 == 2 || via2 == 2) ? 1 : 0;
          added.insert({l, 2 * t + flag});
        }
      }
    }
    for (auto [l, enc] : added) {
      out.edges[2 * q].push_back({l, enc});
      out.edges[2 * q + 1].push_back({l, enc});
    }
  }
  for (int i : initials) out.initial.push_back(2 * i);
  return out.reachable_part();
}

std::pair<std::string, std::string> split_omega_expression(const std::string& text) {
  std::string body = text;
  for (const std::string& suffix : {std::string("^w"), std::string("^\xCF\x89")}) {
    if (body.size() > suffix.size() && body.compare(body.size() - suffix.size(), suffix.size(), suffix) == 0) {
      body = body.substr(0, body.size() - suffix.size());
      if (body.empty() || body.back() != ')')
        throw input_error("omega expression must end with '(period)^w': '" + text + "'");
      int depth = 0;
      for (std::size_t i = body.size(); i-- > 0;) {
        if (body[i] == ')') ++depth;
        if (body[i] == '(') --depth;
        if (depth == 0)
          return {body.substr(0, i), body.substr(i + 1, body.size() - i - 2)};
      }
      throw input_error("unbalanced parentheses in omega expression: '" + text + "'");
    }
  }
  throw input_error("omega expression must end with ^w: '" + text + "'");
}

}  // namespace tds
