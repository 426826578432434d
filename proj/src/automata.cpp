#include "qnerve/automata.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <queue>
#include <set>

#include "qnerve/errors.hpp"

namespace qnerve {

ExtScalar word_cost(std::string_view word, const Alphabet& alphabet) {
  ExtScalar total = ExtScalar::zero();
  for (char ch : word) {
    auto it = alphabet.find(ch);
    if (it == alphabet.end()) throw InputError(std::string("unknown letter '") + ch + "'");
    total = tensor(total, it->second, PExponent::one());
  }
  return total;
}

void validate(const Automaton& a) {
  std::set<std::string> seen;
  for (const auto& s : a.states)
    if (!seen.insert(s).second) throw InputError("duplicate state '" + s + "'");
  for (const auto& [letter, cost] : a.alphabet)
    if (cost.is_inf()) throw InputError(std::string("letter '") + letter + "' has infinite cost");
  for (const auto& t : a.transitions) {
    if (!seen.count(t.from)) throw InputError("transition from unknown state '" + t.from + "'");
    if (!seen.count(t.to)) throw InputError("transition to unknown state '" + t.to + "'");
    if (t.label.empty()) throw InputError("transition " + t.from + " -> " + t.to + " has an empty label");
    word_cost(t.label, a.alphabet);
  }
}

std::vector<std::string> cost_warnings(const Automaton& a) {
  std::vector<std::string> out;
  for (const auto& [letter, cost] : a.alphabet) {
    const std::string text = to_string(cost);
    const auto dot = text.find('.');
    if (dot != std::string::npos && text.size() - dot - 1 > 9) {
      out.push_back(std::string("cost of letter '") + letter + "' (" + text +
                    ") does not look rational; cost-primitivity may not match magnitude homology");
    }
  }
  return out;
}

VGraph cost_space(const Automaton& a) {
  validate(a);
  VGraph g(a.states);
  const std::size_t n = g.size();
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  for (const auto& t : a.transitions) {
    const std::size_t u = g.index_of(t.from);
    const std::size_t v = g.index_of(t.to);
    if (u == v) continue;  // the empty word already gives 0
    adj[u].emplace_back(v, word_cost(t.label, a.alphabet).value());
  }
  using Item = std::pair<double, std::size_t>;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<double> dist(n, std::numeric_limits<double>::infinity());
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    dist[s] = 0.0;
    pq.emplace(0.0, s);
    while (!pq.empty()) {
      const auto [d, u] = pq.top();
      pq.pop();
      if (d > dist[u]) continue;
      for (const auto& [v, w] : adj[u])
        if (d + w < dist[v]) {
          dist[v] = d + w;
          pq.emplace(dist[v], v);
        }
    }
    for (std::size_t t = 0; t < n; ++t)
      if (t != s) g.set(s, t, ExtScalar(dist[t]));
  }
  return g;
}

std::vector<GradedPair> cost_primitive_pairs(const VGraph& c, double eps) {
  if (!c.is_strict(eps)) {
    throw InputError("cost space is not strict (some distinct states are at distance 0); apply strictify first");
  }
  std::vector<GradedPair> out;
  for (std::size_t a = 0; a < c.size(); ++a)
    for (std::size_t b = 0; b < c.size(); ++b) {
      if (a == b || c(a, b).is_inf()) continue;
      bool split = false;
      for (std::size_t m = 0; m < c.size() && !split; ++m) {
        if (m == a || m == b) continue;
        split = approx_equal(tensor(c(a, m), c(m, b), PExponent::one()), c(a, b), eps);
      }
      if (!split) out.push_back({a, b, c(a, b)});
    }
  return out;
}

std::pair<VGraph, GraphMorphism> strictify(const VGraph& x, double eps) {
  std::vector<std::size_t> map(x.size());
  std::iota(map.begin(), map.end(), std::size_t{0});
  VGraph cur = free_category(x, PExponent::one());
  for (;;) {
    const std::size_t n = cur.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    auto root = [&](std::size_t v) {
      while (parent[v] != v) v = parent[v] = parent[parent[v]];
      return v;
    };
    bool merged = false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b)
        if (approx_equal(cur(a, b), ExtScalar::zero(), eps) && approx_equal(cur(b, a), ExtScalar::zero(), eps)) {
          const auto ra = root(a);
          const auto rb = root(b);
          if (ra != rb) {
            parent[std::max(ra, rb)] = std::min(ra, rb);
            merged = true;
          }
        }
    if (!merged) break;
    // Labels in order of first appearance.
    std::vector<std::size_t> label(n, n);
    std::vector<std::size_t> class_of(n);
    std::size_t next = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const auto r = root(v);
      if (label[r] == n) label[r] = next++;
      class_of[v] = label[r];
    }
    auto [q, proj] = quotient(cur, class_of);
    for (auto& m : map) m = proj.map[m];
    cur = free_category(q, PExponent::one());
  }
  GraphMorphism f{x, cur, map};
  return {std::move(cur), std::move(f)};
}

}  // namespace qnerve
