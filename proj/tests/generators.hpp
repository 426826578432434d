// Seeded random inputs for property and acceptance tests.
#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "qnerve/automata.hpp"
#include "qnerve/vgraph.hpp"

namespace gen {

using qnerve::ExtScalar;
using qnerve::PExponent;
using qnerve::VGraph;

inline std::vector<std::string> names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("v" + std::to_string(i));
  return out;
}

/// Arbitrary V-graph: each off-diagonal entry drawn from `values`.
inline VGraph graph(std::mt19937_64& rng, std::size_t n, const std::vector<ExtScalar>& values) {
  VGraph g(names(n));
  std::uniform_int_distribution<std::size_t> pick(0, values.size() - 1);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) g.set(a, b, values[pick(rng)]);
  return g;
}

/// Honest metric space: random positive half-integer edge weights on a
/// complete graph, closed under shortest paths.
inline VGraph metric(std::mt19937_64& rng, std::size_t n, int max_halves = 8) {
  VGraph g(names(n));
  std::uniform_int_distribution<int> w(1, max_halves);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      const ExtScalar d(w(rng) * 0.5);
      g.set(a, b, d);
      g.set(b, a, d);
    }
  return qnerve::free_category(g, PExponent::one());
}

/// Ultrametric from a random dendrogram: a set is split into two nonempty
/// halves at a height strictly above every height below it.
inline VGraph ultrametric(std::mt19937_64& rng, std::size_t n) {
  VGraph g(names(n));
  std::vector<std::size_t> all(n);
  std::iota(all.begin(), all.end(), std::size_t{0});
  std::shuffle(all.begin(), all.end(), rng);
  std::uniform_int_distribution<int> bump(1, 3);
  // Returns the height of the subtree's root.
  auto build = [&](auto&& self, std::vector<std::size_t> pts) -> int {
    if (pts.size() == 1) return 0;
    std::uniform_int_distribution<std::size_t> cut(1, pts.size() - 1);
    const std::size_t k = cut(rng);
    std::vector<std::size_t> left(pts.begin(), pts.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<std::size_t> right(pts.begin() + static_cast<std::ptrdiff_t>(k), pts.end());
    const int h = std::max(self(self, left), self(self, right)) + bump(rng);
    for (auto a : left)
      for (auto b : right) {
        g.set(a, b, ExtScalar(h));
        g.set(b, a, ExtScalar(h));
      }
    return h;
  };
  if (n > 0) build(build, all);
  return g;
}

/// Automaton with positive rational letter costs, so its cost space is
/// strict.
inline qnerve::Automaton automaton(std::mt19937_64& rng, std::size_t max_states, std::size_t max_transitions) {
  qnerve::Automaton a;
  std::uniform_int_distribution<std::size_t> ns(2, max_states);
  const std::size_t n = ns(rng);
  for (std::size_t i = 0; i < n; ++i) a.states.push_back("s" + std::to_string(i));
  const double costs[] = {1.0, 1.5, 2.0, 2.5, 3.0, 0.5};
  std::uniform_int_distribution<int> cidx(0, 5);
  for (char c : std::string("abcd")) a.alphabet[c] = ExtScalar(costs[cidx(rng)]);
  std::uniform_int_distribution<std::size_t> nt(1, max_transitions);
  std::uniform_int_distribution<std::size_t> st(0, n - 1);
  std::uniform_int_distribution<int> letter(0, 3);
  std::uniform_int_distribution<int> len(1, 2);
  const std::size_t t = nt(rng);
  for (std::size_t i = 0; i < t; ++i) {
    std::string label;
    for (int k = len(rng); k > 0; --k) label += static_cast<char>('a' + letter(rng));
    a.transitions.push_back({a.states[st(rng)], a.states[st(rng)], label});
  }
  return a;
}

}  // namespace gen
