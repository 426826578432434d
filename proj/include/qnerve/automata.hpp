#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qnerve/quantale.hpp"
#include "qnerve/vgraph.hpp"

namespace qnerve {

/// Letters are single characters; a label is read one character at a time.
using Alphabet = std::map<char, ExtScalar>;

struct Transition {
  std::string from;
  std::string to;
  std::string label;
};

struct Automaton {
  std::vector<std::string> states;
  Alphabet alphabet;
  std::vector<Transition> transitions;
};

/// Sum of letter costs; the empty word costs 0. Throws InputError naming an
/// unknown letter.
ExtScalar word_cost(std::string_view word, const Alphabet& alphabet);

/// Throws InputError for duplicate or unknown states, empty labels, unknown
/// letters, or infinite letter costs.
void validate(const Automaton& a);

/// Letters whose cost does not look like a short decimal. The bridge to
/// magnitude homology assumes a discrete cost range, which such costs may
/// violate in floating point.
std::vector<std::string> cost_warnings(const Automaton& a);

/// Shortest generator-path cost between states (Dijkstra from each source).
/// Unreachable pairs are inf; the diagonal is 0.
VGraph cost_space(const Automaton& a);

struct GradedPair {
  std::size_t a = 0;
  std::size_t b = 0;
  ExtScalar grade;

  friend bool operator==(const GradedPair&, const GradedPair&) = default;
};

/// Pairs with 0 < C(a,b) < inf that no third state c splits as
/// C(a,c) + C(c,b) = C(a,b) (eps-equal), in lexicographic order. Throws
/// InputError for a non-strict cost space.
std::vector<GradedPair> cost_primitive_pairs(const VGraph& c, double eps = kEps);

/// Collapses mutually-zero pairs and closes under +_1 paths, repeating until
/// nothing more collapses. One-sided zeros are kept, so the result can still
/// be non-strict. Returns the quotient and the projection from x.
std::pair<VGraph, GraphMorphism> strictify(const VGraph& x, double eps = kEps);

}  // namespace qnerve
