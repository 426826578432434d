#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "qnerve/quantale.hpp"
#include "qnerve/vgraph.hpp"

namespace qnerve {

/// Strict, symmetric, and d(a,c) <= max(d(a,b), d(b,c)) for all triples.
bool is_ultrametric(const VGraph& x, double eps = kEps);

struct InterpolationReport {
  std::size_t a = 0;
  std::size_t b = 0;
  PExponent p = PExponent::one();
  std::vector<std::size_t> witnesses;
  bool feasible = false;
  /// Set for p = inf, which lies outside the range where interpolation
  /// characterizes degree-1 homology.
  bool p_infinite = false;
};

/// Vertices c outside {a, b} with d(a,c) +_p d(c,b) <= d(a,b) (eps-tolerant).
/// Throws InputError when a == b, a vertex is out of range, or d(a,b) = inf.
InterpolationReport interpolators(const VGraph& x, std::size_t a, std::size_t b, PExponent p, double eps = kEps);

using OrderedPair = std::pair<std::size_t, std::size_t>;

/// Ordered pairs at distance r (eps-equal) with no p-interpolator, in
/// lexicographic order. Throws InputError for non-strict x or p = inf.
std::vector<OrderedPair> h1_generators(const VGraph& x, PExponent p, ExtScalar r, double eps = kEps);

/// Smallest p in [1, inf] at which some c p-interpolates (a, b), to within
/// tol. Throws InputError when a == b or d(a,b) is 0 or inf.
PExponent p_critical(const VGraph& x, std::size_t a, std::size_t b, double tol = 1e-6, double eps = kEps);

struct PCriticalRow {
  std::size_t a = 0;
  std::size_t b = 0;
  ExtScalar distance;
  PExponent p_crit = PExponent::one();
};

/// p_critical for every ordered pair with 0 < d(a,b) < inf.
std::vector<PCriticalRow> p_critical_table(const VGraph& x, double tol = 1e-6, double eps = kEps);

}  // namespace qnerve
