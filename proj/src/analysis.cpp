#include "qnerve/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qnerve/errors.hpp"

namespace qnerve {

namespace {

void check_pair(const VGraph& x, std::size_t a, std::size_t b) {
  if (a >= x.size()) throw InputError("vertex index " + std::to_string(a) + " out of range");
  if (b >= x.size()) throw InputError("vertex index " + std::to_string(b) + " out of range");
  if (a == b) throw InputError("pair (" + x.name(a) + ", " + x.name(b) + ") must have distinct endpoints");
}

// Past this the bracket stops doubling; (u/D)^p + (v/D)^p is then taken to
// stay above 1 for every finite p.
constexpr double kBracketCap = 1e15;

}  // namespace

bool is_ultrametric(const VGraph& x, double eps) {
  return x.is_strict(eps) && x.is_symmetric(eps) && is_enriched_category(x, PExponent::infinity(), eps);
}

InterpolationReport interpolators(const VGraph& x, std::size_t a, std::size_t b, PExponent p, double eps) {
  check_pair(x, a, b);
  const ExtScalar d = x(a, b);
  if (d.is_inf()) throw InputError("d(" + x.name(a) + ", " + x.name(b) + ") is infinite");
  InterpolationReport rep;
  rep.a = a;
  rep.b = b;
  rep.p = p;
  rep.p_infinite = p.is_inf();
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (c == a || c == b) continue;
    if (approx_le(tensor(x(a, c), x(c, b), p), d, eps)) rep.witnesses.push_back(c);
  }
  rep.feasible = !rep.witnesses.empty();
  return rep;
}

std::vector<OrderedPair> h1_generators(const VGraph& x, PExponent p, ExtScalar r, double eps) {
  if (p.is_inf()) throw InputError("h1_generators needs a finite p");
  if (!x.is_strict(eps)) throw InputError("h1_generators needs a strict space; apply strictify first");
  std::vector<OrderedPair> out;
  if (r.is_inf()) return out;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < x.size(); ++b) {
      if (a == b || !approx_equal(x(a, b), r, eps)) continue;
      if (!interpolators(x, a, b, p, eps).feasible) out.emplace_back(a, b);
    }
  return out;
}

PExponent p_critical(const VGraph& x, std::size_t a, std::size_t b, double tol, double eps) {
  check_pair(x, a, b);
  const ExtScalar d = x(a, b);
  if (d.is_inf() || d.value() <= eps) {
    throw InputError("p_critical needs 0 < d(" + x.name(a) + ", " + x.name(b) + ") < inf, got " + to_string(d));
  }
  const double D = d.value();
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < x.size(); ++c) {
    if (c == a || c == b) continue;
    const ExtScalar u = x(a, c);
    const ExtScalar v = x(c, b);
    if (u.is_inf() || v.is_inf()) continue;
    if (approx_le(tensor(u, v, PExponent::one()), d, eps)) return PExponent::one();
    if (!(u.value() < D && v.value() < D)) continue;
    const double lu = std::log(u.value() / D);  // -inf when u = 0
    const double lv = std::log(v.value() / D);
    auto f = [&](double p) { return std::exp(p * lu) + std::exp(p * lv); };
    double lo = 1.0;
    double hi = 64.0;
    while (f(hi) > 1.0 && hi < kBracketCap) {
      lo = hi;
      hi *= 2.0;
    }
    if (f(hi) > 1.0) continue;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      (f(mid) > 1.0 ? lo : hi) = mid;
    }
    best = std::min(best, hi);
  }
  if (std::isinf(best)) return PExponent::infinity();
  return PExponent(std::max(1.0, best));
}

std::vector<PCriticalRow> p_critical_table(const VGraph& x, double tol, double eps) {
  std::vector<PCriticalRow> rows;
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < x.size(); ++b) {
      if (a == b) continue;
      const ExtScalar d = x(a, b);
      if (d.is_inf() || d.value() <= eps) continue;
      rows.push_back({a, b, d, p_critical(x, a, b, tol, eps)});
    }
  return rows;
}

}  // namespace qnerve
