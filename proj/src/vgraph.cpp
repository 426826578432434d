#include "qnerve/vgraph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qnerve/errors.hpp"

namespace qnerve {

VGraph::VGraph(std::vector<std::string> vertices) : n_(vertices.size()) {
  auto names = std::make_shared<Names>();
  names->list = std::move(vertices);
  dist_.assign(n_ * n_, ExtScalar::infinity());
  for (std::size_t i = 0; i < n_; ++i) {
    dist_[i * n_ + i] = ExtScalar::zero();
    if (!names->index.emplace(names->list[i], i).second) throw InputError("duplicate vertex '" + names->list[i] + "'");
  }
  names_ = std::move(names);
}

const std::vector<std::string>& VGraph::vertices() const {
  static const std::vector<std::string> none;
  return names_ ? names_->list : none;
}

VGraph::VGraph(std::vector<std::string> vertices, std::vector<ExtScalar> row_major)
    : VGraph(std::move(vertices)) {
  const std::size_t n = n_;
  if (row_major.size() != n * n) {
    throw InputError("distance matrix has " + std::to_string(row_major.size()) + " entries, expected " +
                     std::to_string(n * n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (row_major[i * n + i] != ExtScalar::zero()) {
      throw InputError("nonzero diagonal at " + name(i));
    }
  }
  dist_ = std::move(row_major);
}

ExtScalar VGraph::dist(std::string_view a, std::string_view b) const {
  return (*this)(index_of(a), index_of(b));
}

void VGraph::set(std::size_t a, std::size_t b, ExtScalar d) {
  if (a == b && d != ExtScalar::zero()) throw InputError("nonzero diagonal at " + name(a));
  dist_[a * n_ + b] = d;
}

void VGraph::set(std::string_view a, std::string_view b, ExtScalar d) { set(index_of(a), index_of(b), d); }

std::size_t VGraph::index_of(std::string_view name) const {
  if (!names_) throw InputError("unknown vertex '" + std::string(name) + "'");
  auto it = names_->index.find(std::string(name));
  if (it == names_->index.end()) throw InputError("unknown vertex '" + std::string(name) + "'");
  return it->second;
}

std::optional<std::size_t> VGraph::find(std::string_view name) const {
  if (!names_) return std::nullopt;
  auto it = names_->index.find(std::string(name));
  if (it == names_->index.end()) return std::nullopt;
  return it->second;
}

bool VGraph::is_symmetric(double eps) const {
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      if (!approx_equal((*this)(a, b), (*this)(b, a), eps)) return false;
  return true;
}

bool VGraph::is_strict(double eps) const {
  const std::size_t n = size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && approx_le((*this)(a, b), ExtScalar::zero(), eps)) return false;
  return true;
}

ValidationReport validate(const DistanceTable& table, double eps) {
  ValidationReport report;
  const std::size_t n = table.vertices.size();
  if (table.entries.size() != n * n) {
    report.violations.push_back("matrix has " + std::to_string(table.entries.size()) + " entries, expected " +
                                std::to_string(n * n));
    return report;
  }
  std::unordered_map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i < n; ++i) {
    if (!seen.emplace(table.vertices[i], i).second) {
      report.violations.push_back("duplicate vertex '" + table.vertices[i] + "'");
    }
  }
  bool symmetric = true;
  bool strict = true;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const auto& e = table.entries[a * n + b];
      const std::string pair = table.vertices[a] + "," + table.vertices[b];
      if (!e) {
        report.violations.push_back("missing entry at (" + pair + ")");
        continue;
      }
      if (std::isnan(*e)) {
        report.violations.push_back("NaN entry at (" + pair + ")");
        continue;
      }
      if (*e < 0.0) {
        report.violations.push_back("negative entry at (" + pair + ")");
        continue;
      }
      if (a == b && *e != 0.0) report.violations.push_back("nonzero diagonal at " + table.vertices[a]);
      if (a != b && *e <= eps) strict = false;
      const auto& t = table.entries[b * n + a];
      if (t && !std::isnan(*t)) {
        const bool both_inf = std::isinf(*e) && std::isinf(*t);
        if (!both_inf && !(std::fabs(*e - *t) <= eps)) symmetric = false;
      }
    }
  }
  report.symmetric = symmetric;
  report.strict = strict;
  return report;
}

ValidationReport validate(const VGraph& graph, double eps) {
  ValidationReport report;
  report.symmetric = graph.is_symmetric(eps);
  report.strict = graph.is_strict(eps);
  return report;
}

VGraph to_vgraph(const DistanceTable& table, double eps) {
  auto report = validate(table, eps);
  if (!report.ok()) throw InputError(report.violations.front());
  std::vector<ExtScalar> entries;
  entries.reserve(table.entries.size());
  for (const auto& e : table.entries) entries.emplace_back(*e);
  return VGraph(table.vertices, std::move(entries));
}

GraphMorphism GraphMorphism::from_names(VGraph source, VGraph target,
                                        const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::size_t> map(source.size(), static_cast<std::size_t>(-1));
  for (const auto& [from, to] : pairs) map[source.index_of(from)] = target.index_of(to);
  for (std::size_t v = 0; v < map.size(); ++v) {
    if (map[v] == static_cast<std::size_t>(-1)) throw InputError("morphism undefined on vertex '" + source.name(v) + "'");
  }
  return GraphMorphism{std::move(source), std::move(target), std::move(map)};
}

GraphMorphism GraphMorphism::identity(const VGraph& g) {
  std::vector<std::size_t> map(g.size());
  std::iota(map.begin(), map.end(), std::size_t{0});
  return GraphMorphism{g, g, std::move(map)};
}

bool is_morphism(const VGraph& source, const VGraph& target, std::span<const std::size_t> map, double eps) {
  const std::size_t n = source.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && !approx_le(target(map[a], map[b]), source(a, b), eps)) return false;
  return true;
}

bool check_morphism(const GraphMorphism& f, double eps) {
  if (f.map.size() != f.source.size()) {
    throw InputError("morphism map covers " + std::to_string(f.map.size()) + " of " +
                     std::to_string(f.source.size()) + " source vertices");
  }
  for (std::size_t v = 0; v < f.map.size(); ++v) {
    if (f.map[v] >= f.target.size()) {
      throw InputError("morphism sends '" + f.source.name(v) + "' to an unknown target vertex");
    }
  }
  return is_morphism(f.source, f.target, f.map, eps);
}

bool is_enriched_category(const VGraph& x, PExponent p, double eps) {
  const std::size_t n = x.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const ExtScalar ab = x(a, b);
      if (ab.is_inf()) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (!approx_le(x(a, c), tensor(ab, x(b, c), p), eps)) return false;
    }
  return true;
}

namespace {

std::vector<std::string> path_names(std::size_t count) {
  std::vector<std::string> names;
  names.reserve(count);
  for (std::size_t i = 0; i < count; ++i) names.push_back("x" + std::to_string(i));
  return names;
}

}  // namespace

VGraph gamma_path(std::span<const ExtScalar> rs) {
  VGraph g(path_names(rs.size() + 1));
  for (std::size_t i = 0; i < rs.size(); ++i) g.set(i, i + 1, rs[i]);
  return g;
}

VGraph delta_path(std::span<const ExtScalar> rs, PExponent p) {
  VGraph g(path_names(rs.size() + 1));
  for (std::size_t i = 0; i < rs.size(); ++i) {
    ExtScalar acc = ExtScalar::zero();
    for (std::size_t j = i + 1; j <= rs.size(); ++j) {
      acc = tensor(acc, rs[j - 1], p);
      g.set(i, j, acc);
    }
  }
  return g;
}

VGraph free_category(const VGraph& x, PExponent p) {
  VGraph out = x;
  const std::size_t n = x.size();
  // Floyd-Warshall in the (min, +_p) semiring; +_p is monotone so the usual
  // intermediate-vertex induction goes through. Sub-eps gains are rounding
  // noise from the p-th roots and are ignored so the result is idempotent.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t a = 0; a < n; ++a) {
      const ExtScalar ak = out(a, k);
      if (ak.is_inf() || a == k) continue;
      for (std::size_t b = 0; b < n; ++b) {
        if (a == b) continue;
        const ExtScalar via = tensor(ak, out(k, b), p);
        if (via < out(a, b) && !approx_equal(via, out(a, b))) out.set(a, b, via);
      }
    }
  return out;
}

VGraph product(std::span<const VGraph> factors) {
  std::size_t total = 1;
  for (const auto& f : factors) total *= f.size();
  std::vector<std::string> names;
  names.reserve(total);
  for (std::size_t v = 0; v < total; ++v) {
    auto comps = product_components(factors, v);
    std::string s = "(";
    for (std::size_t i = 0; i < comps.size(); ++i) {
      if (i) s += ",";
      s += factors[i].name(comps[i]);
    }
    names.push_back(s + ")");
  }
  VGraph out(std::move(names));
  std::vector<std::vector<std::size_t>> comps(total);
  for (std::size_t v = 0; v < total; ++v) comps[v] = product_components(factors, v);
  for (std::size_t a = 0; a < total; ++a)
    for (std::size_t b = 0; b < total; ++b) {
      if (a == b) continue;
      ExtScalar sup = ExtScalar::zero();
      for (std::size_t i = 0; i < factors.size(); ++i) sup = std::max(sup, factors[i](comps[a][i], comps[b][i]));
      out.set(a, b, sup);
    }
  return out;
}

std::vector<std::size_t> product_components(std::span<const VGraph> factors, std::size_t v) {
  std::vector<std::size_t> comps(factors.size());
  for (std::size_t i = factors.size(); i-- > 0;) {
    comps[i] = v % factors[i].size();
    v /= factors[i].size();
  }
  return comps;
}

VGraph coproduct(std::span<const VGraph> parts) {
  std::vector<std::string> names;
  std::vector<std::size_t> offset;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    offset.push_back(names.size());
    for (const auto& nm : parts[k].vertices()) names.push_back(std::to_string(k) + ":" + nm);
  }
  VGraph out(std::move(names));
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& part = parts[k];
    for (std::size_t a = 0; a < part.size(); ++a)
      for (std::size_t b = 0; b < part.size(); ++b)
        if (a != b) out.set(offset[k] + a, offset[k] + b, part(a, b));
  }
  return out;
}

namespace {

void require_parallel(const GraphMorphism& f, const GraphMorphism& g) {
  if (!(f.source == g.source) || !(f.target == g.target)) {
    throw InputError("parallel morphisms must share source and target");
  }
  check_morphism(f);
  check_morphism(g);
}

}  // namespace

std::pair<VGraph, GraphMorphism> equalizer(const GraphMorphism& f, const GraphMorphism& g) {
  require_parallel(f, g);
  std::vector<std::size_t> kept;
  for (std::size_t a = 0; a < f.source.size(); ++a)
    if (f.map[a] == g.map[a]) kept.push_back(a);
  std::vector<std::string> names;
  for (auto a : kept) names.push_back(f.source.name(a));
  VGraph sub(std::move(names));
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (i != j) sub.set(i, j, f.source(kept[i], kept[j]));
  GraphMorphism incl{sub, f.source, kept};
  return {std::move(sub), std::move(incl)};
}

std::pair<VGraph, GraphMorphism> quotient(const VGraph& x, std::span<const std::size_t> class_of) {
  const std::size_t n = x.size();
  std::size_t classes = 0;
  for (auto c : class_of) classes = std::max(classes, c + 1);
  std::vector<std::vector<std::size_t>> members(classes);
  for (std::size_t v = 0; v < n; ++v) members[class_of[v]].push_back(v);
  std::vector<std::string> names;
  for (const auto& m : members) {
    if (m.size() == 1) {
      names.push_back(x.name(m.front()));
    } else {
      std::string s = "[";
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (i) s += "=";
        s += x.name(m[i]);
      }
      names.push_back(s + "]");
    }
  }
  VGraph q(std::move(names));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ca = class_of[a];
      const std::size_t cb = class_of[b];
      if (ca != cb && x(a, b) < q(ca, cb)) q.set(ca, cb, x(a, b));
    }
  GraphMorphism proj{x, q, std::vector<std::size_t>(class_of.begin(), class_of.end())};
  return {std::move(q), std::move(proj)};
}

std::pair<VGraph, GraphMorphism> coequalizer(const GraphMorphism& f, const GraphMorphism& g) {
  require_parallel(f, g);
  const std::size_t n = f.target.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto root = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t a = 0; a < f.source.size(); ++a) {
    const auto ra = root(f.map[a]);
    const auto rb = root(g.map[a]);
    if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
  }
  std::vector<std::size_t> label(n, static_cast<std::size_t>(-1));
  std::vector<std::size_t> class_of(n);
  std::size_t next = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto r = root(v);
    if (label[r] == static_cast<std::size_t>(-1)) label[r] = next++;
    class_of[v] = label[r];
  }
  return quotient(f.target, class_of);
}

VGraph asymmetrize(const VGraph& x, std::span<const std::size_t> order) {
  if (!x.is_symmetric()) throw InputError("asymmetrize requires a symmetric graph");
  const std::size_t n = x.size();
  if (order.size() != n) throw InputError("vertex order must list every vertex exactly once");
  std::vector<std::size_t> rank(n, static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < n; ++i) {
    if (order[i] >= n || rank[order[i]] != static_cast<std::size_t>(-1)) {
      throw InputError("vertex order must list every vertex exactly once");
    }
    rank[order[i]] = i;
  }
  VGraph out(x.vertices());
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && rank[a] < rank[b]) out.set(a, b, x(a, b));
  return out;
}

VGraph asymmetrize(const VGraph& x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  return asymmetrize(x, order);
}

}  // namespace qnerve
