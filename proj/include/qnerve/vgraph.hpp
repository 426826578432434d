#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qnerve/quantale.hpp"

namespace qnerve {

using VertexId = std::uint32_t;

/// A finite V-graph (generalized metric space): named vertices and a dense,
/// total distance matrix with zero diagonal. No triangle inequality or
/// symmetry is assumed.
class VGraph {
 public:
  VGraph() = default;
  /// All off-diagonal distances start at infinity. Throws InputError on
  /// duplicate vertex names.
  explicit VGraph(std::vector<std::string> vertices);
  /// Row-major matrix. Throws InputError naming the vertex if a diagonal
  /// entry is nonzero.
  VGraph(std::vector<std::string> vertices, std::vector<ExtScalar> row_major);

  std::size_t size() const { return n_; }
  bool empty() const { return n_ == 0; }
  const std::vector<std::string>& vertices() const;
  const std::string& name(std::size_t v) const { return names_->list[v]; }

  ExtScalar operator()(std::size_t a, std::size_t b) const { return dist_[a * n_ + b]; }
  ExtScalar dist(std::string_view a, std::string_view b) const;
  /// Throws InputError when a == b and d != 0.
  void set(std::size_t a, std::size_t b, ExtScalar d);
  void set(std::string_view a, std::string_view b, ExtScalar d);

  /// Throws InputError naming the unknown vertex.
  std::size_t index_of(std::string_view name) const;
  std::optional<std::size_t> find(std::string_view name) const;

  bool is_symmetric(double eps = kEps) const;
  /// d(a, b) = 0 implies a = b (eps-tolerant).
  bool is_strict(double eps = kEps) const;

  friend bool operator==(const VGraph& a, const VGraph& b) {
    return a.dist_ == b.dist_ && a.vertices() == b.vertices();
  }

 private:
  struct Names {
    std::vector<std::string> list;
    std::unordered_map<std::string, std::size_t> index;
  };
  // Shared between copies; only distances are ever modified in place.
  std::shared_ptr<const Names> names_;
  std::size_t n_ = 0;
  std::vector<ExtScalar> dist_;
};

/// Raw parsed input before the V-graph laws are enforced. Entries are plain
/// doubles (+inf allowed); a missing entry is std::nullopt.
struct DistanceTable {
  std::vector<std::string> vertices;
  std::vector<std::optional<double>> entries;  // row-major, size n*n
};

struct ValidationReport {
  std::vector<std::string> violations;
  bool symmetric = false;
  bool strict = false;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const DistanceTable& table, double eps = kEps);
ValidationReport validate(const VGraph& graph, double eps = kEps);
/// Throws InputError carrying the first violation.
VGraph to_vgraph(const DistanceTable& table, double eps = kEps);

/// A vertex map between two V-graphs. The graphs are held by value.
struct GraphMorphism {
  VGraph source;
  VGraph target;
  std::vector<std::size_t> map;

  /// Builds the index map from names; throws InputError for unknown vertices
  /// or a map that is not total on the source.
  static GraphMorphism from_names(VGraph source, VGraph target,
                                  const std::vector<std::pair<std::string, std::string>>& pairs);
  static GraphMorphism identity(const VGraph& g);
};

/// Distance-nonincreasing test X(a,b) >= Y(fa, fb) on raw index maps.
bool is_morphism(const VGraph& source, const VGraph& target, std::span<const std::size_t> map,
                 double eps = kEps);
/// Throws InputError when the map references vertices outside the target or
/// does not cover the source.
bool check_morphism(const GraphMorphism& f, double eps = kEps);

/// X(a,c) <= X(a,b) +_p X(b,c) for all ordered triples.
bool is_enriched_category(const VGraph& x, PExponent p, double eps = kEps);

/// Gamma^n(r_1..r_n): consecutive forward edges r_i, everything else inf.
VGraph gamma_path(std::span<const ExtScalar> rs);
/// Delta^n(r_1..r_n): forward distance between x_i and x_j is the +_p fold of
/// r_{i+1}..r_j; backward inf.
VGraph delta_path(std::span<const ExtScalar> rs, PExponent p);

/// Free (V,+_p)-category on x: all-pairs path closure in the (min, +_p)
/// semiring.
VGraph free_category(const VGraph& x, PExponent p);

/// Cartesian product with componentwise supremum distance. An empty list
/// yields the one-point (terminal) graph. Vertex names are "(a,b,...)" and
/// vertex indices enumerate the first factor slowest.
VGraph product(std::span<const VGraph> factors);
/// Component indices of product vertex `v`.
std::vector<std::size_t> product_components(std::span<const VGraph> factors, std::size_t v);

/// Disjoint union; cross-component distances inf. Vertex names are
/// "k:name" with k the component index; vertices are laid out component by
/// component.
VGraph coproduct(std::span<const VGraph> parts);

/// Sub-V-graph on {a : f(a) = g(a)} with its inclusion into the source.
std::pair<VGraph, GraphMorphism> equalizer(const GraphMorphism& f, const GraphMorphism& g);
/// Quotient of the target by the set-coequalizer relation, with class
/// distances the infimum over representatives, plus the projection.
std::pair<VGraph, GraphMorphism> coequalizer(const GraphMorphism& f, const GraphMorphism& g);

/// Quotient of x by an arbitrary vertex partition, given as a class label per
/// vertex (labels 0..k-1 in order of first appearance). Distances are the
/// infimum over representatives.
std::pair<VGraph, GraphMorphism> quotient(const VGraph& x, std::span<const std::size_t> class_of);

/// Directed Vietoris-Rips companion: keeps X(x,y) when x precedes or equals
/// y in `order` (a permutation of vertex indices, earliest first) and sets
/// inf otherwise. Throws InputError for non-symmetric input.
VGraph asymmetrize(const VGraph& x, std::span<const std::size_t> order);
VGraph asymmetrize(const VGraph& x);

}  // namespace qnerve
