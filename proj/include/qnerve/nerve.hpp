#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qnerve/quantale.hpp"
#include "qnerve/vgraph.hpp"

namespace qnerve {

/// Owning vertex tuple (x_0, ..., x_n) with its birth grade.
struct SimplexTuple {
  std::vector<VertexId> verts;
  ExtScalar birth;

  std::size_t degree() const { return verts.size() - 1; }
};

/// Non-owning view of a tuple stored in a FilteredComplex.
struct TupleView {
  std::span<const VertexId> verts;
  ExtScalar birth;

  std::size_t degree() const { return verts.size() - 1; }
  SimplexTuple to_owned() const { return {std::vector<VertexId>(verts.begin(), verts.end()), birth}; }
};

/// Minimal grade at which `verts` is a simplex of the +_p nerve.
///
/// For finite p this is the longest forward chain x_0 -> ... -> x_n in the
/// p-th power domain: the witness system is an interval LP whose dual optimum
/// is a set of disjoint index intervals. For p = inf it is the largest
/// forward pairwise distance. Any infinite forward distance gives inf.
ExtScalar membership_scale(const VGraph& x, std::span<const VertexId> verts, PExponent p);
/// Name-based overload; throws InputError for unknown vertices or an empty
/// tuple.
ExtScalar membership_scale(const VGraph& x, const std::vector<std::string>& verts, PExponent p);

struct Key128Hash {
  std::size_t operator()(unsigned __int128 k) const noexcept {
    const auto lo = static_cast<std::uint64_t>(k);
    const auto hi = static_cast<std::uint64_t>(k >> 64);
    return std::hash<std::uint64_t>{}(lo ^ (hi * 0x9e3779b97f4a7c15ULL));
  }
};

struct EnumerationOptions {
  /// Emit a warning when |V|^(max_dim+1) exceeds this.
  std::size_t warn_threshold = 2'000'000;
  /// Throw BudgetExceeded once more tuples than this have been produced.
  std::optional<std::size_t> hard_limit;
  std::function<void(const std::string&)> on_warning;
  /// Enumeration is split by leading vertex across this many threads. The
  /// output is canonically ordered, so results do not depend on it.
  unsigned workers = 1;
  double eps = kEps;
};

/// Nondegenerate tuples of the +_p nerve up to max_dim, each with its birth
/// grade. Births are snapped to eps-clustered grade representatives, so the
/// grade list and all birth values compare exactly.
class FilteredComplex {
 public:
  FilteredComplex(VGraph space, PExponent p, std::size_t max_dim);

  const VGraph& space() const { return space_; }
  PExponent p() const { return p_; }
  std::size_t max_dim() const { return max_dim_; }
  /// Sorted, deduplicated finite births; always contains 0 when nonempty.
  const std::vector<ExtScalar>& grades() const { return grades_; }

  std::size_t count(std::size_t degree) const { return births_[degree].size(); }
  TupleView tuple(std::size_t degree, std::size_t i) const;
  /// Index of a stored tuple, or nullopt when the tuple is degenerate or
  /// was never born.
  std::optional<std::size_t> find(std::span<const VertexId> verts) const;
  /// Position of `r` in grades() up to eps.
  std::optional<std::size_t> grade_index(ExtScalar r, double eps = kEps) const;

  std::size_t total_tuples() const;

 private:
  friend FilteredComplex enumerate_complex(const VGraph&, PExponent, std::size_t, const EnumerationOptions&);

  VGraph space_;
  PExponent p_;
  std::size_t max_dim_;
  std::vector<ExtScalar> grades_;
  // Per degree: flattened vertices (stride degree+1) and births, sorted by
  // (birth, lexicographic vertex indices).
  std::vector<std::vector<VertexId>> verts_;
  std::vector<std::vector<ExtScalar>> births_;
  std::vector<std::unordered_map<unsigned __int128, std::size_t, Key128Hash>> lookup_;
};

FilteredComplex enumerate_complex(const VGraph& x, PExponent p, std::size_t max_dim,
                                  const EnumerationOptions& options = {});

/// Sorted eps-deduplicated finite births of the complex; always contains 0.
std::vector<ExtScalar> critical_grades(const VGraph& x, PExponent p, std::size_t max_dim,
                                       const EnumerationOptions& options = {});

/// Tuple with x_i = x_{i+1} for some i.
bool is_degenerate(std::span<const VertexId> verts);

}  // namespace qnerve
