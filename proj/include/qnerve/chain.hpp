#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qnerve/nerve.hpp"
#include "qnerve/quantale.hpp"

namespace qnerve {

enum class SieveKind { Empty, StrictPredecessors, CustomGrid };

/// Grade-indexed sieve J on the critical-grade grid of a complex. Because the
/// grid is totally ordered, a down-closed J_r is a prefix of the grid; a
/// custom sieve stores, per grade index i, the length of that prefix.
class SieveSpec {
 public:
  static SieveSpec empty() { return SieveSpec(SieveKind::Empty, {}); }
  /// J_r = {s : s < r}, the maximal nontrivial sieve.
  static SieveSpec strict_predecessors() { return SieveSpec(SieveKind::StrictPredecessors, {}); }
  /// cutoffs[i] = |J_{grades[i]}|. Throws InputError unless cutoffs[i] <= i
  /// (r is never in J_r) and the cutoffs are nondecreasing.
  static SieveSpec custom(std::vector<std::size_t> cutoffs);
  /// Builds a custom sieve from explicit grade sets J_r (one per grade of the
  /// grid). Throws InputError unless each set is down-closed in the grid,
  /// excludes its own grade, and the sets grow with r.
  static SieveSpec custom_from_sets(const std::vector<ExtScalar>& grades,
                                    const std::vector<std::vector<ExtScalar>>& sets, double eps = kEps);

  SieveKind kind() const { return kind_; }
  const std::vector<std::size_t>& cutoffs() const { return cutoffs_; }

 private:
  SieveSpec(SieveKind kind, std::vector<std::size_t> cutoffs) : kind_(kind), cutoffs_(std::move(cutoffs)) {}
  SieveKind kind_;
  std::vector<std::size_t> cutoffs_;
};

/// Resolved survival rule for one grade: a tuple survives iff its birth is
/// <= grade and it is not born in J_grade.
struct GradeWindow {
  ExtScalar grade;
  /// Births <= killed_through are in J; nullopt when J is empty.
  std::optional<ExtScalar> killed_through;

  bool survives(ExtScalar birth) const {
    if (grade < birth) return false;
    return !killed_through || *killed_through < birth;
  }
};

/// Throws InputError when `r` is not a grid grade of `fc` and the sieve needs
/// one (custom sieves), or when a custom sieve does not match the grid.
GradeWindow resolve_window(const FilteredComplex& fc, ExtScalar r, const SieveSpec& sieve, double eps = kEps);

/// Dense integer matrix with row/column labels (tuple indices in the complex).
struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::int64_t> entries;  // row-major
  std::vector<std::size_t> row_labels;
  std::vector<std::size_t> col_labels;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c, 0) {}

  std::int64_t& operator()(std::size_t i, std::size_t j) { return entries[i * cols + j]; }
  std::int64_t operator()(std::size_t i, std::size_t j) const { return entries[i * cols + j]; }
  bool is_zero() const;

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
};

/// Indices (into fc.tuple(n, .)) of the degree-n generators of the
/// localized complex at grade r, in complex order. Throws InputError when
/// n > max_dim.
std::vector<std::size_t> generators_at(const FilteredComplex& fc, std::size_t n, ExtScalar r,
                                       const SieveSpec& sieve);
std::vector<SimplexTuple> generator_tuples(const FilteredComplex& fc, std::size_t n, ExtScalar r,
                                           const SieveSpec& sieve);

/// Normalized boundary d_n from degree-n generators (columns) to degree-(n-1)
/// generators (rows) at grade r. Degenerate faces and faces born in J_r
/// contribute zero. Throws InputError unless 1 <= n <= max_dim.
IntMatrix boundary_matrix(const FilteredComplex& fc, std::size_t n, ExtScalar r, const SieveSpec& sieve);

}  // namespace qnerve
