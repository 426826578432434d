#include "qnerve/chain.hpp"

#include <algorithm>

#include "qnerve/errors.hpp"

namespace qnerve {

SieveSpec SieveSpec::custom(std::vector<std::size_t> cutoffs) {
  for (std::size_t i = 0; i < cutoffs.size(); ++i) {
    if (cutoffs[i] > i) {
      throw InputError("sieve at grade index " + std::to_string(i) + " contains its own grade");
    }
    if (i > 0 && cutoffs[i] < cutoffs[i - 1]) {
      throw InputError("sieve at grade index " + std::to_string(i) + " shrinks (sieves must grow with r)");
    }
  }
  return SieveSpec(SieveKind::CustomGrid, std::move(cutoffs));
}

SieveSpec SieveSpec::custom_from_sets(const std::vector<ExtScalar>& grades,
                                      const std::vector<std::vector<ExtScalar>>& sets, double eps) {
  if (sets.size() != grades.size()) {
    throw InputError("custom sieve lists " + std::to_string(sets.size()) + " sets for " +
                     std::to_string(grades.size()) + " grades");
  }
  std::vector<std::size_t> cutoffs;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::vector<bool> member(grades.size(), false);
    for (ExtScalar s : sets[i]) {
      auto it = std::find_if(grades.begin(), grades.end(), [&](ExtScalar g) { return approx_equal(g, s, eps); });
      if (it == grades.end()) throw InputError("sieve grade " + to_string(s) + " is not on the grid");
      member[static_cast<std::size_t>(it - grades.begin())] = true;
    }
    std::size_t k = 0;
    while (k < member.size() && member[k]) ++k;
    for (std::size_t j = k; j < member.size(); ++j) {
      if (member[j]) throw InputError("sieve for grade " + to_string(grades[i]) + " is not down-closed");
    }
    cutoffs.push_back(k);
  }
  return custom(std::move(cutoffs));
}

GradeWindow resolve_window(const FilteredComplex& fc, ExtScalar r, const SieveSpec& sieve, double eps) {
  const auto& grades = fc.grades();
  const auto idx = fc.grade_index(r, eps);
  // Births are snapped to grid values; use the grid value when r is on it so
  // that comparisons are exact.
  const ExtScalar grade = idx ? grades[*idx] : r;
  switch (sieve.kind()) {
    case SieveKind::Empty:
      return {grade, std::nullopt};
    case SieveKind::StrictPredecessors: {
      // Largest grid grade strictly below r.
      auto it = std::lower_bound(grades.begin(), grades.end(), grade);
      if (idx) it = grades.begin() + static_cast<std::ptrdiff_t>(*idx);
      if (it == grades.begin()) return {grade, std::nullopt};
      return {grade, *(it - 1)};
    }
    case SieveKind::CustomGrid: {
      if (!idx) throw InputError("grade " + to_string(r) + " is not a critical grade; custom sieves live on the grid");
      if (sieve.cutoffs().size() != grades.size()) {
        throw InputError("custom sieve has " + std::to_string(sieve.cutoffs().size()) + " entries for " +
                         std::to_string(grades.size()) + " grid grades");
      }
      const std::size_t k = sieve.cutoffs()[*idx];
      if (k == 0) return {grade, std::nullopt};
      return {grade, grades[k - 1]};
    }
  }
  return {grade, std::nullopt};
}

bool IntMatrix::is_zero() const {
  return std::all_of(entries.begin(), entries.end(), [](std::int64_t v) { return v == 0; });
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols != b.rows) throw InputError("matrix product shape mismatch");
  IntMatrix c(a.rows, b.cols);
  c.row_labels = a.row_labels;
  c.col_labels = b.col_labels;
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const std::int64_t v = a(i, k);
      if (v == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) c(i, j) += v * b(k, j);
    }
  return c;
}

std::vector<std::size_t> generators_at(const FilteredComplex& fc, std::size_t n, ExtScalar r,
                                       const SieveSpec& sieve) {
  if (n > fc.max_dim()) {
    throw InputError("degree " + std::to_string(n) + " exceeds max_dim " + std::to_string(fc.max_dim()));
  }
  const auto window = resolve_window(fc, r, sieve);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < fc.count(n); ++i) {
    const ExtScalar b = fc.tuple(n, i).birth;
    if (window.grade < b) break;  // tuples are sorted by birth
    if (window.survives(b)) out.push_back(i);
  }
  return out;
}

std::vector<SimplexTuple> generator_tuples(const FilteredComplex& fc, std::size_t n, ExtScalar r,
                                           const SieveSpec& sieve) {
  std::vector<SimplexTuple> out;
  for (auto i : generators_at(fc, n, r, sieve)) out.push_back(fc.tuple(n, i).to_owned());
  return out;
}

IntMatrix boundary_matrix(const FilteredComplex& fc, std::size_t n, ExtScalar r, const SieveSpec& sieve) {
  if (n < 1 || n > fc.max_dim()) {
    throw InputError("boundary degree " + std::to_string(n) + " outside 1.." + std::to_string(fc.max_dim()));
  }
  const auto window = resolve_window(fc, r, sieve);
  const auto cols = generators_at(fc, n, r, sieve);
  const auto rows = generators_at(fc, n - 1, r, sieve);
  IntMatrix m(rows.size(), cols.size());
  m.row_labels = rows;
  m.col_labels = cols;
  std::vector<std::ptrdiff_t> row_pos(fc.count(n - 1), -1);
  for (std::size_t i = 0; i < rows.size(); ++i) row_pos[rows[i]] = static_cast<std::ptrdiff_t>(i);

  std::vector<VertexId> face(n);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    const auto t = fc.tuple(n, cols[j]);
    for (std::size_t i = 0; i <= n; ++i) {
      // Deleting x_i makes x_{i-1}, x_{i+1} adjacent: degenerate iff equal.
      if (i > 0 && i < n && t.verts[i - 1] == t.verts[i + 1]) continue;
      std::size_t k = 0;
      for (std::size_t v = 0; v <= n; ++v)
        if (v != i) face[k++] = t.verts[v];
      const auto idx = fc.find(face);
      if (!idx) continue;
      if (!window.survives(fc.tuple(n - 1, *idx).birth)) continue;
      const auto pos = row_pos[*idx];
      if (pos < 0) continue;
      m(static_cast<std::size_t>(pos), j) += (i % 2 == 0) ? 1 : -1;
    }
  }
  return m;
}

}  // namespace qnerve
