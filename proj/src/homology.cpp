#include "qnerve/homology.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "qnerve/errors.hpp"

namespace qnerve {

namespace {

// ---------------------------------------------------------------------------
// Integer arithmetic with overflow detection for the int64 pass.

struct Overflow {};

std::int64_t mul_sub(std::int64_t a, std::int64_t q, std::int64_t b) {
  std::int64_t prod = 0;
  std::int64_t out = 0;
  if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out)) throw Overflow{};
  return out;
}
mpz_class mul_sub(const mpz_class& a, const mpz_class& q, const mpz_class& b) { return a - q * b; }

std::int64_t magnitude(std::int64_t v) {
  if (v == std::numeric_limits<std::int64_t>::min()) throw Overflow{};
  return v < 0 ? -v : v;
}
mpz_class magnitude(const mpz_class& v) { return abs(v); }

mpz_class to_mpz(std::int64_t v) { return mpz_class(static_cast<long>(v)); }
mpz_class to_mpz(const mpz_class& v) { return v; }

template <class T>
using SparseCol = std::vector<std::pair<std::size_t, T>>;

// dst -= a * src, both sorted by row.
template <class T>
void sub_scaled(SparseCol<T>& dst, const T& a, const SparseCol<T>& src) {
  SparseCol<T> out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(std::move(dst[i++]));
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      T v = mul_sub(T(0), a, src[j].second);
      out.emplace_back(src[j].first, std::move(v));
      ++j;
    } else {
      T v = mul_sub(dst[i].second, a, src[j].second);
      if (v != 0) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

// Smith normal form: unit pivots are eliminated sparsely first, the
// remaining block is diagonalized densely. Returns unnormalized diagonal.
template <class T>
std::vector<mpz_class> smith_diagonal(const IntMatrix& m) {
  std::vector<mpz_class> diag;
  std::vector<SparseCol<T>> cols(m.cols);
  std::vector<std::vector<std::size_t>> row_cols(m.rows);
  for (std::size_t j = 0; j < m.cols; ++j)
    for (std::size_t i = 0; i < m.rows; ++i)
      if (m(i, j) != 0) {
        cols[j].emplace_back(i, T(m(i, j)));
        row_cols[i].push_back(j);
      }
  std::vector<bool> col_alive(m.cols, true);

  auto value_at = [](const SparseCol<T>& c, std::size_t row) -> const T* {
    auto it = std::lower_bound(c.begin(), c.end(), row, [](const auto& e, std::size_t r) { return e.first < r; });
    return (it != c.end() && it->first == row) ? &it->second : nullptr;
  };

  for (;;) {
    // Unit pivot in the sparsest column that has one.
    std::size_t best_col = m.cols;
    std::size_t best_row = 0;
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (!col_alive[j] || cols[j].empty()) continue;
      if (best_col != m.cols && cols[j].size() >= cols[best_col].size()) continue;
      for (const auto& [row, v] : cols[j])
        if (v == 1 || v == -1) {
          best_col = j;
          best_row = row;
          break;
        }
      if (best_col != m.cols && cols[best_col].size() <= 1) break;
    }
    if (best_col == m.cols) break;
    const T unit = *value_at(cols[best_col], best_row);
    const SparseCol<T> pivot = cols[best_col];
    col_alive[best_col] = false;
    cols[best_col].clear();
    auto touching = row_cols[best_row];
    std::sort(touching.begin(), touching.end());
    touching.erase(std::unique(touching.begin(), touching.end()), touching.end());
    for (std::size_t j : touching) {
      if (!col_alive[j]) continue;
      const T* v = value_at(cols[j], best_row);
      if (!v) continue;
      const T factor = *v * unit;  // unit^-1 == unit
      sub_scaled(cols[j], factor, pivot);
      for (const auto& [row, val] : pivot)
        if (row != best_row) row_cols[row].push_back(j);
    }
    // Row best_row is now zero outside the pivot; drop it everywhere.
    for (std::size_t j = 0; j < m.cols; ++j) {
      if (!col_alive[j]) continue;
      auto& c = cols[j];
      c.erase(std::remove_if(c.begin(), c.end(), [&](const auto& e) { return e.first == best_row; }), c.end());
    }
    row_cols[best_row].clear();
    diag.emplace_back(1);
  }

  // Dense phase on the leftover block.
  std::vector<std::size_t> live_cols;
  std::vector<std::size_t> live_rows;
  {
    std::vector<bool> row_used(m.rows, false);
    for (std::size_t j = 0; j < m.cols; ++j)
      if (col_alive[j] && !cols[j].empty()) {
        live_cols.push_back(j);
        for (const auto& e : cols[j]) row_used[e.first] = true;
      }
    for (std::size_t i = 0; i < m.rows; ++i)
      if (row_used[i]) live_rows.push_back(i);
  }
  const std::size_t R = live_rows.size();
  const std::size_t C = live_cols.size();
  if (R == 0 || C == 0) return diag;
  std::vector<std::size_t> row_pos(m.rows, 0);
  for (std::size_t i = 0; i < R; ++i) row_pos[live_rows[i]] = i;
  std::vector<std::vector<T>> a(R, std::vector<T>(C, T(0)));
  for (std::size_t j = 0; j < C; ++j)
    for (const auto& [row, v] : cols[live_cols[j]]) a[row_pos[row]][j] = v;

  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    for (;;) {
      // Smallest nonzero magnitude in the trailing block goes to (t, t).
      std::size_t pi = R;
      std::size_t pj = C;
      T best(0);
      for (std::size_t i = t; i < R; ++i)
        for (std::size_t j = t; j < C; ++j)
          if (a[i][j] != 0) {
            T mag = magnitude(a[i][j]);
            if (pi == R || mag < best) {
              best = mag;
              pi = i;
              pj = j;
            }
          }
      if (pi == R) return diag;
      std::swap(a[t], a[pi]);
      for (auto& row : a) std::swap(row[t], row[pj]);
      bool clean = true;
      for (std::size_t i = t + 1; i < R; ++i) {
        if (a[i][t] == 0) continue;
        const T q = a[i][t] / a[t][t];
        for (std::size_t j = t; j < C; ++j) a[i][j] = mul_sub(a[i][j], q, a[t][j]);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < C; ++j) {
        if (a[t][j] == 0) continue;
        const T q = a[t][j] / a[t][t];
        for (std::size_t i = t; i < R; ++i) a[i][j] = mul_sub(a[i][j], q, a[i][t]);
        if (a[t][j] != 0) clean = false;
      }
      if (clean) break;
    }
    diag.push_back(to_mpz(magnitude(a[t][t])));
  }
  return diag;
}

std::vector<std::int64_t> normalize_divisors(std::vector<mpz_class> d) {
  for (auto& v : d) v = abs(v);
  std::sort(d.begin(), d.end());
  for (std::size_t i = 0; i < d.size(); ++i)
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), d[i].get_mpz_t(), d[j].get_mpz_t());
      mpz_class l = d[i] / g * d[j];
      d[i] = g;
      d[j] = l;
    }
  std::vector<std::int64_t> out;
  out.reserve(d.size());
  for (const auto& v : d) {
    if (!v.fits_slong_p()) throw std::overflow_error("elementary divisor does not fit in 64 bits");
    out.push_back(v.get_si());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Column reduction over Z/q.

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t q) {
  std::uint64_t r = 1 % q;
  b %= q;
  while (e) {
    if (e & 1) r = r * b % q;
    b = b * b % q;
    e >>= 1;
  }
  return r;
}

using ModCol = std::vector<std::pair<std::size_t, std::uint32_t>>;

class ModReducer {
 public:
  ModReducer(std::size_t rows, std::uint32_t q) : q_(q), pivot_of_row_(rows, -1) {}

  /// Reduces `col` against earlier pivots; returns its low row when nonzero.
  std::optional<std::size_t> add(ModCol col) {
    while (!col.empty()) {
      const auto [low, lv] = col.back();
      const auto k = pivot_of_row_[low];
      if (k < 0) {
        pivot_of_row_[low] = static_cast<std::ptrdiff_t>(reduced_.size());
        reduced_.push_back(std::move(col));
        return low;
      }
      const ModCol& other = reduced_[static_cast<std::size_t>(k)];
      const std::uint64_t inv = pow_mod(other.back().second, q_ - 2, q_);
      const std::uint64_t factor = lv * inv % q_;
      subtract(col, factor, other);
    }
    return std::nullopt;
  }

 private:
  void subtract(ModCol& dst, std::uint64_t factor, const ModCol& src) const {
    ModCol out;
    out.reserve(dst.size() + src.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < dst.size() || j < src.size()) {
      if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
        out.push_back(dst[i++]);
      } else {
        const std::uint64_t s = factor * src[j].second % q_;
        std::uint64_t v = (i < dst.size() && dst[i].first == src[j].first) ? dst[i++].second : 0;
        v = (v + q_ - s) % q_;
        if (v) out.emplace_back(src[j].first, static_cast<std::uint32_t>(v));
        ++j;
      }
    }
    dst = std::move(out);
  }

  std::uint64_t q_;
  std::vector<std::ptrdiff_t> pivot_of_row_;
  std::vector<ModCol> reduced_;
};

std::uint32_t reduce_mod(std::int64_t v, std::uint32_t q) {
  const std::int64_t r = v % static_cast<std::int64_t>(q);
  return static_cast<std::uint32_t>(r < 0 ? r + q : r);
}

bool is_prime(std::uint32_t q) {
  if (q < 2) return false;
  for (std::uint64_t d = 2; d * d <= q; ++d)
    if (q % d == 0) return false;
  return true;
}

struct Cell {
  std::size_t degree;
  ExtScalar birth;
  ModCol boundary;  // indices into the cell order
};

Barcode reduce_filtration(const std::vector<Cell>& cells, std::size_t max_degree, std::uint32_t q) {
  ModReducer reducer(cells.size(), q);
  std::vector<bool> paired(cells.size(), false);
  std::vector<bool> negative(cells.size(), false);
  Barcode out;
  for (std::size_t j = 0; j < cells.size(); ++j) {
    auto low = reducer.add(cells[j].boundary);
    if (!low) continue;
    negative[j] = true;
    paired[*low] = true;
    const Cell& born = cells[*low];
    if (born.degree <= max_degree && born.birth < cells[j].birth) {
      out.bars.push_back({born.degree, born.birth, cells[j].birth});
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (negative[i] || paired[i] || cells[i].degree > max_degree) continue;
    out.bars.push_back({cells[i].degree, cells[i].birth, ExtScalar::infinity()});
  }
  std::sort(out.bars.begin(), out.bars.end());
  return out;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& m) {
  std::vector<mpz_class> diag;
  try {
    diag = smith_diagonal<std::int64_t>(m);
  } catch (const Overflow&) {
    diag = smith_diagonal<mpz_class>(m);
  }
  SmithResult res;
  res.rank = diag.size();
  res.divisors = normalize_divisors(std::move(diag));
  return res;
}

std::size_t rank_mod(const IntMatrix& m, std::uint32_t q) {
  ModReducer reducer(m.rows, q);
  std::size_t rank = 0;
  for (std::size_t j = 0; j < m.cols; ++j) {
    ModCol col;
    for (std::size_t i = 0; i < m.rows; ++i) {
      const auto v = reduce_mod(m(i, j), q);
      if (v) col.emplace_back(i, v);
    }
    if (reducer.add(std::move(col))) ++rank;
  }
  return rank;
}

Coefficients Coefficients::prime_field(std::uint32_t q) {
  if (!is_prime(q) || q >= (1u << 31)) throw InputError("coefficient modulus " + std::to_string(q) + " is not a prime below 2^31");
  return Coefficients(Kind::PrimeField, q);
}

HomologySummary homology_at(const FilteredComplex& fc, std::size_t n, ExtScalar r, const SieveSpec& sieve,
                            Coefficients coeff) {
  if (n + 1 > fc.max_dim()) {
    throw InputError("homology in degree " + std::to_string(n) + " needs max_dim >= " + std::to_string(n + 1) +
                     " (have " + std::to_string(fc.max_dim()) + ")");
  }
  HomologySummary out;
  out.grade = resolve_window(fc, r, sieve).grade;
  out.degree = n;
  out.chain_rank = generators_at(fc, n, r, sieve).size();
  std::size_t rank_in = 0;   // rank of d_n
  std::size_t rank_out = 0;  // rank of d_{n+1}
  if (coeff.kind() == Coefficients::Kind::Integers) {
    if (n >= 1) rank_in = smith_normal_form(boundary_matrix(fc, n, r, sieve)).rank;
    const auto snf = smith_normal_form(boundary_matrix(fc, n + 1, r, sieve));
    rank_out = snf.rank;
    for (auto d : snf.divisors)
      if (d > 1) out.torsion.push_back(d);
  } else {
    if (n >= 1) rank_in = rank_mod(boundary_matrix(fc, n, r, sieve), coeff.modulus());
    rank_out = rank_mod(boundary_matrix(fc, n + 1, r, sieve), coeff.modulus());
  }
  out.rank = out.chain_rank - rank_in - rank_out;
  return out;
}

std::vector<HomologySummary> graded_homology(const FilteredComplex& fc, std::size_t min_degree,
                                             std::size_t max_degree, const SieveSpec& sieve, Coefficients coeff,
                                             unsigned workers) {
  if (max_degree + 1 > fc.max_dim()) {
    throw InputError("homology in degree " + std::to_string(max_degree) + " needs max_dim >= " +
                     std::to_string(max_degree + 1) + " (have " + std::to_string(fc.max_dim()) + ")");
  }
  const auto& grades = fc.grades();
  const std::size_t per_grade = max_degree >= min_degree ? max_degree - min_degree + 1 : 0;
  std::vector<HomologySummary> out(grades.size() * per_grade);
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t g = next++;
      if (g >= grades.size()) return;
      for (std::size_t k = 0; k < per_grade; ++k)
        out[g * per_grade + k] = homology_at(fc, min_degree + k, grades[g], sieve, coeff);
    }
  };
  workers = std::max(1u, workers);
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) threads.emplace_back(work);
    for (auto& t : threads) t.join();
  }
  return out;
}

std::vector<HomologySummary> magnitude_homology(const VGraph& x, PExponent p, std::size_t min_degree,
                                                std::size_t max_degree, std::size_t max_dim,
                                                const EnumerationOptions& options) {
  if (max_dim < max_degree + 1) {
    throw InputError("magnitude homology up to degree " + std::to_string(max_degree) + " needs max_dim >= " +
                     std::to_string(max_degree + 1));
  }
  const auto fc = enumerate_complex(x, p, max_dim, options);
  return graded_homology(fc, min_degree, max_degree, SieveSpec::strict_predecessors(), Coefficients::integers(),
                         options.workers);
}

std::vector<std::size_t> surviving_basis_generators(const FilteredComplex& fc, std::size_t n, ExtScalar r,
                                                    const SieveSpec& sieve) {
  if (n + 1 > fc.max_dim()) {
    throw InputError("degree " + std::to_string(n) + " needs max_dim >= " + std::to_string(n + 1));
  }
  const auto gens = generators_at(fc, n, r, sieve);
  IntMatrix d_in;
  if (n >= 1) d_in = boundary_matrix(fc, n, r, sieve);
  const IntMatrix d_out = boundary_matrix(fc, n + 1, r, sieve);
  const std::size_t base = smith_normal_form(d_out).rank;
  std::vector<std::size_t> out;
  for (std::size_t g = 0; g < gens.size(); ++g) {
    if (n >= 1) {
      bool cycle = true;
      for (std::size_t i = 0; i < d_in.rows; ++i)
        if (d_in(i, g) != 0) cycle = false;
      if (!cycle) continue;
    }
    IntMatrix aug(d_out.rows, d_out.cols + 1);
    for (std::size_t i = 0; i < d_out.rows; ++i) {
      for (std::size_t j = 0; j < d_out.cols; ++j) aug(i, j) = d_out(i, j);
    }
    aug(g, d_out.cols) = 1;
    if (smith_normal_form(aug).rank > base) out.push_back(gens[g]);
  }
  return out;
}

std::vector<Bar> Barcode::in_degree(std::size_t d) const {
  std::vector<Bar> out;
  for (const auto& b : bars)
    if (b.degree == d) out.push_back(b);
  return out;
}

Barcode persistence_barcode(const FilteredComplex& fc, std::size_t max_degree, std::uint32_t q) {
  if (max_degree + 1 > fc.max_dim()) {
    throw InputError("barcode up to degree " + std::to_string(max_degree) + " needs max_dim >= " +
                     std::to_string(max_degree + 1));
  }
  if (!is_prime(q)) throw InputError("field modulus " + std::to_string(q) + " is not prime");
  const std::size_t top = max_degree + 1;
  struct Key {
    ExtScalar birth;
    std::size_t degree;
    std::size_t index;
  };
  std::vector<Key> keys;
  for (std::size_t d = 0; d <= top; ++d)
    for (std::size_t i = 0; i < fc.count(d); ++i) keys.push_back({fc.tuple(d, i).birth, d, i});
  // Within a degree the complex is already in (birth, lex) order.
  std::stable_sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.degree < b.degree;
  });
  std::vector<std::vector<std::size_t>> position(top + 1);
  for (std::size_t d = 0; d <= top; ++d) position[d].resize(fc.count(d));
  for (std::size_t k = 0; k < keys.size(); ++k) position[keys[k].degree][keys[k].index] = k;

  std::vector<Cell> cells;
  cells.reserve(keys.size());
  std::vector<VertexId> face;
  for (const auto& key : keys) {
    Cell cell{key.degree, key.birth, {}};
    if (key.degree > 0) {
      const auto t = fc.tuple(key.degree, key.index);
      face.resize(key.degree);
      for (std::size_t i = 0; i <= key.degree; ++i) {
        if (i > 0 && i < key.degree && t.verts[i - 1] == t.verts[i + 1]) continue;
        std::size_t k = 0;
        for (std::size_t v = 0; v <= key.degree; ++v)
          if (v != i) face[k++] = t.verts[v];
        const auto idx = fc.find(face);
        if (!idx) continue;
        const std::uint32_t coef = (i % 2 == 0) ? 1u % q : q - 1;
        cell.boundary.emplace_back(position[key.degree - 1][*idx], coef);
      }
      std::sort(cell.boundary.begin(), cell.boundary.end());
    }
    cells.push_back(std::move(cell));
  }
  return reduce_filtration(cells, max_degree, q);
}

Barcode vr_oracle(const VGraph& x, std::size_t max_degree, std::uint32_t q) {
  if (!x.is_symmetric() || !x.is_strict() || !is_enriched_category(x, PExponent::one())) {
    throw InputError("Vietoris-Rips oracle needs an honest metric space (symmetric, strict, triangle inequality)");
  }
  if (!is_prime(q)) throw InputError("field modulus " + std::to_string(q) + " is not prime");
  const std::size_t n = x.size();
  const std::size_t max_size = max_degree + 2;
  struct Simplex {
    std::vector<std::size_t> verts;
    ExtScalar birth;
  };
  std::vector<Simplex> simplices;
  std::vector<std::size_t> current;
  // Subsets in lexicographic order with finite diameter.
  auto grow = [&](auto&& self, std::size_t start, ExtScalar diam) -> void {
    for (std::size_t v = start; v < n; ++v) {
      ExtScalar d = diam;
      for (auto u : current) d = std::max(d, x(u, v));
      if (d.is_inf()) continue;
      current.push_back(v);
      simplices.push_back({current, d});
      if (current.size() < max_size) self(self, v + 1, d);
      current.pop_back();
    }
  };
  grow(grow, 0, ExtScalar::zero());
  std::stable_sort(simplices.begin(), simplices.end(), [](const Simplex& a, const Simplex& b) {
    if (a.birth != b.birth) return a.birth < b.birth;
    if (a.verts.size() != b.verts.size()) return a.verts.size() < b.verts.size();
    return a.verts < b.verts;
  });
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t k = 0; k < simplices.size(); ++k) index.emplace(simplices[k].verts, k);
  std::vector<Cell> cells;
  for (const auto& s : simplices) {
    Cell cell{s.verts.size() - 1, s.birth, {}};
    if (s.verts.size() > 1) {
      for (std::size_t i = 0; i < s.verts.size(); ++i) {
        std::vector<std::size_t> face;
        for (std::size_t k = 0; k < s.verts.size(); ++k)
          if (k != i) face.push_back(s.verts[k]);
        const std::uint32_t coef = (i % 2 == 0) ? 1u % q : q - 1;
        cell.boundary.emplace_back(index.at(face), coef);
      }
      std::sort(cell.boundary.begin(), cell.boundary.end());
    }
    cells.push_back(std::move(cell));
  }
  return reduce_filtration(cells, max_degree, q);
}

}  // namespace qnerve
