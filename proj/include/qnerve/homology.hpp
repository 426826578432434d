#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "qnerve/chain.hpp"
#include "qnerve/nerve.hpp"
#include "qnerve/quantale.hpp"
#include "qnerve/vgraph.hpp"

namespace qnerve {

struct SmithResult {
  std::size_t rank = 0;
  /// Nonzero invariant factors d_1 | d_2 | ... (ones included).
  std::vector<std::int64_t> divisors;
};

/// Rank and elementary divisors over the integers. Works in int64 with
/// overflow checks and restarts in arbitrary precision when a check trips.
/// Throws std::overflow_error only if a final divisor does not fit in int64.
SmithResult smith_normal_form(const IntMatrix& m);

/// Rank over Z/q (q prime).
std::size_t rank_mod(const IntMatrix& m, std::uint32_t q);

class Coefficients {
 public:
  enum class Kind { Integers, PrimeField };

  static Coefficients integers() { return Coefficients(Kind::Integers, 0); }
  /// Throws InputError unless q is a prime below 2^31.
  static Coefficients prime_field(std::uint32_t q);

  Kind kind() const { return kind_; }
  std::uint32_t modulus() const { return q_; }

 private:
  Coefficients(Kind k, std::uint32_t q) : kind_(k), q_(q) {}
  Kind kind_;
  std::uint32_t q_;
};

struct HomologySummary {
  ExtScalar grade;
  std::size_t degree = 0;
  std::size_t rank = 0;
  /// Elementary divisors > 1, sorted, each dividing the next. Always empty
  /// over a field.
  std::vector<std::int64_t> torsion;
  /// Number of degree-n generators at this grade (chain group rank).
  std::size_t chain_rank = 0;

  friend bool operator==(const HomologySummary&, const HomologySummary&) = default;
};

/// H_n of the sieve-localized normalized complex at grade r. Throws
/// InputError when n + 1 > max_dim.
HomologySummary homology_at(const FilteredComplex& fc, std::size_t n, ExtScalar r, const SieveSpec& sieve,
                            Coefficients coeff);

/// Homology for every critical grade (ascending) and every degree in
/// [min_degree, max_degree]. Grades are independent and may be spread over
/// `workers` threads; the result order does not depend on it.
std::vector<HomologySummary> graded_homology(const FilteredComplex& fc, std::size_t min_degree,
                                             std::size_t max_degree, const SieveSpec& sieve, Coefficients coeff,
                                             unsigned workers = 1);

/// Local l^p homology (magnitude homology for p = 1): StrictPredecessors
/// sieve over the integers at every critical grade. Throws InputError when
/// max_dim < max_degree + 1.
std::vector<HomologySummary> magnitude_homology(const VGraph& x, PExponent p, std::size_t min_degree,
                                                std::size_t max_degree, std::size_t max_dim,
                                                const EnumerationOptions& options = {});

/// Degree-n basis generators at grade r whose basis vectors are cycles and
/// are not rational boundaries. Used to read off which ordered pairs generate
/// a freely generated homology group.
std::vector<std::size_t> surviving_basis_generators(const FilteredComplex& fc, std::size_t n, ExtScalar r,
                                                    const SieveSpec& sieve);

struct Bar {
  std::size_t degree = 0;
  ExtScalar birth;
  ExtScalar death;  // infinity for essential classes

  friend bool operator==(const Bar&, const Bar&) = default;
  friend bool operator<(const Bar& a, const Bar& b) {
    if (a.degree != b.degree) return a.degree < b.degree;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  }
};

/// Bars with birth < death, sorted by (degree, birth, death).
struct Barcode {
  std::vector<Bar> bars;

  std::vector<Bar> in_degree(std::size_t d) const;
  friend bool operator==(const Barcode&, const Barcode&) = default;
};

/// Standard column reduction over Z/q on the unlocalized normalized complex.
/// Simplices are ordered by (birth, degree, lexicographic vertices). Throws
/// InputError when max_degree + 1 > max_dim.
Barcode persistence_barcode(const FilteredComplex& fc, std::size_t max_degree, std::uint32_t q = 2);

/// Classical Vietoris-Rips persistence on unordered simplices. Throws
/// InputError unless x is an honest metric space (symmetric, strict, l^1).
Barcode vr_oracle(const VGraph& x, std::size_t max_degree, std::uint32_t q = 2);

}  // namespace qnerve
