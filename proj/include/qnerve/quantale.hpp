#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>

namespace qnerve {

/// Absolute tolerance used wherever two grades or distances are compared for
/// equality.
inline constexpr double kEps = 1e-9;

/// Extended nonnegative real in [0, inf]. Infinity is a separate state rather
/// than a large float, so that it absorbs exactly under every tensor.
class ExtScalar {
 public:
  constexpr ExtScalar() = default;
  /// Throws InputError for negative or NaN input; +inf maps to infinity().
  ExtScalar(double value);  // NOLINT: implicit on purpose, grades read like numbers

  static constexpr ExtScalar infinity() {
    ExtScalar s;
    s.inf_ = true;
    return s;
  }
  static constexpr ExtScalar zero() { return ExtScalar{}; }

  constexpr bool is_inf() const { return inf_; }
  constexpr bool is_finite() const { return !inf_; }
  /// Finite value; infinity reports +inf as a double.
  double to_double() const;
  /// Finite value. Precondition: is_finite().
  constexpr double value() const { return value_; }

  friend constexpr bool operator==(ExtScalar a, ExtScalar b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(ExtScalar a, ExtScalar b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  double value_ = 0.0;
  bool inf_ = false;
};

/// |a - b| <= eps, with infinity equal only to itself.
inline bool approx_equal(ExtScalar a, ExtScalar b, double eps = kEps) {
  if (a.is_inf() || b.is_inf()) return a.is_inf() && b.is_inf();
  const double d = a.value() - b.value();
  return d <= eps && -d <= eps;
}
/// a <= b + eps.
inline bool approx_le(ExtScalar a, ExtScalar b, double eps = kEps) {
  if (b.is_inf()) return true;
  if (a.is_inf()) return false;
  return a.value() <= b.value() + eps;
}

/// Exponent p in [1, inf] selecting the quantale (R, +_p).
class PExponent {
 public:
  /// Throws InputError unless p >= 1 (or +inf).
  explicit PExponent(double p);
  static PExponent infinity() { return PExponent(kInfTag{}); }
  static PExponent one() { return PExponent(1.0); }

  bool is_inf() const { return inf_; }
  /// Finite exponent. Precondition: !is_inf().
  double value() const { return p_; }
  double to_double() const;

  friend bool operator==(const PExponent& a, const PExponent& b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.p_ == b.p_);
  }
  /// Orders exponents numerically with inf last.
  friend bool operator<(const PExponent& a, const PExponent& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.p_ < b.p_;
  }

 private:
  struct kInfTag {};
  explicit PExponent(kInfTag) : inf_(true) {}
  double p_ = 1.0;
  bool inf_ = false;
};

namespace detail {
// Both arguments finite and positive, 1 < p < inf.
ExtScalar tensor_general(double a, double b, PExponent p);
}

/// r +_p s = (r^p + s^p)^(1/p); max(r, s) for p = inf.
inline ExtScalar tensor(ExtScalar r, ExtScalar s, PExponent p) {
  if (r.is_inf() || s.is_inf()) return ExtScalar::infinity();
  if (r.value() == 0.0) return s;
  if (s.value() == 0.0) return r;
  if (p.is_inf()) return r.value() >= s.value() ? r : s;
  if (p.value() == 1.0) return ExtScalar(r.value() + s.value());
  return detail::tensor_general(r.value(), s.value(), p);
}

/// Left fold of tensor; the empty fold is the unit 0.
ExtScalar tensor_fold(std::span<const ExtScalar> rs, PExponent p);

/// r^p for finite p (the p-th power domain used by the nerve DP); r itself
/// for p = inf, where the fold is max and no power is needed.
double to_power_domain(ExtScalar r, PExponent p);
/// Inverse of to_power_domain on finite values.
ExtScalar from_power_domain(double x, PExponent p);

/// "inf" or a shortest round-trip decimal.
std::string to_string(ExtScalar r);
std::string to_string(PExponent p);
/// Accepts decimal literals and the tokens "inf" / "infinity" (any case).
ExtScalar parse_ext_scalar(std::string_view token);
PExponent parse_p_exponent(std::string_view token);

}  // namespace qnerve
