#include "qnerve/quantale.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

#include "qnerve/errors.hpp"

namespace qnerve {

namespace {

bool is_inf_token(std::string_view token) {
  std::string lower;
  for (char c : token) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return lower == "inf" || lower == "+inf" || lower == "infinity" || lower == "∞";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

}  // namespace

ExtScalar::ExtScalar(double value) {
  if (std::isnan(value)) throw InputError("distance/grade is NaN");
  if (value < 0.0) throw InputError("negative distance/grade " + format_double(value));
  if (std::isinf(value)) {
    inf_ = true;
  } else {
    value_ = value;
  }
}

double ExtScalar::to_double() const {
  return inf_ ? std::numeric_limits<double>::infinity() : value_;
}

PExponent::PExponent(double p) {
  if (std::isnan(p) || p < 1.0) throw InputError("exponent p must lie in [1, inf], got " + format_double(p));
  if (std::isinf(p)) {
    inf_ = true;
  } else {
    p_ = p;
  }
}

double PExponent::to_double() const {
  return inf_ ? std::numeric_limits<double>::infinity() : p_;
}

namespace detail {

ExtScalar tensor_general(double a, double b, PExponent p) {
  if (p.value() == 2.0) return std::hypot(a, b);
  // Scale by the larger argument so the powers cannot overflow.
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi * std::pow(1.0 + std::pow(lo / hi, p.value()), 1.0 / p.value());
}

}  // namespace detail

ExtScalar tensor_fold(std::span<const ExtScalar> rs, PExponent p) {
  ExtScalar acc = ExtScalar::zero();
  for (ExtScalar r : rs) acc = tensor(acc, r, p);
  return acc;
}

double to_power_domain(ExtScalar r, PExponent p) {
  if (r.is_inf()) return std::numeric_limits<double>::infinity();
  if (p.is_inf() || p.value() == 1.0) return r.value();
  return std::pow(r.value(), p.value());
}

ExtScalar from_power_domain(double x, PExponent p) {
  if (std::isinf(x)) return ExtScalar::infinity();
  if (p.is_inf() || p.value() == 1.0) return ExtScalar(x);
  if (p.value() == 2.0) return ExtScalar(std::sqrt(x));
  return ExtScalar(std::pow(x, 1.0 / p.value()));
}

std::string to_string(ExtScalar r) {
  return r.is_inf() ? std::string("inf") : format_double(r.value());
}

std::string to_string(PExponent p) {
  return p.is_inf() ? std::string("inf") : format_double(p.value());
}

ExtScalar parse_ext_scalar(std::string_view token) {
  token = trim(token);
  if (token.empty()) throw InputError("empty distance token");
  if (is_inf_token(token)) return ExtScalar::infinity();
  double v = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw InputError("not a number: '" + std::string(token) + "'");
  }
  return ExtScalar(v);
}

PExponent parse_p_exponent(std::string_view token) {
  token = trim(token);
  if (is_inf_token(token)) return PExponent::infinity();
  double v = 0.0;
  auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc{} || res.ptr != token.data() + token.size()) {
    throw InputError("not an exponent: '" + std::string(token) + "'");
  }
  return PExponent(v);
}

}  // namespace qnerve
