#include <doctest.h>

#include <cmath>
#include <random>

#include "qnerve/errors.hpp"
#include "qnerve/quantale.hpp"

using namespace qnerve;

namespace {
const ExtScalar kInfS = ExtScalar::infinity();
}

TEST_CASE("ext scalar construction and ordering") {
  CHECK(ExtScalar(0.0) == ExtScalar::zero());
  CHECK(ExtScalar(std::numeric_limits<double>::infinity()).is_inf());
  CHECK_THROWS_AS(ExtScalar(-1.0), InputError);
  CHECK_THROWS_AS(ExtScalar(std::nan("")), InputError);
  CHECK(ExtScalar(1.0) < ExtScalar(2.0));
  CHECK(ExtScalar(1e300) < kInfS);
  CHECK(kInfS == kInfS);
  CHECK(approx_equal(ExtScalar(1.0), ExtScalar(1.0 + 1e-12)));
  CHECK_FALSE(approx_equal(ExtScalar(1.0), ExtScalar(1.001)));
  CHECK_FALSE(approx_equal(ExtScalar(1.0), kInfS));
  CHECK(approx_le(ExtScalar(1.0 + 1e-12), ExtScalar(1.0)));
  CHECK(approx_le(ExtScalar(5.0), kInfS));
  CHECK_FALSE(approx_le(kInfS, ExtScalar(5.0)));
}

TEST_CASE("p exponent range") {
  CHECK_THROWS_AS(PExponent(0.5), InputError);
  CHECK(PExponent::one().value() == 1.0);
  CHECK(PExponent::infinity().is_inf());
  CHECK(PExponent(2.0) < PExponent::infinity());
  CHECK(parse_p_exponent("inf").is_inf());
  CHECK(parse_p_exponent("1.5").value() == 1.5);
  CHECK_THROWS_AS(parse_p_exponent("0.9"), InputError);
  CHECK_THROWS_AS(parse_p_exponent("abc"), InputError);
}

TEST_CASE("tensor examples") {
  CHECK(tensor(ExtScalar(3), ExtScalar(4), PExponent(2)).value() == doctest::Approx(5.0));
  CHECK(tensor(ExtScalar(1), ExtScalar(2), PExponent::one()).value() == 3.0);
  CHECK(tensor(ExtScalar(1), ExtScalar(2), PExponent::infinity()).value() == 2.0);
  CHECK(tensor(ExtScalar(2), kInfS, PExponent(3)).is_inf());
  CHECK(tensor(ExtScalar(0), ExtScalar(7), PExponent(1.7)).value() == doctest::Approx(7.0));
  // Large p approaches max without overflowing.
  CHECK(tensor(ExtScalar(1e200), ExtScalar(1e200), PExponent(50)).value() == doctest::Approx(1e200 * std::pow(2.0, 1.0 / 50)));
  const ExtScalar parts[] = {ExtScalar(1), ExtScalar(2), ExtScalar(2)};
  CHECK(tensor_fold(parts, PExponent(2)).value() == doctest::Approx(3.0));
  CHECK(tensor_fold({}, PExponent(2)) == ExtScalar::zero());
}

TEST_CASE("tensor is a commutative monoid, monotone, decreasing in p") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 10.0);
  const PExponent ps[] = {PExponent(1), PExponent(1.3), PExponent(2), PExponent(5), PExponent::infinity()};
  for (int it = 0; it < 2000; ++it) {
    const ExtScalar a(u(rng)), b(u(rng)), c(u(rng));
    for (std::size_t k = 0; k < std::size(ps); ++k) {
      const PExponent p = ps[k];
      CHECK(approx_equal(tensor(a, b, p), tensor(b, a, p), 1e-9));
      CHECK(approx_equal(tensor(tensor(a, b, p), c, p), tensor(a, tensor(b, c, p), p), 1e-9));
      CHECK(tensor(a, ExtScalar::zero(), p) == a);
      CHECK(tensor(a, kInfS, p).is_inf());
      CHECK(approx_le(tensor(a, b, p), tensor(a, ExtScalar(b.value() + 1), p)));
      if (k + 1 < std::size(ps)) CHECK(approx_le(tensor(a, b, ps[k + 1]), tensor(a, b, p)));
    }
  }
}

TEST_CASE("power domain round trip") {
  const PExponent p(2.5);
  CHECK(from_power_domain(to_power_domain(ExtScalar(3), p), p).value() == doctest::Approx(3.0));
  CHECK(std::isinf(to_power_domain(kInfS, p)));
  CHECK(from_power_domain(std::numeric_limits<double>::infinity(), p).is_inf());
  CHECK(to_power_domain(ExtScalar(3), PExponent::infinity()) == 3.0);
}

TEST_CASE("scalar text") {
  CHECK(to_string(ExtScalar(1.5)) == "1.5");
  CHECK(to_string(ExtScalar(2)) == "2");
  CHECK(to_string(kInfS) == "inf");
  CHECK(parse_ext_scalar("inf").is_inf());
  CHECK(parse_ext_scalar("infinity").is_inf());
  CHECK(parse_ext_scalar("0.25").value() == 0.25);
  CHECK_THROWS_AS(parse_ext_scalar("-1"), InputError);
  CHECK_THROWS_AS(parse_ext_scalar("x"), InputError);
}
