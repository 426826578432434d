#include <doctest.h>

#include "suites.hpp"

using namespace qnerve;

namespace {
const std::vector<ExtScalar> k01I{ExtScalar(0), ExtScalar(1), ExtScalar::infinity()};
const std::vector<ExtScalar> k012I{ExtScalar(0), ExtScalar(1), ExtScalar(2), ExtScalar::infinity()};
}  // namespace

TEST_CASE("limits and colimits factor uniquely on two-vertex diagrams") {
  suite::LimitScope scope;
  scope.factors = suite::graphs_up_to(2, k01I);
  scope.apexes = suite::graphs_up_to(1, k01I);
  suite::for_each_graph(2, k01I, [&](const VGraph& g) { scope.apexes.push_back(g); });
  scope.eq_sources = suite::graphs_up_to(2, k01I);
  scope.eq_targets = suite::graphs_up_to(2, k01I);
  scope.ternary = false;
  const auto res = suite::limits(scope);
  INFO(res.first_failure);
  CHECK(res.failures == 0);
  CHECK(res.checks > 1000);
}

TEST_CASE("free category reflects and satisfies the lifting condition on three vertices") {
  std::vector<VGraph> cats;
  suite::for_each_graph(2, k012I, [&](const VGraph& g) {
    if (is_enriched_category(g, PExponent::one())) cats.push_back(g);
  });
  suite::Result res;
  for (std::size_t n = 0; n <= 3; ++n)
    suite::for_each_graph(n, k012I, [&](const VGraph& x) {
      suite::free_and_lifting(x, PExponent::one(), 4, true, res);
      suite::reflection(x, PExponent::one(), cats, res);
    });
  INFO(res.first_failure);
  CHECK(res.failures == 0);
}

TEST_CASE("a non-category fails to lift the offending triangle") {
  VGraph x({"a", "b", "c"});
  x.set(0, 1, ExtScalar(1));
  x.set(1, 2, ExtScalar(1));
  x.set(0, 2, ExtScalar(5));
  const ExtScalar rs[] = {ExtScalar(1), ExtScalar(1)};
  const std::size_t t[] = {0, 1, 2};
  CHECK(is_morphism(gamma_path(rs), x, t));
  CHECK_FALSE(is_morphism(delta_path(rs, PExponent::one()), x, t));
  CHECK(is_morphism(delta_path(rs, PExponent::one()), free_category(x, PExponent::one()), t));
}
