#include <doctest.h>

#include <cmath>
#include <random>

#include "generators.hpp"
#include "oracles.hpp"
#include "qnerve/errors.hpp"
#include "qnerve/vgraph.hpp"

using namespace qnerve;

namespace {

const ExtScalar I = ExtScalar::infinity();

VGraph make(std::vector<std::string> names, std::vector<ExtScalar> m) { return VGraph(std::move(names), std::move(m)); }

DistanceTable table(std::vector<std::string> names, std::vector<std::optional<double>> e) {
  return DistanceTable{std::move(names), std::move(e)};
}

}  // namespace

TEST_CASE("validate reports violations and flags") {
  auto bad = validate(table({"a", "b"}, {1.0, 2.0, 2.0, 0.0}));
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.violations.front() == "nonzero diagonal at a");

  auto good = validate(table({"a", "b"}, {0.0, 2.0, 2.0, 0.0}));
  CHECK(good.ok());
  CHECK(good.symmetric);
  CHECK(good.strict);

  auto weak = validate(table({"a", "b"}, {0.0, 0.0, 1.0, 0.0}));
  CHECK(weak.ok());
  CHECK_FALSE(weak.strict);
  CHECK_FALSE(weak.symmetric);

  auto missing = validate(table({"a", "b"}, {0.0, std::nullopt, 1.0, 0.0}));
  CHECK_FALSE(missing.ok());
  auto negative = validate(table({"a", "b"}, {0.0, -1.0, 1.0, 0.0}));
  CHECK_FALSE(negative.ok());
  CHECK_THROWS_AS(to_vgraph(table({"a", "a"}, {0.0, 1.0, 1.0, 0.0})), InputError);
  CHECK_THROWS_WITH_AS(to_vgraph(table({"a", "b"}, {0.0, 1.0, 1.0, 3.0})), "nonzero diagonal at b", InputError);
}

TEST_CASE("vertex lookup names the missing vertex") {
  VGraph g({"a", "b"});
  CHECK_THROWS_WITH_AS(g.index_of("zz"), "unknown vertex 'zz'", InputError);
  CHECK_THROWS_AS(g.set(0, 0, ExtScalar(1)), InputError);
  CHECK(g(0, 1).is_inf());
}

TEST_CASE("morphism checks") {
  const VGraph x = make({"a", "b"}, {0, 1, 1, 0});
  const VGraph y = make({"u", "v"}, {0, 2, 2, 0});
  CHECK(check_morphism(GraphMorphism::identity(x)));
  CHECK(check_morphism(GraphMorphism::from_names(x, y, {{"a", "u"}, {"b", "u"}})));
  CHECK_FALSE(check_morphism(GraphMorphism::from_names(x, y, {{"a", "u"}, {"b", "v"}})));
  CHECK_THROWS_AS(GraphMorphism::from_names(x, y, {{"a", "u"}}), InputError);
  CHECK_THROWS_AS(GraphMorphism::from_names(x, y, {{"a", "u"}, {"b", "w"}}), InputError);
  CHECK_THROWS_AS(check_morphism(GraphMorphism{x, y, {0, 5}}), InputError);
}

TEST_CASE("enriched category examples") {
  const ExtScalar r12[] = {ExtScalar(1), ExtScalar(2)};
  CHECK(is_enriched_category(delta_path(r12, PExponent::one()), PExponent::one()));
  const VGraph bad = make({"0", "1", "2"}, {0, 1, 5, I, 0, 1, I, I, 0});
  CHECK_FALSE(is_enriched_category(bad, PExponent::one()));
  const VGraph ultra = make({"a", "b", "c"}, {0, 2, 2, 2, 0, 1, 2, 1, 0});
  CHECK(is_enriched_category(ultra, PExponent::infinity()));
}

TEST_CASE("path objects") {
  const VGraph g0 = gamma_path({});
  CHECK(g0.size() == 1);
  const ExtScalar r12[] = {ExtScalar(1), ExtScalar(2)};
  const VGraph g = gamma_path(r12);
  CHECK(g(0, 1).value() == 1);
  CHECK(g(1, 2).value() == 2);
  CHECK(g(0, 2).is_inf());
  CHECK(g(1, 0).is_inf());
  const ExtScalar r5[] = {ExtScalar(5)};
  CHECK(gamma_path(r5)(1, 0).is_inf());
  CHECK(delta_path(r12, PExponent::one())(0, 2).value() == 3);
  CHECK(delta_path(r12, PExponent(2))(0, 2).value() == doctest::Approx(std::sqrt(5.0)));
  CHECK(delta_path(r12, PExponent::infinity())(0, 2).value() == 2);
  CHECK(delta_path(r12, PExponent::one())(2, 0).is_inf());
}

TEST_CASE("free category examples") {
  const ExtScalar r12[] = {ExtScalar(1), ExtScalar(2)};
  CHECK(free_category(gamma_path(r12), PExponent::one()) == delta_path(r12, PExponent::one()));
  const VGraph x = make({"0", "1", "2"}, {0, 1, 5, I, 0, 1, I, I, 0});
  CHECK(free_category(x, PExponent::one())(0, 2).value() == 2);
  CHECK(free_category(x, PExponent(2))(0, 2).value() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("free category properties on random graphs") {
  std::mt19937_64 rng(11);
  const std::vector<ExtScalar> vals{ExtScalar(0), ExtScalar(0.5), ExtScalar(1), ExtScalar(2.5), I};
  const PExponent ps[] = {PExponent(1), PExponent(1.5), PExponent(2), PExponent::infinity()};
  for (int it = 0; it < 300; ++it) {
    const VGraph x = gen::graph(rng, 2 + it % 5, vals);
    for (auto p : ps) {
      const VGraph f = free_category(x, p);
      CHECK(is_enriched_category(f, p));
      CHECK(free_category(f, p) == f);
      CHECK(check_morphism(GraphMorphism{x, f, [&] {
        std::vector<std::size_t> id(x.size());
        for (std::size_t i = 0; i < id.size(); ++i) id[i] = i;
        return id;
      }()}));
      // Free over a weaker tensor after a stronger one equals the direct free.
      CHECK(free_category(free_category(x, PExponent::one()), p) == f);
    }
    // A q-category is a p-category for p <= q.
    for (std::size_t i = 0; i < std::size(ps); ++i)
      for (std::size_t j = i; j < std::size(ps); ++j)
        if (is_enriched_category(x, ps[j])) CHECK(is_enriched_category(x, ps[i]));
  }
}

TEST_CASE("products and coproducts") {
  const ExtScalar r1[] = {ExtScalar(1)};
  const ExtScalar r2[] = {ExtScalar(2)};
  const VGraph a = gamma_path(r1);
  const VGraph b = gamma_path(r2);
  const VGraph ab[] = {a, b};
  const VGraph p = product(ab);
  CHECK(p.size() == 4);
  CHECK(p.dist("(x0,x0)", "(x1,x1)").value() == 2);
  CHECK(p.dist("(x0,x0)", "(x1,x0)").value() == 1);
  CHECK(product_components(ab, 1) == std::vector<std::size_t>{0, 1});
  CHECK(product({}).size() == 1);

  const VGraph pt = gamma_path({});
  const VGraph a_pt[] = {a, pt};
  const VGraph ap = product(a_pt);
  REQUIRE(ap.size() == a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) CHECK(ap(i, j) == a(i, j));

  CHECK(coproduct({}).size() == 0);
  const VGraph two[] = {pt, pt};
  const VGraph c = coproduct(two);
  CHECK(c.size() == 2);
  CHECK(c(0, 1).is_inf());
  CHECK(c.name(1) == "1:x0");
  const VGraph one[] = {a};
  const VGraph c1 = coproduct(one);
  CHECK(c1(0, 1) == a(0, 1));
}

TEST_CASE("equalizer and coequalizer examples") {
  const VGraph src = make({"a", "b"}, {0, 3, 3, 0});
  const VGraph tgt = make({"u", "v"}, {0, 1, 1, 0});
  const auto f = GraphMorphism::from_names(src, tgt, {{"a", "u"}, {"b", "u"}});
  const auto g = GraphMorphism::from_names(src, tgt, {{"a", "u"}, {"b", "v"}});
  auto [e_same, inc_same] = equalizer(f, f);
  CHECK(e_same.size() == 2);
  auto [e, inc] = equalizer(f, g);
  REQUIRE(e.size() == 1);
  CHECK(e.name(0) == "a");
  CHECK(check_morphism(inc));
  const auto h = GraphMorphism::from_names(src, tgt, {{"a", "v"}, {"b", "v"}});
  CHECK(equalizer(f, h).first.size() == 0);

  const VGraph t3 = make({"u", "v", "w"}, {0, 4, 3, 4, 0, 1, 3, 1, 0});
  const VGraph pt = make({"*"}, {0});
  const auto pu = GraphMorphism::from_names(pt, t3, {{"*", "u"}});
  const auto pv = GraphMorphism::from_names(pt, t3, {{"*", "v"}});
  auto [q, proj] = coequalizer(pu, pv);
  REQUIRE(q.size() == 2);
  CHECK(q.dist("[u=v]", "w").value() == 1);
  CHECK(check_morphism(proj));
  auto [q_id, _] = coequalizer(GraphMorphism::identity(t3), GraphMorphism::identity(t3));
  CHECK(q_id == t3);

  const VGraph far = make({"p", "q"}, {0, I, I, 0});
  const auto fp = GraphMorphism::from_names(pt, far, {{"*", "p"}});
  const auto fq = GraphMorphism::from_names(pt, far, {{"*", "q"}});
  auto [qq, __] = coequalizer(fp, fq);
  REQUIRE(qq.size() == 1);
  CHECK(qq(0, 0) == ExtScalar::zero());

  CHECK_THROWS_AS(equalizer(f, pu), InputError);
  CHECK_THROWS_AS(coequalizer(f, pu), InputError);
}

TEST_CASE("asymmetrize") {
  const VGraph x = make({"a", "b"}, {0, 5, 5, 0});
  const VGraph d = asymmetrize(x);
  CHECK(d(0, 1).value() == 5);
  CHECK(d(1, 0).is_inf());
  CHECK(d(0, 0) == ExtScalar::zero());
  const std::size_t rev[] = {1, 0};
  const VGraph r = asymmetrize(x, rev);
  CHECK(r(1, 0).value() == 5);
  CHECK(r(0, 1).is_inf());
  CHECK_THROWS_AS(asymmetrize(make({"a", "b"}, {0, 1, 2, 0})), InputError);
  const std::size_t bad_order[] = {0, 0};
  CHECK_THROWS_AS(asymmetrize(x, bad_order), InputError);
}

TEST_CASE("free category agrees with simple-path enumeration") {
  std::mt19937_64 rng(13);
  const std::vector<ExtScalar> vals{ExtScalar(0), ExtScalar(0.5), ExtScalar(1), ExtScalar(2.5), ExtScalar(4), I};
  std::vector<double> want;
  for (int it = 0; it < 200; ++it) {
    const VGraph x = gen::graph(rng, 1 + it % 6, vals);
    for (double p : {1.0, 1.5, 2.0, oracle::kInf}) {
      const VGraph f = free_category(x, PExponent(p));
      oracle::path_closure(x, p, want);
      for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < x.size(); ++b) {
          const double w = want[a * x.size() + b];
          if (std::isinf(w)) {
            CHECK(f(a, b).is_inf());
          } else {
            CHECK(f(a, b).value() == doctest::Approx(w).epsilon(1e-9));
          }
        }
    }
  }
}
