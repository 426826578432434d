#include <doctest.h>

#include "qnerve/errors.hpp"
#include "qnerve/io.hpp"

using namespace qnerve;

namespace {
const ExtScalar z(0), o(1), t(2);
}

TEST_CASE("csv tables") {
  const VGraph plain = parse_graph("a,b\n0,1\n2,0\n");
  CHECK(plain.vertices() == std::vector<std::string>{"a", "b"});
  CHECK(plain(0, 1) == o);
  CHECK(plain(1, 0) == t);
  const VGraph labelled = parse_graph(",a,b\na,0,inf\nb,1.5,0\n");
  CHECK(labelled(0, 1).is_inf());
  CHECK(labelled(1, 0) == ExtScalar(1.5));
  CHECK(parse_graph("x\n0\n").size() == 1);
  const auto table = parse_csv_table("a,b\n0,\n1,0\n");
  CHECK_FALSE(table.entries[1].has_value());
}

TEST_CASE("csv errors name the entity") {
  CHECK_THROWS_WITH_AS(parse_graph("a,b\n1,1\n1,0\n"), doctest::Contains("a"), InputError);
  CHECK_THROWS_WITH_AS(parse_graph("a,b\n0,x\n1,0\n"), doctest::Contains("x"), InputError);
  CHECK_THROWS_WITH_AS(parse_graph(",a,b\na,0,1\nc,1,0\n"), doctest::Contains("c"), InputError);
  CHECK_THROWS_AS(parse_graph("a,b\n0,1\n"), InputError);
  CHECK_THROWS_AS(parse_graph("a,b\n0,-1\n1,0\n"), InputError);
  CHECK_THROWS_AS(parse_graph("a,b\n0,\n1,0\n"), InputError);
  CHECK_THROWS_AS(parse_graph(""), InputError);
  CHECK_THROWS_AS(parse_graph("a,a\n0,1\n1,0\n"), InputError);
}

TEST_CASE("json tables") {
  const VGraph g = parse_graph(R"({"vertices":["a","b","c"],"edges":[{"from":"a","to":"b","dist":1}],"symmetric":true})");
  CHECK(g(0, 1) == o);
  CHECK(g(1, 0) == o);
  CHECK(g(0, 2).is_inf());
  const VGraph d = parse_graph(R"({"vertices":["a","b"],"edges":[{"from":"a","to":"b","dist":"inf"}],"default":2})");
  CHECK(d(0, 1).is_inf());
  CHECK(d(1, 0) == t);
  CHECK_THROWS_WITH_AS(parse_graph(R"({"vertices":["a"],"edges":[{"from":"a","to":"q","dist":1}]})"),
                       doctest::Contains("q"), InputError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":["a",)"), InputError);
  CHECK_THROWS_AS(parse_graph(R"({"edges":[]})"), InputError);
}

TEST_CASE("automaton json") {
  const auto a = parse_automaton(
      R"({"states":["s0","s1"],"alphabet":{"a":1.5},"transitions":[{"from":"s0","to":"s1","label":"aa"}]})");
  CHECK(a.states.size() == 2);
  CHECK(a.alphabet.at('a') == ExtScalar(1.5));
  CHECK(a.transitions[0].label == "aa");
  CHECK_THROWS_WITH_AS(parse_automaton(R"({"states":["s0"],"alphabet":{"ab":1},"transitions":[]})"),
                       doctest::Contains("ab"), InputError);
  CHECK_THROWS_WITH_AS(
      parse_automaton(R"({"states":["s0"],"alphabet":{"a":1},"transitions":[{"from":"s0","to":"s0","label":"b"}]})"),
      doctest::Contains("b"), InputError);
  CHECK_THROWS_AS(parse_automaton(R"({"states":["s0"],"alphabet":{"a":-1},"transitions":[]})"), InputError);
  CHECK_THROWS_AS(read_automaton_file("/nonexistent/automaton.json"), InputError);
}

TEST_CASE("graphs round trip through both formats") {
  const VGraph g({"p", "q", "r"}, {z, ExtScalar(0.5), ExtScalar::infinity(), t, z, o, o, ExtScalar(3), z});
  CHECK(parse_graph(graph_to_csv(g)) == g);
  CHECK(parse_graph(graph_to_json(g)) == g);
}

TEST_CASE("report writers") {
  const VGraph one({"x"}, {z});
  const auto fc = enumerate_complex(one, PExponent::infinity(), 1);
  const Barcode bc = persistence_barcode(fc, 0);
  CHECK(barcode_to_json(bc) == "[{\"degree\":0,\"birth\":0,\"death\":\"inf\"}]\n");
  CHECK(barcode_to_csv(bc) == "degree,birth,death\n0,0,inf\n");
  const std::string svg = barcode_to_svg(bc, z);
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find("marker-end=\"url(#arrow)\"") != std::string::npos);
  Barcode finite;
  finite.bars = {{1, o, t}};
  CHECK(barcode_to_svg(finite, t).find("marker-end") == std::string::npos);
  std::vector<HomologySummary> rows{{o, 1, 8, {}, 8}, {t, 1, 0, {2, 4}, 4}};
  CHECK(homology_to_csv(rows) == "grade,degree,rank,torsion\n1,1,8,[]\n2,1,0,[2;4]\n");
  CHECK(homology_to_json(rows) ==
        "[{\"grade\":1,\"degree\":1,\"rank\":8,\"torsion\":[]},{\"grade\":2,\"degree\":1,\"rank\":0,\"torsion\":[2,4]}]\n");
  IntMatrix m(2, 2);
  m(0, 1) = -1;
  CHECK(matrix_to_json(m) == "{\"rows\":2,\"cols\":2,\"entries\":[[0,1,-1]]}\n");
  CHECK(complex_to_csv(fc) == "degree,verts,birth\n0,x,0\n");
  CHECK(complex_to_json(fc).find("\"max_dim\": 1") != std::string::npos);
}
