#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "postman/gen.hpp"
#include "postman/io.hpp"

using namespace postman;

TEST_CASE("parse smallest mixed instance") {
  MixedGraph g = parse_mixed_graph("v 2\ne 0 1 1\n");
  CHECK(g.vertex_count() == 2);
  CHECK(g.edges().size() == 1);
  CHECK(g.arcs().empty());
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 1);
  CHECK(g.edges()[0].weight == 1);
}

TEST_CASE("parse directed triangle") {
  MixedGraph g = parse_mixed_graph("v 3\na 0 1 1\na 1 2 1\na 2 0 1\n");
  CHECK(g.vertex_count() == 3);
  CHECK(g.arcs().size() == 3);
  CHECK(g.edges().empty());
}

TEST_CASE("parse errors carry line numbers") {
  CHECK_THROWS_AS(parse_mixed_graph("v 3\na 0 5 1\n"), ParseError);
  try {
    parse_mixed_graph("v 3\n# fine\na 0 5 1\n");
    FAIL("expected throw");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse_mixed_graph("v 2\ne 0 0 1\n"), ParseError);   // self-loop
  CHECK_THROWS_AS(parse_mixed_graph("v 2\nq 0 1 1\n"), ParseError);   // unknown directive
  CHECK_THROWS_AS(parse_mixed_graph("e 0 1 1\n"), ParseError);        // missing header
  CHECK_THROWS_AS(parse_mixed_graph("v 2\ne 0 1\n"), ParseError);     // arity
  CHECK_THROWS_AS(parse_mixed_graph("v 2\ne 0 x 1\n"), ParseError);   // bad int
}

TEST_CASE("serialize empty graph") {
  CHECK(serialize_mixed_graph(MixedGraph(0)) == "v 0\n");
}

TEST_CASE("mixed round-trip identity on the triangle") {
  MixedGraph g = parse_mixed_graph("v 3\na 0 1 1\ne 1 2 1\na 2 0 1\n");
  MixedGraph h = parse_mixed_graph(serialize_mixed_graph(g));
  CHECK(g == h);
}

TEST_CASE("mixed round-trip on random 50-element instances") {
  std::mt19937_64 rng(7);
  for (int it = 0; it < 20; ++it) {
    MixedGraph g(10);
    for (int i = 0; i < 50; ++i) {
      int u = static_cast<int>(rng() % 10), v = static_cast<int>(rng() % 10);
      if (u == v) continue;
      long long w = 1 + static_cast<long long>(rng() % 9);
      if (rng() % 2) g.add_edge(u, v, w);
      else g.add_arc(u, v, w);
    }
    CHECK(parse_mixed_graph(serialize_mixed_graph(g)) == g);
  }
}

TEST_CASE("pbs parse and pair invariants") {
  PbsInstance p = parse_pbs_instance("v 2\na 0 1 -1\na 1 0 0\n");
  CHECK(p.vertex_count() == 2);
  CHECK(p.arc_count() == 2);
  CHECK(p.double_pairs().empty());

  // double pair with mismatched endpoints
  CHECK_THROWS_AS(parse_pbs_instance("v 3\na 0 1 0\na 0 2 0\nd 0 1\n"), ParseError);
  // forbidden pair that is not mutually reverse
  CHECK_THROWS_AS(parse_pbs_instance("v 3\na 0 1 -1\na 0 1 -1\nf 0 1\n"), ParseError);
  // unknown arc id
  CHECK_THROWS_AS(parse_pbs_instance("v 2\na 0 1 0\nd 0 7\n"), ParseError);
  // overlapping pairs
  CHECK_THROWS_AS(
      parse_pbs_instance("v 2\na 0 1 0\na 0 1 0\na 0 1 0\nd 0 1\nd 1 2\n"), ParseError);
  // double and forbidden pairs must be disjoint
  CHECK_THROWS_AS(
      parse_pbs_instance("v 2\na 0 1 0\na 0 1 0\na 1 0 0\nd 0 1\nf 0 2\n"), ParseError);
}

TEST_CASE("pbs round-trip") {
  PbsInstance p = parse_pbs_instance(
      "v 4\na 0 1 0\na 0 1 0\na 1 2 1\na 2 1 -1\na 1 2 -1\nd 0 1\nf 3 4\n");
  CHECK(parse_pbs_instance(serialize_pbs_instance(p)) == p);
}

TEST_CASE("colored graph parse, round-trip, invariants") {
  ColoredGraph cg = parse_colored_graph("k 2\nc 1 0\nc 2 1\ne 0 1\n");
  CHECK(cg.k() == 2);
  CHECK(cg.vertex_count() == 2);
  CHECK(cg.edges().size() == 1);
  CHECK(cg.edges()[0].index == 1);
  CHECK(parse_colored_graph(serialize_colored_graph(cg)) == cg);

  // edge inside a class
  CHECK_THROWS_AS(parse_colored_graph("k 2\nc 1 0\nc 1 1\ne 0 1\n"), ParseError);
  // vertex in two classes
  CHECK_THROWS_AS(parse_colored_graph("k 2\nc 1 0\nc 2 0\n"), ParseError);
  // gap in the dense vertex numbering
  CHECK_THROWS_AS(parse_colored_graph("k 2\nc 1 0\nc 2 2\ne 0 2\n"), InstanceError);
}

TEST_CASE("validate_mcpp_instance") {
  // single undirected edge: ok
  CHECK(!validate_mcpp_instance(parse_mixed_graph("v 2\ne 0 1 1\n")));
  // single arc: witness (head, tail) = (1, 0)
  auto w = validate_mcpp_instance(parse_mixed_graph("v 2\na 0 1 1\n"));
  REQUIRE(w.has_value());
  CHECK(((w->first == 1 && w->second == 0) || (w->first == 0 && w->second == 1)));
  // directed triangle: ok
  CHECK(!validate_mcpp_instance(parse_mixed_graph("v 3\na 0 1 1\na 1 2 1\na 2 0 1\n")));
}

TEST_CASE("serialization round-trip property over random instances") {
  for (uint64_t seed = 1; seed <= 25; ++seed) {
    MixedGraph g = gen_random_mixed(5, 8, seed);
    CHECK(parse_mixed_graph(serialize_mixed_graph(g)) == g);
    PbsInstance p = gen_random_pbs_restricted(4, 2, 2, 1, 1, seed);
    CHECK(parse_pbs_instance(serialize_pbs_instance(p)) == p);
    ColoredGraph cg = gen_random_colored(3, 2, 50, seed);
    CHECK(parse_colored_graph(serialize_colored_graph(cg)) == cg);
  }
}
