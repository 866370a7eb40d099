#include "doctest.h"

#include <random>
#include <set>

#include "relaycomp/fixtures.hpp"
#include "relaycomp/graph_build.hpp"

using namespace relaycomp;

namespace {

std::set<std::pair<std::size_t, std::size_t>> edge_set(const Graph& g) {
  auto e = g.edges();
  return {e.begin(), e.end()};
}

ProblemInstance constant_f_instance() {
  auto inst = fixture("THRESHOLD");
  for (auto& row : inst.f.values)
    for (auto& v : row) v = "0";
  inst.name = "CONST";
  return inst;
}

Graph cycle(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  Graph g(labels);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

bool is_single_cycle(const Graph& g) {
  if (g.size() < 3 || g.edge_count() != g.size()) return false;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (g.degree(v) != 2) return false;
  return connected_components(g).size() == 1;
}

Graph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  Graph g(labels);
  std::uniform_real_distribution<double> coin(0, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng) < density) g.add_edge(i, j);
  return g;
}

}  // namespace

TEST_CASE("rook graphs") {
  Alphabet two{{"0", "1"}}, five{{"0", "1", "2", "3", "4"}}, one{{"a"}};
  auto g22 = rook_graph(two, two);
  CHECK(g22.size() == 4);
  CHECK(g22.edge_count() == 4);

  Alphabet four{{"0", "1", "2", "3"}};
  auto row = rook_graph(one, four);
  CHECK(row.edge_count() == 6);  // complete on 4 vertices

  auto g55 = rook_graph(five, five);
  for (std::size_t v = 0; v < g55.size(); ++v) CHECK(g55.degree(v) == 8);
}

TEST_CASE("f-modified rook graph of the fixtures") {
  auto pent = f_rook_graph(fixture("PENTAGON"));
  CHECK(pent.graph.size() == 25);
  std::vector<std::size_t> support_vertices;
  for (std::size_t v = 0; v < 25; ++v) {
    if (!pent.mass[v].is_zero()) support_vertices.push_back(v);
    else CHECK(pent.graph.degree(v) == 0);
  }
  REQUIRE(support_vertices.size() == 10);
  CHECK(is_single_cycle(pent.graph.induced(support_vertices)));

  auto f1 = f_rook_graph(fixture("DSBS_F1(1/4)"));
  CHECK(f1.graph.size() == 4);
  CHECK(is_single_cycle(f1.graph));

  auto constant = f_rook_graph(constant_f_instance());
  CHECK(constant.graph.edge_count() == 0);
}

TEST_CASE("confusability graphs") {
  auto pent = confusability(fixture("PENTAGON"), Side::A);
  CHECK(is_single_cycle(pent.graph));
  CHECK(pent.graph.size() == 5);
  auto pentB = confusability(fixture("PENTAGON"), Side::B);
  CHECK(is_single_cycle(pentB.graph));

  auto thr = confusability(fixture("THRESHOLD"), Side::A);
  CHECK(thr.graph.edge_count() == 1);
  CHECK(thr.graph.adjacent(0, 2));  // symbols 1 and 3
  CHECK(thr.graph.degree(1) == 0);

  auto dand = confusability(fixture("DSBS_AND(1/4)"), Side::A);
  CHECK(dand.graph.edge_count() == 1);
}

TEST_CASE("AND and OR powers") {
  auto c5 = cycle(5);
  CHECK(and_power(c5, 1) == c5);
  CHECK(or_power(c5, 1) == c5);

  auto c5_2 = and_power(c5, 2);
  CHECK(c5_2.size() == 25);

  Limits tight;
  tight.product_vertex_cap = 10;
  CHECK_THROWS_AS(and_power(c5, 2, tight), GuardExceeded);
}

TEST_CASE("complement duality of the products") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = random_graph(4, 0.5, rng);
    CHECK(or_power(g, 2).complement() == and_power(g.complement(), 2));
  }
}

TEST_CASE("n-instance graphs") {
  for (const auto& name : fixture_names()) {
    auto inst = fixture(name);
    CAPTURE(name);
    auto restricted = n_instance_graph(inst, 1, Mode::restricted);
    auto unrestricted = n_instance_graph(inst, 1, Mode::unrestricted);
    CHECK(restricted.graph == unrestricted.graph);
    // n = 1 agrees with the f-modified rook graph.
    CHECK(restricted.graph == f_rook_graph(inst).graph);
  }

  for (const auto& name : fixture_names()) {
    auto inst = fixture(name);
    CAPTURE(name);
    auto r2 = n_instance_graph(inst, 2, Mode::restricted);
    auto u2 = n_instance_graph(inst, 2, Mode::unrestricted);
    CHECK(edge_subset(r2.graph, u2.graph));
    // Restricted edges only join vertices of positive product mass.
    for (auto [a, b] : r2.graph.edges()) {
      CHECK_FALSE(r2.mass[a].is_zero());
      CHECK_FALSE(r2.mass[b].is_zero());
    }
  }

  auto thr = fixture("THRESHOLD");
  auto r2 = n_instance_graph(thr, 2, Mode::restricted);
  auto u2 = n_instance_graph(thr, 2, Mode::unrestricted);
  CHECK(u2.graph.edge_count() > r2.graph.edge_count());
  // Unrestricted edges never require positive mass: some edge touches a
  // zero-probability block.
  bool zero_endpoint = false;
  for (auto [a, b] : u2.graph.edges())
    if (u2.mass[a].is_zero() || u2.mass[b].is_zero()) zero_endpoint = true;
  CHECK(zero_endpoint);
}

TEST_CASE("single-decoder graph equals the AND power of its base") {
  for (const auto& name : {"THRESHOLD", "DSBS_XOR(1/4)", "HANKOB"}) {
    auto inst = fixture(name);
    CAPTURE(name);
    auto base = single_decoder_graph(inst, 1, Side::A);
    for (int n = 1; n <= 3; ++n) {
      auto direct = single_decoder_graph(inst, n, Side::A);
      auto powered = and_power(base.graph, n);
      REQUIRE(direct.graph.size() == powered.size());
      CHECK(edge_set(direct.graph) == edge_set(powered));
      CHECK(direct.mass == power_mass(base.mass, n));
    }
  }
}

TEST_CASE("auxiliary graph of the threshold example is a square") {
  auto inst = fixture("THRESHOLD");
  // U1 = {a = {1,2}, b = {2,3}}, split evenly at symbol 2; same for U2.
  AuxFamily u1;
  u1.sets = {{0, 1}, {1, 2}};
  u1.cond = {{Rational(1), Rational(1, 2), Rational(0)},
             {Rational(0), Rational(1, 2), Rational(1)}};
  AuxFamily u2 = u1;
  auto aux = aux_graph(inst, u1, u2);
  CHECK(aux.graph.size() == 4);
  CHECK(aux.graph.edge_count() == 4);
  for (std::size_t v = 0; v < 4; ++v) CHECK(aux.graph.degree(v) == 2);
  // The diagonals (a,c)-(b,d) and (a,d)-(b,c) are the non-edges.
  CHECK_FALSE(aux.graph.adjacent(0, 3));
  CHECK_FALSE(aux.graph.adjacent(1, 2));
  // Vertex masses match the marginalized joint of (U1, U2).
  CHECK(aux.mass[0] == Rational(1, 6));
  CHECK(aux.mass[3] == Rational(1, 6));
  CHECK(aux.mass[1] == Rational(1, 3));
  CHECK(aux.mass[2] == Rational(1, 3));
}

TEST_CASE("auxiliary graph with singleton families reproduces the f-rook graph") {
  auto inst = fixture("PENTAGON");
  std::vector<std::vector<std::size_t>> singles;
  for (std::size_t i = 0; i < 5; ++i) singles.push_back({i});
  std::vector<std::size_t> ident{0, 1, 2, 3, 4};
  AuxFamily u1 = deterministic_family(singles, ident, 5);
  AuxFamily u2 = deterministic_family(singles, ident, 5);
  auto aux = aux_graph(inst, u1, u2);
  auto frook = f_rook_graph(inst);
  REQUIRE(aux.graph.size() == frook.graph.size());
  CHECK(edge_set(aux.graph) == edge_set(frook.graph));
  CHECK(aux.mass == frook.mass);

  auto constant = constant_f_instance();
  std::vector<std::vector<std::size_t>> singles3 = {{0}, {1}, {2}};
  AuxFamily v1 = deterministic_family(singles3, {0, 1, 2}, 3);
  auto aux_const = aux_graph(constant, v1, v1);
  CHECK(aux_const.graph.edge_count() == 0);
}

TEST_CASE("auxiliary family validation") {
  auto inst = fixture("THRESHOLD");
  AuxFamily bad;
  bad.sets = {{0, 2}};  // {1,3} is an edge of the confusability graph
  bad.cond = {{Rational(1), Rational(1), Rational(1)}};
  CHECK_THROWS_AS(aux_graph(inst, bad, bad), InvalidArgument);

  AuxFamily outside;
  outside.sets = {{0, 1}, {1, 2}};
  outside.cond = {{Rational(1), Rational(1, 2), Rational(1, 2)},  // p(a|3) > 0, 3 not in a
                  {Rational(0), Rational(1, 2), Rational(1, 2)}};
  CHECK_THROWS_AS(aux_graph(inst, outside, outside), InvalidArgument);
}

TEST_CASE("graph union, subset and isomorphism") {
  auto f1 = f_rook_graph(fixture("DSBS_F1(1/4)")).graph;
  auto fxor = f_rook_graph(fixture("DSBS_XOR(1/4)")).graph;
  CHECK(f1 == fxor);
  CHECK(isomorphic(f1, fxor).has_value());

  auto f2 = f_rook_graph(fixture("DSBS_F2(1/4)")).graph;
  CHECK_FALSE(isomorphic(f1, f2).has_value());
  CHECK(edge_subset(f2, f1));
  CHECK_FALSE(edge_subset(f1, f2));

  CHECK(graph_union(f1, f1) == f1);
  CHECK(graph_union(f2, f1) == f1);

  auto c6 = cycle(6);
  auto k33 = [&] {
    Graph g(c6.labels());
    for (std::size_t i : {0, 2, 4})
      for (std::size_t j : {1, 3, 5}) g.add_edge(i, j);
    return g;
  }();
  CHECK_FALSE(isomorphic(c6, k33).has_value());

  Limits tight;
  tight.iso_vertex_cap = 4;
  CHECK_THROWS_AS(isomorphic(c6, k33, tight), GuardExceeded);
}
