#include "doctest.h"

#include <random>
#include <set>

#include "relaycomp/fixtures.hpp"
#include "relaycomp/graph_build.hpp"
#include "relaycomp/graphalg.hpp"

using namespace relaycomp;

namespace {

Graph cycle(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  Graph g(labels);
  for (std::size_t i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph complete(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  Graph g(labels);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph empty_graph(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  return Graph(labels);
}

Graph random_graph(std::size_t n, double density, std::mt19937_64& rng) {
  Graph g = empty_graph(n);
  std::uniform_real_distribution<double> coin(0, 1);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (coin(rng) < density) g.add_edge(i, j);
  return g;
}

// Definition-by-sweep oracle built on the branch-and-bound routines, used
// to cross-check the subset-DP perfection test.
bool perfect_by_sweep(const Graph& g) {
  const std::size_t n = g.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> keep;
    for (std::size_t v = 0; v < n; ++v)
      if (mask & (std::size_t{1} << v)) keep.push_back(v);
    Graph sub = g.induced(keep);
    if (chromatic_number(sub).chi != clique_number(sub).omega) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("maximal independent sets") {
  auto c5 = cycle(5);
  auto sets = maximal_independent_sets(c5);
  REQUIRE(sets.size() == 5);
  std::set<std::set<std::size_t>> got;
  for (auto& s : sets) got.insert({s.begin(), s.end()});
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(got.count({i, (i + 2) % 5}) == 1);
  }

  auto thr = confusability(fixture("THRESHOLD"), Side::A).graph;
  auto tsets = maximal_independent_sets(thr);
  REQUIRE(tsets.size() == 2);
  CHECK(tsets[0] == std::vector<std::size_t>{0, 1});
  CHECK(tsets[1] == std::vector<std::size_t>{1, 2});

  auto k4 = complete(4);
  CHECK(maximal_independent_sets(k4).size() == 4);

  // Every returned set is independent and inclusion-maximal.
  for (const Graph& g : {c5, thr, k4}) {
    for (auto& s : maximal_independent_sets(g)) {
      CHECK(g.is_independent(s));
      for (std::size_t v = 0; v < g.size(); ++v) {
        bool inside = std::find(s.begin(), s.end(), v) != s.end();
        if (inside) continue;
        auto bigger = s;
        bigger.push_back(v);
        CHECK_FALSE(g.is_independent(bigger));
      }
    }
  }
}

TEST_CASE("chromatic and clique numbers") {
  auto c5 = cycle(5);
  auto chi = chromatic_number(c5);
  CHECK(chi.chi == 3);
  CHECK(clique_number(c5).omega == 2);
  CHECK(is_proper(c5, chi.witness.color_of));

  auto c5_2 = and_power(c5, 2);
  auto chi2 = chromatic_number(c5_2);
  CHECK(chi2.chi == 5);
  CHECK(is_proper(c5_2, chi2.witness.color_of));
  // Independence number of the AND square is 5.
  std::size_t alpha = 0;
  for (auto& s : maximal_independent_sets(c5_2)) alpha = std::max(alpha, s.size());
  CHECK(alpha == 5);

  // Disjoint union of complete rows: chi equals the largest row.
  auto rows = single_decoder_graph(fixture("THRESHOLD"), 1, Side::A);
  CHECK(chromatic_number(rows.graph).chi == 2);

  Limits tight;
  tight.coloring_vertex_cap = 3;
  CHECK_THROWS_AS(chromatic_number(c5, tight), GuardExceeded);
}

TEST_CASE("witness coloring is proper and uses exactly chi colors") {
  for (const auto& name : fixture_names()) {
    auto pg = confusability(fixture(name), Side::A);
    auto res = chromatic_number(pg.graph);
    CAPTURE(name);
    CHECK(is_proper(pg.graph, res.witness.color_of));
    std::set<int> used(res.witness.color_of.begin(), res.witness.color_of.end());
    CHECK(static_cast<int>(used.size()) == res.chi);
    CHECK(clique_number(pg.graph).omega <= res.chi);
  }
}

TEST_CASE("perfection") {
  CHECK(is_perfect(complete(4)));
  CHECK(is_perfect(empty_graph(5)));
  CHECK_FALSE(is_perfect(cycle(5)));
  CHECK(is_perfect(cycle(10)));  // the pentagon f-rook support graph
  CHECK_FALSE(is_perfect(cycle(7)));

  auto rows = single_decoder_graph(fixture("THRESHOLD"), 1, Side::A);
  CHECK(is_perfect(rows.graph));

  Limits tight;
  tight.perfect_vertex_cap = 4;
  CHECK_THROWS_AS(is_perfect(cycle(5), tight), GuardExceeded);
}

TEST_CASE("perfection agrees with the induced-subgraph sweep") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 120; ++trial) {
    std::size_t n = 1 + trial % 5;  // up to 5 vertices exhaustively random
    auto g = random_graph(n, 0.2 + 0.15 * static_cast<double>(trial % 5), rng);
    CAPTURE(trial);
    CHECK(is_perfect(g) == perfect_by_sweep(g));
  }
  for (int trial = 0; trial < 40; ++trial) {
    auto g = random_graph(6, 0.5, rng);
    CAPTURE(trial);
    CHECK(is_perfect(g) == perfect_by_sweep(g));
  }
}

TEST_CASE("connected components") {
  auto thr = confusability(fixture("THRESHOLD"), Side::A);
  auto comps = components_with_mass(thr);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].vertices == std::vector<std::size_t>{0, 2});
  CHECK(comps[0].mass == Rational(2, 3));
  CHECK(comps[1].vertices == std::vector<std::size_t>{1});

  CHECK(connected_components(empty_graph(4)).size() == 4);

  // Full-support source: one complete component per row.
  auto rows = single_decoder_graph(fixture("DSBS_AND(1/4)"), 1, Side::A);
  auto rcomps = connected_components(rows.graph);
  REQUIRE(rcomps.size() == 2);
  for (auto& comp : rcomps) {
    CHECK(comp.size() == 2);
    Graph sub = rows.graph.induced(comp);
    CHECK(sub.edge_count() == 1);
  }
}
