#include "doctest.h"

#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "relaycomp/color_cover.hpp"
#include "relaycomp/fixtures.hpp"
#include "relaycomp/generators.hpp"
#include "relaycomp/graph_entropy.hpp"
#include "relaycomp/regions.hpp"
#include "relaycomp/verify.hpp"

using namespace relaycomp;

namespace {

// phi_A = 1{x=1}, phi_B = 1{y=1}, phi_C = 1{phi_A = phi_B}: zero-error at
// both nodes on the threshold instance, yet ambiguous at the relay.
Scheme threshold_counterexample() {
  Scheme s;
  s.n = 1;
  s.phi_a = {"1", "0", "0"};
  s.phi_b = {"1", "0", "0"};
  for (const char* wa : {"0", "1"})
    for (const char* wb : {"0", "1"})
      s.phi_c[{wa, wb}] = (wa == wb) ? "1" : "0";
  return s;
}

ColorCover identity_cover(const ProblemInstance& inst, Mode mode) {
  // Singleton source colorings, relay color from the minimum-entropy proper
  // coloring of the n-instance graph.
  auto pg = n_instance_graph(inst, 1, mode);
  auto ce = chromatic_entropy(pg);
  ColorCover cover;
  cover.n = 1;
  for (std::size_t i = 0; i < inst.nx(); ++i) cover.c_a.push_back(static_cast<int>(i));
  for (std::size_t i = 0; i < inst.ny(); ++i) cover.c_b.push_back(static_cast<int>(i));
  cover.c_c = ce.coloring->color_of;
  return cover;
}

// Independent re-enumeration of all n = 1 color covers by a naive triple
// loop over set partitions with explicit refinement checking.
std::set<std::array<long long, 3>> naive_cover_corners(const ProblemInstance& inst,
                                                       Mode mode) {
  auto pg = n_instance_graph(inst, 1, mode);
  const std::size_t nx = inst.nx(), ny = inst.ny();
  auto edges = pg.graph.edges();
  auto mx = inst.pmf.marginal_x();
  auto my = inst.pmf.marginal_y();
  std::set<std::array<long long, 3>> corners;

  for_each_partition(nx * ny, [&](const std::vector<int>& cc, int kc) {
    for (auto [u, v] : edges)
      if (cc[u] == cc[v]) return true;  // c_c must be proper
    for_each_partition(nx, [&](const std::vector<int>& ca, int ka) {
      for_each_partition(ny, [&](const std::vector<int>& cb, int kb) {
        for (auto [u, v] : edges) {
          if (ca[u / ny] == ca[v / ny] && cb[u % ny] == cb[v % ny]) return true;
        }
        // Refinement: same (ca, cb) implies same cc.
        std::map<std::pair<int, int>, int> theta;
        for (std::size_t xi = 0; xi < nx; ++xi)
          for (std::size_t yi = 0; yi < ny; ++yi) {
            auto [it, fresh] =
                theta.emplace(std::make_pair(ca[xi], cb[yi]), cc[xi * ny + yi]);
            if (!fresh && it->second != cc[xi * ny + yi]) return true;
          }
        std::vector<Rational> am(static_cast<std::size_t>(ka), Rational(0)),
            bm(static_cast<std::size_t>(kb), Rational(0)),
            cm(static_cast<std::size_t>(kc), Rational(0));
        for (std::size_t xi = 0; xi < nx; ++xi)
          am[static_cast<std::size_t>(ca[xi])] += mx[xi];
        for (std::size_t yi = 0; yi < ny; ++yi)
          bm[static_cast<std::size_t>(cb[yi])] += my[yi];
        for (std::size_t v = 0; v < nx * ny; ++v)
          cm[static_cast<std::size_t>(cc[v])] += pg.mass[v];
        corners.insert({std::llround(entropy_bits(std::span<const Rational>(am)) * 1e10),
                        std::llround(entropy_bits(std::span<const Rational>(bm)) * 1e10),
                        std::llround(entropy_bits(std::span<const Rational>(cm)) * 1e10)});
        return true;
      });
      return true;
    });
    return true;
  });
  return corners;
}

}  // namespace

TEST_CASE("prefix codes") {
  CHECK(prefix_free({"0", "10", "11"}));
  CHECK(prefix_free({"0", "0", "10"}));  // repeats allowed
  CHECK_FALSE(prefix_free({"0", "01"}));
  CHECK(prefix_free({""}));
  CHECK_FALSE(prefix_free({"", "0"}));

  std::vector<Rational> mass{Rational(1, 2), Rational(1, 4), Rational(1, 4)};
  auto codes = huffman_codes(mass);
  REQUIRE(codes.size() == 3);
  CHECK(prefix_free(codes));
  CHECK(codes[0].size() == 1);
  CHECK(codes[1].size() == 2);
  CHECK(codes[2].size() == 2);
  CHECK(huffman_codes({Rational(1)}) == std::vector<std::string>{""});
}

TEST_CASE("scheme rates") {
  // Single-symbol alphabets with empty codewords: all rates zero.
  ProblemInstance tiny;
  tiny.pmf.x_alpha = {{"a"}};
  tiny.pmf.y_alpha = {{"b"}};
  tiny.pmf.mass = {{Rational(1)}};
  tiny.f.z_alpha = {{"z"}};
  tiny.f.values = {{"z"}};
  Scheme s0;
  s0.n = 1;
  s0.phi_a = {""};
  s0.phi_b = {""};
  s0.phi_c[{"", ""}] = "";
  auto r0 = scheme_rates(s0, tiny);
  CHECK(r0.a == Rational(0));
  CHECK(r0.c == Rational(0));

  // Fixed two-bit relay word on the pentagon.
  auto pent = fixture("PENTAGON");
  ColorCover cover = identity_cover(pent, Mode::restricted);
  Scheme s = scheme_from_color_cover(cover, pent, Mode::restricted);
  for (auto& [key, word] : s.phi_c) word = "00";
  auto r = scheme_rates(s, pent);
  CHECK(r.c == Rational(2));
}

TEST_CASE("verify zero error on the pentagon") {
  auto pent = fixture("PENTAGON");
  ColorCover cover = identity_cover(pent, Mode::restricted);
  Scheme s = scheme_from_color_cover(cover, pent, Mode::restricted);
  auto rep = verify_zero_error(s, pent, Mode::restricted);
  CHECK(rep.decodable_at_a);
  CHECK(rep.decodable_at_b);
  CHECK(rep.error_prob == Rational(0));

  // Constant relay word on a nonconstant function: not decodable.
  Scheme bad = s;
  for (auto& [key, word] : bad.phi_c) word = "";
  auto brep = verify_zero_error(bad, pent, Mode::restricted);
  CHECK_FALSE(brep.decodable_at_a);
  CHECK(brep.witness_a.has_value());
  CHECK(brep.error_prob > Rational(0));
}

TEST_CASE("threshold counterexample: zero-error but relay-ambiguous") {
  auto thr = fixture("THRESHOLD");
  Scheme s = threshold_counterexample();
  auto rep = verify_zero_error(s, thr, Mode::restricted);
  CHECK(rep.decodable_at_a);
  CHECK(rep.decodable_at_b);
  CHECK(rep.error_prob == Rational(0));

  auto relay = relay_computability(s, thr);
  CHECK_FALSE(relay.computable);
  REQUIRE(relay.witness.has_value());
  std::set<std::string> pair{relay.witness->first, relay.witness->second};
  CHECK(pair == std::set<std::string>{"2|3", "3|2"});
}

TEST_CASE("relay computability holds for identity encoders and full support") {
  auto dand = fixture("DSBS_AND(1/4)");
  ColorCover cover = identity_cover(dand, Mode::restricted);
  Scheme s = scheme_from_color_cover(cover, dand, Mode::restricted);
  CHECK(relay_computability(s, dand).computable);
}

TEST_CASE("coloring equivalence property holds in both modes") {
  std::mt19937_64 rng(42);
  for (const char* name : {"THRESHOLD", "DSBS_F2(1/4)"}) {
    auto inst = fixture(name);
    CAPTURE(name);
    for (int n = 1; n <= 2; ++n) {
      for (Mode mode : {Mode::restricted, Mode::unrestricted}) {
        for (int trial = 0; trial < 60; ++trial) {
          Scheme s = random_scheme(inst, n, rng);
          auto eq = coloring_equivalence(s, inst, mode);
          CAPTURE(n);
          CAPTURE(trial);
          REQUIRE(eq.agree);
        }
      }
    }
  }
}

TEST_CASE("schemes from covers verify zero-error in their mode") {
  std::mt19937_64 rng(7);
  for (const char* name : {"PENTAGON", "THRESHOLD", "HANKOB"}) {
    auto inst = fixture(name);
    CAPTURE(name);
    for (Mode mode : {Mode::restricted, Mode::unrestricted}) {
      for (int trial = 0; trial < 20; ++trial) {
        ColorCover cover = random_color_cover(inst, 1, mode, rng);
        Scheme s = scheme_from_color_cover(cover, inst, mode);
        auto rep = verify_zero_error(s, inst, mode);
        CAPTURE(trial);
        CHECK(rep.decodable_at_a);
        CHECK(rep.decodable_at_b);
      }
    }
  }
}

TEST_CASE("rates of Huffman cover schemes sit within one bit of the color entropies") {
  std::mt19937_64 rng(9);
  for (const char* name : {"THRESHOLD", "DSBS_AND(1/4)", "HANKOB"}) {
    auto inst = fixture(name);
    CAPTURE(name);
    for (int trial = 0; trial < 10; ++trial) {
      ColorCover cover = random_color_cover(inst, 1, Mode::restricted, rng);
      Scheme s = scheme_from_color_cover(cover, inst, Mode::restricted);
      auto rates = scheme_rates(s, inst);

      auto mx = inst.pmf.marginal_x();
      int ka = 0;
      for (int c : cover.c_a) ka = std::max(ka, c + 1);
      std::vector<Rational> am(static_cast<std::size_t>(ka), Rational(0));
      for (std::size_t xi = 0; xi < inst.nx(); ++xi)
        am[static_cast<std::size_t>(cover.c_a[xi])] += mx[xi];
      double ha = entropy_bits(std::span<const Rational>(am));
      CHECK(rates.a.to_double() >= ha - 1e-9);
      CHECK(rates.a.to_double() <= ha + 1.0 + 1e-9);
    }
  }
}

TEST_CASE("cover cloud enumeration matches the naive oracle at n = 1") {
  for (const char* name : {"THRESHOLD", "DSBS_AND(1/4)"}) {
    auto inst = fixture(name);
    CAPTURE(name);
    auto cloud = enumerate_color_covers(inst, 1, Mode::restricted, 50000000);
    REQUIRE(cloud.complete);
    std::set<std::array<long long, 3>> got;
    for (const auto& c : cloud.corners)
      got.insert({std::llround(c.a * 1e10), std::llround(c.b * 1e10),
                  std::llround(c.c * 1e10)});
    CHECK(got == naive_cover_corners(inst, Mode::restricted));
  }
}

TEST_CASE("cover clouds: constant function and mode ordering") {
  auto constant = fixture("THRESHOLD");
  for (auto& row : constant.f.values)
    for (auto& v : row) v = "0";
  auto cloud = enumerate_color_covers(constant, 1, Mode::restricted, 1000000);
  bool has_origin = false;
  for (const auto& c : cloud.corners)
    if (c.a < 1e-12 && c.b < 1e-12 && c.c < 1e-12) has_origin = true;
  CHECK(has_origin);

  // The restricted graph is a subgraph of the unrestricted one, so every
  // unrestricted cover is also a restricted cover (more edges, fewer covers).
  std::mt19937_64 rng(21);
  auto thr = fixture("THRESHOLD");
  auto r2 = n_instance_graph(thr, 2, Mode::restricted);
  auto u2 = n_instance_graph(thr, 2, Mode::unrestricted);
  REQUIRE(u2.graph.edge_count() > r2.graph.edge_count());
  for (int trial = 0; trial < 50; ++trial) {
    ColorCover cover = random_color_cover(thr, 2, Mode::unrestricted, rng);
    CAPTURE(trial);
    CHECK_NOTHROW(validate_color_cover(cover, thr, Mode::unrestricted));
    CHECK_NOTHROW(validate_color_cover(cover, thr, Mode::restricted));
  }
}

TEST_CASE("pentagon cover cloud under budget: partial but useful") {
  auto pent = fixture("PENTAGON");
  auto cloud = enumerate_color_covers(pent, 1, Mode::restricted, 200000);
  CHECK_FALSE(cloud.complete);
  double hx = chromatic_entropy(f_rook_graph(pent)).value;
  bool found = false;
  for (const auto& g : cloud.region.generators)
    if (g.c <= hx + 1e-9) found = true;
  CHECK(found);
}

TEST_CASE("bfn verification") {
  auto dxor = fixture("DSBS_XOR(1/4)");
  BfnScheme s;
  s.n = 1;
  s.phi_c = {"0", "1", "1", "0"};  // one bit: x xor y
  auto rep = bfn_verify(s, dxor);
  CHECK(rep.decodable_at_a);
  CHECK(rep.decodable_at_b);
  CHECK(rep.rate == Rational(1));
  CHECK(rep.rate.to_double() >= bfn_xor_rate(dxor) - 1e-9);

  BfnScheme constant;
  constant.n = 1;
  constant.phi_c = {"", "", "", ""};
  auto crep = bfn_verify(constant, dxor);
  CHECK_FALSE(crep.decodable_at_a);
  CHECK(crep.witness_a.has_value());

  // Huffman-coded proper coloring of the pentagon's support cycle.
  auto pent = fixture("PENTAGON");
  auto pg = f_rook_graph(pent);
  auto ce = chromatic_entropy(pg);
  int kc = ce.coloring->num_colors;
  std::vector<Rational> cm(static_cast<std::size_t>(kc), Rational(0));
  for (std::size_t v = 0; v < pg.graph.size(); ++v)
    cm[static_cast<std::size_t>(ce.coloring->color_of[v])] += pg.mass[v];
  auto codes = huffman_codes(cm);
  BfnScheme ps;
  ps.n = 1;
  for (std::size_t v = 0; v < pg.graph.size(); ++v)
    ps.phi_c.push_back(codes[static_cast<std::size_t>(ce.coloring->color_of[v])]);
  auto prep = bfn_verify(ps, pent);
  CHECK(prep.decodable_at_a);
  CHECK(prep.decodable_at_b);
}
