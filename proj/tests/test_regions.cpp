#include "doctest.h"

#include <cmath>
#include <random>

#include "relaycomp/fixtures.hpp"
#include "relaycomp/regions.hpp"

using namespace relaycomp;

namespace {

double h2(double p) { return binary_entropy_bits(p); }

// Slow membership oracle: dense grid over convex-combination weights for
// small generator sets (up to 3 generators, 2-simplex grid).
bool member_brute(const std::vector<RateTriple>& gens, const RateTriple& q,
                  double tol = 1e-9) {
  const int steps = 200;
  if (gens.size() == 1) {
    return dominates(q, gens[0], tol);
  }
  if (gens.size() == 2) {
    for (int i = 0; i <= steps; ++i) {
      double l = static_cast<double>(i) / steps;
      RateTriple mix{l * gens[0].a + (1 - l) * gens[1].a,
                     l * gens[0].b + (1 - l) * gens[1].b,
                     l * gens[0].c + (1 - l) * gens[1].c};
      if (dominates(q, mix, tol)) return true;
    }
    return false;
  }
  for (int i = 0; i <= steps; ++i) {
    for (int j = 0; i + j <= steps; ++j) {
      double l1 = static_cast<double>(i) / steps;
      double l2 = static_cast<double>(j) / steps;
      double l3 = 1 - l1 - l2;
      RateTriple mix{l1 * gens[0].a + l2 * gens[1].a + l3 * gens[2].a,
                     l1 * gens[0].b + l2 * gens[1].b + l3 * gens[2].b,
                     l1 * gens[0].c + l2 * gens[1].c + l3 * gens[2].c};
      if (dominates(q, mix, tol)) return true;
    }
  }
  return false;
}

AuxChoice threshold_split_choice() {
  // U1 = {a={1,2}, b={2,3}} with the even split at 2; U2 likewise; W over
  // the two maximal independent sets of the square auxiliary graph.
  AuxComponent comp;
  comp.u1.sets = {{0, 1}, {1, 2}};
  comp.u1.cond = {{Rational(1), Rational(1, 2), Rational(0)},
                  {Rational(0), Rational(1, 2), Rational(1)}};
  comp.u2 = comp.u1;
  comp.w_sets = {{0, 3}, {1, 2}};  // {(a,c),(b,d)} and {(a,d),(b,c)}
  comp.w_cond.assign(2, std::vector<Rational>(4, Rational(0)));
  comp.w_cond[0][0] = Rational(1);
  comp.w_cond[0][3] = Rational(1);
  comp.w_cond[1][1] = Rational(1);
  comp.w_cond[1][2] = Rational(1);
  AuxChoice choice;
  choice.components.push_back(comp);
  choice.weights = {Rational(1)};
  return choice;
}

AuxChoice pentagon_bipartition_choice() {
  // Singleton U's; W the diagonal / off-diagonal bipartition of the cycle.
  AuxComponent comp;
  for (std::size_t i = 0; i < 5; ++i) {
    comp.u1.sets.push_back({i});
    comp.u2.sets.push_back({i});
  }
  comp.u1.cond.assign(5, std::vector<Rational>(5, Rational(0)));
  for (std::size_t i = 0; i < 5; ++i) comp.u1.cond[i][i] = Rational(1);
  comp.u2.cond = comp.u1.cond;
  std::vector<std::size_t> diag, off;
  for (std::size_t x = 0; x < 5; ++x) {
    diag.push_back(x * 5 + x);
    off.push_back(x * 5 + (x + 1) % 5);
  }
  comp.w_sets = {diag, off};
  comp.w_cond.assign(2, std::vector<Rational>(25, Rational(0)));
  for (std::size_t v : diag) comp.w_cond[0][v] = Rational(1);
  for (std::size_t v : off) comp.w_cond[1][v] = Rational(1);
  AuxChoice choice;
  choice.components.push_back(comp);
  choice.weights = {Rational(1)};
  return choice;
}

AuxChoice dsbs_and_level_set_choice() {
  // Forced singleton U's; W = level sets of the function.
  AuxComponent comp;
  comp.u1.sets = {{0}, {1}};
  comp.u1.cond = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  comp.u2 = comp.u1;
  comp.w_sets = {{0, 1, 2}, {3}};  // f = 0 on (0,0),(0,1),(1,0); f = 1 on (1,1)
  comp.w_cond.assign(2, std::vector<Rational>(4, Rational(0)));
  for (std::size_t v : {0, 1, 2}) comp.w_cond[0][v] = Rational(1);
  comp.w_cond[1][3] = Rational(1);
  AuxChoice choice;
  choice.components.push_back(comp);
  choice.weights = {Rational(1)};
  return choice;
}

}  // namespace

TEST_CASE("region membership basics") {
  Region3 r;
  r.generators = {{1, 2, 3}, {3, 1, 2}};
  CHECK(member(r, {1, 2, 3}));
  CHECK(member(r, {2, 1.5, 2.5}));  // midpoint
  CHECK(member(r, {3, 2, 3}));
  CHECK_FALSE(member(r, {0.9, 2, 3}));
  CHECK_FALSE(member(r, {2, 1.4, 2.5}));

  Region3 empty;
  CHECK_FALSE(member(empty, {1, 1, 1}));
}

TEST_CASE("membership agrees with a dense-grid oracle") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> coord(0.0, 2.0);
  for (int trial = 0; trial < 300; ++trial) {
    Region3 r;
    std::size_t m = 1 + trial % 3;
    for (std::size_t i = 0; i < m; ++i)
      r.generators.push_back({coord(rng), coord(rng), coord(rng)});
    RateTriple q{coord(rng), coord(rng), coord(rng)};
    bool brute = member_brute(r.generators, q, 1e-6);
    bool fast = member(r, q, 1e-9);
    CAPTURE(trial);
    // Grid oracle has resolution error; only check when they can disagree
    // meaningfully.
    if (brute) CHECK(fast);
    if (!fast) CHECK_FALSE(brute);
  }
}

TEST_CASE("sum halfspaces expand into frontier corners") {
  Region3 r;
  r.generators = {{1, 1, 0.5}};
  r.halfspaces = {{1, 1, 0, 3.0}};
  auto gens = expanded_generators(r);
  REQUIRE(gens.size() == 2);
  CHECK(member(r, {1, 2, 0.5}));
  CHECK(member(r, {2, 1, 0.5}));
  CHECK(member(r, {1.5, 1.5, 0.5}));
  CHECK_FALSE(member(r, {1, 1, 0.5}));   // violates the sum constraint
  CHECK_FALSE(member(r, {1, 2, 0.4}));
}

TEST_CASE("broadcast network rates") {
  auto dxor = fixture("DSBS_XOR(1/4)");
  CHECK(bfn_xor_rate(dxor) == doctest::Approx(h2(0.25)).epsilon(1e-12));
  CHECK(bfn_xor_rate(fixture("HANKOB")) == doctest::Approx(1.0).epsilon(1e-12));

  // X = Y almost surely: zero rate.
  ProblemInstance same;
  same.name = "SAME";
  same.pmf.x_alpha = {{"0", "1"}};
  same.pmf.y_alpha = {{"0", "1"}};
  same.pmf.mass = {{Rational(1, 2), Rational(0)}, {Rational(0), Rational(1, 2)}};
  same.f.z_alpha = {{"0", "1"}};
  same.f.values = {{"0", "1"}, {"1", "0"}};
  CHECK(bfn_xor_rate(same) == doctest::Approx(0.0));

  auto bounds = bfn_general_bounds(dxor);
  CHECK(bounds.lower == doctest::Approx(h2(0.25)).epsilon(1e-12));
  CHECK(bounds.upper >= bounds.lower - 1e-9);

  // Constant function: both bounds collapse to zero.
  auto constant = fixture("THRESHOLD");
  for (auto& row : constant.f.values)
    for (auto& v : row) v = "0";
  auto cb = bfn_general_bounds(constant);
  CHECK(cb.lower == doctest::Approx(0.0));
  CHECK(cb.upper == doctest::Approx(0.0).epsilon(1e-9));

  // Pentagon: lower bound is 1 bit and the cycle's graph entropy matches it.
  auto pb = bfn_general_bounds(fixture("PENTAGON"));
  CHECK(pb.lower == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pb.upper == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("relay XOR zero-error region") {
  auto r = relay_xor_zero_region(fixture("DSBS_XOR(1/4)"));
  REQUIRE(r.generators.size() == 1);
  CHECK(r.generators[0].a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.generators[0].b == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.generators[0].c == doctest::Approx(h2(0.25)).epsilon(1e-12));

  // Independent uniform bits.
  auto unif = fixture("DSBS_XOR(1/2)");
  auto ru = relay_xor_zero_region(unif);
  CHECK(ru.generators[0].a == doctest::Approx(1.0));
  CHECK(ru.generators[0].b == doctest::Approx(1.0));
  CHECK(ru.generators[0].c == doctest::Approx(1.0));

  CHECK_THROWS_AS(relay_xor_zero_region(fixture("PENTAGON")), InvalidArgument);
}

TEST_CASE("exchange region with vanishing error") {
  auto r = exchange_eps_region(fixture("DSBS_XOR(1/4)"));
  CHECK(r.generators[0].a == doctest::Approx(h2(0.25)).epsilon(1e-12));
  CHECK(r.generators[0].b == doctest::Approx(h2(0.25)).epsilon(1e-12));
  CHECK(r.generators[0].c == doctest::Approx(h2(0.25)).epsilon(1e-12));

  auto rh = exchange_eps_region(fixture("HANKOB"));
  CHECK(rh.generators[0].a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rh.generators[0].b == doctest::Approx(h2(1.0 / 3)).epsilon(1e-9));
  CHECK(rh.generators[0].c == doctest::Approx(1.0).epsilon(1e-12));

  // Zero-error region sits inside the vanishing-error region; equal for
  // independent sources.
  for (const char* name : {"DSBS_XOR(1/4)", "DSBS_AND(1/4)", "HANKOB"}) {
    auto inst = fixture(name);
    CAPTURE(name);
    CHECK(contains(exchange_eps_region(inst), relay_xor_zero_region(inst), 1e-9));
  }
  auto han = fixture("HANKOB");
  CHECK(contains(relay_xor_zero_region(han), exchange_eps_region(han), 1e-9));
}

TEST_CASE("cutset outer bound") {
  auto r = cutset_outer(fixture("DSBS_AND(1/4)"));
  CHECK(r.generators[0].a == doctest::Approx(h2(0.25)).epsilon(1e-6));
  CHECK(r.generators[0].b == doctest::Approx(h2(0.25)).epsilon(1e-6));
  CHECK(r.generators[0].c == doctest::Approx(0.5 * h2(0.25)).epsilon(1e-12));

  // One empty confusability graph: the bound from the other side only.
  ProblemInstance par;
  par.name = "PARITY";
  par.pmf.x_alpha = {{"0", "1", "2", "3"}};
  par.pmf.y_alpha = {{"0", "1"}};
  par.pmf.mass.assign(4, std::vector<Rational>(2, Rational(1, 8)));
  par.f.z_alpha = {{"0", "1"}};
  par.f.values = {{"0", "0"}, {"1", "1"}, {"0", "0"}, {"1", "1"}};
  auto rp = cutset_outer(par);
  double hzy = cond_entropy_bits(par, Var::Z, Var::Y);
  CHECK(rp.generators[0].a == doctest::Approx(hzy).epsilon(1e-6));
  CHECK(rp.generators[0].b == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rp.generators[0].c == doctest::Approx(hzy).epsilon(1e-12));

  auto constant = fixture("THRESHOLD");
  for (auto& row : constant.f.values)
    for (auto& v : row) v = "0";
  auto rc = cutset_outer(constant);
  CHECK(rc.generators[0].a == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rc.generators[0].b == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(rc.generators[0].c == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("second-scheme corners") {
  auto thr = fixture("THRESHOLD");
  auto z = zero_inner_RI2(thr);
  CHECK(z.generators[0].a == doctest::Approx(2.0 / 3).epsilon(1e-6));
  CHECK(z.generators[0].b == doctest::Approx(2.0 / 3).epsilon(1e-6));
  CHECK(z.generators[0].c == doctest::Approx(2.0 / 3).epsilon(1e-6));

  auto dand = fixture("DSBS_AND(1/4)");
  auto e = eps_inner_RI2(dand);
  CHECK(e.generators[0].a == doctest::Approx(h2(0.25)).epsilon(1e-6));
  CHECK(e.generators[0].b == doctest::Approx(h2(0.25)).epsilon(1e-6));
  CHECK(e.generators[0].c == doctest::Approx(h2(0.25)).epsilon(1e-6));

  // Zero-error corners dominate the vanishing-error ones.
  for (const auto& name : fixture_names()) {
    auto inst = fixture(name);
    CAPTURE(name);
    auto zc = zero_inner_RI2(inst).generators[0];
    auto ec = eps_inner_RI2(inst).generators[0];
    CHECK(dominates(zc, ec, 1e-7));
  }
}

TEST_CASE("first-scheme evaluation on the canonical choices") {
  auto thr = fixture("THRESHOLD");
  auto p = eval_zero_RI1(thr, threshold_split_choice());
  CHECK(p.rate.a == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(p.rate.b == doctest::Approx(2.0 / 3).epsilon(1e-12));
  CHECK(p.rate.c == doctest::Approx(h2(1.0 / 3)).epsilon(1e-12));

  auto pent = fixture("PENTAGON");
  auto pp = eval_zero_RI1(pent, pentagon_bipartition_choice());
  CHECK(pp.rate.a == doctest::Approx(std::log2(5.0)).epsilon(1e-12));
  CHECK(pp.rate.b == doctest::Approx(std::log2(5.0)).epsilon(1e-12));
  CHECK(pp.rate.c == doctest::Approx(1.0).epsilon(1e-12));

  auto dand = fixture("DSBS_AND(1/4)");
  auto pe = eval_eps_RI1(dand, dsbs_and_level_set_choice());
  CHECK(pe.rate.a == doctest::Approx(h2(0.25)).epsilon(1e-12));
  CHECK(pe.rate.b == doctest::Approx(h2(0.25)).epsilon(1e-12));
  CHECK(pe.rate.c == doctest::Approx(0.5 * h2(0.25)).epsilon(1e-12));
  CHECK(pe.sum_ab == doctest::Approx(1.0 + h2(0.25)).epsilon(1e-12));
}

TEST_CASE("aux choice invariant violations are identified") {
  auto thr = fixture("THRESHOLD");
  auto choice = threshold_split_choice();
  choice.components[0].u1.sets[0] = {0, 2};  // {1,3}: an edge
  try {
    eval_zero_RI1(thr, choice);
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("u1") != std::string::npos);
  }

  auto choice2 = threshold_split_choice();
  choice2.components[0].w_sets = {{0, 1}, {2, 3}};  // (a,c)-(a,d) adjacent
  try {
    eval_zero_RI1(thr, choice2);
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("condition (iii)") != std::string::npos);
  }
}

TEST_CASE("deterministic W gives R_C = H(W) exactly") {
  auto thr = fixture("THRESHOLD");
  auto p = eval_zero_RI1(thr, threshold_split_choice());
  // W splits the square's mass 1/3 vs 2/3.
  CHECK(p.rate.c == doctest::Approx(h2(1.0 / 3)).epsilon(1e-12));
}

TEST_CASE("search recovers the known best corners") {
  auto thr = fixture("THRESHOLD");
  auto res = search_RI1(thr, 20000, ErrorModel::zero);
  // Among corners with R_A = R_B = 2/3, the best R_C found is H(1/3).
  double best_rc = 1e9;
  for (const auto& g : res.region.generators) {
    if (g.a <= 2.0 / 3 + 1e-9 && g.b <= 2.0 / 3 + 1e-9) best_rc = std::min(best_rc, g.c);
  }
  CHECK(best_rc == doctest::Approx(h2(1.0 / 3)).epsilon(1e-9));

  auto pent = fixture("PENTAGON");
  auto pres = search_RI1(pent, 60000, ErrorModel::zero);
  CHECK(member(pres.region, {std::log2(5.0), std::log2(5.0), 1.0}, 1e-9));

  auto constant = fixture("THRESHOLD");
  for (auto& row : constant.f.values)
    for (auto& v : row) v = "0";
  auto cres = search_RI1(constant, 1000, ErrorModel::zero);
  CHECK(member(cres.region, {0, 0, 0}, 1e-9));
}

TEST_CASE("vanishing-error search and the two membership verdicts") {
  auto dand = fixture("DSBS_AND(1/4)");
  auto eps1 = search_RI1(dand, 20000, ErrorModel::eps);
  auto eps2 = eps_inner_RI2(dand);
  double hp = h2(0.25);
  RateTriple diag{hp, hp, hp};
  RateTriple corner{1.0, hp, 0.5 * hp};
  CHECK(member(eps2, diag, 1e-9));
  CHECK_FALSE(member(eps1.region, diag, 1e-9));
  CHECK(member(eps1.region, corner, 1e-9));
  CHECK_FALSE(member(eps2, corner, 1e-9));
}

TEST_CASE("hull union contains cross midpoints") {
  auto dand = fixture("DSBS_AND(1/4)");
  auto z1 = search_RI1(dand, 5000, ErrorModel::zero).region;
  auto z2 = zero_inner_RI2(dand);
  auto u = hull_union(z1, z2);
  auto g1 = expanded_generators(z1);
  auto g2 = expanded_generators(z2);
  for (const auto& a : g1) {
    for (const auto& b : g2) {
      RateTriple mid{(a.a + b.a) / 2, (a.b + b.b) / 2, (a.c + b.c) / 2};
      CHECK(member(u, mid, 1e-9));
    }
  }
}

TEST_CASE("inner bounds sit inside the cutset outer bound") {
  for (const auto& name : fixture_names()) {
    auto inst = fixture(name);
    CAPTURE(name);
    auto outer = cutset_outer(inst);
    CHECK(contains(outer, eps_inner_RI2(inst), 1e-7));
    auto eps1 = search_RI1(inst, 3000, ErrorModel::eps);
    CHECK(contains(outer, eps1.region, 1e-7));
  }
}

TEST_CASE("function comparison") {
  auto f1 = fixture("DSBS_F1(1/4)");
  auto fx = fixture("DSBS_XOR(1/4)");
  fx.f.z_alpha = f1.f.z_alpha;  // share z labels irrelevant; sources equal
  auto r = compare_functions(f1, fx);
  CHECK(r.verdict == CompareResult::Verdict::isomorphic);
  CHECK(r.identical_graphs);
  CHECK(r.coarse_determined_given_x);
  CHECK(r.coarse_determined_given_y);

  auto f2 = fixture("DSBS_F2(1/4)");
  auto r2 = compare_functions(f2, f1);
  CHECK(r2.verdict == CompareResult::Verdict::subset_1_in_2);
  CHECK(r2.coarse_determined_given_x);
  CHECK(r2.coarse_determined_given_y);

  auto self = compare_functions(f1, f1);
  CHECK(self.verdict == CompareResult::Verdict::isomorphic);
  CHECK(self.identical_graphs);

  auto other = fixture("DSBS_F1(1/3)");
  CHECK_THROWS_AS(compare_functions(f1, other), InvalidArgument);
}
