#pragma once
// The acceptance suite: nine exact desk-scale checks covering the toolkit
// end to end, each with its tolerance pinned in code. Run via the CLI
// (`accept` command) or the dedicated test binary.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "relaycomp/color_cover.hpp"
#include "relaycomp/fixtures.hpp"
#include "relaycomp/generators.hpp"
#include "relaycomp/graph_entropy.hpp"
#include "relaycomp/regions.hpp"
#include "relaycomp/verify.hpp"

namespace relaycomp {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  std::vector<std::string> details;  // one line per sub-check
};

namespace acceptance_detail {

class Checker {
 public:
  explicit Checker(CriterionResult& result) : result_(result) {}

  void check(bool ok, const std::string& what) {
    result_.details.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
    if (!ok) result_.pass = false;
  }

  void close(double value, double target, double tol, const std::string& what) {
    std::ostringstream line;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9f (target %.9f, tol %g)", value, target, tol);
    line << what << " = " << buf;
    check(std::abs(value - target) <= tol, line.str());
  }

 private:
  CriterionResult& result_;
};

template <typename Body>
CriterionResult run_criterion(int id, const std::string& name, Body&& body) {
  CriterionResult result;
  result.id = id;
  result.name = name;
  result.pass = true;
  auto start = std::chrono::steady_clock::now();
  Checker checker(result);
  try {
    body(checker);
  } catch (const std::exception& e) {
    result.pass = false;
    result.details.push_back(std::string("FAIL exception: ") + e.what());
  }
  result.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

inline double h2(double p) { return binary_entropy_bits(p); }

inline AuxChoice threshold_choice() {
  AuxComponent comp;
  comp.u1.sets = {{0, 1}, {1, 2}};
  comp.u1.cond = {{Rational(1), Rational(1, 2), Rational(0)},
                  {Rational(0), Rational(1, 2), Rational(1)}};
  comp.u2 = comp.u1;
  comp.w_sets = {{0, 3}, {1, 2}};
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

inline AuxChoice pentagon_choice() {
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

inline Scheme threshold_counterexample() {
  Scheme s;
  s.n = 1;
  s.phi_a = {"1", "0", "0"};
  s.phi_b = {"1", "0", "0"};
  for (const char* wa : {"0", "1"})
    for (const char* wb : {"0", "1"})
      s.phi_c[{wa, wb}] = (wa == wb) ? "1" : "0";
  return s;
}

}  // namespace acceptance_detail

inline std::vector<CriterionResult> run_acceptance(
    const Limits& limits = default_limits()) {
  using namespace acceptance_detail;
  std::vector<CriterionResult> out;

  out.push_back(run_criterion(1, "threshold graph entropy", [&](Checker& c) {
    auto start = std::chrono::steady_clock::now();
    auto conf = confusability(fixture("THRESHOLD"), Side::A);
    auto res = graph_entropy(conf, limits);
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.close(res.value, 2.0 / 3, 1e-4, "H_G(confusability, uniform)");
    c.check(res.conv.converged, "alternating minimization converged (gap " +
                                    std::to_string(res.conv.gap) + ")");
    c.check(secs < 1.0, "runtime " + std::to_string(secs) + "s < 1s");
  }));

  out.push_back(run_criterion(2, "threshold first-scheme bottleneck", [&](Checker& c) {
    auto thr = fixture("THRESHOLD");
    auto p = eval_zero_RI1(thr, threshold_choice(), limits);
    c.close(p.rate.a, 2.0 / 3, 1e-12, "R_A");
    c.close(p.rate.b, 2.0 / 3, 1e-12, "R_B");
    c.close(p.rate.c, 0.918296, 1e-6, "R_C = H(1/3)");
    // Strict convexity of I(X;U1) in the split: the 1/64 grid admits no
    // competitor to p = 1/2.
    bool unique = true;
    for (int k = 0; k <= 64; ++k) {
      double pp = static_cast<double>(k) / 64;
      double i_xu = h2((1 + pp) / 3) - h2(pp) / 3;
      bool near_half = std::abs(pp - 0.5) <= 1.0 / 64 + 1e-12;
      if (i_xu <= 2.0 / 3 + 1e-6 && !near_half) unique = false;
    }
    c.check(unique, "grid scan (step 1/64): only p = 1/2 attains I(X;U1) <= 2/3");
  }));

  out.push_back(run_criterion(3, "pentagon first-scheme point", [&](Checker& c) {
    auto start = std::chrono::steady_clock::now();
    auto pent = fixture("PENTAGON");
    auto p = eval_zero_RI1(pent, pentagon_choice(), limits);
    double log5 = std::log2(5.0);
    c.close(p.rate.a, log5, 1e-12, "R_A = log2(5)");
    c.close(p.rate.b, log5, 1e-12, "R_B = log2(5)");
    c.close(p.rate.c, 1.0, 1e-12, "R_C = 1");
    auto conf = confusability(pent, Side::A);
    c.close(chromatic_entropy(conf, limits).value, log5 - 0.8, 1e-9,
            "H_chi(C5, uniform)");
    auto seq = complementary_entropy_sequence(conf, 2, limits);
    bool have_a2 = seq.a.size() == 2;
    c.check(have_a2, "a_2 computed");
    if (have_a2) c.close(seq.a[1].second, 0.5 * log5, 1e-9, "a_2(C5)");
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.check(secs < 30.0, "runtime " + std::to_string(secs) + "s < 30s");
  }));

  out.push_back(run_criterion(4, "doubly symmetric source regions at p=1/4", [&](Checker& c) {
    const double hp = 0.811278;  // H(1/4)
    auto dxor = fixture("DSBS_XOR(1/4)");
    auto zr = relay_xor_zero_region(dxor);
    c.close(zr.generators[0].a, 1.0, 1e-6, "relay XOR R_A");
    c.close(zr.generators[0].b, 1.0, 1e-6, "relay XOR R_B");
    c.close(zr.generators[0].c, hp, 1e-6, "relay XOR R_C");
    auto er = exchange_eps_region(dxor);
    c.close(er.generators[0].a, hp, 1e-6, "exchange R_A");
    c.close(er.generators[0].b, hp, 1e-6, "exchange R_B");
    c.close(er.generators[0].c, hp, 1e-6, "exchange R_C");
    auto dand = fixture("DSBS_AND(1/4)");
    auto cut = cutset_outer(dand, limits);
    c.close(cut.generators[0].a, hp, 1e-6, "AND cutset R_A");
    c.close(cut.generators[0].b, hp, 1e-6, "AND cutset R_B");
    c.close(cut.generators[0].c, 0.405639, 1e-6, "AND cutset R_C = H(1/4)/2");

    double hpd = h2(0.25);
    RateTriple diag{hpd, hpd, hpd};
    RateTriple corner{1.0, hpd, hpd / 2};
    auto eps2 = eps_inner_RI2(dand, limits);
    auto eps1 = search_RI1(dand, 20000, ErrorModel::eps, limits);
    c.check(member(eps2, diag, 1e-9), "(H,H,H) in eps region 2");
    c.check(!member(eps1.region, diag, 1e-9), "(H,H,H) not in eps region 1");
    c.check(member(eps1.region, corner, 1e-9), "(1,H,H/2) in eps region 1");
    c.check(!member(eps2, corner, 1e-9), "(1,H,H/2) not in eps region 2");
  }));

  out.push_back(run_criterion(5, "independent-source example numbers", [&](Checker& c) {
    auto han = fixture("HANKOB");
    double h13 = h2(1.0 / 3);
    c.close(cond_entropy_bits(han, Var::Z, Var::Y), 2.0 / 3, 1e-12, "H(Z|Y)");
    c.close(cond_entropy_bits(han, Var::Z, Var::X), h13, 1e-9, "H(Z|X) = H(1/3)");
    auto er = exchange_eps_region(han);
    c.close(er.generators[0].a, 1.0, 1e-9, "exchange R_A");
    c.close(er.generators[0].b, h13, 1e-9, "exchange R_B");
    c.close(er.generators[0].c, 1.0, 1e-9, "exchange R_C");
    c.check(!member(er, {1.0, h13, h13}, 1e-9),
            "scheme point (1, H(1/3), H(1/3)) is outside the exchange region");
  }));

  out.push_back(run_criterion(6, "coloring-equivalence property suite", [&](Checker& c) {
    auto start = std::chrono::steady_clock::now();
    std::size_t checked = 0, agreed = 0;
    for (const auto& name : fixture_names()) {
      auto inst = fixture(name);
      for (int n = 1; n <= 2; ++n) {
        for (Mode mode : {Mode::restricted, Mode::unrestricted}) {
          std::mt19937_64 rng(limits.seed + 1000 * n + (mode == Mode::restricted ? 0 : 1));
          for (int trial = 0; trial < 200; ++trial) {
            Scheme s = random_scheme(inst, n, rng);
            auto eq = coloring_equivalence(s, inst, mode, limits);
            ++checked;
            if (eq.agree) ++agreed;
          }
        }
      }
    }
    c.check(agreed == checked, "agreement " + std::to_string(agreed) + "/" +
                                   std::to_string(checked));
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    c.check(secs < 60.0, "runtime " + std::to_string(secs) + "s < 60s");
  }));

  out.push_back(run_criterion(7, "relay-knowledge suite", [&](Checker& c) {
    std::vector<std::string> full_support = {"DSBS_XOR(1/4)", "DSBS_AND(1/4)",
                                             "DSBS_F1(1/4)", "DSBS_F2(1/4)",
                                             "HANKOB"};
    std::size_t built = 0, relay_ok = 0;
    std::mt19937_64 rng(limits.seed + 7);
    while (built < 100) {
      const auto& name = full_support[built % full_support.size()];
      auto inst = fixture(name);
      ColorCover cover = random_color_cover(inst, 1, Mode::restricted, rng, limits);
      Scheme s = scheme_from_color_cover(cover, inst, Mode::restricted, limits);
      auto rep = verify_zero_error(s, inst, Mode::restricted, limits);
      if (!(rep.decodable_at_a && rep.decodable_at_b)) continue;  // cover schemes: never
      ++built;
      if (relay_computability(s, inst, limits).computable) ++relay_ok;
    }
    c.check(relay_ok == built, "relay computable for " + std::to_string(relay_ok) +
                                   "/" + std::to_string(built) +
                                   " zero-error schemes on full support");

    auto thr = fixture("THRESHOLD");
    Scheme cx = threshold_counterexample();
    auto rep = verify_zero_error(cx, thr, Mode::restricted, limits);
    c.check(rep.decodable_at_a && rep.decodable_at_b,
            "counterexample scheme is zero-error at A and B");
    auto relay = relay_computability(cx, thr, limits);
    bool witness_ok = false;
    if (!relay.computable && relay.witness) {
      std::set<std::string> pair{relay.witness->first, relay.witness->second};
      witness_ok = pair == std::set<std::string>{"2|3", "3|2"};
    }
    c.check(!relay.computable, "counterexample fails relay computability");
    c.check(witness_ok, "witness pair is {(2,3), (3,2)}");
  }));

  out.push_back(run_criterion(8, "structural identities", [&](Checker& c) {
    // Single-decoder n-instance graph vs AND power, n = 1..3.
    bool claim_ok = true;
    for (const auto& name : fixture_names()) {
      auto inst = fixture(name);
      for (Side side : {Side::A, Side::B}) {
        auto base = single_decoder_graph(inst, 1, side, limits);
        for (int n = 1; n <= 3; ++n) {
          std::size_t count = power_size(base.graph.size(), n);
          if (count > limits.product_vertex_cap) break;
          auto direct = single_decoder_graph(inst, n, side, limits);
          auto powered = and_power(base.graph, n, limits);
          if (direct.graph.size() != powered.size() ||
              direct.graph.edges() != powered.edges() ||
              direct.mass != power_mass(base.mass, n)) {
            claim_ok = false;
          }
        }
      }
    }
    c.check(claim_ok, "single-decoder graph equals the AND power (n = 1..3, all fixtures)");

    bool korner_ok = true;
    double worst = 0;
    for (const auto& name : fixture_names()) {
      auto inst = fixture(name);
      for (auto pg : {confusability(inst, Side::A), confusability(inst, Side::B),
                      f_rook_graph(inst)}) {
        if (connected_components(pg.graph).size() < 2) continue;
        double direct = graph_entropy(pg, limits).value;
        double viaunion = korner_union_entropy(pg, limits).value;
        worst = std::max(worst, std::abs(direct - viaunion));
        if (std::abs(direct - viaunion) > 1e-6) korner_ok = false;
      }
    }
    c.check(korner_ok, "component union rule matches direct graph entropy (worst " +
                           std::to_string(worst) + ")");

    bool bfn_ok = true;
    double worst_bfn = 0;
    std::mt19937_64 rng(limits.seed + 8);
    for (int trial = 0; trial < 20; ++trial) {
      RandomInstanceOptions opt;
      opt.full_support = true;
      auto inst = random_instance(rng, opt);
      auto g1 = single_decoder_graph(inst, 1, Side::A, limits);
      auto g2 = single_decoder_graph(inst, 1, Side::B, limits);
      auto res = and_union_min_rate({g1.graph, g2.graph}, g1.mass, limits);
      double direct = bfn_xor_rate(inst);
      worst_bfn = std::max(worst_bfn, std::abs(res.value - direct));
      if (!res.exact || std::abs(res.value - direct) > 1e-9) bfn_ok = false;
    }
    c.check(bfn_ok, "perfect-graph route reproduces the XOR broadcast rate (worst " +
                        std::to_string(worst_bfn) + ")");
  }));

  out.push_back(run_criterion(9, "bound-order suite on random instances", [&](Checker& c) {
    std::mt19937_64 rng(limits.seed + 9);
    bool outer_ok = true, samples_ok = true, bfn_ok = true, order_ok = true;
    for (int trial = 0; trial < 50; ++trial) {
      auto inst = random_instance(rng);
      auto outer = cutset_outer(inst, limits);
      auto eps2 = eps_inner_RI2(inst, limits);
      if (!contains(outer, eps2, 1e-7)) outer_ok = false;
      auto eps1 = search_RI1(inst, 1500, ErrorModel::eps, limits);
      if (!contains(outer, eps1.region, 1e-7)) samples_ok = false;
      auto bounds = bfn_general_bounds(inst, limits);
      if (bounds.lower > bounds.upper + 1e-9) bfn_ok = false;
      auto zero2 = zero_inner_RI2(inst, limits);
      if (!dominates(zero2.generators[0], eps2.generators[0], 1e-7)) order_ok = false;
    }
    c.check(outer_ok, "cutset outer bound contains the second-scheme corner");
    c.check(samples_ok, "cutset outer bound contains every first-scheme sample");
    c.check(bfn_ok, "broadcast lower bound never exceeds the upper bound");
    c.check(order_ok, "zero-error corners dominate vanishing-error corners");
  }));

  return out;
}

inline bool acceptance_passed(const std::vector<CriterionResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

inline void print_acceptance(const std::vector<CriterionResult>& results,
                             std::ostream& os, bool verbose = true) {
  for (const auto& r : results) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%6.2fs", r.seconds);
    os << (r.pass ? "[PASS]" : "[FAIL]") << " criterion " << r.id << " (" << buf
       << "): " << r.name << "\n";
    if (verbose || !r.pass) {
      for (const auto& d : r.details) os << "    " << d << "\n";
    }
  }
  os << (acceptance_passed(results) ? "ACCEPTANCE: all criteria passed"
                                    : "ACCEPTANCE: FAILURES PRESENT")
     << "\n";
}

}  // namespace relaycomp
