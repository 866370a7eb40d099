#pragma once
// Rate-region bounds for the relay network and the broadcast network:
// single-letter corners from (conditional) graph entropies, evaluation of
// auxiliary-variable choices, a budgeted search over such choices, and the
// graph-comparison order between functions.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "relaycomp/graph_build.hpp"
#include "relaycomp/graph_entropy.hpp"
#include "relaycomp/graphalg.hpp"
#include "relaycomp/model.hpp"
#include "relaycomp/region.hpp"

namespace relaycomp {

inline JointPmf flip_pmf(const JointPmf& pmf) {
  JointPmf out;
  out.x_alpha = pmf.y_alpha;
  out.y_alpha = pmf.x_alpha;
  out.mass.assign(pmf.ny(), std::vector<Rational>(pmf.nx(), Rational(0)));
  for (std::size_t x = 0; x < pmf.nx(); ++x)
    for (std::size_t y = 0; y < pmf.ny(); ++y) out.mass[y][x] = pmf.mass[x][y];
  return out;
}

// Optimal broadcast rate for complementary delivery (computing X xor Y at
// both receivers): max{H(Y|X), H(X|Y)}.
inline double bfn_xor_rate(const ProblemInstance& inst) {
  return std::max(cond_entropy_bits(inst, Var::Y, Var::X),
                  cond_entropy_bits(inst, Var::X, Var::Y));
}

// Broadcast-rate sandwich for an arbitrary function: the Shannon lower
// bound and the graph entropy of the f-modified rook's graph.
struct BfnBounds {
  double lower = 0;
  double upper = 0;
  EntropyResult upper_detail;
};

inline BfnBounds bfn_general_bounds(const ProblemInstance& inst,
                                    const Limits& limits = default_limits()) {
  BfnBounds out;
  out.lower = std::max(cond_entropy_bits(inst, Var::Z, Var::X),
                       cond_entropy_bits(inst, Var::Z, Var::Y));
  out.upper_detail = graph_entropy(f_rook_graph(inst), limits);
  out.upper = out.upper_detail.value;
  return out;
}

// Zero-error region for computing XOR in the relay network; requires full
// support.
inline Region3 relay_xor_zero_region(const ProblemInstance& inst) {
  if (!inst.pmf.full_support()) {
    throw InvalidArgument("relay_xor_zero_region: support of p_XY must be full");
  }
  Region3 r;
  r.name = "relay_xor_zero";
  r.generators.push_back({entropy_bits(inst, Var::X), entropy_bits(inst, Var::Y),
                          bfn_xor_rate(inst)});
  return r;
}

// Rate region for exchanging X and Y through the relay with vanishing error.
inline Region3 exchange_eps_region(const ProblemInstance& inst) {
  Region3 r;
  r.name = "exchange_eps";
  r.generators.push_back({cond_entropy_bits(inst, Var::X, Var::Y),
                          cond_entropy_bits(inst, Var::Y, Var::X),
                          bfn_xor_rate(inst)});
  return r;
}

// Cutset outer bound for the vanishing-error region.
inline Region3 cutset_outer(const ProblemInstance& inst,
                            const Limits& limits = default_limits()) {
  auto ga = confusability(inst, Side::A);
  auto gb = confusability(inst, Side::B);
  double ra = conditional_graph_entropy(ga.graph, inst.pmf, limits).value;
  double rb = conditional_graph_entropy(gb.graph, flip_pmf(inst.pmf), limits).value;
  Region3 r;
  r.name = "cutset_outer";
  r.generators.push_back({ra, rb,
                          std::max(cond_entropy_bits(inst, Var::Z, Var::X),
                                   cond_entropy_bits(inst, Var::Z, Var::Y))});
  return r;
}

// Second achievable scheme, zero-error flavor: corner from unconditional
// graph entropies of the two confusability graphs.
inline Region3 zero_inner_RI2(const ProblemInstance& inst,
                              const Limits& limits = default_limits()) {
  double ra = graph_entropy(confusability(inst, Side::A), limits).value;
  double rb = graph_entropy(confusability(inst, Side::B), limits).value;
  Region3 r;
  r.name = "zero_RI2";
  r.generators.push_back({ra, rb, std::max(ra, rb)});
  return r;
}

// Second achievable scheme, vanishing-error flavor: conditional graph
// entropies instead.
inline Region3 eps_inner_RI2(const ProblemInstance& inst,
                             const Limits& limits = default_limits()) {
  double ra = conditional_graph_entropy(confusability(inst, Side::A).graph,
                                        inst.pmf, limits).value;
  double rb = conditional_graph_entropy(confusability(inst, Side::B).graph,
                                        flip_pmf(inst.pmf), limits).value;
  Region3 r;
  r.name = "eps_RI2";
  r.generators.push_back({ra, rb, std::max(ra, rb)});
  return r;
}

// ---- auxiliary-variable choices (first achievable scheme) ----

struct AuxComponent {
  AuxFamily u1, u2;
  std::vector<std::vector<std::size_t>> w_sets;  // subsets of aux-graph vertices
  std::vector<std::vector<Rational>> w_cond;     // w_cond[w][u1 * |U2| + u2]
};

struct AuxChoice {
  std::vector<AuxComponent> components;
  std::vector<Rational> weights;  // time sharing; empty means single component
};

struct RI1Point {
  RateTriple rate;
  double sum_ab = 0;  // R_A + R_B constraint (vanishing-error scheme)
};

namespace detail {

// Joint over (X, Y, U1, U2, W); validates condition (iii) against the
// auxiliary graph. Conditions (i) and (ii) are validated by aux_graph.
inline JointDist component_joint(const ProblemInstance& inst,
                                 const AuxComponent& comp) {
  auto aux = aux_graph(inst, comp.u1, comp.u2);  // throws on (i)/(ii)
  const std::size_t n1 = comp.u1.count(), n2 = comp.u2.count();
  const std::size_t nw = comp.w_sets.size();
  if (comp.w_cond.size() != nw) {
    throw InvalidArgument("condition (iii): W conditional row count mismatch");
  }
  auto w_contains = [&](std::size_t w, std::size_t v) {
    for (std::size_t u : comp.w_sets[w])
      if (u == v) return true;
    return false;
  };
  for (std::size_t w = 0; w < nw; ++w) {
    if (!aux.graph.is_independent(comp.w_sets[w])) {
      throw InvalidArgument(
          "condition (iii): W set " + std::to_string(w) +
          " is not independent in the auxiliary graph");
    }
    if (comp.w_cond[w].size() != n1 * n2) {
      throw InvalidArgument("condition (iii): W conditional shape mismatch");
    }
  }
  for (std::size_t v = 0; v < n1 * n2; ++v) {
    Rational total(0);
    for (std::size_t w = 0; w < nw; ++w) {
      const Rational& c = comp.w_cond[w][v];
      if (c.is_negative()) throw InvalidArgument("condition (iii): negative conditional");
      if (!c.is_zero() && !w_contains(w, v)) {
        throw InvalidArgument("condition (iii): W conditional supported outside its set (vertex " +
                              aux.graph.label(v) + ")");
      }
      total += c;
    }
    if (!aux.mass[v].is_zero() && total != Rational(1)) {
      throw InvalidArgument("condition (iii): W conditional for vertex " +
                            aux.graph.label(v) + " sums to " + total.str());
    }
  }

  JointDist joint({inst.nx(), inst.ny(), n1, n2, nw});
  for (std::size_t x = 0; x < inst.nx(); ++x)
    for (std::size_t y = 0; y < inst.ny(); ++y) {
      const Rational& m = inst.pmf.mass[x][y];
      if (m.is_zero()) continue;
      for (std::size_t a = 0; a < n1; ++a) {
        if (comp.u1.cond[a][x].is_zero()) continue;
        for (std::size_t b = 0; b < n2; ++b) {
          if (comp.u2.cond[b][y].is_zero()) continue;
          Rational base = m * comp.u1.cond[a][x] * comp.u2.cond[b][y];
          for (std::size_t w = 0; w < nw; ++w) {
            const Rational& cw = comp.w_cond[w][a * n2 + b];
            if (cw.is_zero()) continue;
            std::size_t idx[5] = {x, y, a, b, w};
            joint.add(idx, base * cw);
          }
        }
      }
    }
  return joint;
}

inline std::vector<double> choice_weights(const AuxChoice& choice) {
  if (choice.components.empty()) {
    throw InvalidArgument("aux choice has no components");
  }
  std::vector<double> w;
  if (choice.weights.empty()) {
    w.assign(choice.components.size(), 1.0 / static_cast<double>(choice.components.size()));
  } else {
    if (choice.weights.size() != choice.components.size()) {
      throw InvalidArgument("aux choice: weight count mismatch");
    }
    Rational total(0);
    for (const Rational& q : choice.weights) total += q;
    if (total != Rational(1)) throw InvalidArgument("aux choice: weights must sum to 1");
    for (const Rational& q : choice.weights) w.push_back(q.to_double());
  }
  return w;
}

}  // namespace detail

// Zero-error triple (I(X;U1|Q), I(Y;U2|Q), I(W;U1,U2|Q)).
inline RI1Point eval_zero_RI1(const ProblemInstance& inst, const AuxChoice& choice,
                              const Limits& limits = default_limits()) {
  (void)limits;
  auto weights = detail::choice_weights(choice);
  RI1Point out;
  constexpr std::size_t X = 0, Y = 1, U1 = 2, U2 = 3, W = 4;
  for (std::size_t k = 0; k < choice.components.size(); ++k) {
    auto joint = detail::component_joint(inst, choice.components[k]);
    std::size_t vx[1] = {X}, vy[1] = {Y}, vu1[1] = {U1}, vu2[1] = {U2}, vw[1] = {W};
    std::size_t vu12[2] = {U1, U2};
    out.rate.a += weights[k] * joint.mutual_info_bits(vx, vu1);
    out.rate.b += weights[k] * joint.mutual_info_bits(vy, vu2);
    out.rate.c += weights[k] * joint.mutual_info_bits(vw, vu12);
  }
  out.sum_ab = out.rate.a + out.rate.b;
  return out;
}

// Vanishing-error triple per the Berger-Tung / Wyner-Ziv style scheme:
// (I(X;U1|U2,Q), I(Y;U2|U1,Q), max{I(W;U1|U2,Y,Q), I(W;U2|U1,X,Q)}) with
// the sum constraint R_A + R_B >= I(X,Y;U1,U2|Q) reported alongside.
inline RI1Point eval_eps_RI1(const ProblemInstance& inst, const AuxChoice& choice,
                             const Limits& limits = default_limits()) {
  (void)limits;
  auto weights = detail::choice_weights(choice);
  RI1Point out;
  double rc1 = 0, rc2 = 0;
  constexpr std::size_t X = 0, Y = 1, U1 = 2, U2 = 3, W = 4;
  for (std::size_t k = 0; k < choice.components.size(); ++k) {
    auto joint = detail::component_joint(inst, choice.components[k]);
    std::size_t vx[1] = {X}, vy[1] = {Y}, vu1[1] = {U1}, vu2[1] = {U2}, vw[1] = {W};
    std::size_t vxy[2] = {X, Y}, vu12[2] = {U1, U2};
    std::size_t vu2y[2] = {U2, Y}, vu1x[2] = {U1, X};
    out.rate.a += weights[k] * joint.cond_mutual_info_bits(vx, vu1, vu2);
    out.rate.b += weights[k] * joint.cond_mutual_info_bits(vy, vu2, vu1);
    out.sum_ab += weights[k] * joint.mutual_info_bits(vxy, vu12);
    rc1 += weights[k] * joint.cond_mutual_info_bits(vw, vu1, vu2y);
    rc2 += weights[k] * joint.cond_mutual_info_bits(vw, vu2, vu1x);
  }
  out.rate.c = std::max(rc1, rc2);
  return out;
}

inline Region3 region_from_zero_point(const RI1Point& p) {
  Region3 r;
  r.name = "zero_RI1_point";
  r.generators.push_back(p.rate);
  return r;
}

inline Region3 region_from_eps_point(const RI1Point& p) {
  Region3 r;
  r.name = "eps_RI1_point";
  r.generators.push_back(p.rate);
  if (p.sum_ab > p.rate.a + p.rate.b + 1e-12) {
    r.halfspaces.push_back({1, 1, 0, p.sum_ab});
  }
  return r;
}

enum class ErrorModel { zero, eps };

struct SearchResult {
  Region3 region;
  bool complete = true;
  std::size_t evaluated = 0;
};

namespace detail {

// Families enumerated cover-first: pick k maximal independent sets that
// jointly cover the positive-mass symbols (k ascending), then every
// deterministic assignment of symbols to covering sets, then a coarse grid
// of two-way splits for symbols with several covering sets.
inline std::vector<AuxFamily> family_candidates(const Graph& confus,
                                                const std::vector<Rational>& marginal,
                                                const Limits& limits,
                                                std::size_t max_candidates,
                                                bool* complete) {
  auto sets = maximal_independent_sets(confus, limits);
  const std::size_t ns = sets.size();
  const std::size_t nsym = confus.size();
  std::vector<AuxFamily> out;

  std::vector<std::size_t> active;
  for (std::size_t s = 0; s < nsym; ++s)
    if (!marginal[s].is_zero()) active.push_back(s);

  std::vector<std::uint64_t> covers(ns, 0);
  for (std::size_t j = 0; j < ns; ++j)
    for (std::size_t v : sets[j]) covers[j] |= (std::uint64_t{1} << v);
  std::uint64_t need = 0;
  for (std::size_t s : active) need |= (std::uint64_t{1} << s);

  std::vector<int> grid_steps;
  int steps = static_cast<int>(std::round(1.0 / limits.grid_step));
  for (int t = 1; t < steps; ++t) grid_steps.push_back(t);

  std::vector<std::size_t> combo;
  std::size_t nodes = 0;
  const std::size_t node_budget = 64 * max_candidates + 10000;
  auto emit_for_combo = [&]() {
    // Options per active symbol within this combo.
    std::vector<std::vector<std::size_t>> options(active.size());
    for (std::size_t i = 0; i < active.size(); ++i) {
      for (std::size_t cj = 0; cj < combo.size(); ++cj)
        if (covers[combo[cj]] & (std::uint64_t{1} << active[i]))
          options[i].push_back(cj);
      if (options[i].empty()) return;  // combo does not cover
    }
    std::vector<std::vector<std::size_t>> chosen_sets;
    for (std::size_t cj : combo) chosen_sets.push_back(sets[cj]);

    // Deterministic assignments.
    std::vector<std::size_t> pick(active.size(), 0);
    auto assign = [&](auto&& self, std::size_t i) -> void {
      if (out.size() >= max_candidates) return;
      if (i == active.size()) {
        AuxFamily fam;
        fam.sets = chosen_sets;
        fam.cond.assign(chosen_sets.size(),
                        std::vector<Rational>(nsym, Rational(0)));
        for (std::size_t t = 0; t < active.size(); ++t)
          fam.cond[pick[t]][active[t]] = Rational(1);
        out.push_back(std::move(fam));
        return;
      }
      for (std::size_t o : options[i]) {
        pick[i] = o;
        self(self, i + 1);
      }
    };
    assign(assign, 0);

    // Grid mixtures: split every multi-option symbol between its first two
    // covering sets with the same grid weight.
    for (int t : grid_steps) {
      if (out.size() >= max_candidates) return;
      bool has_multi = false;
      AuxFamily fam;
      fam.sets = chosen_sets;
      fam.cond.assign(chosen_sets.size(), std::vector<Rational>(nsym, Rational(0)));
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (options[i].size() >= 2) {
          has_multi = true;
          fam.cond[options[i][0]][active[i]] = Rational(t, steps);
          fam.cond[options[i][1]][active[i]] = Rational(steps - t, steps);
        } else {
          fam.cond[options[i][0]][active[i]] = Rational(1);
        }
      }
      if (has_multi) out.push_back(std::move(fam));
    }
  };

  auto choose = [&](auto&& self, std::size_t start, std::size_t k,
                    std::uint64_t covered) -> void {
    if (out.size() >= max_candidates || ++nodes > node_budget) return;
    if (combo.size() == k) {
      if ((covered & need) == need) emit_for_combo();
      return;
    }
    for (std::size_t j = start; j < ns; ++j) {
      combo.push_back(j);
      self(self, j + 1, k, covered | covers[j]);
      combo.pop_back();
    }
  };
  for (std::size_t k = 1; k <= ns && out.size() < max_candidates && nodes <= node_budget;
       ++k) {
    choose(choose, 0, k, 0);
  }
  if ((out.size() >= max_candidates || nodes > node_budget) && complete) {
    *complete = false;
  }
  return out;
}

// Deterministic W choices over the auxiliary graph, cover-first.
inline std::vector<std::pair<std::vector<std::vector<std::size_t>>,
                             std::vector<std::vector<Rational>>>>
w_candidates(const ProbGraph& aux, const Limits& limits, std::size_t max_candidates,
             bool* complete) {
  std::vector<std::pair<std::vector<std::vector<std::size_t>>,
                        std::vector<std::vector<Rational>>>> out;
  std::vector<Rational> marginal = aux.mass;
  auto families = family_candidates(aux.graph, marginal, limits, max_candidates, complete);
  out.reserve(families.size());
  for (auto& fam : families) {
    bool deterministic = true;
    for (const auto& row : fam.cond)
      for (const Rational& c : row)
        if (!c.is_zero() && c != Rational(1)) deterministic = false;
    if (!deterministic) continue;  // keep W deterministic
    out.emplace_back(fam.sets, fam.cond);
  }
  return out;
}

}  // namespace detail

// Budgeted heuristic coverage of the first achievable scheme's region:
// never claims optimality, only that every emitted corner is achievable.
inline SearchResult search_RI1(const ProblemInstance& inst, std::size_t budget,
                               ErrorModel model,
                               const Limits& limits = default_limits()) {
  SearchResult result;
  result.region.name = model == ErrorModel::zero ? "zero_RI1" : "eps_RI1";

  auto confA = confusability(inst, Side::A);
  auto confB = confusability(inst, Side::B);
  std::size_t side_cap = std::max<std::size_t>(8, budget / 64);
  bool complete = true;
  auto fams1 = detail::family_candidates(confA.graph, inst.pmf.marginal_x(),
                                         limits, side_cap, &complete);
  auto fams2 = detail::family_candidates(confB.graph, inst.pmf.marginal_y(),
                                         limits, side_cap, &complete);

  std::vector<RateTriple> corners;
  std::size_t evals = 0;
  for (const AuxFamily& u1 : fams1) {
    for (const AuxFamily& u2 : fams2) {
      if (evals >= budget) {
        complete = false;
        break;
      }
      std::vector<std::pair<std::vector<std::vector<std::size_t>>,
                            std::vector<std::vector<Rational>>>> ws;
      try {
        auto aux = aux_graph(inst, u1, u2);
        ws = detail::w_candidates(aux, limits,
                                  std::max<std::size_t>(4, budget / 16), &complete);
      } catch (const GuardExceeded&) {
        complete = false;  // auxiliary graph too large for this pair
        continue;
      }
      for (auto& [w_sets, w_cond] : ws) {
        if (evals >= budget) {
          complete = false;
          break;
        }
        AuxChoice choice;
        choice.components.push_back({u1, u2, w_sets, w_cond});
        choice.weights = {Rational(1)};
        RI1Point p = model == ErrorModel::zero
                         ? eval_zero_RI1(inst, choice, limits)
                         : eval_eps_RI1(inst, choice, limits);
        ++evals;
        Region3 single = model == ErrorModel::zero ? region_from_zero_point(p)
                                                   : region_from_eps_point(p);
        auto expanded = expanded_generators(single);
        corners.insert(corners.end(), expanded.begin(), expanded.end());
      }
    }
  }
  result.region.generators = dominance_filter(std::move(corners));
  result.region.complete = complete;
  result.complete = complete;
  result.evaluated = evals;
  return result;
}

// ---- function comparison (graph order) ----

struct CompareResult {
  enum class Verdict { isomorphic, subset_1_in_2, subset_2_in_1, incomparable };
  Verdict verdict = Verdict::incomparable;
  bool identical_graphs = false;
  // Exact degeneracy checks for the containment direction: the coarser
  // function is a function of (finer Z, X) and of (finer Z, Y).
  bool coarse_determined_given_x = false;
  bool coarse_determined_given_y = false;
};

namespace detail {

// Is z_coarse = c(x, y) determined by (z_fine, x) on the support?
inline bool determined_given_x(const ProblemInstance& coarse,
                               const ProblemInstance& fine) {
  for (std::size_t x = 0; x < coarse.nx(); ++x) {
    for (std::size_t zf = 0; zf < fine.nz(); ++zf) {
      int value = -1;
      for (std::size_t y = 0; y < coarse.ny(); ++y) {
        if (!coarse.pmf.in_support(x, y)) continue;
        if (fine.z_at(x, y) != static_cast<int>(zf)) continue;
        if (value < 0) value = coarse.z_at(x, y);
        else if (value != coarse.z_at(x, y)) return false;
      }
    }
  }
  return true;
}

inline bool determined_given_y(const ProblemInstance& coarse,
                               const ProblemInstance& fine) {
  for (std::size_t y = 0; y < coarse.ny(); ++y) {
    for (std::size_t zf = 0; zf < fine.nz(); ++zf) {
      int value = -1;
      for (std::size_t x = 0; x < coarse.nx(); ++x) {
        if (!coarse.pmf.in_support(x, y)) continue;
        if (fine.z_at(x, y) != static_cast<int>(zf)) continue;
        if (value < 0) value = coarse.z_at(x, y);
        else if (value != coarse.z_at(x, y)) return false;
      }
    }
  }
  return true;
}

}  // namespace detail

// Orders two functions of the same source by their f-modified rook graphs:
// edge containment gives region containment, isomorphism gives region
// equality. The numeric degeneracy check backs the containment direction.
inline CompareResult compare_functions(const ProblemInstance& f1,
                                       const ProblemInstance& f2,
                                       const Limits& limits = default_limits()) {
  if (f1.pmf.x_alpha.symbols != f2.pmf.x_alpha.symbols ||
      f1.pmf.y_alpha.symbols != f2.pmf.y_alpha.symbols ||
      f1.pmf.mass != f2.pmf.mass) {
    throw InvalidArgument("compare_functions: instances must share the source");
  }
  Graph g1 = f_rook_graph(f1).graph;
  Graph g2 = f_rook_graph(f2).graph;
  bool s12 = edge_subset(g1, g2);
  bool s21 = edge_subset(g2, g1);

  CompareResult out;
  if (s12 && s21) {
    out.verdict = CompareResult::Verdict::isomorphic;
    out.identical_graphs = true;
    out.coarse_determined_given_x = detail::determined_given_x(f1, f2) &&
                                    detail::determined_given_x(f2, f1);
    out.coarse_determined_given_y = detail::determined_given_y(f1, f2) &&
                                    detail::determined_given_y(f2, f1);
    return out;
  }
  if (s12) {
    out.verdict = CompareResult::Verdict::subset_1_in_2;
    out.coarse_determined_given_x = detail::determined_given_x(f1, f2);
    out.coarse_determined_given_y = detail::determined_given_y(f1, f2);
    return out;
  }
  if (s21) {
    out.verdict = CompareResult::Verdict::subset_2_in_1;
    out.coarse_determined_given_x = detail::determined_given_x(f2, f1);
    out.coarse_determined_given_y = detail::determined_given_y(f2, f1);
    return out;
  }
  if (g1.size() <= limits.iso_vertex_cap && isomorphic(g1, g2, limits)) {
    out.verdict = CompareResult::Verdict::isomorphic;
  }
  return out;
}

}  // namespace relaycomp
