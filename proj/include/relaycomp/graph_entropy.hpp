#pragma once
// The four graph-information quantities: chromatic entropy (exact min-entropy
// proper coloring), graph entropy and conditional graph entropy (alternating
// minimization over maximal independent sets), and finite-n sequences
// bounding the complementary graph entropy; plus the component union rule
// and the AND-union max rule.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "relaycomp/graph.hpp"
#include "relaycomp/graph_build.hpp"
#include "relaycomp/graphalg.hpp"
#include "relaycomp/model.hpp"

namespace relaycomp {

struct EntropyConvergence {
  std::size_t iterations = 0;
  double gap = 0;              // primal - dual bound (0 for exact searches)
  bool converged = true;
  double restart_spread = 0;   // max - min over restart finals
};

struct EntropyResult {
  double value = 0;
  std::optional<Coloring> coloring;                    // chromatic entropy
  std::vector<std::vector<std::size_t>> witness_sets;  // support of W
  std::vector<std::vector<double>> witness_cond;       // p(w|x), [w][x]
  EntropyConvergence conv;
};

namespace detail {

// Maximal independent sets of the induced subgraph on `subset` (bit mask),
// as masks in the same bit space.
inline std::vector<std::uint64_t> maximal_sets_in(
    const std::vector<std::uint64_t>& nbr, std::uint64_t subset) {
  std::vector<std::uint64_t> out;
  if (subset == 0) return out;
  std::vector<std::uint64_t> non_nbr(nbr.size());
  for (std::size_t i = 0; i < nbr.size(); ++i) non_nbr[i] = subset & ~nbr[i] & ~(std::uint64_t{1} << i);
  bron_kerbosch(0, subset, 0, non_nbr, out);
  std::sort(out.begin(), out.end());
  return out;
}

// Lower bound on the absolute-mass entropy contribution of any partition of
// `remaining` mass into classes of mass at most `cap`: the most concentrated
// fill is optimal for a Schur-convex objective.
inline double schur_fill_bound(double remaining, double cap) {
  if (remaining <= 0 || cap <= 0) return 0;
  double lb = 0;
  while (remaining > 1e-15) {
    double chunk = std::min(cap, remaining);
    lb += entropy_term_bits(chunk);
    remaining -= chunk;
  }
  return lb;
}

}  // namespace detail

// Exact minimum-entropy proper coloring of (G, X). Classes are built as
// maximal independent sets of the remaining positive-mass vertices (a
// mass-largest class in an optimal partition can always be grown maximal),
// memoized over vertex subsets, pruned with the concentration bound above.
// Zero-mass vertices are appended greedily afterwards: they contribute
// nothing to H(c(X)) but the witness stays proper on the full graph.
inline EntropyResult chromatic_entropy(const ProbGraph& pg,
                                       const Limits& limits = default_limits()) {
  const Graph& g = pg.graph;
  std::vector<std::size_t> pos;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (!pg.mass[v].is_zero()) pos.push_back(v);
  if (pos.size() > limits.chromatic_entropy_vertex_cap || pos.size() > 64) {
    throw GuardExceeded("chromatic_entropy: " + std::to_string(pos.size()) +
                        " positive-mass vertices exceed guard (" +
                        std::to_string(limits.chromatic_entropy_vertex_cap) + ")");
  }

  EntropyResult result;
  std::vector<std::vector<std::size_t>> classes;

  if (!pos.empty()) {
    const std::size_t np = pos.size();
    std::vector<double> w(np);
    for (std::size_t i = 0; i < np; ++i) w[i] = pg.mass[pos[i]].to_double();
    std::vector<std::uint64_t> nbr(np, 0);
    for (std::size_t i = 0; i < np; ++i)
      for (std::size_t j = 0; j < np; ++j)
        if (i != j && g.adjacent(pos[i], pos[j])) nbr[i] |= (std::uint64_t{1} << j);

    auto mass_of = [&](std::uint64_t mask) {
      double m = 0;
      while (mask) {
        m += w[static_cast<std::size_t>(__builtin_ctzll(mask))];
        mask &= mask - 1;
      }
      return m;
    };

    const std::uint64_t all =
        np == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << np) - 1;
    double max_class_mass = 0;
    for (std::uint64_t s : detail::maximal_sets_in(nbr, all)) {
      max_class_mass = std::max(max_class_mass, mass_of(s));
    }

    std::unordered_map<std::uint64_t, std::pair<double, std::uint64_t>> memo;
    auto solve = [&](auto&& self, std::uint64_t subset) -> double {
      if (subset == 0) return 0;
      auto it = memo.find(subset);
      if (it != memo.end()) return it->second.first;
      auto sets = detail::maximal_sets_in(nbr, subset);
      std::vector<std::pair<double, std::uint64_t>> ordered;
      ordered.reserve(sets.size());
      for (std::uint64_t s : sets) ordered.emplace_back(mass_of(s), s);
      std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second < b.second;
      });
      double best = std::numeric_limits<double>::infinity();
      std::uint64_t best_set = 0;
      double subset_mass = mass_of(subset);
      for (const auto& [m, s] : ordered) {
        double cost = entropy_term_bits(m);
        if (cost + detail::schur_fill_bound(subset_mass - m, max_class_mass) >=
            best) {
          continue;
        }
        double total = cost + self(self, subset & ~s);
        if (total < best) {
          best = total;
          best_set = s;
        }
      }
      memo[subset] = {best, best_set};
      return best;
    };
    result.value = solve(solve, all);

    std::uint64_t left = all;
    while (left) {
      std::uint64_t s = memo[left].second;
      std::vector<std::size_t> cls;
      for (std::uint64_t m = s; m;) {
        cls.push_back(pos[static_cast<std::size_t>(__builtin_ctzll(m))]);
        m &= m - 1;
      }
      classes.push_back(std::move(cls));
      left &= ~s;
    }
  }

  // Greedy placement of zero-mass vertices.
  for (std::size_t v = 0; v < g.size(); ++v) {
    if (!pg.mass[v].is_zero()) continue;
    bool placed = false;
    for (auto& cls : classes) {
      bool ok = true;
      for (std::size_t u : cls)
        if (g.adjacent(u, v)) { ok = false; break; }
      if (ok) {
        cls.push_back(v);
        placed = true;
        break;
      }
    }
    if (!placed) classes.push_back({v});
  }

  Coloring coloring;
  coloring.color_of.assign(g.size(), -1);
  coloring.num_colors = static_cast<int>(classes.size());
  for (std::size_t c = 0; c < classes.size(); ++c)
    for (std::size_t v : classes[c]) coloring.color_of[v] = static_cast<int>(c);
  result.coloring = std::move(coloring);
  return result;
}

// Graph entropy H_G(X) = min I(W; X) over p(W|X) supported on independent
// sets containing X. W ranges over maximal independent sets (enlarging an
// admissible set cannot increase the objective). Alternating minimization:
// q(w) from the mixture, then p(w|x) proportional to q(w) on admissible w.
// The value reported is G(q) = -sum_x p(x) log2 Z_x with Z_x the admissible
// q-mass at x; the Frank-Wolfe bound (max_w sum_{x in w} p(x)/Z_x - 1)*log2(e)
// certifies the distance to the true minimum.
inline EntropyResult graph_entropy(const ProbGraph& pg,
                                   const Limits& limits = default_limits()) {
  auto masks = maximal_independent_set_masks(pg.graph, limits);
  const std::size_t nw = masks.size();
  const std::size_t nx = pg.graph.size();

  std::vector<double> px(nx);
  std::vector<std::size_t> active;
  for (std::size_t x = 0; x < nx; ++x) {
    px[x] = pg.mass[x].to_double();
    if (px[x] > 0) active.push_back(x);
  }

  EntropyResult result;
  for (std::uint64_t m : masks) {
    std::vector<std::size_t> set;
    for (std::uint64_t t = m; t;) {
      set.push_back(static_cast<std::size_t>(__builtin_ctzll(t)));
      t &= t - 1;
    }
    result.witness_sets.push_back(std::move(set));
  }
  result.witness_cond.assign(nw, std::vector<double>(nx, 0.0));
  if (active.empty() || nw == 0) return result;

  std::vector<std::vector<std::size_t>> admissible(nx);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t wi = 0; wi < nw; ++wi)
      if (masks[wi] & (std::uint64_t{1} << x)) admissible[x].push_back(wi);

  auto& p = result.witness_cond;
  for (std::size_t x = 0; x < nx; ++x) {
    double u = 1.0 / static_cast<double>(admissible[x].size());
    for (std::size_t wi : admissible[x]) p[wi][x] = u;
  }

  std::vector<double> q(nw, 0.0);
  std::vector<double> z(nx, 0.0);
  std::vector<double> slack(nw, 0.0);
  const double log2e = 1.0 / std::log(2.0);
  double value = std::numeric_limits<double>::infinity();
  double gap = std::numeric_limits<double>::infinity();
  std::size_t iter = 0;
  bool converged = false;
  for (; iter < limits.am_max_iters; ++iter) {
    std::fill(q.begin(), q.end(), 0.0);
    for (std::size_t x : active)
      for (std::size_t wi : admissible[x]) q[wi] += px[x] * p[wi][x];

    double upper = 0;
    std::fill(slack.begin(), slack.end(), 0.0);
    for (std::size_t x : active) {
      double zx = 0;
      for (std::size_t wi : admissible[x]) zx += q[wi];
      z[x] = zx;
      upper -= px[x] * std::log2(zx);
      for (std::size_t wi : admissible[x]) slack[wi] += px[x] / zx;
    }
    double max_slack = 0;
    for (std::size_t wi = 0; wi < nw; ++wi) max_slack = std::max(max_slack, slack[wi]);
    gap = std::max(0.0, (max_slack - 1.0) * log2e);

    bool stalled = std::abs(value - upper) < 1e-15 * std::max(1.0, std::abs(upper));
    value = upper;
    if (gap <= limits.am_gap_tol) {
      converged = true;
      break;
    }
    if (stalled) break;  // value at machine precision, gap reported as is

    for (std::size_t x : active)
      for (std::size_t wi : admissible[x]) p[wi][x] = q[wi] / z[x];
  }
  result.value = std::max(value, 0.0);
  result.conv.iterations = iter;
  result.conv.gap = gap;
  result.conv.converged = converged;
  return result;
}

namespace detail {

struct CondAmProblem {
  std::vector<std::uint64_t> masks;
  std::vector<std::vector<std::size_t>> admissible;  // per x
  std::vector<double> px, py;
  std::vector<std::vector<double>> pxy;  // [x][y]
  std::vector<std::size_t> active_x, active_y;
};

// One run of the conditional alternating minimization from a given start;
// returns the final objective I(W;X|Y).
inline double cond_am_run(const CondAmProblem& prob,
                          std::vector<std::vector<double>>& p,
                          const Limits& limits, std::size_t* iters_out,
                          bool* converged_out) {
  const std::size_t nw = prob.masks.size();
  const std::size_t ny = prob.py.size();
  std::vector<std::vector<double>> r(nw, std::vector<double>(ny, 0.0));
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
  std::size_t iter = 0;
  for (; iter < limits.am_max_iters; ++iter) {
    for (auto& row : r) std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t x : prob.active_x)
      for (std::size_t wi : prob.admissible[x]) {
        if (p[wi][x] <= 0) continue;
        for (std::size_t y : prob.active_y)
          r[wi][y] += prob.pxy[x][y] * p[wi][x];
      }
    for (std::size_t wi = 0; wi < nw; ++wi)
      for (std::size_t y : prob.active_y) r[wi][y] /= prob.py[y];

    double objective = 0;
    for (std::size_t x : prob.active_x)
      for (std::size_t y : prob.active_y) {
        if (prob.pxy[x][y] <= 0) continue;
        for (std::size_t wi : prob.admissible[x]) {
          if (p[wi][x] > 0 && r[wi][y] > 0)
            objective += prob.pxy[x][y] * p[wi][x] * std::log2(p[wi][x] / r[wi][y]);
        }
      }
    if (std::abs(value - objective) < limits.am_value_tol) {
      value = objective;
      converged = true;
      break;
    }
    value = objective;

    // p(w|x) proportional to prod_y r(w|y)^{p(y|x)} over admissible w.
    for (std::size_t x : prob.active_x) {
      double best_log = -std::numeric_limits<double>::infinity();
      std::vector<double> lg(prob.admissible[x].size(),
                             -std::numeric_limits<double>::infinity());
      for (std::size_t k = 0; k < prob.admissible[x].size(); ++k) {
        std::size_t wi = prob.admissible[x][k];
        double s = 0;
        bool dead = false;
        for (std::size_t y : prob.active_y) {
          if (prob.pxy[x][y] <= 0) continue;
          if (r[wi][y] <= 0) { dead = true; break; }
          s += (prob.pxy[x][y] / prob.px[x]) * std::log2(r[wi][y]);
        }
        if (!dead) {
          lg[k] = s;
          best_log = std::max(best_log, s);
        }
      }
      double z = 0;
      std::vector<double> unnorm(prob.admissible[x].size(), 0.0);
      for (std::size_t k = 0; k < prob.admissible[x].size(); ++k) {
        if (lg[k] > -std::numeric_limits<double>::infinity()) {
          unnorm[k] = std::exp2(lg[k] - best_log);
          z += unnorm[k];
        }
      }
      for (std::size_t k = 0; k < prob.admissible[x].size(); ++k)
        p[prob.admissible[x][k]][x] = unnorm[k] / z;
    }
  }
  if (iters_out) *iters_out = iter;
  if (converged_out) *converged_out = converged;
  return std::max(value, 0.0);
}

}  // namespace detail

// Conditional graph entropy H_G(X|Y) = min I(W;X|Y) subject to W-X-Y and
// X in W in Gamma(G). The objective is not certified convex; seeded
// multi-start alternating minimization, with the unconditional optimum as
// warm start, reporting the spread across restarts.
inline EntropyResult conditional_graph_entropy(const Graph& g, const JointPmf& pmf,
                                               const Limits& limits = default_limits()) {
  if (g.size() != pmf.nx()) {
    throw InvalidArgument("conditional_graph_entropy: graph must live on the X alphabet");
  }
  detail::CondAmProblem prob;
  prob.masks = maximal_independent_set_masks(g, limits);
  const std::size_t nw = prob.masks.size();
  const std::size_t nx = pmf.nx(), ny = pmf.ny();
  prob.px.assign(nx, 0.0);
  prob.py.assign(ny, 0.0);
  prob.pxy.assign(nx, std::vector<double>(ny, 0.0));
  auto mx = pmf.marginal_x();
  auto my = pmf.marginal_y();
  for (std::size_t x = 0; x < nx; ++x) prob.px[x] = mx[x].to_double();
  for (std::size_t y = 0; y < ny; ++y) prob.py[y] = my[y].to_double();
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      prob.pxy[x][y] = pmf.mass[x][y].to_double();
  for (std::size_t x = 0; x < nx; ++x)
    if (prob.px[x] > 0) prob.active_x.push_back(x);
  for (std::size_t y = 0; y < ny; ++y)
    if (prob.py[y] > 0) prob.active_y.push_back(y);

  prob.admissible.assign(nx, {});
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t wi = 0; wi < nw; ++wi)
      if (prob.masks[wi] & (std::uint64_t{1} << x)) prob.admissible[x].push_back(wi);

  EntropyResult result;
  for (std::uint64_t m : prob.masks) {
    std::vector<std::size_t> set;
    for (std::uint64_t t = m; t;) {
      set.push_back(static_cast<std::size_t>(__builtin_ctzll(t)));
      t &= t - 1;
    }
    result.witness_sets.push_back(std::move(set));
  }
  result.witness_cond.assign(nw, std::vector<double>(nx, 0.0));
  if (prob.active_x.empty() || nw == 0) return result;

  ProbGraph marg{g, mx};
  EntropyResult warm = graph_entropy(marg, limits);

  std::mt19937_64 rng(limits.seed);
  double best = std::numeric_limits<double>::infinity();
  double worst = -std::numeric_limits<double>::infinity();
  std::size_t best_iters = 0;
  bool best_converged = false;
  int restarts = std::max(1, limits.cond_entropy_restarts);
  for (int run = 0; run < restarts; ++run) {
    std::vector<std::vector<double>> p(nw, std::vector<double>(nx, 0.0));
    if (run == 0) {
      p = warm.witness_cond;
    } else if (run == 1) {
      for (std::size_t x : prob.active_x) {
        double u = 1.0 / static_cast<double>(prob.admissible[x].size());
        for (std::size_t wi : prob.admissible[x]) p[wi][x] = u;
      }
    } else {
      std::exponential_distribution<double> expo(1.0);
      for (std::size_t x : prob.active_x) {
        double z = 0;
        std::vector<double> raw(prob.admissible[x].size());
        for (double& v : raw) {
          v = expo(rng) + 1e-6;
          z += v;
        }
        for (std::size_t k = 0; k < raw.size(); ++k)
          p[prob.admissible[x][k]][x] = raw[k] / z;
      }
    }
    std::size_t iters = 0;
    bool converged = false;
    double v = detail::cond_am_run(prob, p, limits, &iters, &converged);
    if (v < best) {
      best = v;
      result.witness_cond = p;
      best_iters = iters;
      best_converged = converged;
    }
    worst = std::max(worst, v);
  }
  result.value = best;
  result.conv.iterations = best_iters;
  result.conv.converged = best_converged;
  result.conv.restart_spread = worst - best;
  result.conv.gap = worst - best;
  return result;
}

// Finite prefix of a_n = (1/n) H_chi(G^{and n}, X^n). For graphs certified
// perfect the exact limit equals the graph entropy.
struct ComplementarySequence {
  std::vector<std::pair<int, double>> a;
  std::optional<bool> perfect;        // nullopt when the perfection guard trips
  std::optional<double> exact_limit;  // present iff perfect
  bool truncated = false;
  std::string truncation_reason;
};

inline ComplementarySequence complementary_entropy_sequence(
    const ProbGraph& pg, int n_max, const Limits& limits = default_limits()) {
  ComplementarySequence seq;
  for (int n = 1; n <= n_max; ++n) {
    try {
      Graph gn = and_power(pg.graph, n, limits);
      ProbGraph pgn{std::move(gn), power_mass(pg.mass, n)};
      double hn = chromatic_entropy(pgn, limits).value;
      seq.a.emplace_back(n, hn / n);
    } catch (const GuardExceeded& e) {
      seq.truncated = true;
      seq.truncation_reason = e.what();
      break;
    }
  }
  try {
    bool perfect = is_perfect(pg.graph, limits);
    seq.perfect = perfect;
    if (perfect) seq.exact_limit = graph_entropy(pg, limits).value;
  } catch (const GuardExceeded&) {
  }
  return seq;
}

// Koerner's union rule: H_G(X) = sum_i Pr(G_i) H_{G_i}(X_i) over connected
// components with renormalized masses.
struct KornerResult {
  double value = 0;
  struct Part {
    std::vector<std::size_t> vertices;
    double mass = 0;
    double entropy = 0;
  };
  std::vector<Part> parts;
};

inline KornerResult korner_union_entropy(const ProbGraph& pg,
                                         const Limits& limits = default_limits()) {
  KornerResult out;
  for (const auto& comp : components_with_mass(pg)) {
    KornerResult::Part part;
    part.vertices = comp.vertices;
    part.mass = comp.mass.to_double();
    if (!comp.mass.is_zero()) {
      Graph sub = pg.graph.induced(comp.vertices);
      std::vector<Rational> sub_mass;
      sub_mass.reserve(comp.vertices.size());
      for (std::size_t v : comp.vertices) sub_mass.push_back(pg.mass[v] / comp.mass);
      part.entropy = graph_entropy({std::move(sub), std::move(sub_mass)}, limits).value;
      out.value += part.mass * part.entropy;
    }
    out.parts.push_back(std::move(part));
  }
  return out;
}

// Minimum asymptotic rate for a family of graphs on a common vertex set
// under the AND-union rule: max_i of the complementary graph entropy.
// Exact when every member is certified perfect (complementary = graph
// entropy); otherwise an interval [max_i lower_i, max_i upper_i] where
// upper_i is the best computed a_n (the sequence is subadditive) and
// lower_i comes from a perfect spanning subgraph (a greedy clique
// partition, whose graph entropy is H(X) - H(clique label)).
struct AndUnionResult {
  bool exact = false;
  double value = 0;  // = upper when not exact
  double lower = 0;
  double upper = 0;
};

inline AndUnionResult and_union_min_rate(const std::vector<Graph>& family,
                                         const std::vector<Rational>& mass,
                                         const Limits& limits = default_limits()) {
  if (family.empty()) throw InvalidArgument("and_union_min_rate: empty family");
  for (const Graph& g : family) require_same_vertices(family.front(), g, "and_union_min_rate");

  AndUnionResult out;
  out.exact = true;
  double max_lower = 0, max_upper = 0, max_exact = 0;
  for (const Graph& g : family) {
    ProbGraph pg{g, mass};
    bool perfect = false;
    try {
      perfect = is_perfect(g, limits);
    } catch (const GuardExceeded&) {
    }
    double hg = korner_union_entropy(pg, limits).value;
    if (perfect) {
      max_exact = std::max(max_exact, hg);
      max_lower = std::max(max_lower, hg);
      max_upper = std::max(max_upper, hg);
      continue;
    }
    out.exact = false;
    double upper = hg;  // complementary entropy never exceeds graph entropy
    try {
      double a1 = chromatic_entropy(pg, limits).value;
      upper = std::min(upper, a1);
    } catch (const GuardExceeded&) {
    }
    // Greedy clique partition -> perfect spanning subgraph lower bound.
    std::vector<bool> used(g.size(), false);
    std::vector<double> clique_mass;
    double hx = 0;
    for (std::size_t v = 0; v < g.size(); ++v) hx += entropy_term_bits(mass[v].to_double());
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (used[v]) continue;
      std::vector<std::size_t> clique{v};
      used[v] = true;
      for (std::size_t u = v + 1; u < g.size(); ++u) {
        if (used[u]) continue;
        bool ok = true;
        for (std::size_t c : clique)
          if (!g.adjacent(c, u)) { ok = false; break; }
        if (ok) {
          clique.push_back(u);
          used[u] = true;
        }
      }
      double m = 0;
      for (std::size_t c : clique) m += mass[c].to_double();
      clique_mass.push_back(m);
    }
    double h_label = entropy_bits(std::span<const double>(clique_mass));
    max_lower = std::max(max_lower, std::max(0.0, hx - h_label));
    max_upper = std::max(max_upper, upper);
  }
  out.lower = max_lower;
  out.upper = std::max(max_upper, max_lower);
  out.value = out.exact ? max_exact : out.upper;
  return out;
}

}  // namespace relaycomp
