#pragma once
// Exact combinatorial primitives: maximal independent sets, chromatic and
// clique numbers with witnesses, perfection by the induced-subgraph
// definition, connected components with masses.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "relaycomp/graph.hpp"

namespace relaycomp {

struct Coloring {
  std::vector<int> color_of;  // per vertex
  int num_colors = 0;

  std::vector<std::vector<std::size_t>> classes() const {
    std::vector<std::vector<std::size_t>> out(static_cast<std::size_t>(num_colors));
    for (std::size_t v = 0; v < color_of.size(); ++v)
      out[static_cast<std::size_t>(color_of[v])].push_back(v);
    return out;
  }
};

inline bool is_proper(const Graph& g, const std::vector<int>& color_of) {
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j)
      if (g.adjacent(i, j) && color_of[i] == color_of[j]) return false;
  return true;
}

namespace detail {

inline std::vector<std::uint64_t> adjacency_masks(const Graph& g,
                                                  std::size_t cap,
                                                  const char* who) {
  if (g.size() > cap || g.size() > 64) {
    throw GuardExceeded(std::string(who) + ": graph larger than guard (" +
                        std::to_string(cap) + " vertices)");
  }
  std::vector<std::uint64_t> adj(g.size(), 0);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j)
      if (i != j && g.adjacent(i, j)) adj[i] |= (std::uint64_t{1} << j);
  return adj;
}

// Bron-Kerbosch with pivoting over the complement: maximal independent
// sets of g are maximal cliques of its complement.
inline void bron_kerbosch(std::uint64_t r, std::uint64_t p, std::uint64_t x,
                          const std::vector<std::uint64_t>& nbr,
                          std::vector<std::uint64_t>& out) {
  if (p == 0 && x == 0) {
    out.push_back(r);
    return;
  }
  std::uint64_t px = p | x;
  std::size_t pivot = static_cast<std::size_t>(__builtin_ctzll(px));
  std::size_t best = __builtin_popcountll(p & nbr[pivot]);
  for (std::uint64_t rest = px & ~(std::uint64_t{1} << pivot); rest;) {
    std::size_t v = static_cast<std::size_t>(__builtin_ctzll(rest));
    rest &= rest - 1;
    std::size_t cover = __builtin_popcountll(p & nbr[v]);
    if (cover > best) {
      best = cover;
      pivot = v;
    }
  }
  std::uint64_t candidates = p & ~nbr[pivot];
  while (candidates) {
    std::size_t v = static_cast<std::size_t>(__builtin_ctzll(candidates));
    std::uint64_t bit = std::uint64_t{1} << v;
    candidates &= candidates - 1;
    bron_kerbosch(r | bit, p & nbr[v], x & nbr[v], nbr, out);
    p &= ~bit;
    x |= bit;
  }
}

}  // namespace detail

// All maximal independent sets as bit masks, canonically ordered.
inline std::vector<std::uint64_t> maximal_independent_set_masks(
    const Graph& g, const Limits& limits = default_limits()) {
  auto adj = detail::adjacency_masks(g, limits.mis_vertex_cap,
                                     "maximal_independent_sets");
  std::vector<std::uint64_t> non_nbr(g.size(), 0);
  std::uint64_t all = g.size() == 64 ? ~std::uint64_t{0}
                                     : (std::uint64_t{1} << g.size()) - 1;
  for (std::size_t i = 0; i < g.size(); ++i) {
    non_nbr[i] = all & ~adj[i] & ~(std::uint64_t{1} << i);
  }
  std::vector<std::uint64_t> out;
  if (g.size() == 0) return out;
  detail::bron_kerbosch(0, all, 0, non_nbr, out);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::vector<std::size_t>> maximal_independent_sets(
    const Graph& g, const Limits& limits = default_limits()) {
  std::vector<std::vector<std::size_t>> out;
  for (std::uint64_t mask : maximal_independent_set_masks(g, limits)) {
    std::vector<std::size_t> set;
    for (std::uint64_t m = mask; m;) {
      set.push_back(static_cast<std::size_t>(__builtin_ctzll(m)));
      m &= m - 1;
    }
    out.push_back(std::move(set));
  }
  return out;
}

struct CliqueResult {
  int omega = 0;
  std::vector<std::size_t> witness;
};

// Exact maximum clique, branch and bound with greedy-coloring bound.
inline CliqueResult clique_number(const Graph& g,
                                  const Limits& limits = default_limits()) {
  auto adj = detail::adjacency_masks(g, limits.coloring_vertex_cap, "clique_number");
  CliqueResult best;
  if (g.size() == 0) return best;

  std::vector<std::size_t> current;
  // Vertices ordered by degree descending for a better first descent.
  std::vector<std::size_t> order(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto da = __builtin_popcountll(adj[a]), db = __builtin_popcountll(adj[b]);
    if (da != db) return da > db;
    return a < b;
  });

  auto greedy_color_bound = [&](std::uint64_t cand) {
    int colors = 0;
    while (cand) {
      ++colors;
      std::uint64_t avail = cand;
      while (avail) {
        std::size_t v = static_cast<std::size_t>(__builtin_ctzll(avail));
        std::uint64_t bit = std::uint64_t{1} << v;
        cand &= ~bit;
        avail &= ~bit & ~adj[v];
      }
    }
    return colors;
  };

  auto expand = [&](auto&& self, std::uint64_t cand) -> void {
    if (cand == 0) {
      if (current.size() > best.witness.size()) {
        best.witness = current;
        best.omega = static_cast<int>(current.size());
      }
      return;
    }
    if (current.size() + static_cast<std::size_t>(greedy_color_bound(cand)) <=
        best.witness.size()) {
      return;
    }
    for (std::size_t idx = 0; idx < order.size(); ++idx) {
      std::size_t v = order[idx];
      std::uint64_t bit = std::uint64_t{1} << v;
      if (!(cand & bit)) continue;
      current.push_back(v);
      self(self, cand & adj[v]);
      current.pop_back();
      cand &= ~bit;
      if (current.size() + static_cast<std::size_t>(__builtin_popcountll(cand)) <=
          best.witness.size()) {
        break;
      }
    }
  };

  std::uint64_t all = g.size() == 64 ? ~std::uint64_t{0}
                                     : (std::uint64_t{1} << g.size()) - 1;
  expand(expand, all);
  std::sort(best.witness.begin(), best.witness.end());
  best.omega = static_cast<int>(best.witness.size());
  return best;
}

struct ChromaticResult {
  int chi = 0;
  Coloring witness;
};

// Exact chromatic number, DSATUR branch and bound. Ties in saturation are
// broken by canonical vertex order for determinism.
inline ChromaticResult chromatic_number(const Graph& g,
                                        const Limits& limits = default_limits()) {
  auto adj = detail::adjacency_masks(g, limits.coloring_vertex_cap,
                                     "chromatic_number");
  const std::size_t n = g.size();
  ChromaticResult best;
  if (n == 0) return best;

  std::vector<int> color(n, -1);
  std::vector<int> best_color;
  int best_k = static_cast<int>(n) + 1;

  // Greedy DSATUR upper bound first so pruning starts tight.
  int lower = clique_number(g, limits).omega;

  auto pick_vertex = [&]() -> std::size_t {
    std::size_t pick = n;
    std::size_t best_sat = 0, best_deg = 0;
    for (std::size_t v = 0; v < n; ++v) {
      if (color[v] >= 0) continue;
      std::uint64_t sat_mask = 0;
      for (std::uint64_t m = adj[v]; m;) {
        std::size_t u = static_cast<std::size_t>(__builtin_ctzll(m));
        m &= m - 1;
        if (color[u] >= 0) sat_mask |= (std::uint64_t{1} << color[u]);
      }
      std::size_t sat = static_cast<std::size_t>(__builtin_popcountll(sat_mask));
      std::size_t deg = static_cast<std::size_t>(__builtin_popcountll(adj[v]));
      if (pick == n || sat > best_sat || (sat == best_sat && deg > best_deg)) {
        pick = v;
        best_sat = sat;
        best_deg = deg;
      }
    }
    return pick;
  };

  std::size_t colored = 0;
  auto dive = [&](auto&& self, int used) -> void {
    if (used >= best_k) return;
    if (colored == n) {
      best_k = used;
      best_color = color;
      return;
    }
    std::size_t v = pick_vertex();
    std::uint64_t forbidden = 0;
    for (std::uint64_t m = adj[v]; m;) {
      std::size_t u = static_cast<std::size_t>(__builtin_ctzll(m));
      m &= m - 1;
      if (color[u] >= 0) forbidden |= (std::uint64_t{1} << color[u]);
    }
    int try_up_to = std::min(used + 1, best_k - 1);
    for (int c = 0; c < try_up_to; ++c) {
      if (forbidden & (std::uint64_t{1} << c)) continue;
      color[v] = c;
      ++colored;
      self(self, std::max(used, c + 1));
      --colored;
      color[v] = -1;
      if (best_k == lower) return;  // already optimal
    }
  };
  dive(dive, 0);

  best.chi = best_k;
  best.witness.color_of = best_color;
  best.witness.num_colors = best_k;
  return best;
}

namespace detail {

// Subset DP over one connected piece; the guard applies per component.
inline bool perfect_component(const Graph& g, const Limits& limits) {
  if (g.size() > limits.perfect_vertex_cap) {
    throw GuardExceeded("is_perfect: component larger than guard (" +
                        std::to_string(limits.perfect_vertex_cap) + " vertices)");
  }
  const std::size_t n = g.size();
  if (n == 0) return true;
  auto adj = detail::adjacency_masks(g, limits.perfect_vertex_cap, "is_perfect");
  const std::size_t states = std::size_t{1} << n;

  std::vector<std::uint8_t> omega(states, 0), chi(states, 0);
  for (std::size_t s = 1; s < states; ++s) {
    std::size_t v = static_cast<std::size_t>(__builtin_ctzll(s));
    std::uint64_t rest = s & (s - 1);
    omega[s] = std::max<std::uint8_t>(
        omega[rest],
        static_cast<std::uint8_t>(1 + omega[rest & adj[v]]));
  }
  for (std::size_t s = 1; s < states; ++s) {
    std::size_t v = static_cast<std::size_t>(__builtin_ctzll(s));
    std::uint8_t best = 255;
    // Enumerate independent subsets of s containing v.
    std::uint64_t cand = (s & ~adj[v]) & ~(std::uint64_t{1} << v);
    auto rec = [&](auto&& self, std::uint64_t chosen, std::uint64_t avail) -> void {
      std::uint8_t with = static_cast<std::uint8_t>(1 + chi[s & ~chosen & ~(std::uint64_t{1} << v)]);
      best = std::min(best, with);
      while (avail) {
        std::size_t u = static_cast<std::size_t>(__builtin_ctzll(avail));
        std::uint64_t bit = std::uint64_t{1} << u;
        avail &= avail - 1;
        self(self, chosen | bit, avail & ~adj[u]);
      }
    };
    rec(rec, 0, cand);
    chi[s] = best;
  }
  for (std::size_t s = 1; s < states; ++s) {
    if (omega[s] != chi[s]) return false;
  }
  return true;
}

}  // namespace detail

// Perfection by the definition: every vertex-induced subgraph has equal
// clique and chromatic numbers, evaluated by subset dynamic programs.
// A graph is perfect iff all its connected components are (and any induced
// subgraph splits along components), so the sweep runs per component and
// the size guard applies per component.
inline bool is_perfect(const Graph& g, const Limits& limits = default_limits()) {
  for (const auto& comp : connected_components(g)) {
    if (!detail::perfect_component(g.induced(comp), limits)) return false;
  }
  return true;
}

// Components of a probabilistic graph with their probabilities
// Pr(G_i) = sum of vertex masses.
struct ComponentInfo {
  std::vector<std::size_t> vertices;
  Rational mass;
};

inline std::vector<ComponentInfo> components_with_mass(const ProbGraph& pg) {
  std::vector<ComponentInfo> out;
  for (auto& comp : connected_components(pg.graph)) {
    ComponentInfo info;
    info.vertices = comp;
    info.mass = Rational(0);
    for (std::size_t v : comp) info.mass += pg.mass[v];
    out.push_back(std::move(info));
  }
  return out;
}

}  // namespace relaycomp
