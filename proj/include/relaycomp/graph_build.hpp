#pragma once
// Constructions of the graph families attached to a problem instance:
// rook's graph, f-modified rook's graph, confusability graphs, n-instance
// graphs (restricted and unrestricted), single-decoder graphs, AND/OR
// powers and the auxiliary-variable graph.

#include <string>
#include <vector>

#include "relaycomp/graph.hpp"
#include "relaycomp/model.hpp"

namespace relaycomp {

enum class Side { A, B };  // A: graph over X, B: graph over Y
enum class Mode { restricted, unrestricted };

inline std::string pair_label(const std::string& x, const std::string& y) {
  return x + "|" + y;
}

// Rook's graph over X x Y: same row or same column, distinct.
inline Graph rook_graph(const Alphabet& xa, const Alphabet& ya) {
  std::vector<std::string> labels;
  labels.reserve(xa.size() * ya.size());
  for (std::size_t x = 0; x < xa.size(); ++x)
    for (std::size_t y = 0; y < ya.size(); ++y)
      labels.push_back(pair_label(xa.label(x), ya.label(y)));
  Graph g(std::move(labels));
  const std::size_t ny = ya.size();
  for (std::size_t x = 0; x < xa.size(); ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t y2 = y + 1; y2 < ny; ++y2) g.add_edge(x * ny + y, x * ny + y2);
      for (std::size_t x2 = x + 1; x2 < xa.size(); ++x2) g.add_edge(x * ny + y, x2 * ny + y);
    }
  return g;
}

// f-modified rook's graph: rook-adjacent, both endpoints in the support,
// and differing function values. Vertices cover all of X x Y; off-support
// vertices are isolated and carry zero mass.
inline ProbGraph f_rook_graph(const ProblemInstance& inst) {
  const std::size_t nx = inst.nx(), ny = inst.ny();
  std::vector<std::string> labels;
  std::vector<Rational> mass;
  labels.reserve(nx * ny);
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      labels.push_back(pair_label(inst.pmf.x_alpha.label(x), inst.pmf.y_alpha.label(y)));
      mass.push_back(inst.pmf.mass[x][y]);
    }
  Graph g(std::move(labels));
  auto edge_ok = [&](std::size_t x1, std::size_t y1, std::size_t x2, std::size_t y2) {
    return inst.pmf.in_support(x1, y1) && inst.pmf.in_support(x2, y2) &&
           inst.z_at(x1, y1) != inst.z_at(x2, y2);
  };
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y) {
      for (std::size_t y2 = y + 1; y2 < ny; ++y2)
        if (edge_ok(x, y, x, y2)) g.add_edge(x * ny + y, x * ny + y2);
      for (std::size_t x2 = x + 1; x2 < nx; ++x2)
        if (edge_ok(x, y, x2, y)) g.add_edge(x * ny + y, x2 * ny + y);
    }
  return {std::move(g), std::move(mass)};
}

// f-confusability graph over X (side A) or Y (side B), with the marginal
// source distribution attached.
inline ProbGraph confusability(const ProblemInstance& inst, Side side) {
  const bool over_x = (side == Side::A);
  const Alphabet& alpha = over_x ? inst.pmf.x_alpha : inst.pmf.y_alpha;
  Graph g(alpha.symbols);
  const std::size_t n = alpha.size();
  const std::size_t other = over_x ? inst.ny() : inst.nx();
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t o = 0; o < other; ++o) {
        bool sup_a = over_x ? inst.pmf.in_support(a, o) : inst.pmf.in_support(o, a);
        bool sup_b = over_x ? inst.pmf.in_support(b, o) : inst.pmf.in_support(o, b);
        if (!sup_a || !sup_b) continue;
        int za = over_x ? inst.z_at(a, o) : inst.z_at(o, a);
        int zb = over_x ? inst.z_at(b, o) : inst.z_at(o, b);
        if (za != zb) {
          g.add_edge(a, b);
          break;
        }
      }
    }
  }
  std::vector<Rational> mass = over_x ? inst.pmf.marginal_x() : inst.pmf.marginal_y();
  return {std::move(g), std::move(mass)};
}

namespace detail {

inline std::vector<std::string> power_labels(const Graph& g, int n,
                                             const Limits& limits) {
  std::size_t count = power_size(g.size(), n);
  if (count > limits.product_vertex_cap) {
    throw GuardExceeded("graph power too large: " + std::to_string(count) +
                        " vertices");
  }
  std::vector<std::string> labels;
  labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto t = index_to_tuple(i, n, g.size());
    std::string lab;
    for (std::size_t k = 0; k < t.size(); ++k) {
      if (k) lab += '*';
      lab += g.label(t[k]);
    }
    labels.push_back(std::move(lab));
  }
  return labels;
}

}  // namespace detail

// n-fold AND product: vertices differ somewhere and every coordinate is
// equal or adjacent.
inline Graph and_power(const Graph& g, int n,
                       const Limits& limits = default_limits()) {
  Graph out(detail::power_labels(g, n, limits));
  const std::size_t count = out.size();
  for (std::size_t i = 0; i < count; ++i) {
    auto ti = index_to_tuple(i, n, g.size());
    for (std::size_t j = i + 1; j < count; ++j) {
      auto tj = index_to_tuple(j, n, g.size());
      bool ok = true;
      for (int k = 0; k < n && ok; ++k) {
        std::size_t a = ti[static_cast<std::size_t>(k)], b = tj[static_cast<std::size_t>(k)];
        ok = (a == b) || g.adjacent(a, b);
      }
      if (ok) out.add_edge(i, j);
    }
  }
  return out;
}

// n-fold OR product: some coordinate pair is adjacent.
inline Graph or_power(const Graph& g, int n,
                      const Limits& limits = default_limits()) {
  Graph out(detail::power_labels(g, n, limits));
  const std::size_t count = out.size();
  for (std::size_t i = 0; i < count; ++i) {
    auto ti = index_to_tuple(i, n, g.size());
    for (std::size_t j = i + 1; j < count; ++j) {
      auto tj = index_to_tuple(j, n, g.size());
      for (int k = 0; k < n; ++k) {
        if (g.adjacent(ti[static_cast<std::size_t>(k)], tj[static_cast<std::size_t>(k)])) {
          out.add_edge(i, j);
          break;
        }
      }
    }
  }
  return out;
}

// Product vertex masses aligned with the power vertex order.
inline std::vector<Rational> power_mass(const std::vector<Rational>& mass, int n) {
  std::size_t count = power_size(mass.size(), n);
  std::vector<Rational> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto t = index_to_tuple(i, n, mass.size());
    Rational m(1);
    for (std::size_t c : t) {
      m *= mass[c];
      if (m.is_zero()) break;
    }
    out.push_back(m);
  }
  return out;
}

// n-instance graph over X^n x Y^n. Restricted mode additionally requires
// both endpoints to have positive product probability; unrestricted mode
// requires a coordinate where both pairs lie in the support and f differs.
inline ProbGraph n_instance_graph(const ProblemInstance& inst, int n, Mode mode,
                                  const Limits& limits = default_limits()) {
  if (n < 1) throw InvalidArgument("n_instance_graph: n must be >= 1");
  const std::size_t nxn = power_size(inst.nx(), n);
  const std::size_t nyn = power_size(inst.ny(), n);
  if (nxn * nyn > limits.product_vertex_cap) {
    throw GuardExceeded("n-instance graph too large: " +
                        std::to_string(nxn * nyn) + " vertices");
  }
  std::vector<std::vector<std::size_t>> xt(nxn), yt(nyn);
  for (std::size_t i = 0; i < nxn; ++i) xt[i] = index_to_tuple(i, n, inst.nx());
  for (std::size_t i = 0; i < nyn; ++i) yt[i] = index_to_tuple(i, n, inst.ny());

  std::vector<std::string> labels;
  std::vector<Rational> mass;
  labels.reserve(nxn * nyn);
  mass.reserve(nxn * nyn);
  for (std::size_t xi = 0; xi < nxn; ++xi) {
    std::string xl = tuple_label(xt[xi], inst.pmf.x_alpha);
    for (std::size_t yi = 0; yi < nyn; ++yi) {
      labels.push_back(pair_label(xl, tuple_label(yt[yi], inst.pmf.y_alpha)));
      Rational m(1);
      for (int k = 0; k < n; ++k) {
        m *= inst.pmf.mass[xt[xi][static_cast<std::size_t>(k)]][yt[yi][static_cast<std::size_t>(k)]];
        if (m.is_zero()) break;
      }
      mass.push_back(m);
    }
  }
  Graph g(std::move(labels));

  auto restricted_edge = [&](std::size_t xa, std::size_t ya, std::size_t xb,
                             std::size_t yb) {
    if (mass[xa * nyn + ya].is_zero() || mass[xb * nyn + yb].is_zero()) return false;
    for (int k = 0; k < n; ++k) {
      std::size_t i = static_cast<std::size_t>(k);
      if (inst.z_at(xt[xa][i], yt[ya][i]) != inst.z_at(xt[xb][i], yt[yb][i]))
        return true;
    }
    return false;
  };
  auto unrestricted_edge = [&](std::size_t xa, std::size_t ya, std::size_t xb,
                               std::size_t yb) {
    for (int k = 0; k < n; ++k) {
      std::size_t i = static_cast<std::size_t>(k);
      std::size_t x1 = xt[xa][i], y1 = yt[ya][i], x2 = xt[xb][i], y2 = yt[yb][i];
      if (inst.pmf.in_support(x1, y1) && inst.pmf.in_support(x2, y2) &&
          inst.z_at(x1, y1) != inst.z_at(x2, y2))
        return true;
    }
    return false;
  };
  auto edge_ok = [&](std::size_t xa, std::size_t ya, std::size_t xb, std::size_t yb) {
    return mode == Mode::restricted ? restricted_edge(xa, ya, xb, yb)
                                    : unrestricted_edge(xa, ya, xb, yb);
  };

  for (std::size_t xi = 0; xi < nxn; ++xi)
    for (std::size_t ya = 0; ya < nyn; ++ya)
      for (std::size_t yb = ya + 1; yb < nyn; ++yb)
        if (edge_ok(xi, ya, xi, yb)) g.add_edge(xi * nyn + ya, xi * nyn + yb);
  for (std::size_t yi = 0; yi < nyn; ++yi)
    for (std::size_t xa = 0; xa < nxn; ++xa)
      for (std::size_t xb = xa + 1; xb < nxn; ++xb)
        if (edge_ok(xa, yi, xb, yi)) g.add_edge(xa * nyn + yi, xb * nyn + yi);

  return {std::move(g), std::move(mass)};
}

// Single-decoder n-instance graph: vertices are support^n; side A joins
// pairs with equal x-blocks and distinct y-blocks (side B symmetric).
// Vertex order is lexicographic over tuples of support-pair indices, which
// matches the AND power of the n = 1 graph.
inline ProbGraph single_decoder_graph(const ProblemInstance& inst, int n, Side side,
                                      const Limits& limits = default_limits()) {
  auto sup = inst.pmf.support();
  const std::size_t m = sup.size();
  std::size_t count = power_size(m, n);
  if (count > limits.product_vertex_cap) {
    throw GuardExceeded("single-decoder graph too large: " +
                        std::to_string(count) + " vertices");
  }
  std::vector<std::string> labels;
  std::vector<Rational> mass;
  std::vector<std::vector<std::size_t>> tup(count);
  labels.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    tup[i] = index_to_tuple(i, n, m);
    std::string xl, yl;
    Rational mm(1);
    for (std::size_t k = 0; k < tup[i].size(); ++k) {
      auto [x, y] = sup[tup[i][k]];
      if (k) { xl += ','; yl += ','; }
      xl += inst.pmf.x_alpha.label(x);
      yl += inst.pmf.y_alpha.label(y);
      mm *= inst.pmf.mass[x][y];
    }
    labels.push_back(pair_label(xl, yl));
    mass.push_back(mm);
  }
  Graph g(std::move(labels));
  auto same_fixed = [&](std::size_t i, std::size_t j) {
    for (int k = 0; k < n; ++k) {
      std::size_t a = tup[i][static_cast<std::size_t>(k)], b = tup[j][static_cast<std::size_t>(k)];
      std::size_t fa = side == Side::A ? sup[a].first : sup[a].second;
      std::size_t fb = side == Side::A ? sup[b].first : sup[b].second;
      if (fa != fb) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < count; ++i)
    for (std::size_t j = i + 1; j < count; ++j)
      if (same_fixed(i, j)) g.add_edge(i, j);
  return {std::move(g), std::move(mass)};
}

// ---- auxiliary-variable graph ----

// A family of independent sets over one side's alphabet with the
// conditional p(u | symbol).
struct AuxFamily {
  std::vector<std::vector<std::size_t>> sets;    // subsets of symbol indices
  std::vector<std::vector<Rational>> cond;       // cond[j][sym] = p(set j | sym)

  std::size_t count() const { return sets.size(); }

  bool contains(std::size_t set_id, std::size_t sym) const {
    for (std::size_t v : sets[set_id])
      if (v == sym) return true;
    return false;
  }
};

inline std::string set_label(const std::vector<std::size_t>& set,
                             const Alphabet& alpha) {
  std::string out = "{";
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (i) out += ',';
    out += alpha.label(set[i]);
  }
  return out + "}";
}

// Checks the family against its confusability graph and marginal:
// all sets independent, conditionals supported inside their set, rows for
// positive-mass symbols summing to one.
inline void validate_aux_family(const AuxFamily& fam, const Graph& confus,
                                const std::vector<Rational>& marginal,
                                const std::string& who) {
  for (std::size_t j = 0; j < fam.count(); ++j) {
    if (!confus.is_independent(fam.sets[j])) {
      throw InvalidArgument(who + ": set " + std::to_string(j) +
                            " is not independent in the confusability graph");
    }
    if (fam.cond[j].size() != confus.size()) {
      throw InvalidArgument(who + ": conditional row size mismatch");
    }
  }
  for (std::size_t sym = 0; sym < confus.size(); ++sym) {
    Rational total(0);
    for (std::size_t j = 0; j < fam.count(); ++j) {
      const Rational& c = fam.cond[j][sym];
      if (c.is_negative()) throw InvalidArgument(who + ": negative conditional");
      if (!c.is_zero() && !fam.contains(j, sym)) {
        throw InvalidArgument(who + ": conditional supported outside its independent set (symbol " +
                              confus.label(sym) + ")");
      }
      total += c;
    }
    if (!marginal[sym].is_zero() && total != Rational(1)) {
      throw InvalidArgument(who + ": conditional for symbol " + confus.label(sym) +
                            " sums to " + total.str());
    }
  }
}

// Deterministic family: one set per symbol class, p(u|x) = 1 on the chosen
// set. `assignment[sym]` indexes into `sets`.
inline AuxFamily deterministic_family(const std::vector<std::vector<std::size_t>>& sets,
                                      const std::vector<std::size_t>& assignment,
                                      std::size_t alphabet_size) {
  AuxFamily fam;
  fam.sets = sets;
  fam.cond.assign(sets.size(), std::vector<Rational>(alphabet_size, Rational(0)));
  for (std::size_t sym = 0; sym < assignment.size(); ++sym) {
    fam.cond[assignment[sym]][sym] = Rational(1);
  }
  return fam;
}

// Graph over U1 x U2 from Definition-style row/column rule: two distinct
// vertices sharing u1 (resp. u2) are adjacent iff some jointly-possible
// source pairs with that shared coordinate give differing function values.
inline ProbGraph aux_graph(const ProblemInstance& inst, const AuxFamily& u1,
                           const AuxFamily& u2) {
  validate_aux_family(u1, confusability(inst, Side::A).graph, inst.pmf.marginal_x(), "u1");
  validate_aux_family(u2, confusability(inst, Side::B).graph, inst.pmf.marginal_y(), "u2");

  const std::size_t n1 = u1.count(), n2 = u2.count();
  std::vector<std::string> labels;
  labels.reserve(n1 * n2);
  for (std::size_t a = 0; a < n1; ++a)
    for (std::size_t b = 0; b < n2; ++b)
      labels.push_back(pair_label(set_label(u1.sets[a], inst.pmf.x_alpha),
                                  set_label(u2.sets[b], inst.pmf.y_alpha)));
  Graph g(std::move(labels));

  auto p4_positive = [&](std::size_t x, std::size_t a, std::size_t y, std::size_t b) {
    return inst.pmf.in_support(x, y) && !u1.cond[a][x].is_zero() &&
           !u2.cond[b][y].is_zero();
  };

  // Shared u1 = a, vertices (a, b) and (a, b2).
  for (std::size_t a = 0; a < n1; ++a) {
    for (std::size_t b = 0; b < n2; ++b) {
      for (std::size_t b2 = b + 1; b2 < n2; ++b2) {
        bool edge = false;
        for (std::size_t x = 0; x < inst.nx() && !edge; ++x) {
          if (u1.cond[a][x].is_zero()) continue;
          for (std::size_t y = 0; y < inst.ny() && !edge; ++y) {
            if (!p4_positive(x, a, y, b)) continue;
            for (std::size_t y2 = 0; y2 < inst.ny() && !edge; ++y2) {
              if (!p4_positive(x, a, y2, b2)) continue;
              if (inst.z_at(x, y) != inst.z_at(x, y2)) edge = true;
            }
          }
        }
        if (edge) g.add_edge(a * n2 + b, a * n2 + b2);
      }
    }
  }
  // Shared u2 = b, vertices (a, b) and (a2, b).
  for (std::size_t b = 0; b < n2; ++b) {
    for (std::size_t a = 0; a < n1; ++a) {
      for (std::size_t a2 = a + 1; a2 < n1; ++a2) {
        bool edge = false;
        for (std::size_t y = 0; y < inst.ny() && !edge; ++y) {
          if (u2.cond[b][y].is_zero()) continue;
          for (std::size_t x = 0; x < inst.nx() && !edge; ++x) {
            if (!p4_positive(x, a, y, b)) continue;
            for (std::size_t x2 = 0; x2 < inst.nx() && !edge; ++x2) {
              if (!p4_positive(x2, a2, y, b)) continue;
              if (inst.z_at(x, y) != inst.z_at(x2, y)) edge = true;
            }
          }
        }
        if (edge) g.add_edge(a * n2 + b, a2 * n2 + b);
      }
    }
  }

  std::vector<Rational> mass(n1 * n2, Rational(0));
  for (std::size_t x = 0; x < inst.nx(); ++x)
    for (std::size_t y = 0; y < inst.ny(); ++y) {
      const Rational& m = inst.pmf.mass[x][y];
      if (m.is_zero()) continue;
      for (std::size_t a = 0; a < n1; ++a) {
        if (u1.cond[a][x].is_zero()) continue;
        for (std::size_t b = 0; b < n2; ++b) {
          if (u2.cond[b][y].is_zero()) continue;
          mass[a * n2 + b] += m * u1.cond[a][x] * u2.cond[b][y];
        }
      }
    }
  return {std::move(g), std::move(mass)};
}

}  // namespace relaycomp
