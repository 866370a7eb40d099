#pragma once
// Exhaustive zero-error verification of schemes. Decoders are never stored:
// each node decodes with the canonical consistent-set rule (output the
// function block of maximum conditional mass), which succeeds iff any
// decoder does.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relaycomp/graph_build.hpp"
#include "relaycomp/model.hpp"
#include "relaycomp/scheme.hpp"

namespace relaycomp {

struct VerificationReport {
  bool decodable_at_a = false;
  bool decodable_at_b = false;
  // A violating pair of (x^n|y^n) vertex labels, when not decodable.
  std::optional<std::pair<std::string, std::string>> witness_a, witness_b;
  Rational error_prob{0};  // exact P_e^(n) under the best decoders
};

namespace detail {

struct SchemeTables {
  int n;
  std::size_t nxn, nyn;
  std::vector<std::vector<std::size_t>> xt, yt;
  std::vector<std::vector<Rational>> mass;      // [xi][yi], product masses
  std::vector<std::vector<std::string>> zkey;   // function block as a string key
  std::vector<std::string> label_x, label_y;
};

inline SchemeTables build_tables(const ProblemInstance& inst, int n,
                                 const Limits& limits) {
  SchemeTables t;
  t.n = n;
  t.nxn = power_size(inst.nx(), n);
  t.nyn = power_size(inst.ny(), n);
  if (t.nxn * t.nyn > limits.product_cell_cap) {
    throw GuardExceeded("verification table too large");
  }
  t.xt.resize(t.nxn);
  t.yt.resize(t.nyn);
  t.label_x.resize(t.nxn);
  t.label_y.resize(t.nyn);
  for (std::size_t xi = 0; xi < t.nxn; ++xi) {
    t.xt[xi] = index_to_tuple(xi, n, inst.nx());
    t.label_x[xi] = tuple_label(t.xt[xi], inst.pmf.x_alpha);
  }
  for (std::size_t yi = 0; yi < t.nyn; ++yi) {
    t.yt[yi] = index_to_tuple(yi, n, inst.ny());
    t.label_y[yi] = tuple_label(t.yt[yi], inst.pmf.y_alpha);
  }
  t.mass.assign(t.nxn, std::vector<Rational>(t.nyn, Rational(0)));
  t.zkey.assign(t.nxn, std::vector<std::string>(t.nyn));
  for (std::size_t xi = 0; xi < t.nxn; ++xi) {
    for (std::size_t yi = 0; yi < t.nyn; ++yi) {
      Rational m(1);
      std::string key;
      for (int i = 0; i < n; ++i) {
        std::size_t x = t.xt[xi][static_cast<std::size_t>(i)];
        std::size_t y = t.yt[yi][static_cast<std::size_t>(i)];
        m *= inst.pmf.mass[x][y];
        key += static_cast<char>('a' + inst.z_at(x, y));
      }
      t.mass[xi][yi] = m;
      t.zkey[xi][yi] = key;
    }
  }
  return t;
}

// Does some coordinate have both pairs in the support with differing f?
inline bool unrestricted_conflict(const ProblemInstance& inst,
                                  const SchemeTables& t, std::size_t xi,
                                  std::size_t yi, std::size_t xj, std::size_t yj) {
  for (int i = 0; i < t.n; ++i) {
    std::size_t k = static_cast<std::size_t>(i);
    std::size_t x1 = t.xt[xi][k], y1 = t.yt[yi][k];
    std::size_t x2 = t.xt[xj][k], y2 = t.yt[yj][k];
    if (inst.pmf.in_support(x1, y1) && inst.pmf.in_support(x2, y2) &&
        inst.z_at(x1, y1) != inst.z_at(x2, y2))
      return true;
  }
  return false;
}

}  // namespace detail

// Zero-error check of a relay scheme. Restricted mode: both nodes recover
// the block on every positive-mass pair; the report carries the exact
// error probability of the best decoders. Unrestricted mode: the stricter
// per-component requirement over all input vectors.
inline VerificationReport verify_zero_error(const Scheme& s,
                                            const ProblemInstance& inst, Mode mode,
                                            const Limits& limits = default_limits()) {
  validate_scheme_codes(s);
  auto t = detail::build_tables(inst, s.n, limits);
  if (s.phi_a.size() != t.nxn || s.phi_b.size() != t.nyn) {
    throw InvalidArgument("scheme: encoder table sizes do not match the instance");
  }
  VerificationReport report;
  report.decodable_at_a = true;
  report.decodable_at_b = true;

  // Group indices by relay message; within a group the node must emit a
  // single block.
  std::vector<std::vector<char>> err_a(t.nxn, std::vector<char>(t.nyn, 0));
  std::vector<std::vector<char>> err_b(t.nxn, std::vector<char>(t.nyn, 0));

  for (int side = 0; side < 2; ++side) {
    bool at_a = (side == 0);
    std::size_t fixed_count = at_a ? t.nxn : t.nyn;
    std::size_t free_count = at_a ? t.nyn : t.nxn;
    bool decodable = true;
    std::optional<std::pair<std::string, std::string>> witness;
    for (std::size_t fi = 0; fi < fixed_count && (decodable || mode == Mode::restricted); ++fi) {
      std::map<std::string, std::vector<std::size_t>> groups;
      for (std::size_t fr = 0; fr < free_count; ++fr) {
        std::size_t xi = at_a ? fi : fr;
        std::size_t yi = at_a ? fr : fi;
        if (mode == Mode::restricted && t.mass[xi][yi].is_zero()) continue;
        const std::string& msg = s.relay_word(s.phi_a[xi], s.phi_b[yi]);
        groups[msg].push_back(fr);
      }
      for (auto& [msg, members] : groups) {
        if (mode == Mode::unrestricted) {
          for (std::size_t i = 0; i < members.size() && decodable; ++i) {
            for (std::size_t j = i + 1; j < members.size() && decodable; ++j) {
              std::size_t xi = at_a ? fi : members[i];
              std::size_t yi = at_a ? members[i] : fi;
              std::size_t xj = at_a ? fi : members[j];
              std::size_t yj = at_a ? members[j] : fi;
              if (detail::unrestricted_conflict(inst, t, xi, yi, xj, yj)) {
                decodable = false;
                witness = {{pair_label(t.label_x[xi], t.label_y[yi]),
                            pair_label(t.label_x[xj], t.label_y[yj])}};
              }
            }
          }
          continue;
        }
        // Restricted: best decoder picks the block of maximum mass.
        std::map<std::string, Rational> by_block;
        for (std::size_t fr : members) {
          std::size_t xi = at_a ? fi : fr;
          std::size_t yi = at_a ? fr : fi;
          by_block[t.zkey[xi][yi]] += t.mass[xi][yi];
        }
        std::string best_block;
        Rational best_mass(-1);
        for (const auto& [block, m] : by_block) {
          if (best_mass < m) {
            best_mass = m;
            best_block = block;
          }
        }
        if (by_block.size() > 1 && !witness) {
          decodable = false;
          std::size_t first = members.front();
          const std::string& first_key =
              at_a ? t.zkey[fi][first] : t.zkey[first][fi];
          for (std::size_t fr : members) {
            const std::string& key = at_a ? t.zkey[fi][fr] : t.zkey[fr][fi];
            if (key != first_key) {
              std::size_t x1 = at_a ? fi : first, y1 = at_a ? first : fi;
              std::size_t x2 = at_a ? fi : fr, y2 = at_a ? fr : fi;
              witness = {{pair_label(t.label_x[x1], t.label_y[y1]),
                          pair_label(t.label_x[x2], t.label_y[y2])}};
              break;
            }
          }
        } else if (by_block.size() > 1) {
          decodable = false;
        }
        for (std::size_t fr : members) {
          std::size_t xi = at_a ? fi : fr;
          std::size_t yi = at_a ? fr : fi;
          if (t.zkey[xi][yi] != best_block) {
            (at_a ? err_a : err_b)[xi][yi] = 1;
          }
        }
      }
    }
    if (at_a) {
      report.decodable_at_a = decodable;
      report.witness_a = witness;
    } else {
      report.decodable_at_b = decodable;
      report.witness_b = witness;
    }
  }

  if (mode == Mode::restricted) {
    for (std::size_t xi = 0; xi < t.nxn; ++xi)
      for (std::size_t yi = 0; yi < t.nyn; ++yi)
        if (err_a[xi][yi] || err_b[xi][yi]) report.error_prob += t.mass[xi][yi];
  } else {
    // The restricted error probability is still reported for context.
    report.error_prob = verify_zero_error(s, inst, Mode::restricted, limits).error_prob;
  }
  return report;
}

struct EquivalenceReport {
  bool zero_error = false;   // verify_zero_error outcome (both nodes)
  bool proper = false;       // phi_c o (phi_a x phi_b) proper on the n-instance graph
  bool agree = false;
};

// Both sides of the coloring-equivalence identity, computed independently.
// Disagreement would be a build-breaking bug.
inline EquivalenceReport coloring_equivalence(const Scheme& s,
                                              const ProblemInstance& inst, Mode mode,
                                              const Limits& limits = default_limits()) {
  EquivalenceReport out;
  auto report = verify_zero_error(s, inst, mode, limits);
  out.zero_error = report.decodable_at_a && report.decodable_at_b;

  auto pg = n_instance_graph(inst, s.n, mode, limits);
  const std::size_t nyn = power_size(inst.ny(), s.n);
  std::vector<const std::string*> color(pg.graph.size());
  for (std::size_t xi = 0; xi < s.phi_a.size(); ++xi)
    for (std::size_t yi = 0; yi < nyn; ++yi)
      color[xi * nyn + yi] = &s.relay_word(s.phi_a[xi], s.phi_b[yi]);
  out.proper = true;
  for (auto [u, v] : pg.graph.edges()) {
    if (*color[u] == *color[v]) {
      out.proper = false;
      break;
    }
  }
  out.agree = (out.zero_error == out.proper);
  return out;
}

struct RelayReport {
  bool computable = false;
  std::optional<std::pair<std::string, std::string>> witness;
};

// Is the function block determined by the pair of received messages on the
// positive-mass domain?
inline RelayReport relay_computability(const Scheme& s, const ProblemInstance& inst,
                                       const Limits& limits = default_limits()) {
  auto t = detail::build_tables(inst, s.n, limits);
  std::map<std::pair<std::string, std::string>, std::pair<std::string, std::pair<std::size_t, std::size_t>>> seen;
  RelayReport out;
  out.computable = true;
  for (std::size_t xi = 0; xi < t.nxn; ++xi) {
    for (std::size_t yi = 0; yi < t.nyn; ++yi) {
      if (t.mass[xi][yi].is_zero()) continue;
      std::pair<std::string, std::string> key{s.phi_a[xi], s.phi_b[yi]};
      auto it = seen.find(key);
      if (it == seen.end()) {
        seen.emplace(key, std::make_pair(t.zkey[xi][yi], std::make_pair(xi, yi)));
      } else if (it->second.first != t.zkey[xi][yi]) {
        out.computable = false;
        auto [pxi, pyi] = it->second.second;
        out.witness = {{pair_label(t.label_x[pxi], t.label_y[pyi]),
                        pair_label(t.label_x[xi], t.label_y[yi])}};
        return out;
      }
    }
  }
  return out;
}

struct BfnReport {
  bool decodable_at_a = false;
  bool decodable_at_b = false;
  std::optional<std::pair<std::string, std::string>> witness_a, witness_b;
  Rational rate{0};  // exact expected length per symbol
};

// Broadcast network with complementary side information: one encoder on
// (X^n, Y^n), decoders with side information X^n at A and Y^n at B.
inline BfnReport bfn_verify(const BfnScheme& s, const ProblemInstance& inst,
                            const Limits& limits = default_limits()) {
  auto t = detail::build_tables(inst, s.n, limits);
  if (s.phi_c.size() != t.nxn * t.nyn) {
    throw InvalidArgument("bfn scheme: phi_c must cover all of X^n x Y^n");
  }
  if (!prefix_free(s.phi_c)) throw InvalidArgument("bfn scheme: phi_c is not prefix-free");

  BfnReport out;
  out.decodable_at_a = true;
  out.decodable_at_b = true;
  for (std::size_t xi = 0; xi < t.nxn; ++xi) {
    std::map<std::string, std::size_t> first;
    for (std::size_t yi = 0; yi < t.nyn; ++yi) {
      if (t.mass[xi][yi].is_zero()) continue;
      const std::string& w = s.phi_c[xi * t.nyn + yi];
      auto it = first.find(w);
      if (it == first.end()) {
        first.emplace(w, yi);
      } else if (t.zkey[xi][yi] != t.zkey[xi][it->second] && out.decodable_at_a) {
        out.decodable_at_a = false;
        out.witness_a = {{pair_label(t.label_x[xi], t.label_y[it->second]),
                          pair_label(t.label_x[xi], t.label_y[yi])}};
      }
    }
  }
  for (std::size_t yi = 0; yi < t.nyn; ++yi) {
    std::map<std::string, std::size_t> first;
    for (std::size_t xi = 0; xi < t.nxn; ++xi) {
      if (t.mass[xi][yi].is_zero()) continue;
      const std::string& w = s.phi_c[xi * t.nyn + yi];
      auto it = first.find(w);
      if (it == first.end()) {
        first.emplace(w, xi);
      } else if (t.zkey[xi][yi] != t.zkey[it->second][yi] && out.decodable_at_b) {
        out.decodable_at_b = false;
        out.witness_b = {{pair_label(t.label_x[it->second], t.label_y[yi]),
                          pair_label(t.label_x[xi], t.label_y[yi])}};
      }
    }
  }
  for (std::size_t xi = 0; xi < t.nxn; ++xi)
    for (std::size_t yi = 0; yi < t.nyn; ++yi)
      if (!t.mass[xi][yi].is_zero())
        out.rate += t.mass[xi][yi] *
                    Rational(static_cast<long long>(s.phi_c[xi * t.nyn + yi].size()));
  out.rate /= Rational(s.n);
  return out;
}

}  // namespace relaycomp
