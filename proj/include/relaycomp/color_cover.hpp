#pragma once
// Color covers (c_A, c_B, c_C) with the refinement witness theta, scheme
// construction from covers via canonical Huffman codes, and budgeted
// enumeration of the finite-n corner clouds of the multiletter regions.

#include <array>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "relaycomp/graph_build.hpp"
#include "relaycomp/model.hpp"
#include "relaycomp/region.hpp"
#include "relaycomp/scheme.hpp"

namespace relaycomp {

struct ColorCover {
  int n = 1;
  std::vector<int> c_a;  // by x-tuple index
  std::vector<int> c_b;  // by y-tuple index
  std::vector<int> c_c;  // by pair index (xi * |Y|^n + yi)
  std::map<std::pair<int, int>, int> theta;
};

// Derives theta from the three maps; throws when (c_a x c_b) does not
// refine c_c.
inline std::map<std::pair<int, int>, int> derive_theta(const ColorCover& cover,
                                                       std::size_t nxn,
                                                       std::size_t nyn) {
  std::map<std::pair<int, int>, int> theta;
  for (std::size_t xi = 0; xi < nxn; ++xi) {
    for (std::size_t yi = 0; yi < nyn; ++yi) {
      std::pair<int, int> key{cover.c_a[xi], cover.c_b[yi]};
      int cc = cover.c_c[xi * nyn + yi];
      auto it = theta.find(key);
      if (it == theta.end()) {
        theta.emplace(key, cc);
      } else if (it->second != cc) {
        throw InvalidArgument("color cover: c_a x c_b does not refine c_c");
      }
    }
  }
  return theta;
}

// Checks all cover invariants against the mode's n-instance graph.
inline void validate_color_cover(const ColorCover& cover, const ProblemInstance& inst,
                                 Mode mode, const Limits& limits = default_limits()) {
  const std::size_t nxn = power_size(inst.nx(), cover.n);
  const std::size_t nyn = power_size(inst.ny(), cover.n);
  if (cover.c_a.size() != nxn || cover.c_b.size() != nyn ||
      cover.c_c.size() != nxn * nyn) {
    throw InvalidArgument("color cover: map sizes do not match the instance");
  }
  auto pg = n_instance_graph(inst, cover.n, mode, limits);
  for (auto [u, v] : pg.graph.edges()) {
    std::size_t xu = u / nyn, yu = u % nyn, xv = v / nyn, yv = v % nyn;
    if (cover.c_a[xu] == cover.c_a[xv] && cover.c_b[yu] == cover.c_b[yv]) {
      throw InvalidArgument("color cover: c_a x c_b is not a proper coloring");
    }
    if (cover.c_c[u] == cover.c_c[v]) {
      throw InvalidArgument("color cover: c_c is not a proper coloring");
    }
  }
  auto theta = derive_theta(cover, nxn, nyn);
  if (!cover.theta.empty() && cover.theta != theta) {
    throw InvalidArgument("color cover: theta does not match the maps");
  }
}

// Prefix-free scheme realizing a color cover: Huffman codes on the induced
// color distributions, phi_c applying theta to the decoded color pair.
inline Scheme scheme_from_color_cover(const ColorCover& cover,
                                      const ProblemInstance& inst, Mode mode,
                                      const Limits& limits = default_limits()) {
  validate_color_cover(cover, inst, mode, limits);
  const std::size_t nxn = power_size(inst.nx(), cover.n);
  const std::size_t nyn = power_size(inst.ny(), cover.n);
  auto theta = derive_theta(cover, nxn, nyn);

  int ka = 0, kb = 0, kc = 0;
  for (int c : cover.c_a) ka = std::max(ka, c + 1);
  for (int c : cover.c_b) kb = std::max(kb, c + 1);
  for (int c : cover.c_c) kc = std::max(kc, c + 1);

  auto mx = inst.pmf.marginal_x();
  auto my = inst.pmf.marginal_y();
  std::vector<Rational> mass_a(static_cast<std::size_t>(ka), Rational(0));
  std::vector<Rational> mass_b(static_cast<std::size_t>(kb), Rational(0));
  std::vector<Rational> mass_c(static_cast<std::size_t>(kc), Rational(0));
  for (std::size_t xi = 0; xi < nxn; ++xi) {
    auto t = index_to_tuple(xi, cover.n, inst.nx());
    Rational m(1);
    for (std::size_t c : t) m *= mx[c];
    mass_a[static_cast<std::size_t>(cover.c_a[xi])] += m;
  }
  for (std::size_t yi = 0; yi < nyn; ++yi) {
    auto t = index_to_tuple(yi, cover.n, inst.ny());
    Rational m(1);
    for (std::size_t c : t) m *= my[c];
    mass_b[static_cast<std::size_t>(cover.c_b[yi])] += m;
  }
  for (std::size_t xi = 0; xi < nxn; ++xi) {
    auto xt = index_to_tuple(xi, cover.n, inst.nx());
    for (std::size_t yi = 0; yi < nyn; ++yi) {
      auto yt = index_to_tuple(yi, cover.n, inst.ny());
      Rational m(1);
      for (int i = 0; i < cover.n; ++i)
        m *= inst.pmf.mass[xt[static_cast<std::size_t>(i)]][yt[static_cast<std::size_t>(i)]];
      mass_c[static_cast<std::size_t>(cover.c_c[xi * nyn + yi])] += m;
    }
  }

  auto codes_a = huffman_codes(mass_a);
  auto codes_b = huffman_codes(mass_b);
  auto codes_c = huffman_codes(mass_c);

  Scheme s;
  s.n = cover.n;
  s.phi_a.resize(nxn);
  s.phi_b.resize(nyn);
  for (std::size_t xi = 0; xi < nxn; ++xi)
    s.phi_a[xi] = codes_a[static_cast<std::size_t>(cover.c_a[xi])];
  for (std::size_t yi = 0; yi < nyn; ++yi)
    s.phi_b[yi] = codes_b[static_cast<std::size_t>(cover.c_b[yi])];
  for (const auto& [key, cc] : theta) {
    s.phi_c[{codes_a[static_cast<std::size_t>(key.first)],
             codes_b[static_cast<std::size_t>(key.second)]}] =
        codes_c[static_cast<std::size_t>(cc)];
  }
  return s;
}

// ---- set-partition enumeration (restricted growth strings) ----

// Calls f(assignment, classes) for every partition of {0..m-1}; f returns
// false to abort the whole enumeration. Returns false when aborted.
template <typename F>
inline bool for_each_partition(std::size_t m, F&& f) {
  std::vector<int> assign(m, 0);
  std::function<bool(std::size_t, int)> rec = [&](std::size_t i, int used) -> bool {
    if (i == m) return f(assign, used);
    for (int c = 0; c <= used; ++c) {
      assign[i] = c;
      if (!rec(i + 1, std::max(used, c + 1))) return false;
    }
    return true;
  };
  if (m == 0) return true;
  return rec(0, 0);
}

struct CoverCloud {
  std::vector<RateTriple> corners;  // all distinct cover corners, sorted
  Region3 region;                   // dominance-filtered generators
  bool complete = true;
  std::size_t covers_seen = 0;
};

// Enumerates color covers of the n-instance graph: (c_a, c_b) over set
// partitions with a proper product, c_c over proper coarsenings of the
// product classes (equivalently, partitions of the quotient graph into
// independent sets). Budget caps the enumeration work.
inline CoverCloud enumerate_color_covers(const ProblemInstance& inst, int n, Mode mode,
                                         std::size_t budget,
                                         const Limits& limits = default_limits()) {
  auto pg = n_instance_graph(inst, n, mode, limits);
  const std::size_t nxn = power_size(inst.nx(), n);
  const std::size_t nyn = power_size(inst.ny(), n);

  auto mx = inst.pmf.marginal_x();
  auto my = inst.pmf.marginal_y();
  std::vector<Rational> xmass(nxn), ymass(nyn), pmass(nxn * nyn);
  for (std::size_t xi = 0; xi < nxn; ++xi) {
    auto t = index_to_tuple(xi, n, inst.nx());
    Rational m(1);
    for (std::size_t c : t) m *= mx[c];
    xmass[xi] = m;
  }
  for (std::size_t yi = 0; yi < nyn; ++yi) {
    auto t = index_to_tuple(yi, n, inst.ny());
    Rational m(1);
    for (std::size_t c : t) m *= my[c];
    ymass[yi] = m;
  }
  pmass = pg.mass;

  CoverCloud cloud;
  std::size_t work = 0;
  std::set<std::array<long long, 3>> seen;
  auto emit = [&](double ha, double hb, double hc) {
    RateTriple corner{ha / n, hb / n, hc / n};
    std::array<long long, 3> key{std::llround(corner.a * 1e10),
                                 std::llround(corner.b * 1e10),
                                 std::llround(corner.c * 1e10)};
    if (seen.insert(key).second) cloud.corners.push_back(corner);
    ++cloud.covers_seen;
  };

  auto edges = pg.graph.edges();
  bool finished = for_each_partition(nxn, [&](const std::vector<int>& ca, int ka) {
    return for_each_partition(nyn, [&](const std::vector<int>& cb, int kb) {
      if (++work > budget) return false;
      // Product properness.
      for (auto [u, v] : edges) {
        if (ca[u / nyn] == ca[v / nyn] && cb[u % nyn] == cb[v % nyn]) return true;
      }
      // Quotient over realized product classes.
      std::map<std::pair<int, int>, int> class_id;
      std::vector<Rational> class_mass;
      std::vector<int> vclass(nxn * nyn);
      for (std::size_t xi = 0; xi < nxn; ++xi) {
        for (std::size_t yi = 0; yi < nyn; ++yi) {
          std::pair<int, int> key{ca[xi], cb[yi]};
          auto it = class_id.find(key);
          int id;
          if (it == class_id.end()) {
            id = static_cast<int>(class_id.size());
            class_id.emplace(key, id);
            class_mass.push_back(Rational(0));
          } else {
            id = it->second;
          }
          vclass[xi * nyn + yi] = id;
          class_mass[static_cast<std::size_t>(id)] += pmass[xi * nyn + yi];
        }
      }
      const std::size_t k = class_id.size();
      std::vector<std::vector<bool>> qadj(k, std::vector<bool>(k, false));
      for (auto [u, v] : edges) {
        int cu = vclass[u], cv = vclass[v];
        qadj[static_cast<std::size_t>(cu)][static_cast<std::size_t>(cv)] = true;
        qadj[static_cast<std::size_t>(cv)][static_cast<std::size_t>(cu)] = true;
      }
      double ha = 0, hb = 0;
      {
        std::vector<Rational> am(static_cast<std::size_t>(ka), Rational(0));
        for (std::size_t xi = 0; xi < nxn; ++xi)
          am[static_cast<std::size_t>(ca[xi])] += xmass[xi];
        ha = entropy_bits(std::span<const Rational>(am));
        std::vector<Rational> bm(static_cast<std::size_t>(kb), Rational(0));
        for (std::size_t yi = 0; yi < nyn; ++yi)
          bm[static_cast<std::size_t>(cb[yi])] += ymass[yi];
        hb = entropy_bits(std::span<const Rational>(bm));
      }
      // Proper coarsenings of the product: partitions of the quotient into
      // independent sets.
      std::vector<int> part(k, 0);
      std::function<bool(std::size_t, int)> qrec = [&](std::size_t i, int used) -> bool {
        if (++work > budget) return false;
        if (i == k) {
          std::vector<Rational> cm(static_cast<std::size_t>(used), Rational(0));
          for (std::size_t c = 0; c < k; ++c)
            cm[static_cast<std::size_t>(part[c])] += class_mass[c];
          emit(ha, hb, entropy_bits(std::span<const Rational>(cm)));
          return true;
        }
        for (int c = 0; c <= used; ++c) {
          bool ok = true;
          for (std::size_t j = 0; j < i && ok; ++j)
            if (part[j] == c && qadj[i][j]) ok = false;
          if (!ok) continue;
          part[i] = c;
          if (!qrec(i + 1, std::max(used, c + 1))) return false;
        }
        return true;
      };
      return qrec(0, 0);
    });
  });
  cloud.complete = finished;

  std::sort(cloud.corners.begin(), cloud.corners.end(),
            [](const RateTriple& p, const RateTriple& q) {
              if (p.a != q.a) return p.a < q.a;
              if (p.b != q.b) return p.b < q.b;
              return p.c < q.c;
            });
  cloud.region.name = mode == Mode::restricted ? "cover_cloud_restricted"
                                               : "cover_cloud_unrestricted";
  cloud.region.generators = dominance_filter(cloud.corners);
  cloud.region.complete = cloud.complete;
  return cloud;
}

}  // namespace relaycomp
