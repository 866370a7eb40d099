#pragma once
// Seeded generators of random schemes, covers and instances for the
// property suites.

#include <random>
#include <string>
#include <vector>

#include "relaycomp/color_cover.hpp"
#include "relaycomp/model.hpp"
#include "relaycomp/scheme.hpp"

namespace relaycomp {

namespace detail {

inline std::vector<std::string> fixed_length_codes(std::size_t k) {
  if (k <= 1) return std::vector<std::string>(k, "");
  std::size_t len = 0;
  while ((std::size_t{1} << len) < k) ++len;
  std::vector<std::string> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::string w;
    for (std::size_t b = len; b-- > 0;) w += ((i >> b) & 1) ? '1' : '0';
    out[i] = w;
  }
  return out;
}

}  // namespace detail

// Arbitrary prefix-free scheme: random partitions of the tuple spaces with
// fixed-length codes and a random relay table. Not zero-error in general.
inline Scheme random_scheme(const ProblemInstance& inst, int n, std::mt19937_64& rng) {
  const std::size_t nxn = power_size(inst.nx(), n);
  const std::size_t nyn = power_size(inst.ny(), n);
  Scheme s;
  s.n = n;
  std::size_t ka = 1 + rng() % nxn;
  std::size_t kb = 1 + rng() % nyn;
  auto codes_a = detail::fixed_length_codes(ka);
  auto codes_b = detail::fixed_length_codes(kb);
  s.phi_a.resize(nxn);
  s.phi_b.resize(nyn);
  for (std::size_t xi = 0; xi < nxn; ++xi) s.phi_a[xi] = codes_a[rng() % ka];
  for (std::size_t yi = 0; yi < nyn; ++yi) s.phi_b[yi] = codes_b[rng() % kb];

  std::size_t kc = 1 + rng() % (nxn * nyn > 16 ? 16 : nxn * nyn);
  auto codes_c = detail::fixed_length_codes(kc);
  for (std::size_t xi = 0; xi < nxn; ++xi)
    for (std::size_t yi = 0; yi < nyn; ++yi)
      s.phi_c[{s.phi_a[xi], s.phi_b[yi]}] = codes_c[rng() % kc];
  return s;
}

// Valid color cover built from random source partitions (falling back to
// the singleton partitions, always product-proper) and a greedy proper
// coarsening of the quotient in a random order.
inline ColorCover random_color_cover(const ProblemInstance& inst, int n, Mode mode,
                                     std::mt19937_64& rng,
                                     const Limits& limits = default_limits()) {
  auto pg = n_instance_graph(inst, n, mode, limits);
  const std::size_t nxn = power_size(inst.nx(), n);
  const std::size_t nyn = power_size(inst.ny(), n);
  auto edges = pg.graph.edges();

  ColorCover cover;
  cover.n = n;
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::size_t ka = 1 + rng() % nxn;
    std::size_t kb = 1 + rng() % nyn;
    std::vector<int> ca(nxn), cb(nyn);
    if (attempt == 7) {
      ka = nxn;
      kb = nyn;
      for (std::size_t i = 0; i < nxn; ++i) ca[i] = static_cast<int>(i);
      for (std::size_t i = 0; i < nyn; ++i) cb[i] = static_cast<int>(i);
    } else {
      for (std::size_t i = 0; i < nxn; ++i) ca[i] = static_cast<int>(rng() % ka);
      for (std::size_t i = 0; i < nyn; ++i) cb[i] = static_cast<int>(rng() % kb);
    }
    bool proper = true;
    for (auto [u, v] : edges) {
      if (ca[u / nyn] == ca[v / nyn] && cb[u % nyn] == cb[v % nyn]) {
        proper = false;
        break;
      }
    }
    if (!proper) continue;
    cover.c_a = ca;
    cover.c_b = cb;
    break;
  }

  // Greedy proper coarsening of the realized product classes.
  std::map<std::pair<int, int>, int> class_id;
  std::vector<int> vclass(nxn * nyn);
  for (std::size_t xi = 0; xi < nxn; ++xi)
    for (std::size_t yi = 0; yi < nyn; ++yi) {
      std::pair<int, int> key{cover.c_a[xi], cover.c_b[yi]};
      auto [it, fresh] = class_id.emplace(key, static_cast<int>(class_id.size()));
      (void)fresh;
      vclass[xi * nyn + yi] = it->second;
    }
  const std::size_t k = class_id.size();
  std::vector<std::vector<bool>> qadj(k, std::vector<bool>(k, false));
  for (auto [u, v] : edges) {
    qadj[static_cast<std::size_t>(vclass[u])][static_cast<std::size_t>(vclass[v])] = true;
    qadj[static_cast<std::size_t>(vclass[v])][static_cast<std::size_t>(vclass[u])] = true;
  }
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<int> part(k, -1);
  int used = 0;
  for (std::size_t idx : order) {
    for (int c = 0; c <= used; ++c) {
      bool ok = true;
      for (std::size_t j = 0; j < k && ok; ++j)
        if (part[j] == c && qadj[idx][j]) ok = false;
      if (ok) {
        part[idx] = c;
        used = std::max(used, c + 1);
        break;
      }
    }
  }
  cover.c_c.resize(nxn * nyn);
  for (std::size_t v = 0; v < nxn * nyn; ++v)
    cover.c_c[v] = part[static_cast<std::size_t>(vclass[v])];
  return cover;
}

struct RandomInstanceOptions {
  std::size_t max_alphabet = 4;
  std::size_t max_z = 3;
  bool full_support = false;
};

inline ProblemInstance random_instance(std::mt19937_64& rng,
                                       const RandomInstanceOptions& opt = {}) {
  ProblemInstance inst;
  std::size_t nx = 2 + rng() % (opt.max_alphabet - 1);
  std::size_t ny = 2 + rng() % (opt.max_alphabet - 1);
  std::size_t nz = 2 + rng() % (opt.max_z - 1);
  for (std::size_t i = 0; i < nx; ++i) inst.pmf.x_alpha.symbols.push_back(std::to_string(i));
  for (std::size_t i = 0; i < ny; ++i) inst.pmf.y_alpha.symbols.push_back(std::to_string(i));
  for (std::size_t i = 0; i < nz; ++i) inst.f.z_alpha.symbols.push_back(std::to_string(i));

  long long total = 0;
  std::vector<std::vector<long long>> weights(nx, std::vector<long long>(ny, 0));
  while (true) {
    total = 0;
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t y = 0; y < ny; ++y) {
        weights[x][y] = opt.full_support ? 1 + static_cast<long long>(rng() % 4)
                                         : static_cast<long long>(rng() % 5);
        total += weights[x][y];
      }
    if (total > 0) break;
  }
  inst.pmf.mass.assign(nx, std::vector<Rational>(ny, Rational(0)));
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      inst.pmf.mass[x][y] = Rational(weights[x][y], total);

  inst.f.values.assign(nx, std::vector<std::string>(ny));
  for (std::size_t x = 0; x < nx; ++x)
    for (std::size_t y = 0; y < ny; ++y)
      inst.f.values[x][y] = std::to_string(rng() % nz);
  inst.name = "random";
  return inst;
}

}  // namespace relaycomp
