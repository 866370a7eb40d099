#pragma once
// Up-closed convex rate regions in (R_A, R_B, R_C), represented by
// generator corners plus optional sum halfspaces (R_A + R_B >= s).
// Membership is a small linear feasibility program: the point must
// dominate some convex combination of the generators.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "relaycomp/config.hpp"
#include "relaycomp/model.hpp"

namespace relaycomp {

struct Halfspace {
  double ca = 0, cb = 0, cc = 0;
  double rhs = 0;
};

struct Region3 {
  std::string name;
  std::vector<RateTriple> generators;
  std::vector<Halfspace> halfspaces;  // carried sum constraints
  bool complete = true;               // false when a search budget ran out
};

namespace detail {

// Dense two-phase simplex for: minimize c.x s.t. A x = b, x >= 0.
// Bland's rule; deterministic. Returns the optimal objective.
class Simplex {
 public:
  Simplex(std::vector<std::vector<double>> a, std::vector<double> b,
          std::vector<double> c)
      : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)) {}

  double solve() {
    const std::size_t m = a_.size();
    const std::size_t n = c_.size();
    for (std::size_t r = 0; r < m; ++r) {
      if (b_[r] < 0) {
        b_[r] = -b_[r];
        for (double& v : a_[r]) v = -v;
      }
    }
    // Phase 1 tableau with artificials.
    std::size_t cols = n + m;
    tab_.assign(m + 1, std::vector<double>(cols + 1, 0.0));
    basis_.assign(m, 0);
    for (std::size_t r = 0; r < m; ++r) {
      for (std::size_t c = 0; c < n; ++c) tab_[r][c] = a_[r][c];
      tab_[r][n + r] = 1.0;
      tab_[r][cols] = b_[r];
      basis_[r] = n + r;
    }
    // Phase-1 objective: minimize sum of artificials.
    for (std::size_t c = 0; c <= cols; ++c) {
      double s = 0;
      for (std::size_t r = 0; r < m; ++r) s += tab_[r][c];
      tab_[m][c] = -s;
    }
    for (std::size_t r = 0; r < m; ++r) tab_[m][n + r] = 0.0;
    run(cols);
    if (-tab_[m][cols] > 1e-7) throw Error("simplex: infeasible program");

    // Drive artificials out of the basis if present (degenerate rows).
    for (std::size_t r = 0; r < m; ++r) {
      if (basis_[r] >= n) {
        std::size_t pivot_col = n;
        for (std::size_t c = 0; c < n; ++c) {
          if (std::abs(tab_[r][c]) > 1e-9) {
            pivot_col = c;
            break;
          }
        }
        if (pivot_col < n) pivot(r, pivot_col, cols);
      }
    }
    // Phase 2.
    for (std::size_t c = 0; c <= cols; ++c) tab_[m][c] = 0.0;
    for (std::size_t c = 0; c < n; ++c) tab_[m][c] = c_[c];
    for (std::size_t r = 0; r < m; ++r) {
      if (basis_[r] < n && std::abs(tab_[m][basis_[r]]) > 0) {
        double f = tab_[m][basis_[r]];
        for (std::size_t c = 0; c <= cols; ++c) tab_[m][c] -= f * tab_[r][c];
      }
    }
    run(cols, n);  // artificial columns barred from re-entering
    return -tab_[m][cols];
  }

 private:
  std::vector<std::vector<double>> a_;
  std::vector<double> b_, c_;
  std::vector<std::vector<double>> tab_;
  std::vector<std::size_t> basis_;

  void pivot(std::size_t pr, std::size_t pc, std::size_t cols) {
    const std::size_t m = a_.size();
    double pv = tab_[pr][pc];
    for (std::size_t c = 0; c <= cols; ++c) tab_[pr][c] /= pv;
    for (std::size_t r = 0; r <= m; ++r) {
      if (r == pr || std::abs(tab_[r][pc]) < 1e-14) continue;
      double f = tab_[r][pc];
      for (std::size_t c = 0; c <= cols; ++c) tab_[r][c] -= f * tab_[pr][c];
    }
    basis_[pr] = pc;
  }

  void run(std::size_t cols, std::size_t usable_limit = SIZE_MAX) {
    const std::size_t m = a_.size();
    std::size_t usable = std::min(cols, usable_limit);
    for (std::size_t iter = 0; iter < 100000; ++iter) {
      std::size_t pc = cols;
      for (std::size_t c = 0; c < usable; ++c) {  // Bland: first negative
        if (tab_[m][c] < -1e-11) {
          pc = c;
          break;
        }
      }
      if (pc == cols) return;
      std::size_t pr = m;
      double best = 0;
      for (std::size_t r = 0; r < m; ++r) {
        if (tab_[r][pc] > 1e-11) {
          double ratio = tab_[r][cols] / tab_[r][pc];
          if (pr == m || ratio < best - 1e-12 ||
              (std::abs(ratio - best) <= 1e-12 && basis_[r] < basis_[pr])) {
            pr = r;
            best = ratio;
          }
        }
      }
      if (pr == m) throw Error("simplex: unbounded program");
      pivot(pr, pc, cols);
    }
    throw Error("simplex: iteration limit");
  }
};

}  // namespace detail

inline std::vector<RateTriple> dominance_filter(std::vector<RateTriple> points) {
  std::sort(points.begin(), points.end(), [](const RateTriple& p, const RateTriple& q) {
    if (p.a != q.a) return p.a < q.a;
    if (p.b != q.b) return p.b < q.b;
    return p.c < q.c;
  });
  std::vector<RateTriple> keep;
  for (const RateTriple& p : points) {
    bool dominated = false;
    for (const RateTriple& k : keep) {
      if (k.a <= p.a + 1e-12 && k.b <= p.b + 1e-12 && k.c <= p.c + 1e-12) {
        dominated = true;
        break;
      }
    }
    if (!dominated) keep.push_back(p);
  }
  return keep;
}

// Folds the sum halfspaces into explicit corners: a generator violating
// R_A + R_B >= s is replaced by the two extreme points of the constrained
// frontier segment.
inline std::vector<RateTriple> expanded_generators(const Region3& region) {
  std::vector<RateTriple> gens = region.generators;
  for (const Halfspace& h : region.halfspaces) {
    if (!(h.ca == 1 && h.cb == 1 && h.cc == 0)) {
      throw InvalidArgument("region: only R_A + R_B sum halfspaces are supported");
    }
    std::vector<RateTriple> next;
    for (const RateTriple& g : gens) {
      if (g.a + g.b >= h.rhs - 1e-12) {
        next.push_back(g);
      } else {
        next.push_back({g.a, h.rhs - g.a, g.c});
        next.push_back({h.rhs - g.b, g.b, g.c});
      }
    }
    gens = std::move(next);
  }
  return gens;
}

// Point membership: q dominates some convex combination of the expanded
// generators. Decided by a small LP (minimize the worst coordinate excess).
inline bool member(const Region3& region, const RateTriple& point,
                   double tol = default_limits().member_tol) {
  auto gens = expanded_generators(region);
  if (gens.empty()) return false;
  const std::size_t m = gens.size();
  // Variables: lambda_1..m, slack u_1..3, excess s. Rows: 3 coords + sum-to-1.
  std::vector<std::vector<double>> a(4, std::vector<double>(m + 4, 0.0));
  std::vector<double> b{point.a, point.b, point.c, 1.0};
  std::vector<double> c(m + 4, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    a[0][i] = gens[i].a;
    a[1][i] = gens[i].b;
    a[2][i] = gens[i].c;
    a[3][i] = 1.0;
  }
  for (std::size_t k = 0; k < 3; ++k) {
    a[k][m + k] = 1.0;   // slack: combo + slack = point + excess
    a[k][m + 3] = -1.0;  // shared excess
  }
  c[m + 3] = 1.0;
  double excess = detail::Simplex(a, b, c).solve();
  return excess <= tol;
}

// Region containment: every expanded generator of `inner` is a member of
// `outer` (both regions are up-closed convex hulls of their corners).
inline bool contains(const Region3& outer, const Region3& inner,
                     double tol = default_limits().member_tol) {
  for (const RateTriple& g : expanded_generators(inner)) {
    if (!member(outer, g, tol)) return false;
  }
  return true;
}

// Convex closure of the union.
inline Region3 hull_union(const Region3& r1, const Region3& r2) {
  Region3 out;
  out.name = r1.name.empty() || r2.name.empty() ? r1.name + r2.name
                                                : r1.name + " u " + r2.name;
  auto g1 = expanded_generators(r1);
  auto g2 = expanded_generators(r2);
  g1.insert(g1.end(), g2.begin(), g2.end());
  out.generators = dominance_filter(std::move(g1));
  out.complete = r1.complete && r2.complete;
  return out;
}

}  // namespace relaycomp
