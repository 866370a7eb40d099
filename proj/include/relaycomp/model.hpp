#pragma once
// Finite joint sources, function tables and the problem instances every
// other module consumes. Probabilities are exact rationals; Shannon
// quantities are evaluated in double precision from the rationals.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "relaycomp/config.hpp"
#include "relaycomp/rational.hpp"
#include "relaycomp/shannon.hpp"

namespace relaycomp {

struct Alphabet {
  std::vector<std::string> symbols;

  std::size_t size() const { return symbols.size(); }
  const std::string& label(std::size_t i) const { return symbols[i]; }

  int index_of(const std::string& s) const {
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      if (symbols[i] == s) return static_cast<int>(i);
    }
    return -1;
  }

  std::vector<std::string> problems(const std::string& who) const {
    std::vector<std::string> out;
    if (symbols.empty()) out.push_back(who + ": empty alphabet");
    for (std::size_t i = 0; i < symbols.size(); ++i) {
      for (std::size_t j = i + 1; j < symbols.size(); ++j) {
        if (symbols[i] == symbols[j]) {
          out.push_back(who + ": duplicate symbol '" + symbols[i] + "'");
        }
      }
    }
    return out;
  }
};

// Single-variable pmf with labeled outcomes.
struct Dist {
  Alphabet alpha;
  std::vector<Rational> p;
};

struct JointPmf {
  Alphabet x_alpha;
  Alphabet y_alpha;
  std::vector<std::vector<Rational>> mass;  // [x][y]

  std::size_t nx() const { return x_alpha.size(); }
  std::size_t ny() const { return y_alpha.size(); }

  Rational total() const {
    Rational t(0);
    for (const auto& row : mass)
      for (const Rational& m : row) t += m;
    return t;
  }

  std::vector<Rational> marginal_x() const {
    std::vector<Rational> out(nx(), Rational(0));
    for (std::size_t x = 0; x < nx(); ++x)
      for (std::size_t y = 0; y < ny(); ++y) out[x] += mass[x][y];
    return out;
  }

  std::vector<Rational> marginal_y() const {
    std::vector<Rational> out(ny(), Rational(0));
    for (std::size_t x = 0; x < nx(); ++x)
      for (std::size_t y = 0; y < ny(); ++y) out[y] += mass[x][y];
    return out;
  }

  bool in_support(std::size_t x, std::size_t y) const {
    return !mass[x][y].is_zero();
  }

  // Support pairs in lexicographic (x, y) order.
  std::vector<std::pair<std::size_t, std::size_t>> support() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t x = 0; x < nx(); ++x)
      for (std::size_t y = 0; y < ny(); ++y)
        if (in_support(x, y)) out.emplace_back(x, y);
    return out;
  }

  bool full_support() const {
    for (const auto& row : mass)
      for (const Rational& m : row)
        if (m.is_zero()) return false;
    return true;
  }

  std::vector<std::string> problems() const {
    std::vector<std::string> out;
    auto ax = x_alpha.problems("x_alphabet");
    auto ay = y_alpha.problems("y_alphabet");
    out.insert(out.end(), ax.begin(), ax.end());
    out.insert(out.end(), ay.begin(), ay.end());
    if (mass.size() != nx()) {
      out.push_back("pmf: row count " + std::to_string(mass.size()) +
                    " != |x_alphabet| " + std::to_string(nx()));
      return out;
    }
    for (std::size_t x = 0; x < nx(); ++x) {
      if (mass[x].size() != ny()) {
        out.push_back("pmf: row " + std::to_string(x) + " has " +
                      std::to_string(mass[x].size()) + " entries, expected " +
                      std::to_string(ny()));
        return out;
      }
      for (std::size_t y = 0; y < ny(); ++y) {
        if (mass[x][y].is_negative()) {
          out.push_back("pmf: negative mass at (" + x_alpha.label(x) + "," +
                        y_alpha.label(y) + ")");
        }
      }
    }
    Rational t = total();
    if (t != Rational(1)) {
      out.push_back("pmf: mass sums to " + t.str() + ", expected 1");
    }
    if (support().empty()) out.push_back("pmf: empty support");
    return out;
  }
};

struct FunctionTable {
  Alphabet z_alpha;
  std::vector<std::vector<std::string>> values;  // [x][y] = z label

  int z_index(std::size_t x, std::size_t y) const {
    return z_alpha.index_of(values[x][y]);
  }

  std::vector<std::string> problems(const Alphabet& xa, const Alphabet& ya) const {
    std::vector<std::string> out = z_alpha.problems("z_alphabet");
    if (values.size() != xa.size()) {
      out.push_back("f: row count " + std::to_string(values.size()) +
                    " != |x_alphabet| " + std::to_string(xa.size()));
      return out;
    }
    for (std::size_t x = 0; x < xa.size(); ++x) {
      if (values[x].size() != ya.size()) {
        out.push_back("f: row " + std::to_string(x) + " has " +
                      std::to_string(values[x].size()) + " entries, expected " +
                      std::to_string(ya.size()));
        return out;
      }
      for (std::size_t y = 0; y < ya.size(); ++y) {
        if (z_alpha.index_of(values[x][y]) < 0) {
          out.push_back("f: cell (" + xa.label(x) + "," + ya.label(y) +
                        ") = '" + values[x][y] + "' not in z_alphabet");
        }
      }
    }
    return out;
  }
};

struct ProblemInstance {
  JointPmf pmf;
  FunctionTable f;
  std::string name;

  std::size_t nx() const { return pmf.nx(); }
  std::size_t ny() const { return pmf.ny(); }
  std::size_t nz() const { return f.z_alpha.size(); }
  int z_at(std::size_t x, std::size_t y) const { return f.z_index(x, y); }
};

struct ValidationReport {
  bool valid = true;
  bool full_support = false;
  std::vector<std::string> problems;
};

inline ValidationReport validate_instance(const ProblemInstance& inst) {
  ValidationReport report;
  report.problems = inst.pmf.problems();
  auto fp = inst.f.problems(inst.pmf.x_alpha, inst.pmf.y_alpha);
  report.problems.insert(report.problems.end(), fp.begin(), fp.end());
  report.valid = report.problems.empty();
  report.full_support = report.valid && inst.pmf.full_support();
  return report;
}

struct RateTriple {
  double a = 0;
  double b = 0;
  double c = 0;
};

inline bool dominates(const RateTriple& p, const RateTriple& q, double tol = 0) {
  return p.a >= q.a - tol && p.b >= q.b - tol && p.c >= q.c - tol;
}

// ---- tuple helpers (mixed-radix indexing of alphabet powers) ----

inline std::size_t power_size(std::size_t base, int n) {
  std::size_t v = 1;
  for (int i = 0; i < n; ++i) v *= base;
  return v;
}

inline std::vector<std::size_t> index_to_tuple(std::size_t index, int n,
                                               std::size_t base) {
  std::vector<std::size_t> t(static_cast<std::size_t>(n), 0);
  for (int i = n - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = index % base;
    index /= base;
  }
  return t;
}

inline std::size_t tuple_to_index(std::span<const std::size_t> tuple,
                                  std::size_t base) {
  std::size_t v = 0;
  for (std::size_t c : tuple) v = v * base + c;
  return v;
}

inline std::string tuple_label(std::span<const std::size_t> tuple,
                               const Alphabet& alpha) {
  std::string out;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    if (i) out += ',';
    out += alpha.label(tuple[i]);
  }
  return out;
}

inline Alphabet power_alphabet(const Alphabet& alpha, int n,
                               const Limits& limits = default_limits()) {
  std::size_t count = power_size(alpha.size(), n);
  if (count > limits.product_cell_cap) {
    throw GuardExceeded("alphabet power too large: " + std::to_string(count));
  }
  Alphabet out;
  out.symbols.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto t = index_to_tuple(i, n, alpha.size());
    out.symbols.push_back(tuple_label(t, alpha));
  }
  return out;
}

// i.i.d. product source over X^n x Y^n.
inline JointPmf product_pmf(const JointPmf& pmf, int n,
                            const Limits& limits = default_limits()) {
  if (n < 1) throw InvalidArgument("product_pmf: n must be >= 1");
  std::size_t cells = power_size(pmf.nx() * pmf.ny(), n);
  if (cells > limits.product_cell_cap) {
    throw GuardExceeded("product pmf table too large: " + std::to_string(cells));
  }
  JointPmf out;
  out.x_alpha = power_alphabet(pmf.x_alpha, n, limits);
  out.y_alpha = power_alphabet(pmf.y_alpha, n, limits);
  std::size_t nxn = out.nx(), nyn = out.ny();
  out.mass.assign(nxn, std::vector<Rational>(nyn, Rational(0)));
  for (std::size_t xi = 0; xi < nxn; ++xi) {
    auto xt = index_to_tuple(xi, n, pmf.nx());
    for (std::size_t yi = 0; yi < nyn; ++yi) {
      auto yt = index_to_tuple(yi, n, pmf.ny());
      Rational m(1);
      for (int i = 0; i < n; ++i) {
        m *= pmf.mass[xt[static_cast<std::size_t>(i)]][yt[static_cast<std::size_t>(i)]];
        if (m.is_zero()) break;
      }
      out.mass[xi][yi] = m;
    }
  }
  return out;
}

// Robust typicality: |N(x|seq)/n - p(x)| <= eps * p(x) for every symbol.
inline bool is_robustly_typical(const std::vector<std::string>& seq,
                                const Dist& dist, double eps) {
  if (eps <= 0) throw InvalidArgument("is_robustly_typical: eps must be > 0");
  std::vector<long long> counts(dist.alpha.size(), 0);
  for (const std::string& s : seq) {
    int i = dist.alpha.index_of(s);
    if (i < 0) return false;  // symbol of probability zero (not even listed)
    counts[static_cast<std::size_t>(i)]++;
  }
  const double n = static_cast<double>(seq.size());
  for (std::size_t i = 0; i < dist.alpha.size(); ++i) {
    double p = dist.p[i].to_double();
    double freq = n > 0 ? static_cast<double>(counts[i]) / n : 0.0;
    if (std::abs(freq - p) > eps * p) return false;
  }
  return true;
}

// ---- Shannon quantities of an instance ----

enum class Var { X, Y, Z };

// Dense joint over (X, Y, Z) with Z = f(X, Y).
inline JointDist xyz_dist(const ProblemInstance& inst) {
  JointDist d({inst.nx(), inst.ny(), inst.nz()});
  for (std::size_t x = 0; x < inst.nx(); ++x) {
    for (std::size_t y = 0; y < inst.ny(); ++y) {
      const Rational& m = inst.pmf.mass[x][y];
      if (m.is_zero()) continue;
      int z = inst.z_at(x, y);
      if (z < 0) throw InvalidArgument("function value outside z_alphabet");
      std::size_t idx[3] = {x, y, static_cast<std::size_t>(z)};
      d.add(idx, m);
    }
  }
  return d;
}

inline double entropy_bits(const Dist& dist) {
  return entropy_bits(std::span<const Rational>(dist.p));
}

inline double entropy_bits(const ProblemInstance& inst, Var v) {
  std::size_t var[1] = {static_cast<std::size_t>(v)};
  return xyz_dist(inst).entropy_bits(var);
}

inline double cond_entropy_bits(const ProblemInstance& inst, Var target, Var given) {
  std::size_t t[1] = {static_cast<std::size_t>(target)};
  std::size_t g[1] = {static_cast<std::size_t>(given)};
  return xyz_dist(inst).cond_entropy_bits(t, g);
}

inline double mutual_info_bits(const JointPmf& pmf) {
  JointDist d({pmf.nx(), pmf.ny()});
  for (std::size_t x = 0; x < pmf.nx(); ++x) {
    for (std::size_t y = 0; y < pmf.ny(); ++y) {
      if (!pmf.mass[x][y].is_zero()) {
        std::size_t idx[2] = {x, y};
        d.add(idx, pmf.mass[x][y]);
      }
    }
  }
  std::size_t vx[1] = {0}, vy[1] = {1};
  return d.mutual_info_bits(vx, vy);
}

}  // namespace relaycomp
