#pragma once
// Shannon quantities in bits (log base 2 throughout) over exact-rational
// mass tables. JointDist is a small dense multivariate pmf used to evaluate
// entropies and (conditional) mutual informations of auxiliary-variable
// constructions.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "relaycomp/config.hpp"
#include "relaycomp/rational.hpp"

namespace relaycomp {

inline double entropy_term_bits(double p) {
  return p > 0 ? -p * std::log2(p) : 0.0;
}

inline double entropy_bits(std::span<const Rational> pmf) {
  double h = 0;
  for (const Rational& p : pmf) {
    if (!p.is_zero()) h += entropy_term_bits(p.to_double());
  }
  return h;
}

inline double entropy_bits(std::span<const double> pmf) {
  double h = 0;
  for (double p : pmf) h += entropy_term_bits(p);
  return h;
}

inline double binary_entropy_bits(double p) {
  return entropy_term_bits(p) + entropy_term_bits(1.0 - p);
}

// Dense joint pmf over a fixed list of finite variables.
class JointDist {
 public:
  explicit JointDist(std::vector<std::size_t> cards) : card_(std::move(cards)) {
    stride_.assign(card_.size(), 1);
    std::size_t cells = 1;
    for (std::size_t i = card_.size(); i-- > 0;) {
      stride_[i] = cells;
      cells *= card_[i];
    }
    mass_.assign(cells, Rational(0));
  }

  std::size_t arity() const { return card_.size(); }
  std::size_t card(std::size_t var) const { return card_[var]; }
  std::size_t cells() const { return mass_.size(); }

  std::size_t flat(std::span<const std::size_t> idx) const {
    std::size_t f = 0;
    for (std::size_t i = 0; i < idx.size(); ++i) f += idx[i] * stride_[i];
    return f;
  }

  void add(std::span<const std::size_t> idx, const Rational& m) {
    mass_[flat(idx)] += m;
  }
  const Rational& at(std::span<const std::size_t> idx) const {
    return mass_[flat(idx)];
  }
  const std::vector<Rational>& flat_mass() const { return mass_; }

  Rational total() const {
    Rational t(0);
    for (const Rational& m : mass_) t += m;
    return t;
  }

  // Exact marginal over a subset of variables, flattened mixed-radix.
  std::vector<Rational> marginal(std::span<const std::size_t> vars) const {
    std::size_t out_cells = 1;
    for (std::size_t v : vars) out_cells *= card_[v];
    std::vector<Rational> out(out_cells, Rational(0));
    std::vector<std::size_t> idx(card_.size(), 0);
    for (std::size_t f = 0; f < mass_.size(); ++f) {
      if (!mass_[f].is_zero()) {
        std::size_t key = 0;
        for (std::size_t v : vars) key = key * card_[v] + idx[v];
        out[key] += mass_[f];
      }
      for (std::size_t i = card_.size(); i-- > 0;) {
        if (++idx[i] < card_[i]) break;
        idx[i] = 0;
      }
    }
    return out;
  }

  double entropy_bits(std::span<const std::size_t> vars) const {
    auto m = marginal(vars);
    return relaycomp::entropy_bits(std::span<const Rational>(m));
  }

  // H(A|B) = H(A,B) - H(B)
  double cond_entropy_bits(std::span<const std::size_t> a,
                           std::span<const std::size_t> b) const {
    std::vector<std::size_t> ab(a.begin(), a.end());
    ab.insert(ab.end(), b.begin(), b.end());
    return entropy_bits(ab) - entropy_bits(b);
  }

  // I(A;B) = H(A) + H(B) - H(A,B)
  double mutual_info_bits(std::span<const std::size_t> a,
                          std::span<const std::size_t> b) const {
    std::vector<std::size_t> ab(a.begin(), a.end());
    ab.insert(ab.end(), b.begin(), b.end());
    return entropy_bits(a) + entropy_bits(b) - entropy_bits(ab);
  }

  // I(A;B|C) = H(A,C) + H(B,C) - H(A,B,C) - H(C)
  double cond_mutual_info_bits(std::span<const std::size_t> a,
                               std::span<const std::size_t> b,
                               std::span<const std::size_t> c) const {
    std::vector<std::size_t> ac(a.begin(), a.end());
    ac.insert(ac.end(), c.begin(), c.end());
    std::vector<std::size_t> bc(b.begin(), b.end());
    bc.insert(bc.end(), c.begin(), c.end());
    std::vector<std::size_t> abc(a.begin(), a.end());
    abc.insert(abc.end(), b.begin(), b.end());
    abc.insert(abc.end(), c.begin(), c.end());
    return entropy_bits(ac) + entropy_bits(bc) - entropy_bits(abc) - entropy_bits(c);
  }

 private:
  std::vector<std::size_t> card_;
  std::vector<std::size_t> stride_;
  std::vector<Rational> mass_;
};

}  // namespace relaycomp
