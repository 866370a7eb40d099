#pragma once
// Undirected simple graphs with labeled vertices. Labels carry the full
// tuple structure of the source symbols so colorings can be read back as
// symbol maps.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relaycomp/config.hpp"
#include "relaycomp/rational.hpp"

namespace relaycomp {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }

  void set(std::size_t i) { w_[i >> 6] |= (std::uint64_t{1} << (i & 63)); }
  void reset(std::size_t i) { w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(std::size_t i) const {
    return (w_[i >> 6] >> (i & 63)) & 1;
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (std::uint64_t w : w_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }

  bool any() const {
    for (std::uint64_t w : w_)
      if (w) return true;
    return false;
  }

  bool intersects(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & o.w_[i]) return true;
    return false;
  }

  bool is_subset_of(const Bitset& o) const {
    for (std::size_t i = 0; i < w_.size(); ++i)
      if (w_[i] & ~o.w_[i]) return false;
    return true;
  }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
    return *this;
  }

  friend bool operator==(const Bitset& a, const Bitset& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

  std::vector<std::size_t> to_vector() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<std::string> labels) : labels_(std::move(labels)) {
    adj_.assign(labels_.size(), Bitset(labels_.size()));
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  int index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
      if (labels_[i] == label) return static_cast<int>(i);
    return -1;
  }

  void add_edge(std::size_t i, std::size_t j) {
    if (i == j) throw InvalidArgument("graph: self loop");
    adj_[i].set(j);
    adj_[j].set(i);
  }

  bool adjacent(std::size_t i, std::size_t j) const { return adj_[i].test(j); }
  const Bitset& neighbors(std::size_t i) const { return adj_[i]; }
  std::size_t degree(std::size_t i) const { return adj_[i].count(); }

  std::size_t edge_count() const {
    std::size_t twice = 0;
    for (const Bitset& row : adj_) twice += row.count();
    return twice / 2;
  }

  std::vector<std::pair<std::size_t, std::size_t>> edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        if (adjacent(i, j)) out.emplace_back(i, j);
    return out;
  }

  bool is_independent(const std::vector<std::size_t>& set) const {
    for (std::size_t a = 0; a < set.size(); ++a)
      for (std::size_t b = a + 1; b < set.size(); ++b)
        if (adjacent(set[a], set[b])) return false;
    return true;
  }

  Graph complement() const {
    Graph g(labels_);
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = i + 1; j < size(); ++j)
        if (!adjacent(i, j)) g.add_edge(i, j);
    return g;
  }

  // Induced subgraph on `keep` (order preserved).
  Graph induced(const std::vector<std::size_t>& keep) const {
    std::vector<std::string> labels;
    labels.reserve(keep.size());
    for (std::size_t v : keep) labels.push_back(labels_[v]);
    Graph g(std::move(labels));
    for (std::size_t a = 0; a < keep.size(); ++a)
      for (std::size_t b = a + 1; b < keep.size(); ++b)
        if (adjacent(keep[a], keep[b])) g.add_edge(a, b);
    return g;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.labels_ == b.labels_ && a.adj_ == b.adj_;
  }

 private:
  std::vector<std::string> labels_;
  std::vector<Bitset> adj_;
};

// A graph together with an exact vertex pmf.
struct ProbGraph {
  Graph graph;
  std::vector<Rational> mass;
};

inline void require_same_vertices(const Graph& a, const Graph& b,
                                  const char* op) {
  if (a.labels() != b.labels()) {
    throw InvalidArgument(std::string(op) + ": vertex sets differ");
  }
}

inline Graph graph_union(const Graph& a, const Graph& b) {
  require_same_vertices(a, b, "graph_union");
  Graph g(a.labels());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = i + 1; j < a.size(); ++j)
      if (a.adjacent(i, j) || b.adjacent(i, j)) g.add_edge(i, j);
  return g;
}

inline bool edge_subset(const Graph& a, const Graph& b) {
  require_same_vertices(a, b, "edge_subset");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a.neighbors(i).is_subset_of(b.neighbors(i))) return false;
  return true;
}

// Components as vertex index lists, ordered by smallest member.
inline std::vector<std::vector<std::size_t>> connected_components(const Graph& g) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(g.size(), false);
  for (std::size_t s = 0; s < g.size(); ++s) {
    if (seen[s]) continue;
    std::vector<std::size_t> comp;
    std::vector<std::size_t> stack{s};
    seen[s] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (std::size_t u = 0; u < g.size(); ++u) {
        if (!seen[u] && g.adjacent(v, u)) {
          seen[u] = true;
          stack.push_back(u);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

namespace detail {

inline bool extend_isomorphism(const Graph& a, const Graph& b,
                               std::vector<int>& map_ab,
                               std::vector<bool>& used_b,
                               const std::vector<std::size_t>& order,
                               std::size_t pos) {
  if (pos == order.size()) return true;
  std::size_t va = order[pos];
  for (std::size_t vb = 0; vb < b.size(); ++vb) {
    if (used_b[vb] || a.degree(va) != b.degree(vb)) continue;
    bool ok = true;
    for (std::size_t prev = 0; prev < pos && ok; ++prev) {
      std::size_t pa = order[prev];
      ok = a.adjacent(va, pa) ==
           b.adjacent(vb, static_cast<std::size_t>(map_ab[pa]));
    }
    if (!ok) continue;
    map_ab[va] = static_cast<int>(vb);
    used_b[vb] = true;
    if (extend_isomorphism(a, b, map_ab, used_b, order, pos + 1)) return true;
    used_b[vb] = false;
    map_ab[va] = -1;
  }
  return false;
}

}  // namespace detail

// Exact isomorphism by backtracking with degree pruning. Returns the vertex
// map a->b when isomorphic.
inline std::optional<std::vector<std::size_t>> isomorphic(
    const Graph& a, const Graph& b, const Limits& limits = default_limits()) {
  if (a.size() != b.size()) return std::nullopt;
  if (a.size() > limits.iso_vertex_cap) {
    throw GuardExceeded("isomorphic: graph larger than guard (" +
                        std::to_string(limits.iso_vertex_cap) + " vertices)");
  }
  std::vector<std::size_t> da, db;
  for (std::size_t i = 0; i < a.size(); ++i) da.push_back(a.degree(i));
  for (std::size_t i = 0; i < b.size(); ++i) db.push_back(b.degree(i));
  auto sa = da, sb = db;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  if (sa != sb) return std::nullopt;

  std::vector<std::size_t> order(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t u, std::size_t v) {
    if (da[u] != da[v]) return da[u] > da[v];
    return u < v;
  });

  std::vector<int> map_ab(a.size(), -1);
  std::vector<bool> used_b(b.size(), false);
  if (!detail::extend_isomorphism(a, b, map_ab, used_b, order, 0)) {
    return std::nullopt;
  }
  std::vector<std::size_t> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = static_cast<std::size_t>(map_ab[i]);
  return out;
}

}  // namespace relaycomp
