#pragma once
// Concrete coding schemes: three encoder tables with prefix-free codebooks,
// canonical Huffman construction, and exact expected-rate accounting.

#include <algorithm>
#include <map>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "relaycomp/model.hpp"

namespace relaycomp {

// Relay-network scheme for block length n. phi_a / phi_b are indexed by the
// tuple index of x^n / y^n; phi_c is a table on pairs of used codewords.
struct Scheme {
  int n = 1;
  std::vector<std::string> phi_a;
  std::vector<std::string> phi_b;
  std::map<std::pair<std::string, std::string>, std::string> phi_c;

  const std::string& relay_word(const std::string& wa, const std::string& wb) const {
    auto it = phi_c.find({wa, wb});
    if (it == phi_c.end()) {
      throw InvalidArgument("scheme: phi_c missing entry for (" + wa + "," + wb + ")");
    }
    return it->second;
  }
};

// Broadcast-network scheme: one encoder on X^n x Y^n, indexed by pair index.
struct BfnScheme {
  int n = 1;
  std::vector<std::string> phi_c;
};

// A set of codewords is prefix-free when no word is a proper prefix of
// another distinct word. Repeated words (non-injective encoders) are fine.
inline bool prefix_free(const std::vector<std::string>& words) {
  std::vector<std::string> unique = words;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  for (std::size_t i = 0; i + 1 < unique.size(); ++i) {
    const std::string& a = unique[i];
    const std::string& b = unique[i + 1];
    if (a.size() <= b.size() && b.compare(0, a.size(), a) == 0) return false;
  }
  return true;
}

inline void validate_scheme_codes(const Scheme& s) {
  if (!prefix_free(s.phi_a)) throw InvalidArgument("scheme: phi_a is not prefix-free");
  if (!prefix_free(s.phi_b)) throw InvalidArgument("scheme: phi_b is not prefix-free");
  std::vector<std::string> relay_words;
  for (const auto& [key, word] : s.phi_c) relay_words.push_back(word);
  if (!prefix_free(relay_words)) throw InvalidArgument("scheme: phi_c is not prefix-free");
}

// Canonical Huffman code over exact masses. Ties merge in creation order,
// the first-popped child takes bit 0. A single symbol gets the empty word.
inline std::vector<std::string> huffman_codes(const std::vector<Rational>& mass) {
  const std::size_t k = mass.size();
  if (k == 0) return {};
  if (k == 1) return {""};
  struct Node {
    Rational mass;
    std::size_t id;
  };
  auto later = [](const Node& a, const Node& b) {
    if (a.mass != b.mass) return b.mass < a.mass;
    return b.id < a.id;
  };
  std::priority_queue<Node, std::vector<Node>, decltype(later)> heap(later);
  std::vector<int> parent(2 * k - 1, -1);
  std::vector<char> bit(2 * k - 1, 0);
  for (std::size_t i = 0; i < k; ++i) heap.push({mass[i], i});
  std::size_t next_id = k;
  while (heap.size() > 1) {
    Node a = heap.top();
    heap.pop();
    Node b = heap.top();
    heap.pop();
    parent[a.id] = static_cast<int>(next_id);
    bit[a.id] = '0';
    parent[b.id] = static_cast<int>(next_id);
    bit[b.id] = '1';
    heap.push({a.mass + b.mass, next_id});
    ++next_id;
  }
  std::vector<std::string> codes(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::string w;
    for (int v = static_cast<int>(i); parent[v] >= 0; v = parent[v]) w += bit[v];
    std::reverse(w.begin(), w.end());
    codes[i] = w;
  }
  return codes;
}

struct SchemeRates {
  Rational a{0}, b{0}, c{0};  // exact, bits per source symbol
  RateTriple bits() const { return {a.to_double(), b.to_double(), c.to_double()}; }
};

// Exact expected codeword lengths per symbol.
inline SchemeRates scheme_rates(const Scheme& s, const ProblemInstance& inst) {
  const int n = s.n;
  const std::size_t nxn = power_size(inst.nx(), n);
  const std::size_t nyn = power_size(inst.ny(), n);
  if (s.phi_a.size() != nxn || s.phi_b.size() != nyn) {
    throw InvalidArgument("scheme: encoder table sizes do not match the instance");
  }
  auto mx = inst.pmf.marginal_x();
  auto my = inst.pmf.marginal_y();
  SchemeRates out;
  Rational inv_n(1, n);
  for (std::size_t xi = 0; xi < nxn; ++xi) {
    auto t = index_to_tuple(xi, n, inst.nx());
    Rational m(1);
    for (std::size_t c : t) m *= mx[c];
    if (!m.is_zero())
      out.a += m * Rational(static_cast<long long>(s.phi_a[xi].size()));
  }
  for (std::size_t yi = 0; yi < nyn; ++yi) {
    auto t = index_to_tuple(yi, n, inst.ny());
    Rational m(1);
    for (std::size_t c : t) m *= my[c];
    if (!m.is_zero())
      out.b += m * Rational(static_cast<long long>(s.phi_b[yi].size()));
  }
  for (std::size_t xi = 0; xi < nxn; ++xi) {
    auto xt = index_to_tuple(xi, n, inst.nx());
    for (std::size_t yi = 0; yi < nyn; ++yi) {
      auto yt = index_to_tuple(yi, n, inst.ny());
      Rational m(1);
      for (int i = 0; i < n; ++i) {
        m *= inst.pmf.mass[xt[static_cast<std::size_t>(i)]][yt[static_cast<std::size_t>(i)]];
        if (m.is_zero()) break;
      }
      if (m.is_zero()) continue;
      const std::string& w = s.relay_word(s.phi_a[xi], s.phi_b[yi]);
      out.c += m * Rational(static_cast<long long>(w.size()));
    }
  }
  out.a *= inv_n;
  out.b *= inv_n;
  out.c *= inv_n;
  return out;
}

}  // namespace relaycomp
