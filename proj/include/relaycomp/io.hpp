#pragma once
// File formats: problem-spec JSON (rational strings), scheme tables,
// auxiliary-family files, and deterministic graph exports.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "relaycomp/fixtures.hpp"
#include "relaycomp/graph_build.hpp"
#include "relaycomp/model.hpp"
#include "relaycomp/scheme.hpp"

namespace relaycomp {

using ordered_json = nlohmann::ordered_json;

// ---- problem specs ----

inline ordered_json instance_to_json(const ProblemInstance& inst) {
  ordered_json j;
  j["name"] = inst.name;
  j["x_alphabet"] = inst.pmf.x_alpha.symbols;
  j["y_alphabet"] = inst.pmf.y_alpha.symbols;
  j["z_alphabet"] = inst.f.z_alpha.symbols;
  ordered_json pmf = ordered_json::array();
  for (const auto& row : inst.pmf.mass) {
    ordered_json r = ordered_json::array();
    for (const Rational& m : row) r.push_back(m.str());
    pmf.push_back(r);
  }
  j["pmf"] = pmf;
  j["f"] = inst.f.values;
  return j;
}

inline ProblemInstance instance_from_json(const ordered_json& j) {
  ProblemInstance inst;
  inst.name = j.value("name", "");
  for (const auto& s : j.at("x_alphabet")) inst.pmf.x_alpha.symbols.push_back(s.get<std::string>());
  for (const auto& s : j.at("y_alphabet")) inst.pmf.y_alpha.symbols.push_back(s.get<std::string>());
  for (const auto& s : j.at("z_alphabet")) inst.f.z_alpha.symbols.push_back(s.get<std::string>());
  for (const auto& row : j.at("pmf")) {
    std::vector<Rational> r;
    for (const auto& cell : row) r.push_back(Rational::parse(cell.get<std::string>()));
    inst.pmf.mass.push_back(std::move(r));
  }
  for (const auto& row : j.at("f")) {
    std::vector<std::string> r;
    for (const auto& cell : row) r.push_back(cell.get<std::string>());
    inst.f.values.push_back(std::move(r));
  }
  auto report = validate_instance(inst);
  if (!report.valid) {
    std::string msg = "invalid problem spec:";
    for (const auto& p : report.problems) msg += "\n  " + p;
    throw InvalidArgument(msg);
  }
  return inst;
}

inline ordered_json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open file: " + path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw InvalidArgument("parse error in " + path + ": " + e.what());
  }
  return j;
}

// Fixture name or a problem-spec JSON path.
inline ProblemInstance load_instance(const std::string& source) {
  try {
    return fixture(source);
  } catch (const InvalidArgument&) {
  }
  return instance_from_json(read_json_file(source));
}

// ---- tuples ----

inline std::vector<std::size_t> tuple_from_json(const ordered_json& j,
                                                const Alphabet& alpha, int n) {
  if (static_cast<int>(j.size()) != n) {
    throw InvalidArgument("tuple length does not match n");
  }
  std::vector<std::size_t> t;
  for (const auto& s : j) {
    int idx = alpha.index_of(s.get<std::string>());
    if (idx < 0) throw InvalidArgument("unknown symbol in tuple: " + s.get<std::string>());
    t.push_back(static_cast<std::size_t>(idx));
  }
  return t;
}

inline ordered_json tuple_to_json(std::span<const std::size_t> t, const Alphabet& alpha) {
  ordered_json out = ordered_json::array();
  for (std::size_t c : t) out.push_back(alpha.label(c));
  return out;
}

// ---- schemes ----

inline ordered_json scheme_to_json(const Scheme& s, const ProblemInstance& inst) {
  ordered_json j;
  j["type"] = "relay";
  j["n"] = s.n;
  ordered_json a = ordered_json::array();
  for (std::size_t xi = 0; xi < s.phi_a.size(); ++xi) {
    auto t = index_to_tuple(xi, s.n, inst.nx());
    a.push_back({{"x", tuple_to_json(t, inst.pmf.x_alpha)}, {"code", s.phi_a[xi]}});
  }
  j["phi_a"] = a;
  ordered_json b = ordered_json::array();
  for (std::size_t yi = 0; yi < s.phi_b.size(); ++yi) {
    auto t = index_to_tuple(yi, s.n, inst.ny());
    b.push_back({{"y", tuple_to_json(t, inst.pmf.y_alpha)}, {"code", s.phi_b[yi]}});
  }
  j["phi_b"] = b;
  ordered_json c = ordered_json::array();
  for (const auto& [key, word] : s.phi_c) {
    c.push_back({{"a", key.first}, {"b", key.second}, {"code", word}});
  }
  j["phi_c"] = c;
  return j;
}

inline Scheme scheme_from_json(const ordered_json& j, const ProblemInstance& inst) {
  Scheme s;
  s.n = j.value("n", 1);
  const std::size_t nxn = power_size(inst.nx(), s.n);
  const std::size_t nyn = power_size(inst.ny(), s.n);
  s.phi_a.assign(nxn, "");
  s.phi_b.assign(nyn, "");
  std::vector<bool> seen_a(nxn, false), seen_b(nyn, false);
  for (const auto& row : j.at("phi_a")) {
    auto t = tuple_from_json(row.at("x"), inst.pmf.x_alpha, s.n);
    std::size_t xi = tuple_to_index(t, inst.nx());
    s.phi_a[xi] = row.at("code").get<std::string>();
    seen_a[xi] = true;
  }
  for (const auto& row : j.at("phi_b")) {
    auto t = tuple_from_json(row.at("y"), inst.pmf.y_alpha, s.n);
    std::size_t yi = tuple_to_index(t, inst.ny());
    s.phi_b[yi] = row.at("code").get<std::string>();
    seen_b[yi] = true;
  }
  for (std::size_t xi = 0; xi < nxn; ++xi)
    if (!seen_a[xi]) throw InvalidArgument("scheme file: phi_a is missing a tuple");
  for (std::size_t yi = 0; yi < nyn; ++yi)
    if (!seen_b[yi]) throw InvalidArgument("scheme file: phi_b is missing a tuple");
  for (const auto& row : j.at("phi_c")) {
    s.phi_c[{row.at("a").get<std::string>(), row.at("b").get<std::string>()}] =
        row.at("code").get<std::string>();
  }
  return s;
}

inline BfnScheme bfn_scheme_from_json(const ordered_json& j,
                                      const ProblemInstance& inst) {
  BfnScheme s;
  s.n = j.value("n", 1);
  const std::size_t nxn = power_size(inst.nx(), s.n);
  const std::size_t nyn = power_size(inst.ny(), s.n);
  s.phi_c.assign(nxn * nyn, "");
  std::vector<bool> seen(nxn * nyn, false);
  for (const auto& row : j.at("phi_c")) {
    auto xt = tuple_from_json(row.at("x"), inst.pmf.x_alpha, s.n);
    auto yt = tuple_from_json(row.at("y"), inst.pmf.y_alpha, s.n);
    std::size_t v = tuple_to_index(xt, inst.nx()) * nyn + tuple_to_index(yt, inst.ny());
    s.phi_c[v] = row.at("code").get<std::string>();
    seen[v] = true;
  }
  for (std::size_t v = 0; v < nxn * nyn; ++v)
    if (!seen[v]) throw InvalidArgument("scheme file: phi_c is missing a pair");
  return s;
}

// ---- auxiliary families ----

inline AuxFamily aux_family_from_json(const ordered_json& j, const Alphabet& alpha) {
  AuxFamily fam;
  for (const auto& set : j.at("sets")) {
    std::vector<std::size_t> s;
    for (const auto& sym : set) {
      int idx = alpha.index_of(sym.get<std::string>());
      if (idx < 0) throw InvalidArgument("aux family: unknown symbol " + sym.get<std::string>());
      s.push_back(static_cast<std::size_t>(idx));
    }
    fam.sets.push_back(std::move(s));
  }
  for (const auto& row : j.at("cond")) {
    std::vector<Rational> r;
    for (const auto& cell : row) r.push_back(Rational::parse(cell.get<std::string>()));
    if (r.size() != alpha.size()) throw InvalidArgument("aux family: conditional row size");
    fam.cond.push_back(std::move(r));
  }
  if (fam.cond.size() != fam.sets.size()) {
    throw InvalidArgument("aux family: sets/cond count mismatch");
  }
  return fam;
}

// ---- graph exports ----

inline std::string graph_adjacency_text(const Graph& g) {
  std::ostringstream out;
  for (std::size_t v = 0; v < g.size(); ++v) {
    out << g.label(v) << ":";
    for (std::size_t u = 0; u < g.size(); ++u)
      if (g.adjacent(v, u)) out << ' ' << g.label(u);
    out << '\n';
  }
  return out.str();
}

inline std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  return out + "\"";
}

inline std::string graph_edge_csv(const Graph& g) {
  std::ostringstream out;
  out << "u,v\n";
  for (auto [u, v] : g.edges())
    out << csv_quote(g.label(u)) << ',' << csv_quote(g.label(v)) << '\n';
  return out.str();
}

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

}  // namespace relaycomp
