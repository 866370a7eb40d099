// Batch front end: ingest problem specs or fixtures, build graphs, compute
// entropies and rate-region bounds, verify schemes, run the acceptance
// suite. Reports are deterministic for a fixed configuration and seed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "relaycomp/acceptance.hpp"
#include "relaycomp/color_cover.hpp"
#include "relaycomp/graph_entropy.hpp"
#include "relaycomp/graphalg.hpp"
#include "relaycomp/io.hpp"
#include "relaycomp/regions.hpp"
#include "relaycomp/verify.hpp"

namespace rc = relaycomp;
namespace fs = std::filesystem;

namespace {

struct Options {
  std::string instance;
  std::string out_dir = "out";
  std::string query_file;
  std::string scheme_file;
  std::string aux_file;
  int n = 1;
  int nmax = 2;
  std::string mode = "restricted";
  std::size_t budget = 20000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::size_t vertex_cap = 5000;
};

rc::Limits make_limits(const Options& opt) {
  rc::Limits limits;
  limits.seed = opt.seed;
  limits.member_tol = opt.tol;
  limits.product_vertex_cap = opt.vertex_cap;
  return limits;
}

rc::Mode parse_mode(const std::string& mode) {
  if (mode == "restricted") return rc::Mode::restricted;
  if (mode == "unrestricted") return rc::Mode::unrestricted;
  throw rc::InvalidArgument("mode must be restricted or unrestricted");
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9f", v);
  return buf;
}

std::string triple_str(const rc::RateTriple& t) {
  return "(" + fmt(t.a) + ", " + fmt(t.b) + ", " + fmt(t.c) + ")";
}

rc::ordered_json triple_json(const rc::RateTriple& t) {
  return rc::ordered_json::array({t.a, t.b, t.c});
}

rc::ordered_json region_json(const rc::Region3& r) {
  rc::ordered_json j;
  j["name"] = r.name;
  j["complete"] = r.complete;
  rc::ordered_json gens = rc::ordered_json::array();
  for (const auto& g : r.generators) gens.push_back(triple_json(g));
  j["generators"] = gens;
  rc::ordered_json hs = rc::ordered_json::array();
  for (const auto& h : r.halfspaces) {
    hs.push_back({{"coeff", {h.ca, h.cb, h.cc}}, {"rhs", h.rhs}});
  }
  j["halfspaces"] = hs;
  return j;
}

// Per-family summary line; guard trips reported but never fatal.
std::string family_summary(const std::string& name, const rc::Graph& g,
                           const rc::Limits& limits) {
  std::string line = name + ": |V|=" + std::to_string(g.size()) +
                     " |E|=" + std::to_string(g.edge_count());
  try {
    auto chi = rc::chromatic_number(g, limits);
    auto omega = rc::clique_number(g, limits);
    line += " chi=" + std::to_string(chi.chi) + " omega=" + std::to_string(omega.omega);
  } catch (const rc::GuardExceeded&) {
    line += " chi=guard omega=guard";
  }
  try {
    line += std::string(" perfect=") + (rc::is_perfect(g, limits) ? "true" : "false");
  } catch (const rc::GuardExceeded&) {
    line += " perfect=guard";
  }
  line += " components=" + std::to_string(rc::connected_components(g).size());
  return line;
}

void export_graph(const std::string& stem, const rc::Graph& g, const Options& opt) {
  rc::write_file(opt.out_dir + "/" + stem + ".adj.txt", rc::graph_adjacency_text(g));
  rc::write_file(opt.out_dir + "/" + stem + ".edges.csv", rc::graph_edge_csv(g));
}

int cmd_graph(const Options& opt) {
  auto limits = make_limits(opt);
  auto inst = rc::load_instance(opt.instance);
  fs::create_directories(opt.out_dir);
  rc::write_file(opt.out_dir + "/instance.json",
                 rc::instance_to_json(inst).dump(2) + "\n");
  std::vector<std::string> summary;

  auto rook = rc::rook_graph(inst.pmf.x_alpha, inst.pmf.y_alpha);
  export_graph("rook", rook, opt);
  summary.push_back(family_summary("rook", rook, limits));

  auto frook = rc::f_rook_graph(inst);
  export_graph("f_rook", frook.graph, opt);
  summary.push_back(family_summary("f_rook", frook.graph, limits));

  auto confA = rc::confusability(inst, rc::Side::A);
  export_graph("confusability_x", confA.graph, opt);
  summary.push_back(family_summary("confusability_x", confA.graph, limits));

  auto confB = rc::confusability(inst, rc::Side::B);
  export_graph("confusability_y", confB.graph, opt);
  summary.push_back(family_summary("confusability_y", confB.graph, limits));

  for (auto [mode, tag] : {std::pair{rc::Mode::restricted, "restricted"},
                           std::pair{rc::Mode::unrestricted, "unrestricted"}}) {
    std::string stem = "n_instance_" + std::string(tag) + "_n" + std::to_string(opt.n);
    try {
      auto pg = rc::n_instance_graph(inst, opt.n, mode, limits);
      export_graph(stem, pg.graph, opt);
      summary.push_back(family_summary(stem, pg.graph, limits));
    } catch (const rc::GuardExceeded& e) {
      summary.push_back(stem + ": guard exceeded (" + std::string(e.what()) + ")");
    }
  }
  for (auto [side, tag] :
       {std::pair{rc::Side::A, "x"}, std::pair{rc::Side::B, "y"}}) {
    std::string stem = "single_decoder_" + std::string(tag) + "_n" + std::to_string(opt.n);
    try {
      auto pg = rc::single_decoder_graph(inst, opt.n, side, limits);
      export_graph(stem, pg.graph, opt);
      summary.push_back(family_summary(stem, pg.graph, limits));
    } catch (const rc::GuardExceeded& e) {
      summary.push_back(stem + ": guard exceeded (" + std::string(e.what()) + ")");
    }
  }
  if (!opt.aux_file.empty()) {
    auto aux_spec = rc::read_json_file(opt.aux_file);
    auto u1 = rc::aux_family_from_json(aux_spec.at("u1"), inst.pmf.x_alpha);
    auto u2 = rc::aux_family_from_json(aux_spec.at("u2"), inst.pmf.y_alpha);
    auto aux = rc::aux_graph(inst, u1, u2);
    export_graph("aux", aux.graph, opt);
    summary.push_back(family_summary("aux", aux.graph, limits));
  }

  std::string text;
  for (const auto& line : summary) text += line + "\n";
  rc::write_file(opt.out_dir + "/graph_summary.txt", text);
  std::cout << text;
  return 0;
}

rc::ordered_json entropy_json(const rc::EntropyResult& r) {
  rc::ordered_json j;
  j["value"] = r.value;
  j["iterations"] = r.conv.iterations;
  j["gap"] = r.conv.gap;
  j["converged"] = r.conv.converged;
  j["restart_spread"] = r.conv.restart_spread;
  return j;
}

int cmd_entropy(const Options& opt) {
  auto limits = make_limits(opt);
  auto inst = rc::load_instance(opt.instance);
  fs::create_directories(opt.out_dir);
  rc::ordered_json report;
  report["instance"] = inst.name.empty() ? opt.instance : inst.name;
  std::ostringstream text;

  struct Entry {
    std::string name;
    rc::ProbGraph pg;
  };
  std::vector<Entry> entries;
  entries.push_back({"confusability_x", rc::confusability(inst, rc::Side::A)});
  entries.push_back({"confusability_y", rc::confusability(inst, rc::Side::B)});
  entries.push_back({"f_rook", rc::f_rook_graph(inst)});

  for (const auto& e : entries) {
    rc::ordered_json j;
    try {
      auto hx = rc::chromatic_entropy(e.pg, limits);
      j["chromatic_entropy"] = entropy_json(hx);
      text << e.name << ": H_chi=" << fmt(hx.value);
    } catch (const rc::GuardExceeded& ex) {
      j["chromatic_entropy"] = {{"error", ex.what()}};
      text << e.name << ": H_chi=guard";
    }
    auto hg = rc::graph_entropy(e.pg, limits);
    j["graph_entropy"] = entropy_json(hg);
    text << " H_G=" << fmt(hg.value);
    if (!hg.conv.converged) text << " (gap " << hg.conv.gap << ", NOT converged)";
    auto seq = rc::complementary_entropy_sequence(e.pg, opt.nmax, limits);
    rc::ordered_json sj;
    rc::ordered_json an = rc::ordered_json::array();
    for (auto [n, a] : seq.a) an.push_back({{"n", n}, {"a_n", a}});
    sj["a_n"] = an;
    if (seq.perfect.has_value()) sj["perfect"] = *seq.perfect;
    if (seq.exact_limit.has_value()) sj["exact_limit"] = *seq.exact_limit;
    sj["truncated"] = seq.truncated;
    if (seq.truncated) sj["truncation_reason"] = seq.truncation_reason;
    j["complementary_sequence"] = sj;
    for (auto [n, a] : seq.a) text << " a_" << n << "=" << fmt(a);
    text << "\n";
    report[e.name] = j;
  }

  auto condA = rc::conditional_graph_entropy(entries[0].pg.graph, inst.pmf, limits);
  auto condB = rc::conditional_graph_entropy(entries[1].pg.graph,
                                             rc::flip_pmf(inst.pmf), limits);
  report["conditional_x_given_y"] = entropy_json(condA);
  report["conditional_y_given_x"] = entropy_json(condB);
  text << "conditional: H_G(X|Y)=" << fmt(condA.value)
       << " spread=" << condA.conv.restart_spread
       << " H_G(Y|X)=" << fmt(condB.value) << " spread=" << condB.conv.restart_spread
       << "\n";

  rc::write_file(opt.out_dir + "/entropy_report.json", report.dump(2) + "\n");
  std::cout << text.str();
  return 0;
}

int cmd_region(const Options& opt) {
  auto limits = make_limits(opt);
  auto inst = rc::load_instance(opt.instance);
  fs::create_directories(opt.out_dir);
  std::vector<rc::Region3> regions;

  try {
    regions.push_back(rc::relay_xor_zero_region(inst));
  } catch (const rc::InvalidArgument&) {
    std::cout << "relay_xor_zero: skipped (support of p_XY is not full)\n";
  }
  regions.push_back(rc::exchange_eps_region(inst));
  regions.push_back(rc::cutset_outer(inst, limits));
  regions.push_back(rc::zero_inner_RI2(inst, limits));
  regions.push_back(rc::eps_inner_RI2(inst, limits));
  auto zsearch = rc::search_RI1(inst, opt.budget, rc::ErrorModel::zero, limits);
  regions.push_back(zsearch.region);
  auto esearch = rc::search_RI1(inst, opt.budget, rc::ErrorModel::eps, limits);
  regions.push_back(esearch.region);
  {
    auto zi = rc::hull_union(zsearch.region, rc::zero_inner_RI2(inst, limits));
    zi.name = "zero_inner";
    regions.push_back(zi);
    auto ei = rc::hull_union(esearch.region, rc::eps_inner_RI2(inst, limits));
    ei.name = "eps_inner";
    regions.push_back(ei);
  }

  rc::ordered_json report;
  report["instance"] = inst.name.empty() ? opt.instance : inst.name;
  std::ostringstream text, csv;
  csv << "region,r_a,r_b,r_c\n";
  for (const auto& r : regions) {
    report[r.name] = region_json(r);
    text << r.name << (r.complete ? "" : " (partial)") << ":";
    for (const auto& g : r.generators) text << " " << triple_str(g);
    for (const auto& h : r.halfspaces) text << " [R_A+R_B >= " << fmt(h.rhs) << "]";
    text << "\n";
    for (const auto& g : r.generators)
      csv << r.name << ',' << fmt(g.a) << ',' << fmt(g.b) << ',' << fmt(g.c) << '\n';
  }

  if (!opt.query_file.empty()) {
    auto queries = rc::read_json_file(opt.query_file);
    rc::ordered_json answers = rc::ordered_json::array();
    for (const auto& q : queries) {
      std::string name = q.at("region").get<std::string>();
      auto pt = q.at("point");
      rc::RateTriple point{pt.at(0).get<double>(), pt.at(1).get<double>(),
                           pt.at(2).get<double>()};
      const rc::Region3* target = nullptr;
      for (const auto& r : regions)
        if (r.name == name) target = &r;
      if (!target) throw rc::InvalidArgument("query: unknown region " + name);
      bool verdict = rc::member(*target, point, opt.tol);
      answers.push_back({{"region", name},
                         {"point", triple_json(point)},
                         {"member", verdict}});
      text << "query " << name << " " << triple_str(point) << ": "
           << (verdict ? "member" : "not a member") << "\n";
    }
    report["queries"] = answers;
  }

  rc::write_file(opt.out_dir + "/region_report.json", report.dump(2) + "\n");
  rc::write_file(opt.out_dir + "/region_corners.csv", csv.str());
  std::cout << text.str();
  return 0;
}

int cmd_verify(const Options& opt) {
  auto limits = make_limits(opt);
  auto inst = rc::load_instance(opt.instance);
  fs::create_directories(opt.out_dir);
  auto spec = rc::read_json_file(opt.scheme_file);
  std::string type = spec.value("type", "relay");
  rc::ordered_json report;
  report["instance"] = inst.name.empty() ? opt.instance : inst.name;
  report["scheme"] = opt.scheme_file;
  report["type"] = type;
  std::ostringstream text;

  if (type == "bfn") {
    auto s = rc::bfn_scheme_from_json(spec, inst);
    auto rep = rc::bfn_verify(s, inst, limits);
    report["decodable_at_a"] = rep.decodable_at_a;
    report["decodable_at_b"] = rep.decodable_at_b;
    report["rate"] = rep.rate.to_double();
    report["rate_exact"] = rep.rate.str();
    if (rep.witness_a) report["witness_a"] = {rep.witness_a->first, rep.witness_a->second};
    if (rep.witness_b) report["witness_b"] = {rep.witness_b->first, rep.witness_b->second};
    text << "bfn: decodable_a=" << rep.decodable_at_a
         << " decodable_b=" << rep.decodable_at_b << " rate=" << rep.rate.str() << "\n";
  } else if (type == "relay") {
    auto s = rc::scheme_from_json(spec, inst);
    rc::Mode mode = parse_mode(opt.mode);
    auto rep = rc::verify_zero_error(s, inst, mode, limits);
    auto rates = rc::scheme_rates(s, inst);
    auto relay = rc::relay_computability(s, inst, limits);
    auto equiv = rc::coloring_equivalence(s, inst, mode, limits);
    report["mode"] = opt.mode;
    report["decodable_at_a"] = rep.decodable_at_a;
    report["decodable_at_b"] = rep.decodable_at_b;
    report["error_prob"] = rep.error_prob.str();
    if (rep.witness_a) report["witness_a"] = {rep.witness_a->first, rep.witness_a->second};
    if (rep.witness_b) report["witness_b"] = {rep.witness_b->first, rep.witness_b->second};
    report["rates"] = {{"r_a", rates.a.str()}, {"r_b", rates.b.str()}, {"r_c", rates.c.str()}};
    report["relay_computable"] = relay.computable;
    if (relay.witness) report["relay_witness"] = {relay.witness->first, relay.witness->second};
    report["coloring_equivalence_agrees"] = equiv.agree;
    text << "relay (" << opt.mode << "): decodable_a=" << rep.decodable_at_a
         << " decodable_b=" << rep.decodable_at_b << " P_e=" << rep.error_prob.str()
         << "\nrates: R_A=" << rates.a.str() << " R_B=" << rates.b.str()
         << " R_C=" << rates.c.str() << "\nrelay_computable=" << relay.computable;
    if (relay.witness)
      text << " witness=(" << relay.witness->first << " vs " << relay.witness->second << ")";
    text << "\ncoloring-equivalence cross-check: " << (equiv.agree ? "agree" : "DISAGREE")
         << "\n";
  } else {
    throw rc::InvalidArgument("scheme type must be relay or bfn");
  }

  rc::write_file(opt.out_dir + "/verify_report.json", report.dump(2) + "\n");
  std::cout << text.str();
  return 0;
}

int cmd_accept(const Options& opt) {
  auto limits = make_limits(opt);
  auto results = rc::run_acceptance(limits);
  rc::print_acceptance(results, std::cout);
  if (!opt.out_dir.empty()) {
    fs::create_directories(opt.out_dir);
    rc::ordered_json j = rc::ordered_json::array();
    for (const auto& r : results) {
      j.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"details", r.details}});
    }
    rc::write_file(opt.out_dir + "/accept_report.json", j.dump(2) + "\n");
  }
  return rc::acceptance_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact graph-entropy toolkit for function computation in relay networks"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_instance) {
    if (needs_instance) {
      sub->add_option("--instance", opt.instance, "fixture name or problem-spec JSON path")
          ->required();
    }
    sub->add_option("--out", opt.out_dir, "output directory");
    sub->add_option("--seed", opt.seed, "seed for randomized procedures");
    sub->add_option("--tol", opt.tol, "membership tolerance");
    sub->add_option("--vertex-cap", opt.vertex_cap, "product-graph vertex cap");
  };

  auto* graph = app.add_subcommand("graph", "export all graph families with a summary");
  add_common(graph, true);
  graph->add_option("--n", opt.n, "block length for n-instance graphs");
  graph->add_option("--aux", opt.aux_file, "auxiliary family JSON for the aux graph");

  auto* entropy = app.add_subcommand("entropy", "entropy report for the instance graphs");
  add_common(entropy, true);
  entropy->add_option("--nmax", opt.nmax, "prefix length of the complementary sequence");

  auto* region = app.add_subcommand("region", "rate-region bounds and membership queries");
  add_common(region, true);
  region->add_option("--budget", opt.budget, "search budget for the first-scheme region");
  region->add_option("--query", opt.query_file, "membership query JSON file");

  auto* verify = app.add_subcommand("verify", "verify a scheme file against the instance");
  add_common(verify, true);
  verify->add_option("--scheme", opt.scheme_file, "scheme JSON file")->required();
  verify->add_option("--mode", opt.mode, "restricted or unrestricted");

  auto* accept = app.add_subcommand("accept", "run the acceptance suite");
  add_common(accept, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (graph->parsed()) return cmd_graph(opt);
    if (entropy->parsed()) return cmd_entropy(opt);
    if (region->parsed()) return cmd_region(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (accept->parsed()) return cmd_accept(opt);
  } catch (const rc::InvalidArgument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "computation failed: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
