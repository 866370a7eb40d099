#include "doctest.h"

#include <cstdio>

#include "relaycomp/generators.hpp"
#include "relaycomp/io.hpp"
#include "relaycomp/verify.hpp"

using namespace relaycomp;

TEST_CASE("problem spec roundtrip is bit-exact") {
  for (const auto& name : fixture_names()) {
    auto inst = fixture(name);
    CAPTURE(name);
    auto j = instance_to_json(inst);
    auto back = instance_from_json(j);
    CHECK(back.pmf.mass == inst.pmf.mass);
    CHECK(back.pmf.x_alpha.symbols == inst.pmf.x_alpha.symbols);
    CHECK(back.f.values == inst.f.values);
    CHECK(instance_to_json(back).dump() == j.dump());
  }
}

TEST_CASE("invalid problem specs are rejected with details") {
  auto j = instance_to_json(fixture("THRESHOLD"));
  j["pmf"][0][1] = "999/6000";
  try {
    instance_from_json(j);
    FAIL("expected InvalidArgument");
  } catch (const InvalidArgument& e) {
    CHECK(std::string(e.what()).find("mass sums to") != std::string::npos);
  }
}

TEST_CASE("scheme files roundtrip and verify") {
  auto thr = fixture("THRESHOLD");
  std::mt19937_64 rng(5);
  Scheme s = random_scheme(thr, 2, rng);
  auto j = scheme_to_json(s, thr);
  Scheme back = scheme_from_json(j, thr);
  CHECK(back.phi_a == s.phi_a);
  CHECK(back.phi_b == s.phi_b);
  CHECK(back.phi_c == s.phi_c);
  auto r1 = verify_zero_error(s, thr, Mode::restricted);
  auto r2 = verify_zero_error(back, thr, Mode::restricted);
  CHECK(r1.error_prob == r2.error_prob);

  // Missing tuple: parse error.
  auto broken = j;
  broken["phi_a"].erase(0);
  CHECK_THROWS_AS(scheme_from_json(broken, thr), InvalidArgument);
}

TEST_CASE("aux family files") {
  auto thr = fixture("THRESHOLD");
  auto j = ordered_json::parse(R"({
    "sets": [["1", "2"], ["2", "3"]],
    "cond": [["1", "1/2", "0"], ["0", "1/2", "1"]]
  })");
  auto fam = aux_family_from_json(j, thr.pmf.x_alpha);
  CHECK(fam.sets.size() == 2);
  CHECK(fam.cond[0][1] == Rational(1, 2));
  auto aux = aux_graph(thr, fam, fam);
  CHECK(aux.graph.edge_count() == 4);

  ordered_json bad = j;
  bad["sets"][0] = {"1", "7"};
  CHECK_THROWS_AS(aux_family_from_json(bad, thr.pmf.x_alpha), InvalidArgument);
}

TEST_CASE("graph exports are deterministic and quoted") {
  auto pent = f_rook_graph(fixture("PENTAGON"));
  auto text1 = graph_adjacency_text(pent.graph);
  auto text2 = graph_adjacency_text(pent.graph);
  CHECK(text1 == text2);
  CHECK(text1.find("0|0: 0|1 4|0") != std::string::npos);
  auto csv = graph_edge_csv(pent.graph);
  CHECK(csv.rfind("u,v\n", 0) == 0);
  CHECK(csv.find("\"0|0\",\"0|1\"") != std::string::npos);
}

TEST_CASE("load_instance accepts fixture names and files") {
  auto inst = load_instance("THRESHOLD");
  CHECK(inst.name == "THRESHOLD");

  std::string path = "/tmp/relaycomp_test_instance.json";
  write_file(path, instance_to_json(fixture("HANKOB")).dump(2));
  auto loaded = load_instance(path);
  CHECK(loaded.name == "HANKOB");
  CHECK(loaded.pmf.mass == fixture("HANKOB").pmf.mass);
  std::remove(path.c_str());

  CHECK_THROWS_AS(load_instance("NO_SUCH_FIXTURE_OR_FILE"), InvalidArgument);
}
