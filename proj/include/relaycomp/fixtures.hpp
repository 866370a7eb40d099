#pragma once
// Canonical problem instances used throughout the tests and the CLI.

#include <string>
#include <vector>

#include "relaycomp/model.hpp"

namespace relaycomp {

namespace detail {

inline Alphabet range_alphabet(int lo, int hi) {
  Alphabet a;
  for (int v = lo; v <= hi; ++v) a.symbols.push_back(std::to_string(v));
  return a;
}

inline JointPmf dsbs(const Rational& p) {
  if (p.is_negative() || Rational(1) < p) {
    throw InvalidArgument("DSBS parameter must be in [0, 1]");
  }
  JointPmf pmf;
  pmf.x_alpha = range_alphabet(0, 1);
  pmf.y_alpha = range_alphabet(0, 1);
  Rational agree = (Rational(1) - p) / Rational(2);
  Rational differ = p / Rational(2);
  pmf.mass = {{agree, differ}, {differ, agree}};
  return pmf;
}

inline FunctionTable binary_table(const std::vector<std::vector<int>>& z,
                                  int zmax) {
  FunctionTable f;
  f.z_alpha = range_alphabet(0, zmax);
  for (const auto& row : z) {
    std::vector<std::string> labels;
    for (int v : row) labels.push_back(std::to_string(v));
    f.values.push_back(labels);
  }
  return f;
}

}  // namespace detail

// Equality function on a cyclic support: p = 1/10 iff y = x or y = x+1 mod 5.
inline ProblemInstance fixture_pentagon() {
  ProblemInstance inst;
  inst.name = "PENTAGON";
  inst.pmf.x_alpha = detail::range_alphabet(0, 4);
  inst.pmf.y_alpha = detail::range_alphabet(0, 4);
  inst.pmf.mass.assign(5, std::vector<Rational>(5, Rational(0)));
  for (int x = 0; x < 5; ++x) {
    inst.pmf.mass[x][x] = Rational(1, 10);
    inst.pmf.mass[x][(x + 1) % 5] = Rational(1, 10);
  }
  inst.f.z_alpha = detail::range_alphabet(0, 1);
  inst.f.values.assign(5, std::vector<std::string>(5, "0"));
  for (int x = 0; x < 5; ++x) inst.f.values[x][x] = "1";
  return inst;
}

// x, y in {1,2,3}, p = 1/6 iff x != y, f = 1 iff x > y.
inline ProblemInstance fixture_threshold() {
  ProblemInstance inst;
  inst.name = "THRESHOLD";
  inst.pmf.x_alpha = detail::range_alphabet(1, 3);
  inst.pmf.y_alpha = detail::range_alphabet(1, 3);
  inst.pmf.mass.assign(3, std::vector<Rational>(3, Rational(0)));
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if (x != y) inst.pmf.mass[x][y] = Rational(1, 6);
  inst.f.z_alpha = detail::range_alphabet(0, 1);
  inst.f.values.assign(3, std::vector<std::string>(3, "0"));
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y)
      if (x > y) inst.f.values[x][y] = "1";
  return inst;
}

inline ProblemInstance fixture_dsbs_xor(const Rational& p) {
  ProblemInstance inst;
  inst.name = "DSBS_XOR(" + p.str() + ")";
  inst.pmf = detail::dsbs(p);
  inst.f = detail::binary_table({{0, 1}, {1, 0}}, 1);
  return inst;
}

inline ProblemInstance fixture_dsbs_and(const Rational& p) {
  ProblemInstance inst;
  inst.name = "DSBS_AND(" + p.str() + ")";
  inst.pmf = detail::dsbs(p);
  inst.f = detail::binary_table({{0, 0}, {0, 1}}, 1);
  return inst;
}

// f1 = X + Y (integer sum, so f1(1,1) = 2).
inline ProblemInstance fixture_dsbs_f1(const Rational& p) {
  ProblemInstance inst;
  inst.name = "DSBS_F1(" + p.str() + ")";
  inst.pmf = detail::dsbs(p);
  inst.f = detail::binary_table({{0, 1}, {1, 2}}, 2);
  return inst;
}

// f2 = Y * (X + Y).
inline ProblemInstance fixture_dsbs_f2(const Rational& p) {
  ProblemInstance inst;
  inst.name = "DSBS_F2(" + p.str() + ")";
  inst.pmf = detail::dsbs(p);
  inst.f = detail::binary_table({{0, 1}, {0, 2}}, 2);
  return inst;
}

// Independent binary source p(0,0) = p(1,0) = 1/6, p(0,1) = p(1,1) = 1/3,
// with f = f2.
inline ProblemInstance fixture_hankob() {
  ProblemInstance inst;
  inst.name = "HANKOB";
  inst.pmf.x_alpha = detail::range_alphabet(0, 1);
  inst.pmf.y_alpha = detail::range_alphabet(0, 1);
  inst.pmf.mass = {{Rational(1, 6), Rational(1, 3)},
                   {Rational(1, 6), Rational(1, 3)}};
  inst.f = detail::binary_table({{0, 1}, {0, 2}}, 2);
  return inst;
}

// Parses names like "PENTAGON", "DSBS_XOR(1/4)", "DSBS_AND(0.25)".
inline ProblemInstance fixture(const std::string& name) {
  if (name == "PENTAGON") return fixture_pentagon();
  if (name == "THRESHOLD") return fixture_threshold();
  if (name == "HANKOB") return fixture_hankob();
  auto open = name.find('(');
  if (open != std::string::npos && name.back() == ')') {
    std::string base = name.substr(0, open);
    Rational p = Rational::parse(name.substr(open + 1, name.size() - open - 2));
    if (base == "DSBS_XOR") return fixture_dsbs_xor(p);
    if (base == "DSBS_AND") return fixture_dsbs_and(p);
    if (base == "DSBS_F1") return fixture_dsbs_f1(p);
    if (base == "DSBS_F2") return fixture_dsbs_f2(p);
  }
  throw InvalidArgument("unknown fixture: " + name);
}

inline std::vector<std::string> fixture_names(const std::string& p = "1/4") {
  return {"PENTAGON",        "THRESHOLD",       "DSBS_XOR(" + p + ")",
          "DSBS_AND(" + p + ")", "DSBS_F1(" + p + ")", "DSBS_F2(" + p + ")",
          "HANKOB"};
}

}  // namespace relaycomp
