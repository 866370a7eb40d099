#pragma once
// Size guards and solver knobs shared across the library.
// Defaults keep every computation at desk scale: exact algorithms,
// runtimes in seconds. All values can be overridden per call.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace relaycomp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A size guard tripped (input too large for the exact algorithm).
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

// A precondition on the inputs does not hold.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

struct Limits {
  std::size_t product_vertex_cap = 5000;     // AND/OR powers, n-instance graphs
  std::size_t product_cell_cap = 2000000;    // product pmf table cells
  std::size_t mis_vertex_cap = 64;           // maximal-independent-set enumeration
  std::size_t coloring_vertex_cap = 64;      // exact chi / omega search
  std::size_t perfect_vertex_cap = 14;       // induced-subgraph perfection sweep
  std::size_t chromatic_entropy_vertex_cap = 26;  // exact min-entropy coloring
  std::size_t iso_vertex_cap = 16;           // exact isomorphism backtracking

  double am_value_tol = 1e-10;               // alternating minimization stop
  double am_gap_tol = 1e-9;                  // certified duality-gap stop
  std::size_t am_max_iters = 100000;
  int cond_entropy_restarts = 16;
  double restart_spread_flag = 1e-6;

  std::uint64_t seed = 0;
  double grid_step = 0.25;                   // conditional grid in inner-bound search
  std::size_t search_budget = 100000;
  std::size_t cover_budget = 200000;
  double member_tol = 1e-9;
};

inline const Limits& default_limits() {
  static const Limits limits{};
  return limits;
}

}  // namespace relaycomp
