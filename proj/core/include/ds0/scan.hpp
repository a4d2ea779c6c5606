#pragma once

#include <string>
#include <vector>

#include "ds0/asymptotics.hpp"
#include "ds0/solver.hpp"
#include "ds0/tower.hpp"

namespace ds0 {

struct RunConfig {
  std::string theory = "hermitian_quartic";
  int order_lo = 2, order_hi = 10;
  std::string closure = "zero";  // zero | asymptotic | exact
  SolverConfig solver;
  std::string out_dir = "out";
  std::vector<std::string> formats = {"csv"};
  int workers = 1;

  void validate() const;  // unknown names rejected
};

// Closure backed by the oracle's exact Green's functions.
ClosureScheme exact_closure(const TheorySpec& theory, int max_top, unsigned bits = 256);

// Closure by name: "zero", "asymptotic" (growth model with the analytic or
// extrapolated rate), or "exact".
ClosureScheme make_closure(const TheorySpec& theory, const std::string& name, int max_top,
                           unsigned bits = 256);

// One RootSet per order in the configured range. Orders run independently
// (optionally in parallel); per-order failures become diagnostics on an empty
// RootSet and do not stop the scan.
std::vector<RootSet> scan(const RunConfig& config);

// Writes per-order CSV/JSON plus a summary and a resolved-config echo;
// returns the number of orders with failures (for the exit code).
int write_scan_outputs(const RunConfig& config, const std::vector<RootSet>& results);

std::string resolved_config_text(const RunConfig& config);

}  // namespace ds0
