#pragma once

#include <string>
#include <vector>

#include "ds0/scan.hpp"

namespace ds0 {

// Data behind one published figure: formatted rows plus the exact reference
// constants drawn on it.
struct FigureDataset {
  std::string id, theory;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<BigComplex> exact_refs;
  int min_order = 0, max_order = 0;

  std::string csv() const;
  std::string json() const;
  std::string svg() const;
};

const std::vector<std::string>& figure_ids();

// Assembles one figure's dataset; `full` lifts the reduced default order
// ranges to the published ones (long-running).
FigureDataset build_figure(const std::string& id, bool full = false,
                           const SolverConfig& solver = {});

// Writes <out_dir>/<id>.{csv,json,svg}; a dataset that does not match or
// cover the figure is rejected with the absent orders listed.
void emit_figure(const FigureDataset& data, const std::string& id, const std::string& out_dir,
                 const std::vector<std::string>& formats);

// Per-order closure comparison: absolute error of the zero-closure
// approximant against the exact value versus the asymptotic-closure one.
struct ClosureComparison {
  int order;
  double zero_error;
  double asym_error;
};
std::vector<ClosureComparison> closure_compare(const TheorySpec& theory, int lo, int hi,
                                               const SolverConfig& solver = {});

}  // namespace ds0
