#pragma once

#include <map>
#include <string>
#include <vector>

#include "ds0/solver.hpp"

namespace ds0::detail {

// Homotopy continuation over the seed unknowns; symbols listed in `values`
// are folded numerically into the coefficients during conversion.
RootSet solve_system_with_values(const std::vector<MultiPoly>& equations,
                                 const std::vector<int>& unknowns,
                                 const std::map<int, BigComplex>& values, const SolverConfig& cfg);

void merge_clusters(std::vector<Root>& roots, double merge_tol, std::vector<std::string>& notes);

}  // namespace ds0::detail
