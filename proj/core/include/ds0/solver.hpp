#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ds0/multipoly.hpp"
#include "ds0/numeric.hpp"
#include "ds0/tower.hpp"

namespace ds0 {

struct SolverConfig {
  unsigned precision_bits = 256;  // raised to 2*degree once degree > 64
  double polish_tol = 1e-40;      // relative backward error accepted per root
  int max_iterations = 600;
  double merge_tol = 1e-12;  // relative width of a root cluster
  double axis_tol = 1e-6;    // PT-axis membership: |Re| <= axis_tol * |z|
  // homotopy step control
  double step_init = 0.05;
  double step_min = 1e-10;
  double corrector_tol = 1e-11;
  unsigned seed = 20250809;  // start-system phase
  int max_newton_polish = 60;
};

enum class RootTag { none, pt_axis, largest_real, off_axis };
std::string tag_name(RootTag tag);

struct Root {
  std::vector<BigComplex> values;  // one component per unknown
  BigReal residual;                // max relative backward error over equations
  RootTag tag = RootTag::none;
  int multiplicity = 1;
  bool converged = true;
  bool singular = false;

  const BigComplex& value(std::size_t component = 0) const { return values[component]; }
};

struct RootSet {
  std::string theory;
  int order = 0;
  std::string closure = "zero";
  std::vector<int> unknowns;  // Green's indices of the components
  std::vector<Root> roots;
  long paths_tracked = 0;  // degree for univariate solves, Bezout count for systems
  long path_failures = 0;
  std::vector<std::string> diagnostics;

  std::string csv() const;   // theory,order,seed_index,re,im,residual,tag
  std::string json() const;  // same content plus bookkeeping
};

// All complex roots of a univariate polynomial: simultaneous Aberth-Ehrlich
// iteration from Newton-polygon start points, Newton polish, exact stripping
// of zero roots, cluster merging. Per-root convergence is always reported.
RootSet roots_univariate(const MultiPoly& poly, int var, const SolverConfig& cfg = {});
RootSet roots_univariate(const std::vector<BigComplex>& coeffs_ascending,
                         const SolverConfig& cfg = {});

// All isolated solutions of a small square polynomial system by total-degree
// homotopy continuation (Euler predictor, Newton corrector), with endpoint
// deduplication and Bezout accounting.
RootSet solve_system(const std::vector<MultiPoly>& equations, const std::vector<int>& unknowns,
                     const SolverConfig& cfg = {});

// Dispatches a closed truncation to the univariate or system solver,
// substituting the closure values.
RootSet solve_truncated(const TruncatedSystem& system, const SolverConfig& cfg = {});

enum class Selection {
  pt_axis_negative_imaginary,  // G_1 on the negative imaginary axis
  positive_real_axis,          // G_2 on the positive real axis
  largest_real,                // maximal positive real root
};

// Filters or tags roots by the physical criterion; an empty selection comes
// back with a diagnostic instead of an error. When no root lies on the PT
// axis the nearest off-axis group is returned, tagged off_axis.
RootSet select_physical(const RootSet& roots, Selection criterion, const SolverConfig& cfg = {});

// Root whose first component is closest to `target`; null when empty.
const Root* nearest_root(const RootSet& roots, const BigComplex& target);

// Every root whose distance to `target` lies within a relative window of the
// minimum; symmetric pairs straddling an axis come back together.
std::vector<const Root*> nearest_group(const RootSet& roots, const BigComplex& target,
                                       double rel_window = 1e-6);

}  // namespace ds0
