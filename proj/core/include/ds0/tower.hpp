#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ds0/multipoly.hpp"
#include "ds0/numeric.hpp"
#include "ds0/theory.hpp"

namespace ds0 {

// One equation of the tower, stored as eq == 0 with the top Green's function
// appearing linearly with coefficient one: eq = G_top + lower-order terms.
struct TowerEntry {
  int top = 0;
  MultiPoly eq;
  // Conventional right-hand side G_top = rhs, i.e. rhs = G_top - eq.
  MultiPoly rhs() const { return MultiPoly::green(top) - eq; }
};

struct DsTower {
  TheorySpec theory;
  std::vector<TowerEntry> entries;  // ascending top index

  int max_top() const { return entries.empty() ? 0 : entries.back().top; }
  const TowerEntry* entry_for_top(int top) const;
};

// The first `count` nontrivial equations, obtained by source-differentiating
// the master relation coupling * B_{power-1}(G_1..G_{power-1}) = J and setting
// J = 0. Parity theories drop the identically trivial odd equations.
DsTower generate_tower(const TheorySpec& theory, int count);

// Entries up to and including top index `top` (at least one entry).
DsTower generate_tower_to_top(const TheorySpec& theory, int top);

// Truncation orders follow the published figure labels: for parity theories
// order n refers to the polynomial P_n, i.e. top index 2n; for the others the
// order is the top Green's index itself.
int top_index_for_order(const TheorySpec& theory, int order);
int min_order(const TheorySpec& theory);

// How the Green's functions left undetermined by a truncation are assigned.
struct ClosureScheme {
  enum class Kind { zero, asymptotic, exact } kind = Kind::zero;
  // Value assigned to a closed-off G_n; required for non-zero closures.
  std::function<BigComplex(int)> value;

  static ClosureScheme zero_closure() { return {}; }
  static ClosureScheme with_values(Kind k, std::function<BigComplex(int)> v);
  std::string name() const;
};

// A closed, square polynomial system in the seed Green's functions. The
// closed-off top indices stay symbolic in `equations`; their numeric values
// live in `closure_values` (all zero under zero closure) and are substituted
// when the system is handed to a solver.
struct TruncatedSystem {
  TheorySpec theory;
  int order = 0;
  std::string closure = "zero";
  std::vector<int> unknowns;     // effective seeds
  std::vector<int> closed_tops;  // indices receiving closure values
  std::vector<MultiPoly> equations;
  std::map<int, BigComplex> closure_values;

  bool zero_closure() const { return closure == "zero"; }
};

TruncatedSystem truncate(const DsTower& tower, int order, const ClosureScheme& closure);

// Monic univariate polynomial whose zeros are the zero-closure solutions at
// the given order. Only for theories with a single effective seed.
MultiPoly eliminate_univariate(const DsTower& tower, int order);

// Exact expressions of the non-seed Green's functions in the seeds, for all
// tops <= limit (forward substitution up the tower).
std::map<int, MultiPoly> seed_expressions(const DsTower& tower, int limit);

// Numeric forward substitution: given values for the seeds, returns G_k for
// every k up to the tower's top (index 0 of the result is G_1; entries for
// parity-suppressed odd indices are zero).
std::vector<BigComplex> higher_greens_from_seed(const DsTower& tower,
                                                const std::map<int, BigComplex>& seed_values,
                                                unsigned bits = 256);

}  // namespace ds0
