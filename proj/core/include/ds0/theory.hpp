#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ds0/rational.hpp"

namespace ds0 {

// One zero-dimensional model: interaction L = (coupling/power) * phi^power,
// optional parity symmetry (all odd Green's functions vanish), and a default
// integration-contour ray pair for the exact theory. Angles are stored as
// rational multiples of pi so sector membership stays exact.
struct TheorySpec {
  std::string name;
  int power = 4;
  GaussianRational coupling{1};
  bool parity_symmetric = false;
  std::pair<Rat, Rat> sector_pair{Rat(1), Rat(0)};  // (incoming, outgoing) / pi

  // Unknowns never eliminated by forward substitution: G_1..G_{power-2},
  // reduced to the even ones under parity.
  std::vector<int> seeds() const;
  int seed_count() const { return power - 2; }
  int effective_seed_count() const { return static_cast<int>(seeds().size()); }

  bool operator==(const TheorySpec& o) const { return name == o.name; }

  static TheorySpec builtin(const std::string& name);
  static const std::vector<std::string>& builtin_names();
  // Gaussian reference theory (power 2); used for sanity tests only.
  static TheorySpec free_theory();
};

// Named Stokes-sector ray pairs for a theory ("23", "lower", "rot_plus", ...).
struct SectorPair {
  std::string name;
  Rat left_over_pi, right_over_pi;
};

const std::vector<SectorPair>& sector_pairs(const TheorySpec& theory);
SectorPair sector_pair_named(const TheorySpec& theory, const std::string& name);

}  // namespace ds0
