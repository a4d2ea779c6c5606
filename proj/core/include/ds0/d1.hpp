#pragma once

#include <optional>
#include <string>

#include "ds0/numeric.hpp"

namespace ds0 {

// Leading-order renormalized mass of the one-dimensional theories, from the
// first nontrivial equation of the tower closed at the lowest order.
struct D1LeadingResult {
  std::string theory;          // "hermitian" | "pt"
  BigReal mass;                // M
  BigReal g2_zero;             // G_2(0) = 1/(2M)
  std::optional<BigComplex> g1;  // nonzero only for the PT theory
  BigReal reference_gap;       // quoted E_1 - E_0
  BigReal percent_error;       // 100 (M - reference) / reference
};

D1LeadingResult d1_leading_mass(const std::string& theory);

}  // namespace ds0
