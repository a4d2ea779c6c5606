#pragma once

#include <string>
#include <vector>

#include "ds0/numeric.hpp"
#include "ds0/theory.hpp"

namespace ds0 {

// Integration contour for the exact theory: two rays from the origin to
// complex infinity, each strictly inside a Stokes sector where the integrand
// decays. Angles are rational multiples of pi.
struct ContourSpec {
  TheorySpec theory;
  Rat left_over_pi, right_over_pi;

  static ContourSpec defaults(const TheorySpec& theory);
  static ContourSpec named(const TheorySpec& theory, const std::string& sector);
  ContourSpec perturbed(const Rat& delta_left_over_pi, const Rat& delta_right_over_pi) const;
  std::string key() const;  // cache key
};

// Normalized moments gamma_p / Z of one theory along one contour.
struct MomentTable {
  TheorySpec theory;
  Rat left_over_pi, right_over_pi;
  unsigned bits = 256;
  std::vector<BigComplex> gamma;   // p = 0..max_p, gamma[0] == 1
  std::vector<BigReal> rel_error;  // quadrature level-difference estimate

  int max_p() const { return static_cast<int>(gamma.size()) - 1; }
};

// Doubly-exponential quadrature along the two rays, refined until two
// successive levels agree to the target precision. Rays pointing into a
// growing sector are detected by tail monitoring and raise DivergenceError.
MomentTable compute_moments(const ContourSpec& contour, int max_p, unsigned bits);

// Process-wide cached variant (tables are write-once and grow on demand).
MomentTable moments(const ContourSpec& contour, int max_p, unsigned bits);

BigComplex moment(const ContourSpec& contour, int p, unsigned bits);

// Cumulant recursion G_n = gamma_n - sum_{k<n} C(n-1,k-1) G_k gamma_{n-k}.
// Index 0 of the result is G_1. Optional per-order error estimates track the
// cancellation scale of the recursion.
std::vector<BigComplex> moments_to_connected(const MomentTable& table, int N,
                                             std::vector<BigReal>* rel_error = nullptr);

struct GreensTable {
  std::vector<BigComplex> g;
  std::vector<BigReal> rel_error;
};

// Exact connected Green's functions G_1..G_N on the theory's default
// contour. Working precision is raised to at least 512 bits beyond n = 20,
// where the recursion subtracts nearly cancelling factorially large terms.
GreensTable exact_greens(const TheorySpec& theory, int N, unsigned bits = 256);

// Closed-form ray evaluation of the same moments via Gamma functions:
// each ray contributes Gamma((p+1)/m) / (m mu^{(p+1)/m}) with
// mu = lambda e^{i m theta} / m. Used as the independent cross-check of the
// quadrature and as the source of the exact reference constants.
BigComplex moment_closed_form(const ContourSpec& contour, int p, unsigned bits = 512);

// The paper-quoted exact constant for a named sector pair: G_2 for parity
// theories, G_1 otherwise.
BigComplex closed_form_reference(const TheorySpec& theory, const std::string& sector);
BigComplex closed_form_reference(const TheorySpec& theory);  // default sector

}  // namespace ds0
