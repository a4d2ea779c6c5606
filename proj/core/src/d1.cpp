#include "ds0/d1.hpp"

#include "ds0/errors.hpp"

namespace ds0 {

D1LeadingResult d1_leading_mass(const std::string& theory) {
  D1LeadingResult out;
  out.theory = theory;
  const BigReal third = BigReal(1) / 3;
  if (theory == "hermitian") {
    // G_4 -> 0 in -G2'' + M^2 G2 + G4 = delta gives M^2 = 3 G_2(0),
    // G_2(0) = 1/(2M), hence M^3 = 3/2.
    out.mass = bmp::pow(BigReal(3) / 2, third);
    out.g2_zero = BigReal(1) / (2 * out.mass);
    out.reference_gap = BigReal("1.088");  // quoted E_1 - E_0
  } else if (theory == "pt") {
    // 3 G_1 G_2(0) + G_1^3 = 0, M^2 = -3(G_1^2 + G_2(0)), G_2(0) = 1/(2M)
    // give M^3 = 3.
    out.mass = bmp::pow(BigReal(3), third);
    out.g2_zero = BigReal(1) / (2 * out.mass);
    // G_1^2 = -3 G_2(0); the PT branch is negative imaginary
    out.g1 = BigComplex{BigReal(0), -bmp::sqrt(3 * out.g2_zero)};
    out.reference_gap = BigReal("1.796");
  } else {
    throw ContractError("d1_leading_mass: theory must be 'hermitian' or 'pt'");
  }
  out.percent_error = 100 * (out.mass - out.reference_gap) / out.reference_gap;
  return out;
}

}  // namespace ds0
