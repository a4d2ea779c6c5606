#include <doctest.h>

#include "ds0/d1.hpp"
#include "ds0/errors.hpp"

using namespace ds0;

TEST_SUITE_BEGIN("d1");

TEST_CASE("hermitian leading mass: (3/2)^(1/3), 5.2 percent high") {
  auto res = d1_leading_mass("hermitian");
  CHECK(std::abs(static_cast<double>(res.mass) - 1.1447142425533319) < 1e-12);
  CHECK(std::abs(static_cast<double>(res.percent_error) - 5.2) < 0.1);
  // M^2 = 3 G_2(0) and G_2(0) = 1/(2M) hold exactly
  CHECK(static_cast<double>(bmp::abs(res.mass * res.mass - 3 * res.g2_zero)) < 1e-150);
  CHECK(static_cast<double>(bmp::abs(res.g2_zero * 2 * res.mass - 1)) < 1e-150);
}

TEST_CASE("pt leading mass: 3^(1/3), 19.7 percent low") {
  auto res = d1_leading_mass("pt");
  CHECK(std::abs(static_cast<double>(res.mass) - 1.4422495703074084) < 1e-12);
  CHECK(std::abs(static_cast<double>(res.percent_error) + 19.7) < 0.1);
  REQUIRE(res.g1.has_value());
  // back-substitution of the three defining equations
  BigComplex g1 = *res.g1;
  BigComplex lhs1 = g1 * (BigComplex{3 * res.g2_zero, BigReal(0)}) + g1 * g1 * g1;
  CHECK(static_cast<double>(abs(lhs1)) < 1e-150);
  BigComplex m2{res.mass * res.mass, BigReal(0)};
  BigComplex rhs2 = BigComplex{BigReal(-3), BigReal(0)} * (g1 * g1 + BigComplex{res.g2_zero, BigReal(0)});
  CHECK(static_cast<double>(abs(m2 - rhs2)) < 1e-150);
  CHECK(static_cast<double>(bmp::abs(res.g2_zero * 2 * res.mass - 1)) < 1e-150);
}

TEST_CASE("unknown tag rejected") { CHECK_THROWS_AS(d1_leading_mass("quartic"), ContractError); }

TEST_SUITE_END();
