#include <doctest.h>

#include <random>

#include "ds0/oracle.hpp"
#include "ds0/solver.hpp"
#include "ds0/tower.hpp"

using namespace ds0;

namespace {

BigComplex bc(double re, double im = 0) { return {BigReal(re), BigReal(im)}; }
double dabs(const BigComplex& z) { return static_cast<double>(abs(z)); }

RootSet solve_order(const std::string& theory_name, int order,
                    const SolverConfig& cfg = {}) {
  auto theory = TheorySpec::builtin(theory_name);
  auto tower = generate_tower_to_top(theory, top_index_for_order(theory, order));
  auto sys = truncate(tower, order, ClosureScheme::zero_closure());
  return solve_truncated(sys, cfg);
}

}  // namespace

TEST_SUITE_BEGIN("solver");

TEST_CASE("planted synthetic roots are recovered to 1e-20 at 256 bits") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> coord(-2.0, 2.0);
  std::uniform_int_distribution<int> degree(1, 6);
  for (int trial = 0; trial < 12; ++trial) {
    int deg = degree(rng);
    std::vector<BigComplex> planted;
    for (int k = 0; k < deg; ++k) {
      BigComplex z = bc(coord(rng), coord(rng));
      bool close = false;  // keep the planted roots separated
      for (const auto& p : planted) close = close || dabs(p - z) < 0.2;
      if (close) {
        --k;
        continue;
      }
      planted.push_back(z);
    }
    std::vector<BigComplex> coeffs{bc(1)};
    for (const auto& r : planted) {
      std::vector<BigComplex> next(coeffs.size() + 1);
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        next[k + 1] += coeffs[k];
        next[k] -= coeffs[k] * r;
      }
      coeffs = std::move(next);
    }
    RootSet rs = roots_univariate(coeffs, SolverConfig{});
    REQUIRE(rs.roots.size() == planted.size());
    for (const auto& p : planted) {
      const Root* nearest = nearest_root(rs, p);
      REQUIRE(nearest != nullptr);
      CHECK(dabs(nearest->value() - p) < 1e-20);
      CHECK(static_cast<double>(nearest->residual) < 1e-40);
    }
  }
}

TEST_CASE("P_2 gives the leading quartic approximation 1/sqrt(3)") {
  RootSet rs = solve_order("hermitian_quartic", 2);
  REQUIRE(rs.roots.size() == 2);
  RootSet sel = select_physical(rs, Selection::largest_real);
  REQUIRE(sel.roots.size() == 1);
  CHECK(sel.roots[0].tag == RootTag::largest_real);
  CHECK(std::abs(static_cast<double>(sel.roots[0].value().re) - 0.57735026918962576) < 1e-12);
}

TEST_CASE("cubic leading truncation: PT root of the monic cube") {
  RootSet rs = solve_order("pt_cubic", 3);
  REQUIRE(rs.roots.size() == 3);
  RootSet sel = select_physical(rs, Selection::pt_axis_negative_imaginary);
  REQUIRE(sel.roots.size() == 1);
  CHECK(sel.roots[0].tag == RootTag::pt_axis);
  CHECK(dabs(sel.roots[0].value() - bc(0, -0.79370052598409973)) < 1e-12);
}

TEST_CASE("cubic nearest-root regression at low orders") {
  const BigComplex exact = closed_form_reference(TheorySpec::builtin("pt_cubic"), "23");
  struct Expect {
    int order;
    double im;
  };
  for (auto [order, im] : {Expect{4, -0.693361}, Expect{5, -0.746900}, Expect{6, -0.712564}}) {
    RootSet rs = solve_order("pt_cubic", order);
    const Root* best = nearest_root(rs, exact);
    REQUIRE(best != nullptr);
    CHECK(std::abs(static_cast<double>(best->value().im) - im) < 1e-5);
    CHECK(std::abs(static_cast<double>(best->value().re)) < 1e-30);
  }
}

TEST_CASE("cubic order 10: nearest-to-exact roots are the symmetric pair") {
  RootSet rs = solve_order("pt_cubic", 10);
  const BigComplex exact = closed_form_reference(TheorySpec::builtin("pt_cubic"), "23");
  auto pair = nearest_group(rs, exact);
  REQUIRE(pair.size() == 2);
  for (const Root* r : pair) {
    CHECK(std::abs(static_cast<double>(r->value().im) + 0.717367) < 1e-5);
    CHECK(std::abs(std::abs(static_cast<double>(r->value().re)) - 0.016050) < 1e-5);
  }
  // an exactly-on-axis root exists at this order, so axis selection keeps it
  RootSet sel = select_physical(rs, Selection::pt_axis_negative_imaginary);
  REQUIRE(!sel.roots.empty());
  for (const auto& r : sel.roots) CHECK(r.tag == RootTag::pt_axis);
}

TEST_CASE("off-axis fallback engages when nothing lies on the axis") {
  // roots at +-0.3 - i straddle the negative imaginary axis
  std::vector<BigComplex> coeffs = {bc(-1.09, 0.0), bc(0, 2.0), bc(1.0)};
  RootSet rs = roots_univariate(coeffs, SolverConfig{});
  RootSet sel = select_physical(rs, Selection::pt_axis_negative_imaginary);
  REQUIRE(sel.roots.size() == 2);
  for (const auto& r : sel.roots) CHECK(r.tag == RootTag::off_axis);
  CHECK(!sel.diagnostics.empty());
}

TEST_CASE("zero roots are stripped exactly with multiplicity") {
  // order 2 cubic truncation is G_1^2 = 0
  RootSet rs = solve_order("pt_cubic", 2);
  REQUIRE(rs.roots.size() == 1);
  CHECK(rs.roots[0].multiplicity == 2);
  CHECK(rs.roots[0].value().re == 0);
  CHECK(rs.roots[0].value().im == 0);
  CHECK(rs.roots[0].residual == 0);
}

TEST_CASE("residual guarantee holds for every reported root") {
  for (int order : {7, 12, 19}) {
    RootSet rs = solve_order("pt_cubic", order);
    for (const auto& r : rs.roots) {
      CHECK(r.converged);
      CHECK(r.residual <= BigReal(1e-40));
    }
  }
}

TEST_CASE("degenerate linear system has exactly one root") {
  // x - 1/2 = 0, y + i = 0 in symbols G_1, G_2
  MultiPoly e1 = MultiPoly::green(1) - MultiPoly::constant(make_rat(1, 2));
  MultiPoly e2 = MultiPoly::green(2) + MultiPoly::constant(GaussianRational::imaginary_unit());
  RootSet rs = solve_system({e1, e2}, {1, 2});
  REQUIRE(rs.roots.size() == 1);
  CHECK(rs.paths_tracked == 1);
  CHECK(dabs(rs.roots[0].values[0] - bc(0.5)) < 1e-40);
  CHECK(dabs(rs.roots[0].values[1] - bc(0, -1)) < 1e-40);
}

TEST_CASE("pt quartic leading order finds the PT root") {
  RootSet rs = solve_order("pt_quartic", 4);
  CHECK(rs.paths_tracked == 9);
  RootSet sel = select_physical(rs, Selection::pt_axis_negative_imaginary);
  bool found = false;
  for (const auto& r : sel.roots)
    found = found || std::abs(static_cast<double>(r.value().im) + 1.10668192) < 1e-6;
  CHECK(found);
  // G_2 at the PT root satisfies G_2 = -G_1^2/3 = sqrt(3/2)/3
  const Root* best = nearest_root(sel, bc(0, -1.10668192));
  REQUIRE(best != nullptr);
  CHECK(std::abs(static_cast<double>(best->values[1].re) - std::sqrt(1.5) / 3.0) < 1e-8);
}

TEST_CASE("cubic root clouds have threefold symmetry") {
  for (int order : {9, 14}) {
    RootSet rs = solve_order("pt_cubic", order);
    const BigComplex omega = with_precision(256, [&](auto) {
      return BigComplex{BigReal(-0.5), sqrt(BigComplex{BigReal(3)}).re / 2};
    });
    for (const auto& r : rs.roots) {
      BigComplex rotated = r.value() * omega;
      const Root* partner = nearest_root(rs, rotated);
      REQUIRE(partner != nullptr);
      CHECK(dabs(partner->value() - rotated) < 1e-25);
    }
  }
}

TEST_CASE("pt quartic root clouds have fourfold symmetry") {
  RootSet rs = solve_order("pt_quartic", 8);
  const BigComplex i_unit = bc(0, 1);
  for (const auto& r : rs.roots) {
    if (!r.converged) continue;
    BigComplex rotated = r.value() * i_unit;
    const Root* partner = nearest_root(rs, rotated);
    REQUIRE(partner != nullptr);
    CHECK(dabs(partner->value() - rotated) < 1e-20);
  }
}

TEST_CASE("identical configuration reproduces identical output") {
  RootSet a = solve_order("pt_cubic", 11);
  RootSet b = solve_order("pt_cubic", 11);
  CHECK(a.csv() == b.csv());
  CHECK(a.json() == b.json());
  RootSet c = solve_order("pt_quartic", 6);
  RootSet d = solve_order("pt_quartic", 6);
  CHECK(c.csv() == d.csv());
}

TEST_CASE("doubling the working precision moves no root beyond the polish tolerance") {
  SolverConfig lo;
  lo.precision_bits = 256;
  lo.polish_tol = 1e-30;
  SolverConfig hi = lo;
  hi.precision_bits = 512;
  auto theory = TheorySpec::builtin("pt_cubic");
  auto tower = generate_tower_to_top(theory, 100);
  MultiPoly p = eliminate_univariate(tower, 100);
  RootSet a = roots_univariate(p, 1, lo);
  RootSet b = roots_univariate(p, 1, hi);
  REQUIRE(a.roots.size() == b.roots.size());
  for (const auto& r : a.roots) {
    const Root* partner = nearest_root(b, r.value());
    REQUIRE(partner != nullptr);
    BigReal scale = std::max(abs(r.value()), BigReal(1));
    CHECK(abs(partner->value() - r.value()) / scale <= BigReal(1e-30));
  }
}

TEST_CASE("solver rejects empty and oversized systems") {
  CHECK_THROWS_AS(roots_univariate(std::vector<BigComplex>{bc(1)}, SolverConfig{}),
                  ContractError);
  MultiPoly e = MultiPoly::green(1);
  CHECK_THROWS_AS(solve_system({e}, {1}), ContractError);
}

TEST_SUITE_END();
