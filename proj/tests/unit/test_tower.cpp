#include <doctest.h>

#include <set>

#include "ds0/tower.hpp"

using namespace ds0;

namespace {

MultiPoly G(int i, int e = 1) { return MultiPoly::green(i, e); }
MultiPoly C(long num, long den = 1) { return MultiPoly::constant(make_rat(num, den)); }
MultiPoly Ci() { return MultiPoly::constant(GaussianRational::imaginary_unit()); }

MultiPoly scaled(MultiPoly p, long c) { return p.scale(GaussianRational(c)); }

}  // namespace

TEST_SUITE_BEGIN("tower");

TEST_CASE("hermitian quartic tower reproduces the printed equations") {
  auto tower = generate_tower(TheorySpec::builtin("hermitian_quartic"), 4);
  REQUIRE(tower.entries.size() == 4);
  CHECK(tower.entries[0].top == 4);
  CHECK(tower.entries[0].rhs() == scaled(G(2, 2), -3) + C(1));

  CHECK(tower.entries[1].top == 6);
  CHECK(tower.entries[1].rhs() == scaled(G(2) * G(4), -12) + scaled(G(2, 3), -6));

  CHECK(tower.entries[2].top == 8);
  CHECK(tower.entries[2].rhs() ==
        scaled(G(2) * G(6), -18) + scaled(G(4, 2), -30) + scaled(G(2, 2) * G(4), -60));

  CHECK(tower.entries[3].top == 10);
  CHECK(tower.entries[3].rhs() == scaled(G(2) * G(8), -24) + scaled(G(4) * G(6), -168) +
                                      scaled(G(2, 2) * G(6), -126) + scaled(G(2) * G(4, 2), -420));
}

TEST_CASE("pt cubic tower reproduces the printed equations") {
  auto tower = generate_tower(TheorySpec::builtin("pt_cubic"), 4);
  REQUIRE(tower.entries.size() == 4);
  CHECK(tower.entries[0].top == 2);
  CHECK(tower.entries[0].rhs() == scaled(G(1, 2), -1));
  CHECK(tower.entries[1].top == 3);
  CHECK(tower.entries[1].rhs() == scaled(G(1) * G(2), -2) - Ci());
  CHECK(tower.entries[2].top == 4);
  CHECK(tower.entries[2].rhs() == scaled(G(2, 2), -2) + scaled(G(1) * G(3), -2));
  CHECK(tower.entries[3].top == 5);
  CHECK(tower.entries[3].rhs() == scaled(G(2) * G(3), -6) + scaled(G(1) * G(4), -2));
}

TEST_CASE("pt quartic tower reproduces the printed equations") {
  auto tower = generate_tower(TheorySpec::builtin("pt_quartic"), 3);
  REQUIRE(tower.entries.size() == 3);
  CHECK(tower.entries[0].top == 3);
  CHECK(tower.entries[0].rhs() == scaled(G(1, 3), -1) + scaled(G(1) * G(2), -3));
  CHECK(tower.entries[1].top == 4);
  CHECK(tower.entries[1].rhs() == scaled(G(1) * G(3), -3) + scaled(G(2, 2), -3) +
                                      scaled(G(1, 2) * G(2), -3) + C(-1));
  CHECK(tower.entries[2].top == 5);
  CHECK(tower.entries[2].rhs() == scaled(G(1) * G(4), -3) + scaled(G(2) * G(3), -9) +
                                      scaled(G(1, 2) * G(3), -3) + scaled(G(1) * G(2, 2), -6));
}

TEST_CASE("elimination reproduces the monic polynomials including 193/1890") {
  auto tower = generate_tower_to_top(TheorySpec::builtin("hermitian_quartic"), 10);
  auto x = [](int e) { return G(2, e); };

  CHECK(eliminate_univariate(tower, 2) == x(2) - C(1, 3));
  CHECK(eliminate_univariate(tower, 3) == x(3) - C(2, 5) * x(1));
  CHECK(eliminate_univariate(tower, 4) == x(4) - C(8, 15) * x(2) + C(1, 21));
  CHECK(eliminate_univariate(tower, 5) == x(5) - C(2, 3) * x(3) + C(193, 1890) * x(1));
}

TEST_CASE("cubic elimination gives polynomials in x^3 apart from a root at zero") {
  auto tower = generate_tower_to_top(TheorySpec::builtin("pt_cubic"), 12);
  // Leading truncation: G_3 closed at order 3 leaves the monic image of
  // G_1^3 = i/2.
  MultiPoly p3 = eliminate_univariate(tower, 3);
  CHECK(p3 == G(1, 3) - MultiPoly::constant(GaussianRational(Rat(0), make_rat(1, 2))));
  for (int order = 2; order <= 12; ++order) {
    MultiPoly p = eliminate_univariate(tower, order);
    int low = -1;
    for (const auto& [m, c] : p.terms()) {
      int e = m.exponent(1);
      if (low == -1) low = e;
      CHECK((e - low) % 3 == 0);
    }
  }
}

TEST_CASE("eliminate_univariate rejects multi-seed theories") {
  auto tower = generate_tower_to_top(TheorySpec::builtin("pt_quartic"), 8);
  CHECK_THROWS_AS(eliminate_univariate(tower, 6), ContractError);
}

TEST_CASE("underdetermination bookkeeping: n equations carry n + s unknowns") {
  for (const auto& name : TheorySpec::builtin_names()) {
    auto theory = TheorySpec::builtin(name);
    auto tower = generate_tower(theory, 9);
    std::set<int> unknowns;
    int n = 0;
    for (const auto& e : tower.entries) {
      ++n;
      for (int i : e.eq.indices()) unknowns.insert(i);
      CHECK(static_cast<int>(unknowns.size()) == n + theory.effective_seed_count());
    }
  }
}

TEST_CASE("tower entries are monic in their top index and bounded by it") {
  for (const auto& name : TheorySpec::builtin_names()) {
    auto tower = generate_tower(TheorySpec::builtin(name), 8);
    for (const auto& e : tower.entries) {
      CHECK(e.eq.coefficient(Monomial::green(e.top)) == GaussianRational(1));
      CHECK(e.eq.max_index() == e.top);
    }
  }
}

TEST_CASE("parity theories contain only even indices") {
  for (const auto& name : {"hermitian_quartic", "hermitian_sextic"}) {
    auto tower = generate_tower(TheorySpec::builtin(name), 8);
    for (const auto& e : tower.entries) {
      CHECK(e.top % 2 == 0);
      for (int i : e.eq.indices()) CHECK(i % 2 == 0);
    }
  }
}

TEST_CASE("sextic first equation and truncation unknowns") {
  auto theory = TheorySpec::builtin("hermitian_sextic");
  auto tower = generate_tower_to_top(theory, 12);
  CHECK(tower.entries[0].top == 6);
  CHECK(tower.entries[0].rhs() ==
        scaled(G(2) * G(4), -15) + scaled(G(2, 3), -15) + C(1));
  auto sys = truncate(tower, 5, ClosureScheme::zero_closure());
  CHECK(sys.unknowns == std::vector<int>{2, 4});
  CHECK(sys.closed_tops == std::vector<int>{8, 10});
  CHECK(sys.equations.size() == 2);
  for (const auto& eq : sys.equations)
    for (int i : eq.indices()) CHECK((i == 2 || i == 4));
}

TEST_CASE("pt quartic leading truncation is the printed two-equation system") {
  auto theory = TheorySpec::builtin("pt_quartic");
  auto tower = generate_tower_to_top(theory, 6);
  auto sys = truncate(tower, 4, ClosureScheme::zero_closure());
  CHECK(sys.unknowns == std::vector<int>{1, 2});
  CHECK(sys.closed_tops == std::vector<int>{3, 4});
  REQUIRE(sys.equations.size() == 2);
  CHECK(sys.equations[0] == G(1, 3) + scaled(G(1) * G(2), 3));
  CHECK(sys.equations[1] == scaled(G(2, 2), 3) + scaled(G(1, 2) * G(2), 3) + C(1));
}

TEST_CASE("free theory: all connected Green's functions beyond G_2 vanish") {
  auto tower = generate_tower(TheorySpec::free_theory(), 10);
  auto values = higher_greens_from_seed(tower, {});
  REQUIRE(values.size() >= 8);
  CHECK(values[0].re == 0);
  CHECK(values[1].re == 1);
  CHECK(values[1].im == 0);
  for (std::size_t k = 2; k < values.size(); ++k) {
    CHECK(values[k].re == 0);
    CHECK(values[k].im == 0);
  }
}

TEST_CASE("cubic compact form: scaled cumulants satisfy the quadratic recursion") {
  auto theory = TheorySpec::builtin("pt_cubic");
  auto tower = generate_tower_to_top(theory, 20);
  // The identity is polynomial in the seed, so any seed value checks it.
  std::map<int, BigComplex> seed{{1, BigComplex{BigReal("0.3"), BigReal("-0.7")}}};
  auto greens = higher_greens_from_seed(tower, seed, 256);
  // g_p = -i^p G_p / (p-1)!
  auto g = [&](int p) {
    BigComplex ip{BigReal(0), BigReal(1)};
    ip = pow_int(ip, p);
    BigComplex v = greens[static_cast<std::size_t>(p - 1)];
    BigComplex num = BigComplex{BigReal(-1), BigReal(0)} * ip * v;
    return num / BigComplex{BigReal(factorial(static_cast<unsigned long>(p - 1)).str().c_str()),
                            BigReal(0)};
  };
  for (int p = 2; p <= 20; ++p) {
    BigComplex sum{};
    for (int k = 1; k <= p - 1; ++k) sum += g(k) * g(p - k);
    sum /= BigComplex{BigReal(p - 1), BigReal(0)};
    if (p == 3) sum += BigComplex{BigReal(1) / 2, BigReal(0)};
    BigComplex diff = g(p) - sum;
    CHECK(static_cast<double>(abs(diff)) < 1e-60);
  }
}

TEST_CASE("truncate validates orders and closure schemes") {
  auto theory = TheorySpec::builtin("pt_cubic");
  auto tower = generate_tower_to_top(theory, 8);
  CHECK_THROWS_AS(truncate(tower, 1, ClosureScheme::zero_closure()), ContractError);
  CHECK_THROWS_AS(truncate(tower, 99, ClosureScheme::zero_closure()), ContractError);
  CHECK_THROWS_AS(
      ClosureScheme::with_values(ClosureScheme::Kind::asymptotic, nullptr),
      ContractError);
  auto sys = truncate(tower, 5, ClosureScheme::zero_closure());
  CHECK(sys.unknowns == std::vector<int>{1});
  CHECK(sys.closed_tops == std::vector<int>{5});
  CHECK(sys.equations.size() == 1);
}

TEST_CASE("generate_tower enforces a resource budget") {
  CHECK_THROWS_AS(generate_tower_to_top(TheorySpec::builtin("hermitian_sextic"), 4000),
                  ResourceError);
}

TEST_SUITE_END();
