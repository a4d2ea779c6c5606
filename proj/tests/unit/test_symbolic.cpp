#include <doctest.h>

#include <map>
#include <random>
#include <vector>

#include "ds0/multipoly.hpp"
#include "ds0/numeric.hpp"

using namespace ds0;

namespace {

// Independent oracle for the complete Bell polynomials: the raw moment as a
// sum over set partitions, each block of size b contributing a factor G_b.
// Partitions are enumerated through restricted-growth strings.
MultiPoly moment_by_partitions(int k) {
  MultiPoly sum;
  if (k == 0) return MultiPoly::one();
  std::vector<int> rgs(static_cast<std::size_t>(k), 0);
  auto emit = [&] {
    int blocks = 0;
    for (int v : rgs) blocks = std::max(blocks, v + 1);
    std::map<int, int> sizes;
    for (int v : rgs) sizes[v]++;
    Monomial m = Monomial::one();
    for (auto& [b, size] : sizes) m = m * Monomial::green(size);
    sum.add_term(m, GaussianRational(1));
  };
  // Iterate all restricted-growth strings: rgs[0] = 0, rgs[i] <= max(prefix)+1.
  std::size_t i = 1;
  if (k == 1) {
    emit();
    return sum;
  }
  while (true) {
    if (i == rgs.size()) {
      emit();
      --i;
      while (i > 0) {
        int mx = 0;
        for (std::size_t j = 0; j < i; ++j) mx = std::max(mx, rgs[j]);
        if (rgs[i] < mx + 1) {
          ++rgs[i];
          break;
        }
        rgs[i] = 0;
        --i;
      }
      if (i == 0) break;
      ++i;
    } else {
      rgs[i] = 0;
      ++i;
    }
  }
  return sum;
}

std::mt19937 rng(20240809);

GaussianRational random_coeff() {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4), im(0, 2);
  Rat re = make_rat(num(rng), den(rng));
  if (im(rng) == 0) return {re, make_rat(num(rng), den(rng))};
  return {re, Rat(0)};
}

MultiPoly random_poly(int max_terms = 5, int max_index = 6, int max_exp = 3) {
  std::uniform_int_distribution<int> terms(0, max_terms), idx(1, max_index), ex(0, max_exp);
  MultiPoly p;
  int n = terms(rng);
  for (int t = 0; t < n; ++t) {
    Monomial m = Monomial::one();
    for (int f = 0; f < 3; ++f) m = m * Monomial::green(idx(rng), ex(rng));
    p.add_term(m, random_coeff());
  }
  return p;
}

MultiPoly G(int i, int e = 1) { return MultiPoly::green(i, e); }

}  // namespace

TEST_SUITE_BEGIN("symbolic");

TEST_CASE("gaussian rational arithmetic is exact and canonical") {
  GaussianRational a{make_rat(1, 3), make_rat(-2, 6)};
  CHECK(a.im == make_rat(-1, 3));
  GaussianRational i = GaussianRational::imaginary_unit();
  CHECK(i * i == GaussianRational(-1));
  GaussianRational z{make_rat(3, 7), make_rat(-5, 11)};
  CHECK(z / z == GaussianRational(1));
  CHECK((z * z.conj()).is_real());
  CHECK(GaussianRational(1) / i == -i);
  CHECK_THROWS_AS(z / GaussianRational(0), ContractError);
  CHECK(GaussianRational{make_rat(-1, 2), Rat(0)}.str() == "-1/2");
  CHECK(GaussianRational{Rat(0), make_rat(193, 1890)}.str() == "193/1890*i");
  CHECK(GaussianRational{make_rat(1, 2), make_rat(-1, 3)}.str() == "(1/2-1/3*i)");
}

TEST_CASE("monomial ordering is graded, ties broken from the highest index") {
  Monomial g26 = Monomial::green(2) * Monomial::green(6);
  Monomial g44 = Monomial::green(4, 2);
  Monomial g224 = Monomial::green(2, 2) * Monomial::green(4);
  CHECK(g26.weighted_degree() == 8);
  CHECK(g26 > g44);
  CHECK(g44 > g224);
  CHECK(Monomial::green(8) > g26);
  CHECK(Monomial::one() < Monomial::green(1));
}

TEST_CASE("poly_add: inverse, cancellation, tower right-hand side") {
  CHECK((G(2) + (-G(2))).is_zero());
  // (x^2 - 1/3) + 1/3 = x^2 with x = G_2
  MultiPoly p = G(2, 2) - MultiPoly::constant(make_rat(1, 3));
  CHECK(p + MultiPoly::constant(make_rat(1, 3)) == G(2, 2));
  MultiPoly rhs = (G(2) * G(4)).scale(GaussianRational(-12)) + G(2, 3).scale(GaussianRational(-6));
  CHECK(rhs.str() == "-12*G2*G4 - 6*G2^3");
}

TEST_CASE("poly_mul: squaring, difference of squares") {
  CHECK(G(1) * G(1) == G(1, 2));
  MultiPoly a = MultiPoly::constant(make_rat(1, 3));
  CHECK((G(2) - a) * (G(2) + a) == G(2, 2) - MultiPoly::constant(make_rat(1, 9)));
  // G_2 + (-1)*G_1^2 is the first cubic equation's content
  MultiPoly e2 = G(2) + G(1, 2).scale(GaussianRational(-1)) * MultiPoly::one();
  CHECK(e2.str() == "G2 - G1^2");
}

TEST_CASE("ring axioms hold on random triples") {
  for (int trial = 0; trial < 40; ++trial) {
    MultiPoly a = random_poly(), b = random_poly(), c = random_poly();
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
  }
}

TEST_CASE("complete Bell polynomials match the spec examples") {
  CHECK(complete_bell(0) == MultiPoly::one());
  CHECK(complete_bell(1) == G(1));
  CHECK(complete_bell(2) == G(2) + G(1, 2));
  CHECK(complete_bell(3) == G(3) + (G(1) * G(2)).scale(GaussianRational(3)) + G(1, 3));
  MultiPoly b4 = G(4) + (G(1) * G(3)).scale(GaussianRational(4)) + G(2, 2).scale(GaussianRational(3)) +
                 (G(1, 2) * G(2)).scale(GaussianRational(6)) + G(1, 4);
  CHECK(complete_bell(4) == b4);
  CHECK_THROWS_AS(complete_bell(-1), ContractError);
}

TEST_CASE("complete Bell equals the set-partition moment expansion") {
  for (int k = 0; k <= 8; ++k) CHECK(complete_bell(k) == moment_by_partitions(k));
}

TEST_CASE("complete Bell is weighted-homogeneous of degree k") {
  for (int k = 1; k <= 12; ++k) {
    const MultiPoly b = complete_bell(k);
    for (const auto& [m, c] : b.terms()) CHECK(m.weighted_degree() == k);
  }
}

TEST_CASE("j_derivative implements the shift rule") {
  CHECK(j_derivative(G(1)) == G(2));
  CHECK(j_derivative(G(1, 3)) == (G(1, 2) * G(2)).scale(GaussianRational(3)));
  MultiPoly d3 = j_derivative(complete_bell(3));
  MultiPoly expect = G(4) + G(2, 2).scale(GaussianRational(3)) +
                     (G(1) * G(3)).scale(GaussianRational(3)) +
                     (G(1, 2) * G(2)).scale(GaussianRational(3));
  CHECK(d3 == expect);
}

TEST_CASE("j_derivative raises weighted degree by one on every monomial") {
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly p = random_poly();
    for (const auto& [m, c] : p.terms()) {
      if (m.is_constant()) continue;
      MultiPoly dm = j_derivative(MultiPoly::term(m, c));
      for (const auto& [m2, c2] : dm.terms())
        CHECK(m2.weighted_degree() == m.weighted_degree() + 1);
    }
  }
}

TEST_CASE("dB_k = B_{k+1} - G_1 B_k") {
  for (int k = 1; k <= 10; ++k)
    CHECK(j_derivative(complete_bell(k)) == complete_bell(k + 1) - G(1) * complete_bell(k));
}

TEST_CASE("substitute: spec examples") {
  // substitute G_4 := -3 G_2^2 + 1 into -12 G_2 G_4 - 6 G_2^3
  MultiPoly g4 = G(2, 2).scale(GaussianRational(-3)) + MultiPoly::one();
  MultiPoly target = (G(2) * G(4)).scale(GaussianRational(-12)) + G(2, 3).scale(GaussianRational(-6));
  MultiPoly out = substitute(target, 4, g4);
  CHECK(out == G(2, 3).scale(GaussianRational(30)) + G(2).scale(GaussianRational(-12)));

  // no-op when the index is absent
  MultiPoly p = random_poly(4, 3, 2);
  CHECK(substitute(p, 9, g4) == p);

  // substitute G_2 := -G_1^2 into -2 G_1 G_2 - i
  GaussianRational i = GaussianRational::imaginary_unit();
  MultiPoly q = (G(1) * G(2)).scale(GaussianRational(-2)) - MultiPoly::constant(i);
  MultiPoly r = substitute(q, 2, G(1, 2).scale(GaussianRational(-1)));
  CHECK(r == G(1, 3).scale(GaussianRational(2)) - MultiPoly::constant(i));

  // cyclic substitution rejected
  CHECK_THROWS_AS(substitute(q, 2, G(3)), ContractError);
  CHECK_THROWS_AS(substitute(q, 2, G(2)), ContractError);
}

TEST_CASE("substitution is a ring homomorphism") {
  for (int trial = 0; trial < 25; ++trial) {
    MultiPoly a = random_poly(4, 5, 2), b = random_poly(4, 5, 2);
    MultiPoly repl = random_poly(3, 3, 2);
    CHECK(substitute(a * b, 4, repl) == substitute(a, 4, repl) * substitute(b, 4, repl));
    CHECK(substitute(a + b, 4, repl) == substitute(a, 4, repl) + substitute(b, 4, repl));
  }
}

TEST_CASE("canonical serialization") {
  CHECK(MultiPoly::zero().str() == "0");
  MultiPoly e = G(6) + (G(2) * G(4)).scale(GaussianRational(12)) + G(2, 3).scale(GaussianRational(6));
  CHECK(e.str() == "G6 + 12*G2*G4 + 6*G2^3");
  GaussianRational i = GaussianRational::imaginary_unit();
  MultiPoly c = G(3) + (G(1) * G(2)).scale(GaussianRational(2)) + MultiPoly::constant(i);
  CHECK(c.str() == "G3 + 2*G1*G2 + i");
  MultiPoly m = G(1, 2).scale(GaussianRational(-1)) + MultiPoly::constant(make_rat(-1, 2));
  CHECK(m.str() == "-G1^2 - 1/2");
}

TEST_CASE("numeric evaluation of polynomials") {
  using C = Cplx<double>;
  MultiPoly p = (G(1) * G(2)).scale(GaussianRational(2)) - MultiPoly::constant(make_rat(1, 2));
  std::map<int, C> vals{{1, C{2.0, 0.0}}, {2, C{0.0, 1.0}}};
  C v = evaluate_poly(p, vals);
  CHECK(v.re == doctest::Approx(-0.5));
  CHECK(v.im == doctest::Approx(4.0));
}

TEST_SUITE_END();
