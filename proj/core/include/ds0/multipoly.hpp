#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ds0/monomial.hpp"
#include "ds0/rational.hpp"

namespace ds0 {

// Multivariate polynomial in the Green's-function symbols over the Gaussian
// rationals. The term map keeps no zero coefficients, so equal polynomials
// have identical representations.
class MultiPoly {
 public:
  using TermMap = std::map<Monomial, GaussianRational>;

  MultiPoly() = default;

  static MultiPoly zero() { return {}; }
  static MultiPoly constant(GaussianRational c);
  static MultiPoly one() { return constant(GaussianRational(1)); }
  static MultiPoly green(int index, int exp = 1);
  static MultiPoly term(Monomial m, GaussianRational c);

  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  GaussianRational coefficient(const Monomial& m) const;
  // Indices appearing with nonzero exponent anywhere in the polynomial.
  std::set<int> indices() const;
  int max_index() const;
  long max_weighted_degree() const;
  int total_degree() const;
  int degree_in(int index) const;
  bool contains_index(int index) const;

  MultiPoly operator-() const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator-=(const MultiPoly& o);
  friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
  friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  MultiPoly& scale(const GaussianRational& c);

  friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

  MultiPoly partial_derivative(int index) const;

  // Dense ascending coefficient list of a polynomial in the single variable
  // G_index (the polynomial must contain no other index).
  std::vector<GaussianRational> univariate_coefficients(int index) const;

  // Canonical text form: terms in descending monomial order, "G6 + 12*G2*G4".
  std::string str() const;

  void add_term(const Monomial& m, const GaussianRational& c);

 private:
  TermMap terms_;
};

// d/dJ via the shift rule dG_n/dJ = G_{n+1}, applied with the product rule.
MultiPoly j_derivative(const MultiPoly& p);

// Replaces every occurrence of G_index. The replacement may only involve
// lower indices (acyclicity); violations throw ContractError.
MultiPoly substitute(const MultiPoly& p, int index, const MultiPoly& replacement);

// Simultaneous substitution of several indices; the same acyclicity rule
// applies to each replacement. Indices absent from the map stay symbolic.
MultiPoly substitute_many(const MultiPoly& p, const std::map<int, const MultiPoly*>& repl);

// Complete Bell polynomial B_k(G_1..G_k): the k-th raw moment written in
// connected Green's functions. B_0 = 1 by convention; negative k rejected.
MultiPoly complete_bell(int k);

}  // namespace ds0
