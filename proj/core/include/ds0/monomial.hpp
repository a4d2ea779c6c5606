#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace ds0 {

// Product of Green's-function symbols G_n, stored as (index, exponent)
// pairs sorted by index. No zero exponents; the empty list is the constant
// monomial. Weighted degree sums n*exponent(n), the grading that tracks how
// many source derivatives produced a term.
class Monomial {
 public:
  using Factor = std::pair<int, int>;

  Monomial() = default;

  static Monomial one() { return {}; }
  static Monomial green(int index, int exp = 1);

  const std::vector<Factor>& factors() const { return factors_; }
  bool is_constant() const { return factors_.empty(); }
  int exponent(int index) const;
  bool contains(int index) const { return exponent(index) != 0; }
  int total_degree() const;
  long weighted_degree() const;
  int max_index() const { return factors_.empty() ? 0 : factors_.back().first; }

  Monomial operator*(const Monomial& o) const;

  // Divides out G_index^exp; caller guarantees divisibility.
  Monomial without(int index, int exp) const;

  // Graded order: weighted degree first, ties broken reverse-lexicographically
  // from the highest index (so G_2*G_6 > G_4^2 > G_2^2*G_4). This is the
  // canonical display order, matching how the towers are conventionally
  // written.
  friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }

  std::string str() const;  // "G1^2*G2", "1" for the constant monomial

 private:
  std::vector<Factor> factors_;
};

}  // namespace ds0
