#include "ds0/monomial.hpp"

#include <algorithm>

#include "ds0/errors.hpp"

namespace ds0 {

Monomial Monomial::green(int index, int exp) {
  if (index < 1) throw ContractError("Monomial: Green's index must be >= 1");
  if (exp < 0) throw ContractError("Monomial: negative exponent");
  Monomial m;
  if (exp > 0) m.factors_.push_back({index, exp});
  return m;
}

int Monomial::exponent(int index) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), index,
                             [](const Factor& f, int i) { return f.first < i; });
  return (it != factors_.end() && it->first == index) ? it->second : 0;
}

int Monomial::total_degree() const {
  int d = 0;
  for (const auto& [i, e] : factors_) d += e;
  return d;
}

long Monomial::weighted_degree() const {
  long d = 0;
  for (const auto& [i, e] : factors_) d += static_cast<long>(i) * e;
  return d;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  r.factors_.reserve(factors_.size() + o.factors_.size());
  auto a = factors_.begin(), b = o.factors_.begin();
  while (a != factors_.end() && b != o.factors_.end()) {
    if (a->first < b->first)
      r.factors_.push_back(*a++);
    else if (b->first < a->first)
      r.factors_.push_back(*b++);
    else {
      r.factors_.push_back({a->first, a->second + b->second});
      ++a, ++b;
    }
  }
  r.factors_.insert(r.factors_.end(), a, factors_.end());
  r.factors_.insert(r.factors_.end(), b, o.factors_.end());
  return r;
}

Monomial Monomial::without(int index, int exp) const {
  Monomial r;
  r.factors_.reserve(factors_.size());
  for (const auto& f : factors_) {
    if (f.first != index) {
      r.factors_.push_back(f);
    } else {
      if (f.second < exp) throw ContractError("Monomial::without: exponent underflow");
      if (f.second > exp) r.factors_.push_back({f.first, f.second - exp});
    }
  }
  return r;
}

std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
  long wa = a.weighted_degree(), wb = b.weighted_degree();
  if (wa != wb) return wa <=> wb;
  auto ia = a.factors_.rbegin(), ib = b.factors_.rbegin();
  for (; ia != a.factors_.rend() && ib != b.factors_.rend(); ++ia, ++ib) {
    if (ia->first != ib->first) return ia->first <=> ib->first;
    if (ia->second != ib->second) return ia->second <=> ib->second;
  }
  if (ia != a.factors_.rend()) return std::strong_ordering::greater;
  if (ib != b.factors_.rend()) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::string Monomial::str() const {
  if (factors_.empty()) return "1";
  std::string s;
  for (const auto& [i, e] : factors_) {
    if (!s.empty()) s += "*";
    s += "G" + std::to_string(i);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace ds0
