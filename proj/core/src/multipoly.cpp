#include "ds0/multipoly.hpp"

#include <algorithm>

#include "ds0/errors.hpp"

namespace ds0 {

MultiPoly MultiPoly::constant(GaussianRational c) {
  MultiPoly p;
  if (!c.is_zero()) p.terms_.emplace(Monomial::one(), std::move(c));
  return p;
}

MultiPoly MultiPoly::green(int index, int exp) {
  MultiPoly p;
  p.terms_.emplace(Monomial::green(index, exp), GaussianRational(1));
  return p;
}

MultiPoly MultiPoly::term(Monomial m, GaussianRational c) {
  MultiPoly p;
  if (!c.is_zero()) p.terms_.emplace(std::move(m), std::move(c));
  return p;
}

GaussianRational MultiPoly::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? GaussianRational() : it->second;
}

std::set<int> MultiPoly::indices() const {
  std::set<int> s;
  for (const auto& [m, c] : terms_)
    for (const auto& [i, e] : m.factors()) s.insert(i);
  return s;
}

int MultiPoly::max_index() const {
  int mx = 0;
  for (const auto& [m, c] : terms_) mx = std::max(mx, m.max_index());
  return mx;
}

long MultiPoly::max_weighted_degree() const {
  return terms_.empty() ? 0 : terms_.rbegin()->first.weighted_degree();
}

int MultiPoly::total_degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.total_degree());
  return d;
}

int MultiPoly::degree_in(int index) const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.exponent(index));
  return d;
}

bool MultiPoly::contains_index(int index) const {
  for (const auto& [m, c] : terms_)
    if (m.contains(index)) return true;
  return false;
}

void MultiPoly::add_term(const Monomial& m, const GaussianRational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
  MultiPoly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma * mb, ca * cb);
  return r;
}

MultiPoly& MultiPoly::scale(const GaussianRational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

MultiPoly MultiPoly::partial_derivative(int index) const {
  MultiPoly r;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(index);
    if (e == 0) continue;
    r.add_term(m.without(index, 1), c * GaussianRational(e));
  }
  return r;
}

std::vector<GaussianRational> MultiPoly::univariate_coefficients(int index) const {
  std::vector<GaussianRational> coeffs(static_cast<std::size_t>(degree_in(index)) + 1);
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(index);
    if (m.total_degree() != e)
      throw ContractError("univariate_coefficients: polynomial is not univariate in G" +
                          std::to_string(index));
    coeffs[static_cast<std::size_t>(e)] += c;
  }
  return coeffs;
}

std::string MultiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string piece;
    if (m.is_constant()) {
      piece = c.str();
    } else if (c.is_one()) {
      piece = m.str();
    } else if (c == GaussianRational(-1)) {
      piece = "-" + m.str();
    } else {
      piece = c.str() + "*" + m.str();
    }
    if (s.empty()) {
      s = piece;
    } else if (piece.front() == '-') {
      s += " - " + piece.substr(1);
    } else {
      s += " + " + piece;
    }
  }
  return s;
}

MultiPoly j_derivative(const MultiPoly& p) {
  MultiPoly r;
  for (const auto& [m, c] : p.terms()) {
    for (const auto& [i, e] : m.factors()) {
      Monomial shifted = m.without(i, 1) * Monomial::green(i + 1);
      r.add_term(shifted, c * GaussianRational(e));
    }
  }
  return r;
}

MultiPoly substitute(const MultiPoly& p, int index, const MultiPoly& replacement) {
  std::map<int, const MultiPoly*> repl{{index, &replacement}};
  return substitute_many(p, repl);
}

MultiPoly substitute_many(const MultiPoly& p, const std::map<int, const MultiPoly*>& repl) {
  for (const auto& [i, q] : repl)
    if (q->contains_index(i) || q->max_index() > i)
      throw ContractError("substitute: replacement for G" + std::to_string(i) +
                          " must contain only lower indices");
  // Power cache per replaced index.
  std::map<int, std::vector<MultiPoly>> pows;
  auto power = [&](int i, int e) -> const MultiPoly& {
    auto& v = pows[i];
    if (v.empty()) v.push_back(MultiPoly::one());
    while (static_cast<int>(v.size()) <= e) v.push_back(v.back() * *repl.at(i));
    return v[static_cast<std::size_t>(e)];
  };
  MultiPoly r;
  for (const auto& [m, c] : p.terms()) {
    Monomial rest;
    MultiPoly factor = MultiPoly::one();
    bool touched = false;
    rest = m;
    for (const auto& [i, e] : m.factors()) {
      if (repl.count(i)) {
        rest = rest.without(i, e);
        factor *= power(i, e);
        touched = true;
      }
    }
    if (!touched) {
      r.add_term(m, c);
    } else {
      MultiPoly t = factor * MultiPoly::term(rest, c);
      r += t;
    }
  }
  return r;
}

MultiPoly complete_bell(int k) {
  if (k < 0) throw ContractError("complete_bell: negative order");
  std::vector<MultiPoly> bell;
  bell.reserve(static_cast<std::size_t>(k) + 1);
  bell.push_back(MultiPoly::one());
  for (int n = 1; n <= k; ++n) {
    MultiPoly b;
    for (int j = 0; j < n; ++j) {
      GaussianRational c{Rat(binomial(static_cast<unsigned long>(n - 1), static_cast<unsigned long>(j)))};
      b += (bell[static_cast<std::size_t>(j)] * MultiPoly::green(n - j)).scale(c);
    }
    bell.push_back(std::move(b));
  }
  return bell.back();
}

}  // namespace ds0
