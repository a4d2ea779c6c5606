#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <utility>

#include "ds0/errors.hpp"

namespace ds0 {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int binomial(unsigned long n, unsigned long k) {
  Int r;
  mpz_bin_uiui(r.backend().data(), n, k);
  return r;
}

inline Int factorial(unsigned long n) {
  Int r;
  mpz_fac_ui(r.backend().data(), n);
  return r;
}

// Builds p/q in canonical form (lowest terms, positive denominator).
inline Rat make_rat(Int num, Int den) {
  if (den == 0) throw ContractError("make_rat: zero denominator");
  return Rat(std::move(num), std::move(den));
}

inline Rat make_rat(long num, long den = 1) { return make_rat(Int(num), Int(den)); }

// Exact complex number re + im*i over the rationals; the coefficient field
// of all symbolic work. Components stay canonical because every mpq
// operation preserves lowest terms.
struct GaussianRational {
  Rat re, im;

  GaussianRational() = default;
  GaussianRational(long v) : re(v) {}  // NOLINT(google-explicit-constructor)
  GaussianRational(Rat r) : re(std::move(r)) {}  // NOLINT
  GaussianRational(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}

  static GaussianRational imaginary_unit() { return {Rat(0), Rat(1)}; }
  static GaussianRational imaginary(Rat v) { return {Rat(0), std::move(v)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  bool is_one() const { return im == 0 && re == 1; }

  GaussianRational conj() const { return {re, -im}; }
  Rat norm() const { return re * re + im * im; }

  GaussianRational operator-() const { return {-re, -im}; }

  GaussianRational& operator+=(const GaussianRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  GaussianRational& operator-=(const GaussianRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  GaussianRational& operator*=(const GaussianRational& o) {
    Rat r = re * o.re - im * o.im;
    Rat i = re * o.im + im * o.re;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }
  GaussianRational& operator/=(const GaussianRational& o) {
    Rat n = o.norm();
    if (n == 0) throw ContractError("GaussianRational: division by zero");
    Rat r = (re * o.re + im * o.im) / n;
    Rat i = (im * o.re - re * o.im) / n;
    re = std::move(r);
    im = std::move(i);
    return *this;
  }

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re == b.re && a.im == b.im;
  }

  // "p/q", "p/q*i" or "(a+b*i)"; denominator printed only when != 1.
  std::string str() const;
};

std::string rat_str(const Rat& r);

}  // namespace ds0
