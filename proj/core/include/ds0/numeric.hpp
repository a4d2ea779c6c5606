#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include "ds0/multipoly.hpp"
#include "ds0/rational.hpp"

namespace ds0 {

namespace bmp = boost::multiprecision;

template <unsigned Bits>
using RealN =
    bmp::number<bmp::backends::cpp_bin_float<Bits, bmp::backends::digit_base_2>, bmp::et_off>;

// Fixed storage precision for values crossing module boundaries (roots,
// moments, growth rates). Working precision inside an operation may be
// higher; results are rounded to storage on the way out.
inline constexpr unsigned kStorageBits = 512;
using BigReal = RealN<kStorageBits>;

unsigned pick_level(unsigned bits);  // smallest supported level >= bits

// Calls f(std::integral_constant<unsigned, L>{}) with L = pick_level(bits).
template <class F>
decltype(auto) with_precision(unsigned bits, F&& f) {
  switch (pick_level(bits)) {
    case 256: return f(std::integral_constant<unsigned, 256>{});
    case 512: return f(std::integral_constant<unsigned, 512>{});
    default: return f(std::integral_constant<unsigned, 1024>{});
  }
}

// Minimal complex type over any real; used uniformly for double tracking and
// multiprecision work.
template <class R>
struct Cplx {
  R re{}, im{};

  Cplx() = default;
  Cplx(R r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  Cplx(R r, R i) : re(std::move(r)), im(std::move(i)) {}

  Cplx operator-() const { return {-re, -im}; }
  Cplx& operator+=(const Cplx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cplx& operator-=(const Cplx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Cplx& operator*=(const Cplx& o) {
    R r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Cplx& operator/=(const Cplx& o);

  friend Cplx operator+(Cplx a, const Cplx& b) { return a += b; }
  friend Cplx operator-(Cplx a, const Cplx& b) { return a -= b; }
  friend Cplx operator*(Cplx a, const Cplx& b) { return a *= b; }
  friend Cplx operator/(Cplx a, const Cplx& b) { return a /= b; }
  friend bool operator==(const Cplx& a, const Cplx& b) { return a.re == b.re && a.im == b.im; }
};

using BigComplex = Cplx<BigReal>;

template <class R>
R norm(const Cplx<R>& z) {
  return z.re * z.re + z.im * z.im;
}

template <class R>
R abs(const Cplx<R>& z) {
  using std::sqrt;
  using bmp::sqrt;
  return sqrt(norm(z));
}

template <class R>
Cplx<R> conj(const Cplx<R>& z) {
  return {z.re, -z.im};
}

// Smith's scaled division: robust when components span many magnitudes.
template <class R>
Cplx<R>& Cplx<R>::operator/=(const Cplx& o) {
  using std::abs;
  using bmp::abs;
  if (abs(o.re) >= abs(o.im)) {
    R q = o.im / o.re;
    R d = o.re + o.im * q;
    R r = (re + im * q) / d;
    im = (im - re * q) / d;
    re = std::move(r);
  } else {
    R q = o.re / o.im;
    R d = o.re * q + o.im;
    R r = (re * q + im) / d;
    im = (im * q - re) / d;
    re = std::move(r);
  }
  return *this;
}

template <class R>
Cplx<R> exp(const Cplx<R>& z) {
  using std::cos, std::exp, std::sin;
  using bmp::cos, bmp::exp, bmp::sin;
  R m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

template <class R>
Cplx<R> log(const Cplx<R>& z) {
  using std::atan2, std::log;
  using bmp::atan2, bmp::log;
  return {log(abs(z)), atan2(z.im, z.re)};
}

template <class R>
Cplx<R> sqrt(const Cplx<R>& z) {
  using std::abs, std::sqrt;
  using bmp::abs, bmp::sqrt;
  if (z.re == 0 && z.im == 0) return {R(0), R(0)};
  R w = sqrt((ds0::abs(z) + abs(z.re)) / 2);
  if (z.re >= 0) return {w, z.im / (2 * w)};
  R v = abs(z.im) / (2 * w);
  return z.im >= 0 ? Cplx<R>{v, w} : Cplx<R>{v, -w};
}

template <class R>
Cplx<R> pow_int(Cplx<R> base, long e) {
  Cplx<R> r{R(1), R(0)};
  bool inv = e < 0;
  unsigned long n = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  if (inv) r = Cplx<R>{R(1), R(0)} / r;
  return r;
}

template <class To, class R>
Cplx<To> convert_complex(const Cplx<R>& z) {
  return {To(z.re), To(z.im)};
}

template <class R>
R to_real(const Rat& q) {
  return R(q);
}

template <class R>
Cplx<R> to_complex(const GaussianRational& c) {
  return {R(c.re), R(c.im)};
}

// Evaluates a polynomial at a numeric assignment of its Green's symbols.
template <class R>
Cplx<R> evaluate_poly(const MultiPoly& p, const std::map<int, Cplx<R>>& values) {
  Cplx<R> acc{R(0), R(0)};
  for (const auto& [m, c] : p.terms()) {
    Cplx<R> t = to_complex<R>(c);
    for (const auto& [i, e] : m.factors()) t *= pow_int(values.at(i), e);
    acc += t;
  }
  return acc;
}

std::string real_str(const BigReal& v, int digits = 30);
std::string complex_str(const BigComplex& v, int digits = 30);

}  // namespace ds0
