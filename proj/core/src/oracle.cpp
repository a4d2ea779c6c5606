#include "ds0/oracle.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/cos_pi.hpp>
#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/sin_pi.hpp>

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "ds0/errors.hpp"

namespace ds0 {

namespace {

template <unsigned L>
using Rl = RealN<L>;
template <unsigned L>
using Cl = Cplx<RealN<L>>;

Rat mod_two(const Rat& q) {
  Int n = numerator(q), d = denominator(q);
  Int twod = 2 * d, f;
  mpz_fdiv_q(f.backend().data(), n.backend().data(), twod.backend().data());
  return q - 2 * Rat(f);
}

// e^{i pi q} with exact rational reduction of q modulo 2.
template <unsigned L>
Cl<L> unit_phase(const Rat& q) {
  Rl<L> x = to_real<Rl<L>>(mod_two(q));
  return {boost::math::cos_pi(x), boost::math::sin_pi(x)};
}

// mu(theta) = lambda e^{i m theta} / m; the ray integrand is t^p e^{-mu t^m}.
template <unsigned L>
Cl<L> ray_mu(const TheorySpec& theory, const Rat& theta_over_pi) {
  Cl<L> lam = to_complex<Rl<L>>(theory.coupling);
  Cl<L> ph = unit_phase<L>(Rat(theory.power) * theta_over_pi);
  Cl<L> mu = lam * ph;
  mu.re /= theory.power;
  mu.im /= theory.power;
  return mu;
}

template <unsigned L>
struct Ray {
  Cl<L> mu;
  std::vector<Rl<L>> t, w;
  std::vector<Cl<L>> E;
  std::vector<char> coarse;  // node also belongs to the half-density grid
};

// Exp-sinh nodes t = exp(c sinh(j h)), h = 2^-level, with E = exp(-mu t^m).
// The tail is monitored: terms that keep growing past the integrand's
// natural scale mean the ray points into a growing sector.
template <unsigned L>
Ray<L> build_ray(const TheorySpec& theory, const Rat& theta_over_pi, int level, int max_p,
                 unsigned bits) {
  using std::cosh, std::exp, std::pow, std::sinh;
  using bmp::cosh, bmp::exp, bmp::pow, bmp::sinh;
  using R = Rl<L>;
  Ray<L> ray;
  ray.mu = ray_mu<L>(theory, theta_over_pi);
  const R c = boost::math::constants::half_pi<R>();
  const R h = R(1) / (1 << level);
  const R mu_abs = abs(ray.mu);
  const R t_monitor = 4 * pow(1 / mu_abs, R(1) / theory.power);
  const R cut = bmp::ldexp(R(1), -static_cast<int>(bits) - 80);

  R max_proxy(0);
  for (int dir : {+1, -1}) {
    int quiet = 0, grow = 0;
    for (long j = dir == 1 ? 0 : -1;; j += dir) {
      R u = h * static_cast<long long>(j);
      if (u > 8 || u < -8) break;
      R t = exp(c * sinh(u));
      R w = c * cosh(u) * t * h;
      R tm = pow_int(Cplx<R>{t, R(0)}, theory.power).re;
      Cl<L> e = ds0::exp(Cl<L>{-ray.mu.re * tm, -ray.mu.im * tm});
      R proxy = w * abs(e);
      if (max_p > 0 && t > 1) proxy *= pow(t, max_p);
      if (!(boost::math::isfinite)(proxy))
        throw DivergenceError("moment quadrature: integrand overflow along ray");
      if (proxy > max_proxy) {
        max_proxy = proxy;
        if (dir == 1 && t > t_monitor) {
          if (++grow > 10)
            throw DivergenceError("moment quadrature: tail grows; ray is in a growing sector");
        }
      } else if (dir == 1) {
        grow = 0;
      }
      if (proxy <= max_proxy * cut) {
        if (++quiet >= 8) break;
      } else {
        quiet = 0;
        ray.t.push_back(t);
        ray.w.push_back(w);
        ray.E.push_back(e);
        ray.coarse.push_back(j % 2 == 0 ? 1 : 0);
      }
    }
  }
  return ray;
}

// Raw ray integrals S_p = sum w t^p E for p = 0..max_p, on the full grid and
// on the half-density subgrid (free second estimate for the error).
template <unsigned L>
void sweep_ray(const Ray<L>& ray, int max_p, std::vector<Cl<L>>& full, std::vector<Cl<L>>& half) {
  using R = Rl<L>;
  const std::size_t n = ray.t.size();
  full.assign(static_cast<std::size_t>(max_p) + 1, Cl<L>{});
  half.assign(static_cast<std::size_t>(max_p) + 1, Cl<L>{});
  std::vector<R> T(n, R(1));
  for (int p = 0; p <= max_p; ++p) {
    Cl<L> sf{}, sh{};
    for (std::size_t j = 0; j < n; ++j) {
      R wt = ray.w[j] * T[j];
      Cl<L> term{wt * ray.E[j].re, wt * ray.E[j].im};
      sf += term;
      if (ray.coarse[j]) sh += term;
      T[j] *= ray.t[j];
    }
    full[static_cast<std::size_t>(p)] = sf;
    // the coarse grid has twice the step, hence twice the weight
    half[static_cast<std::size_t>(p)] = Cl<L>{2 * sh.re, 2 * sh.im};
  }
}

// Single-power ray sums (full and half grid) for the level search.
template <unsigned L>
std::pair<Cl<L>, Cl<L>> sweep_single(const Ray<L>& ray, int p) {
  using R = Rl<L>;
  Cl<L> sf{}, sh{};
  for (std::size_t j = 0; j < ray.t.size(); ++j) {
    R wt = ray.w[j] * pow_int(Cplx<R>{ray.t[j], R(0)}, p).re;
    Cl<L> term{wt * ray.E[j].re, wt * ray.E[j].im};
    sf += term;
    if (ray.coarse[j]) sh += term;
  }
  return {sf, Cl<L>{2 * sh.re, 2 * sh.im}};
}

template <unsigned L>
MomentTable compute_moments_impl(const ContourSpec& contour, int max_p, unsigned bits) {
  using R = Rl<L>;
  const TheorySpec& theory = contour.theory;
  const R target = bmp::ldexp(R(1), -static_cast<int>(bits) + 24);

  int level = 6;
  const int max_level = 12;
  Ray<L> left, right;
  std::vector<Cl<L>> lf, lh, rf, rh;
  for (;; ++level) {
    left = build_ray<L>(theory, contour.left_over_pi, level, max_p, bits);
    right = build_ray<L>(theory, contour.right_over_pi, level, max_p, bits);
    // convergence checked on the extreme powers; intermediate ones behave
    // no worse for these entire integrands
    bool ok = true;
    for (const Ray<L>* ray : {&left, &right}) {
      for (int p : {0, max_p}) {
        auto [f, hsum] = sweep_single(*ray, p);
        R scale = abs(f);
        if (scale == 0) continue;
        if (abs(f - hsum) / scale > target) ok = false;
      }
    }
    if (ok || level == max_level) break;
  }
  sweep_ray(left, max_p, lf, lh);
  sweep_ray(right, max_p, rf, rh);

  MomentTable table;
  table.theory = theory;
  table.left_over_pi = contour.left_over_pi;
  table.right_over_pi = contour.right_over_pi;
  table.bits = bits;
  table.gamma.resize(static_cast<std::size_t>(max_p) + 1);
  table.rel_error.resize(static_cast<std::size_t>(max_p) + 1);

  auto combine = [&](const std::vector<Cl<L>>& l, const std::vector<Cl<L>>& r, int p) {
    Cl<L> ph_r = unit_phase<L>(Rat(p + 1) * contour.right_over_pi);
    Cl<L> ph_l = unit_phase<L>(Rat(p + 1) * contour.left_over_pi);
    return ph_r * r[static_cast<std::size_t>(p)] - ph_l * l[static_cast<std::size_t>(p)];
  };

  Cl<L> i0 = combine(lf, rf, 0);
  R i0_abs = abs(i0);
  if (i0_abs == 0) throw Error("moment quadrature: vanishing normalization integral");
  R err_i0 = abs(i0 - combine(lh, rh, 0)) / i0_abs;
  for (int p = 0; p <= max_p; ++p) {
    Cl<L> ip = combine(lf, rf, p);
    Cl<L> ip_half = combine(lh, rh, p);
    Cl<L> g = ip / i0;
    table.gamma[static_cast<std::size_t>(p)] = convert_complex<BigReal>(g);
    R scale = abs(ip);
    R err = scale == 0 ? (abs(ip - ip_half) / i0_abs)
                       : (abs(ip - ip_half) / scale + err_i0);
    table.rel_error[static_cast<std::size_t>(p)] = BigReal(err);
  }
  table.gamma[0] = BigComplex{BigReal(1), BigReal(0)};  // exact by construction
  return table;
}

std::mutex cache_mutex;
std::map<std::string, MomentTable> moment_cache;

}  // namespace

ContourSpec ContourSpec::defaults(const TheorySpec& theory) {
  return {theory, theory.sector_pair.first, theory.sector_pair.second};
}

ContourSpec ContourSpec::named(const TheorySpec& theory, const std::string& sector) {
  SectorPair p = sector_pair_named(theory, sector);
  return {theory, p.left_over_pi, p.right_over_pi};
}

ContourSpec ContourSpec::perturbed(const Rat& dl, const Rat& dr) const {
  return {theory, left_over_pi + dl, right_over_pi + dr};
}

std::string ContourSpec::key() const {
  std::ostringstream os;
  os << theory.name << "|" << left_over_pi << "|" << right_over_pi;
  return os.str();
}

MomentTable compute_moments(const ContourSpec& contour, int max_p, unsigned bits) {
  if (max_p < 0) throw ContractError("compute_moments: max_p must be >= 0");
  return with_precision(bits, [&](auto level) {
    return compute_moments_impl<decltype(level)::value>(contour, max_p, bits);
  });
}

MomentTable moments(const ContourSpec& contour, int max_p, unsigned bits) {
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto it = moment_cache.find(contour.key());
  if (it != moment_cache.end() && it->second.max_p() >= max_p && it->second.bits >= bits) {
    return it->second;
  }
  int want_p = max_p;
  unsigned want_bits = bits;
  if (it != moment_cache.end()) {
    want_p = std::max(want_p, it->second.max_p());
    want_bits = std::max(want_bits, it->second.bits);
  }
  MomentTable table = compute_moments(contour, want_p, want_bits);
  moment_cache[contour.key()] = table;
  return table;
}

BigComplex moment(const ContourSpec& contour, int p, unsigned bits) {
  return moments(contour, p, bits).gamma[static_cast<std::size_t>(p)];
}

std::vector<BigComplex> moments_to_connected(const MomentTable& table, int N,
                                             std::vector<BigReal>* rel_error) {
  if (N > table.max_p())
    throw ContractError("moments_to_connected: table covers p <= " +
                        std::to_string(table.max_p()));
  std::vector<BigComplex> g(static_cast<std::size_t>(N) + 1);  // g[0] unused
  std::vector<BigReal> abs_err(static_cast<std::size_t>(N) + 1, BigReal(0));
  BigReal base_rel(0);
  for (int p = 0; p <= N; ++p) base_rel = std::max(base_rel, table.rel_error[p]);
  if (rel_error) rel_error->assign(static_cast<std::size_t>(N), BigReal(0));
  for (int n = 1; n <= N; ++n) {
    BigComplex acc = table.gamma[static_cast<std::size_t>(n)];
    BigReal mag = abs(acc), err = abs(acc) * base_rel;
    for (int k = 1; k <= n - 1; ++k) {
      BigReal binom = to_real<BigReal>(
          Rat(binomial(static_cast<unsigned long>(n - 1), static_cast<unsigned long>(k - 1))));
      const BigComplex& gamma_rest = table.gamma[static_cast<std::size_t>(n - k)];
      BigComplex term = g[static_cast<std::size_t>(k)] * gamma_rest;
      term.re *= binom;
      term.im *= binom;
      acc -= term;
      BigReal tmag = abs(term);
      mag += tmag;
      err += binom * (abs_err[static_cast<std::size_t>(k)] * abs(gamma_rest) +
                      abs(g[static_cast<std::size_t>(k)]) * abs(gamma_rest) * base_rel);
    }
    g[static_cast<std::size_t>(n)] = acc;
    abs_err[static_cast<std::size_t>(n)] = err;
    if (rel_error) {
      BigReal denom = abs(acc);
      (*rel_error)[static_cast<std::size_t>(n - 1)] = denom == 0 ? err : BigReal(err / denom);
    }
  }
  return std::vector<BigComplex>(g.begin() + 1, g.end());
}

GreensTable exact_greens(const TheorySpec& theory, int N, unsigned bits) {
  unsigned eff = std::max(bits, N > 20 ? 512u : 256u);
  MomentTable table = moments(ContourSpec::defaults(theory), N, eff);
  GreensTable out;
  out.g = moments_to_connected(table, N, &out.rel_error);
  return out;
}

BigComplex moment_closed_form(const ContourSpec& contour, int p, unsigned bits) {
  return with_precision(bits, [&](auto level) -> BigComplex {
    constexpr unsigned L = decltype(level)::value;
    using R = Rl<L>;
    const TheorySpec& theory = contour.theory;
    const int m = theory.power;
    auto ray_term = [&](const Rat& theta, int q) {
      Cl<L> mu = ray_mu<L>(theory, theta);
      if (mu.re <= 0)
        throw ContractError("moment_closed_form: ray lies outside the decaying sectors");
      R s = R(q + 1) / m;
      Cl<L> mu_pow = ds0::exp(Cl<L>{-s * ds0::log(mu).re, -s * ds0::log(mu).im});
      Cl<L> val = unit_phase<L>(Rat(q + 1) * theta) * mu_pow;
      R gamma_fac = boost::math::tgamma(s) / m;
      return Cl<L>{val.re * gamma_fac, val.im * gamma_fac};
    };
    Cl<L> num = ray_term(contour.right_over_pi, p) - ray_term(contour.left_over_pi, p);
    Cl<L> den = ray_term(contour.right_over_pi, 0) - ray_term(contour.left_over_pi, 0);
    return convert_complex<BigReal>(num / den);
  });
}

BigComplex closed_form_reference(const TheorySpec& theory, const std::string& sector) {
  ContourSpec contour = ContourSpec::named(theory, sector);
  if (theory.parity_symmetric) {
    BigComplex g2 = moment_closed_form(contour, 2);
    BigComplex g1 = moment_closed_form(contour, 1);
    return g2 - g1 * g1;
  }
  return moment_closed_form(contour, 1);
}

BigComplex closed_form_reference(const TheorySpec& theory) {
  return closed_form_reference(theory, sector_pairs(theory).front().name);
}

}  // namespace ds0
