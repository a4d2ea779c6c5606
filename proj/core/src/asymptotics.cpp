#include "ds0/asymptotics.hpp"

#include <boost/math/special_functions/fpclassify.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <array>
#include <sstream>

#include "ds0/errors.hpp"
#include "ds0/oracle.hpp"
#include "ds0/tower.hpp"

namespace ds0 {

namespace {

// Limit estimate from the trailing k+1 samples, annihilating 1/n..1/n^k:
// L ~ sum_j a_{N-k+j} (N-k+j)^k (-1)^{j+k} / (j! (k-j)!).
BigReal richardson_tail(const std::vector<BigReal>& seq, int k, int n_start) {
  const int len = static_cast<int>(seq.size());
  const int base = len - (k + 1);  // index of a_{N-k}
  BigReal acc(0);
  for (int j = 0; j <= k; ++j) {
    long n = n_start + base + j;
    BigReal term = seq[static_cast<std::size_t>(base + j)];
    term *= bmp::pow(BigReal(n), k);
    BigReal denom = to_real<BigReal>(Rat(factorial(static_cast<unsigned long>(j)) *
                                         factorial(static_cast<unsigned long>(k - j))));
    term /= denom;
    if ((j + k) % 2 != 0) term = -term;
    acc += term;
  }
  return acc;
}

ExtrapolationReport make_report(const std::vector<BigReal>& seq, int k, int n_start, int max_k) {
  ExtrapolationReport rep;
  rep.sequence = seq;
  rep.n_start = n_start;
  rep.order = k;
  for (int m = 0; m <= max_k; ++m) rep.estimates.push_back(richardson_tail(seq, m, n_start));
  rep.limit = rep.estimates[static_cast<std::size_t>(k)];
  rep.uncertainty = k >= 1 ? BigReal(bmp::abs(rep.limit - rep.estimates[static_cast<std::size_t>(k - 1)]))
                           : BigReal(0);
  return rep;
}

// Seeds G_1..G_{m-2} from the closed-form moments (cumulant recursion).
std::map<int, BigComplex> closed_form_seeds(const TheorySpec& theory) {
  ContourSpec contour = ContourSpec::defaults(theory);
  const int need = std::max(theory.power - 2, 1);
  MomentTable table;
  table.theory = theory;
  table.bits = 512;
  table.gamma.resize(static_cast<std::size_t>(need) + 1);
  table.rel_error.assign(static_cast<std::size_t>(need) + 1, BigReal(0));
  for (int p = 0; p <= need; ++p) table.gamma[static_cast<std::size_t>(p)] = moment_closed_form(contour, p);
  auto g = moments_to_connected(table, need);
  std::map<int, BigComplex> seeds;
  for (int s : theory.seeds()) seeds[s] = g[static_cast<std::size_t>(s - 1)];
  return seeds;
}

// Cash-Karp embedded Runge-Kutta for a 2-component first-order system.
template <class R, class F>
void rk_integrate(F&& f, R x, std::array<R, 2> y, const R& x_end, const R& tol,
                  std::vector<std::pair<R, std::array<R, 2>>>& trace) {
  using A = std::array<R, 2>;
  auto axpy = [](A a, const A& b, const R& s) {
    a[0] += s * b[0];
    a[1] += s * b[1];
    return a;
  };
  R h = (x_end - x) / 64;
  trace.push_back({x, y});
  while (x < x_end) {
    if (x + h > x_end) h = x_end - x;
    A k1 = f(x, y);
    A k2 = f(x + h / 5, axpy(y, k1, h / 5));
    A y3 = y;
    y3 = axpy(y3, k1, h * R(3) / 40);
    y3 = axpy(y3, k2, h * R(9) / 40);
    A k3 = f(x + 3 * h / 10, y3);
    A y4 = y;
    y4 = axpy(y4, k1, h * R(3) / 10);
    y4 = axpy(y4, k2, -h * R(9) / 10);
    y4 = axpy(y4, k3, h * R(6) / 5);
    A k4 = f(x + 3 * h / 5, y4);
    A y5 = y;
    y5 = axpy(y5, k1, -h * R(11) / 54);
    y5 = axpy(y5, k2, h * R(5) / 2);
    y5 = axpy(y5, k3, -h * R(70) / 27);
    y5 = axpy(y5, k4, h * R(35) / 27);
    A k5 = f(x + h, y5);
    A y6 = y;
    y6 = axpy(y6, k1, h * R(1631) / 55296);
    y6 = axpy(y6, k2, h * R(175) / 512);
    y6 = axpy(y6, k3, h * R(575) / 13824);
    y6 = axpy(y6, k4, h * R(44275) / 110592);
    y6 = axpy(y6, k5, h * R(253) / 4096);
    A k6 = f(x + 7 * h / 8, y6);

    A y5th = y;
    y5th = axpy(y5th, k1, h * R(37) / 378);
    y5th = axpy(y5th, k3, h * R(250) / 621);
    y5th = axpy(y5th, k4, h * R(125) / 594);
    y5th = axpy(y5th, k6, h * R(512) / 1771);
    A y4th = y;
    y4th = axpy(y4th, k1, h * R(2825) / 27648);
    y4th = axpy(y4th, k3, h * R(18575) / 48384);
    y4th = axpy(y4th, k4, h * R(13525) / 55296);
    y4th = axpy(y4th, k5, h * R(277) / 14336);
    y4th = axpy(y4th, k6, h / 4);

    using std::abs;
    using bmp::abs;
    R err(0), scale(0);
    for (int c = 0; c < 2; ++c) {
      err = std::max(err, abs(y5th[static_cast<std::size_t>(c)] - y4th[static_cast<std::size_t>(c)]));
      scale = std::max(scale, abs(y5th[static_cast<std::size_t>(c)]));
    }
    scale = std::max(scale, R(1));
    if (err <= tol * scale) {
      x += h;
      y = y5th;
      trace.push_back({x, y});
    }
    R fac = err == 0 ? R(5) : R(0.9) * bmp::pow(tol * scale / err, R(1) / 5);
    fac = std::min(std::max(fac, R(0.2)), R(5));
    h *= fac;
    if (h < R(1e-12)) throw Error("rk_integrate: step underflow");
  }
}

template <unsigned L>
AnalyticRate quartic_rate(unsigned bits) {
  using R = RealN<L>;
  const R tol = bmp::ldexp(R(1), -static_cast<int>(std::min(bits, L)) / 2);
  // Fixed exp-sinh grid; the Gaussian-like factor exp(-t^4/4) is cached and
  // only cos(x t) varies between evaluations.
  struct Node {
    R t, we;  // weight * exp(-t^4/4)
  };
  std::vector<Node> nodes;
  {
    const R c = boost::math::constants::half_pi<R>();
    const int level = 7;
    const R h = R(1) / (1 << level);
    R max_term(0);
    for (int dir : {+1, -1}) {
      int quiet = 0;
      for (long j = dir == 1 ? 0 : -1;; j += dir) {
        R u = h * static_cast<long long>(j);
        if (u > 4 || u < -7) break;
        R t = bmp::exp(c * bmp::sinh(u));
        R t2 = t * t;
        R we = c * bmp::cosh(u) * t * h * bmp::exp(-t2 * t2 / 4);
        if (we <= max_term * tol / 1024) {
          if (++quiet >= 8) break;
        } else {
          quiet = 0;
          max_term = std::max(max_term, we);
          nodes.push_back({t, we});
        }
      }
    }
  }
  auto y_of = [&](const R& x) {
    R acc(0);
    for (const auto& n : nodes) acc += n.we * bmp::cos(x * n.t);
    return acc;
  };
  // scan for the first sign change
  R lo(0), hi(0);
  R prev = y_of(R(0));
  std::ostringstream scan;
  for (int i = 1; i <= 32; ++i) {
    R x = R(i) / 4;
    R val = y_of(x);
    scan << "y(" << static_cast<double>(x) << ")=" << static_cast<double>(val) << " ";
    if ((prev > 0) != (val > 0)) {
      lo = R(i - 1) / 4;
      hi = x;
      break;
    }
    prev = val;
  }
  if (hi == 0) throw Error("quartic growth rate: no zero bracketed; scan: " + scan.str());
  R flo = y_of(lo);
  for (int it = 0; it < 90; ++it) {
    R mid = (lo + hi) / 2;
    R fm = y_of(mid);
    if ((flo > 0) == (fm > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  AnalyticRate out;
  BigReal x0 = BigReal((lo + hi) / 2);
  out.x0 = x0;
  out.rate = BigReal(1) / x0;
  return out;
}

template <unsigned L>
AnalyticRate cubic_rate() {
  using R = RealN<L>;
  // u'' = -x u with u = Ai(-x): u(0) = 3^{-2/3}/Gamma(2/3), u'(0) = 3^{-1/3}/Gamma(1/3)
  const R third = R(1) / 3;
  std::array<R, 2> y0{bmp::pow(R(3), -2 * third) / boost::math::tgamma(2 * third),
                      bmp::pow(R(3), -third) / boost::math::tgamma(third)};
  auto rhs = [](const R& x, const std::array<R, 2>& y) {
    return std::array<R, 2>{y[1], -x * y[0]};
  };
  const R tol(1e-14);
  std::vector<std::pair<R, std::array<R, 2>>> trace;
  rk_integrate(rhs, R(0), y0, R(3), tol, trace);
  // bracket the first sign change of u along the checkpoints
  std::size_t idx = 0;
  bool found = false;
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if ((trace[i - 1].second[0] > 0) != (trace[i].second[0] > 0)) {
      idx = i - 1;
      found = true;
      break;
    }
  }
  if (!found) {
    std::ostringstream scan;
    for (std::size_t i = 0; i < trace.size(); i += 8)
      scan << "u(" << static_cast<double>(trace[i].first) << ")="
           << static_cast<double>(trace[i].second[0]) << " ";
    throw Error("cubic growth rate: Airy zero not bracketed; scan: " + scan.str());
  }
  // evaluate u(x) by a short re-integration from the checkpoint
  auto u_of = [&](const R& x) {
    const auto& [cx, cy] = trace[idx];
    if (x == cx) return cy[0];
    std::vector<std::pair<R, std::array<R, 2>>> local;
    rk_integrate(rhs, cx, cy, x, tol / 100, local);
    return local.back().second[0];
  };
  R lo = trace[idx].first, hi = trace[idx + 1].first;
  R flo = trace[idx].second[0];
  for (int it = 0; it < 70; ++it) {
    R mid = (lo + hi) / 2;
    R fm = u_of(mid);
    if ((flo > 0) == (fm > 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  AnalyticRate out;
  BigReal x0 = BigReal((lo + hi) / 2);
  out.x0 = x0;
  out.rate = BigReal(1) / x0;
  return out;
}

}  // namespace

ExtrapolationReport richardson(const std::vector<BigReal>& seq, int k, int n_start) {
  if (k < 1) throw ContractError("richardson: order must be >= 1");
  if (static_cast<int>(seq.size()) <= k)
    throw ContractError("richardson: need more than k samples");
  for (const auto& v : seq)
    if (!(boost::math::isfinite)(v)) throw ContractError("richardson: non-numeric input");
  int max_k = std::min<int>(k, static_cast<int>(seq.size()) - 1);
  return make_report(seq, k, n_start, max_k);
}

ExtrapolationReport richardson_auto(const std::vector<BigReal>& seq, int max_k, int n_start) {
  if (seq.size() < 3) throw ContractError("richardson_auto: need at least 3 samples");
  max_k = std::min<int>(max_k, static_cast<int>(seq.size()) - 1);
  ExtrapolationReport rep = make_report(seq, 1, n_start, max_k);
  int best = 1;
  BigReal best_gap(-1);
  for (int k = 1; k <= max_k; ++k) {
    BigReal gap = rep.estimates[static_cast<std::size_t>(k)] -
                  rep.estimates[static_cast<std::size_t>(k - 1)];
    if (gap < 0) gap = -gap;
    if (best_gap < 0 || gap < best_gap) {
      best_gap = gap;
      best = k;
    }
  }
  rep.order = best;
  rep.limit = rep.estimates[static_cast<std::size_t>(best)];
  rep.uncertainty = best_gap;
  return rep;
}

BigComplex GrowthModel::value(int n) const {
  if (n < 1) throw ContractError("GrowthModel::value: n must be positive");
  BigComplex amplitude = c0;
  BigComplex drift = c1;
  drift.re /= n;
  drift.im /= n;
  amplitude += drift;
  BigReal mag;
  if (n <= 256) {
    mag = to_real<BigReal>(Rat(factorial(static_cast<unsigned long>(n - 1)))) *
          bmp::pow(rate, n);
  } else {
    // log-magnitude route: exp(lgamma(n) + n log r) never overflows silently
    mag = bmp::exp(boost::math::lgamma(BigReal(n)) + BigReal(n) * bmp::log(rate));
  }
  static const BigComplex phases[4] = {
      {BigReal(1), BigReal(0)}, {BigReal(0), BigReal(-1)}, {BigReal(-1), BigReal(0)},
      {BigReal(0), BigReal(1)}};
  BigComplex out = amplitude * phases[n % 4];
  out.re *= mag;
  out.im *= mag;
  return out;
}

ClosureScheme asymptotic_closure(const GrowthModel& model) {
  return ClosureScheme::with_values(ClosureScheme::Kind::asymptotic,
                                    [model](int n) { return model.value(n); });
}

GrowthModel growth_model_paper(const TheorySpec& theory, const BigReal& rate) {
  GrowthModel m;
  m.theory = theory.name;
  m.rate = rate;
  m.c1 = BigComplex{};
  if (theory.name == "hermitian_quartic") {
    m.c0 = BigComplex{BigReal(-2), BigReal(0)};
    m.index_step = 2;
  } else if (theory.name == "pt_cubic") {
    m.c0 = BigComplex{BigReal(-1), BigReal(0)};
  } else if (theory.name == "pt_quartic") {
    m.c0 = BigComplex{BigReal(0), BigReal(-1)};
  } else {
    throw ContractError("growth_model_paper: no published law for " + theory.name);
  }
  return m;
}

GrowthModel fit_growth_model(const TheorySpec& theory, const BigReal& rate,
                             const std::vector<BigComplex>& greens) {
  GrowthModel m;
  m.theory = theory.name;
  m.rate = rate;
  m.index_step = theory.parity_symmetric ? 2 : 1;
  std::vector<int> usable;
  for (int n = static_cast<int>(greens.size()); n >= 1; --n) {
    const BigComplex& g = greens[static_cast<std::size_t>(n - 1)];
    if (n % m.index_step != 0) continue;
    if (g.re == 0 && g.im == 0) continue;
    usable.push_back(n);
    if (usable.size() == 2) break;
  }
  if (usable.size() < 2)
    throw ContractError("fit_growth_model: need two usable exact orders");
  auto c_at = [&](int n) {
    GrowthModel probe = m;
    probe.c0 = BigComplex{BigReal(1), BigReal(0)};
    probe.c1 = BigComplex{};
    BigComplex base = probe.value(n);
    return greens[static_cast<std::size_t>(n - 1)] / base;
  };
  int n2 = usable[0], n1 = usable[1];
  BigComplex c_n1 = c_at(n1), c_n2 = c_at(n2);
  BigReal inv1 = BigReal(1) / n1, inv2 = BigReal(1) / n2;
  BigComplex slope = c_n1 - c_n2;
  BigReal dinv = inv1 - inv2;
  slope.re /= dinv;
  slope.im /= dinv;
  m.c1 = slope;
  BigComplex corr = slope;
  corr.re *= inv2;
  corr.im *= inv2;
  m.c0 = c_n2 - corr;
  return m;
}

RateExtraction growth_rate_richardson(const TheorySpec& theory, int max_n, unsigned bits) {
  auto seeds = closed_form_seeds(theory);
  auto tower = generate_tower_to_top(theory, max_n + theory.power);
  auto greens = higher_greens_from_seed(tower, seeds, bits);
  const bool parity = theory.parity_symmetric;
  std::vector<BigReal> ratio;
  if (parity) {
    // |G_{2n+2}| / (|G_{2n}| (2n+1)(2n)) -> r^2
    for (int n = 1; 2 * n + 2 <= static_cast<int>(greens.size()); ++n) {
      BigReal num = abs(greens[static_cast<std::size_t>(2 * n + 1)]);
      BigReal den = abs(greens[static_cast<std::size_t>(2 * n - 1)]);
      if (den == 0) break;
      ratio.push_back(num / (den * (2 * n + 1) * (2 * n)));
    }
  } else {
    for (int n = 1; n + 1 <= static_cast<int>(greens.size()); ++n) {
      BigReal num = abs(greens[static_cast<std::size_t>(n)]);
      BigReal den = abs(greens[static_cast<std::size_t>(n - 1)]);
      if (den == 0) break;
      ratio.push_back(num / (den * n));
    }
  }
  RateExtraction out;
  out.report = richardson_auto(ratio, 8);
  out.rate = parity ? BigReal(bmp::sqrt(out.report.limit)) : out.report.limit;
  return out;
}

AnalyticRate growth_rate_analytic(const TheorySpec& theory, unsigned bits) {
  if (theory.name == "hermitian_quartic") {
    return with_precision(bits, [&](auto level) {
      return quartic_rate<decltype(level)::value>(bits);
    });
  }
  if (theory.name == "pt_cubic") {
    return with_precision(bits, [&](auto level) {
      return cubic_rate<decltype(level)::value>();
    });
  }
  throw ContractError("growth_rate_analytic: linearization known only for hermitian_quartic and pt_cubic");
}

}  // namespace ds0
