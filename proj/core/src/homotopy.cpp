#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "ds0/errors.hpp"
#include "solver_internal.hpp"

namespace ds0::detail {

namespace {

constexpr int kMaxVars = 4;

template <class C>
struct NumTerm {
  C coeff;
  std::array<int, kMaxVars> exps{};
};

template <class C>
struct NumPoly {
  std::vector<NumTerm<C>> terms;
  int nvars = 0;
  int degree = 0;

  C eval(const std::vector<std::vector<C>>& pow) const {
    C acc{};
    for (const auto& t : terms) {
      C v = t.coeff;
      for (int j = 0; j < nvars; ++j)
        if (t.exps[static_cast<std::size_t>(j)] > 0)
          v *= pow[static_cast<std::size_t>(j)][static_cast<std::size_t>(
              t.exps[static_cast<std::size_t>(j)])];
      acc += v;
    }
    return acc;
  }
};

// Power tables x_j^0..x_j^maxdeg for one point.
template <class C>
void fill_powers(const std::vector<C>& x, int maxdeg, std::vector<std::vector<C>>& pow) {
  pow.resize(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    auto& col = pow[j];
    col.resize(static_cast<std::size_t>(maxdeg) + 1);
    col[0] = C(1);
    for (int e = 1; e <= maxdeg; ++e) col[static_cast<std::size_t>(e)] = col[e - 1] * x[j];
  }
}

// Gaussian elimination with partial pivoting; n <= 4.
template <class C, class R>
bool solve_linear(std::array<std::array<C, kMaxVars>, kMaxVars>& a, std::array<C, kMaxVars>& b,
                  int n) {
  for (int col = 0; col < n; ++col) {
    int piv = col;
    R best = norm(a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)]);
    for (int r = col + 1; r < n; ++r) {
      R cand = norm(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)]);
      if (cand > best) {
        best = cand;
        piv = r;
      }
    }
    if (best == R(0)) return false;
    std::swap(a[static_cast<std::size_t>(col)], a[static_cast<std::size_t>(piv)]);
    std::swap(b[static_cast<std::size_t>(col)], b[static_cast<std::size_t>(piv)]);
    for (int r = col + 1; r < n; ++r) {
      C f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(col)] /
            a[static_cast<std::size_t>(col)][static_cast<std::size_t>(col)];
      for (int c = col; c < n; ++c)
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] -=
            f * a[static_cast<std::size_t>(col)][static_cast<std::size_t>(c)];
      b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(col)];
    }
  }
  for (int r = n - 1; r >= 0; --r) {
    C acc = b[static_cast<std::size_t>(r)];
    for (int c = r + 1; c < n; ++c)
      acc -= a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] *
             b[static_cast<std::size_t>(c)];
    b[static_cast<std::size_t>(r)] = acc / a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
  }
  return true;
}

// Exact -> numeric conversion, folding closed-off symbols into coefficients.
template <class R>
NumPoly<Cplx<R>> convert_poly(const MultiPoly& p, const std::vector<int>& unknowns,
                              const std::map<int, BigComplex>& values) {
  using C = Cplx<R>;
  std::map<std::array<int, kMaxVars>, C> acc;
  const int n = static_cast<int>(unknowns.size());
  for (const auto& [m, c] : p.terms()) {
    C coeff = to_complex<R>(c);
    std::array<int, kMaxVars> exps{};
    for (const auto& [idx, e] : m.factors()) {
      auto slot = std::find(unknowns.begin(), unknowns.end(), idx);
      if (slot != unknowns.end()) {
        exps[static_cast<std::size_t>(slot - unknowns.begin())] = e;
      } else {
        auto it = values.find(idx);
        if (it == values.end())
          throw ContractError("solve_system: no value for symbol G" + std::to_string(idx));
        coeff *= pow_int(convert_complex<R>(it->second), e);
      }
    }
    if (coeff.re == R(0) && coeff.im == R(0)) continue;
    auto [it, fresh] = acc.emplace(exps, coeff);
    if (!fresh) it->second += coeff;
  }
  NumPoly<C> out;
  out.nvars = n;
  for (const auto& [exps, coeff] : acc) {
    if (coeff.re == R(0) && coeff.im == R(0)) continue;
    int d = 0;
    for (int j = 0; j < n; ++j) d += exps[static_cast<std::size_t>(j)];
    out.degree = std::max(out.degree, d);
    out.terms.push_back({coeff, exps});
  }
  return out;
}

// Per-equation magnitude normalization for well-scaled tracking.
template <class C>
double max_coeff_mag(const NumPoly<C>& p) {
  double m = 0;
  for (const auto& t : p.terms)
    m = std::max(m, static_cast<double>(abs(convert_complex<double>(t.coeff))));
  return m == 0 ? 1.0 : m;
}

using Cd = Cplx<double>;

struct TrackOutcome {
  std::vector<Cd> x;
  bool ok = false;
  bool diverged = false;
};

struct DoubleSystem {
  std::vector<NumPoly<Cd>> f;
  std::vector<std::vector<NumPoly<Cd>>> jac;  // jac[i][j] = dF_i/dx_j
  std::vector<int> start_deg;                 // start-system exponents
  int nvars = 0;
  int maxdeg = 0;
};

// H(x,t) = (1-t) gamma (x_i^{d_i} - 1) + t F(x)
TrackOutcome track_path(const DoubleSystem& sys, const Cd& gamma, std::vector<Cd> x,
                        const SolverConfig& cfg) {
  const int n = sys.nvars;
  std::vector<std::vector<Cd>> pow;
  auto eval_h = [&](const std::vector<Cd>& pt, double t, std::array<Cd, kMaxVars>& h,
                    std::array<std::array<Cd, kMaxVars>, kMaxVars>& jac, bool with_jac) {
    fill_powers(pt, sys.maxdeg, pow);
    for (int i = 0; i < n; ++i) {
      Cd fi = sys.f[static_cast<std::size_t>(i)].eval(pow);
      int d = sys.start_deg[static_cast<std::size_t>(i)];
      Cd gi = pow[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] - Cd(1.0);
      h[static_cast<std::size_t>(i)] = gamma * gi * (1.0 - t) + fi * t;
      if (!with_jac) continue;
      for (int j = 0; j < n; ++j) {
        Cd fij = sys.jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval(pow);
        Cd gij = (j == i && d >= 1)
                     ? Cd(static_cast<double>(d)) * pow[static_cast<std::size_t>(i)]
                                                       [static_cast<std::size_t>(d - 1)]
                     : Cd(0.0);
        jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            gamma * gij * (1.0 - t) + fij * t;
      }
    }
  };
  auto eval_dt = [&](const std::vector<Cd>& pt, std::array<Cd, kMaxVars>& dh) {
    fill_powers(pt, sys.maxdeg, pow);
    for (int i = 0; i < n; ++i) {
      Cd fi = sys.f[static_cast<std::size_t>(i)].eval(pow);
      int d = sys.start_deg[static_cast<std::size_t>(i)];
      Cd gi = pow[static_cast<std::size_t>(i)][static_cast<std::size_t>(d)] - Cd(1.0);
      dh[static_cast<std::size_t>(i)] = fi - gamma * gi;
    }
  };

  double t = 0.0, dt = cfg.step_init;
  int streak = 0;
  std::array<Cd, kMaxVars> rhs;
  std::array<std::array<Cd, kMaxVars>, kMaxVars> jac;
  while (t < 1.0) {
    dt = std::min(dt, 1.0 - t);
    // Euler predictor: J dx = -dH/dt * dt
    eval_h(x, t, rhs, jac, true);
    std::array<Cd, kMaxVars> dhdt;
    eval_dt(x, dhdt);
    std::array<Cd, kMaxVars> b;
    auto jcopy = jac;
    for (int i = 0; i < n; ++i)
      b[static_cast<std::size_t>(i)] = -dhdt[static_cast<std::size_t>(i)] * Cd(dt);
    std::vector<Cd> xn = x;
    bool pred_ok = solve_linear<Cd, double>(jcopy, b, n);
    if (pred_ok)
      for (int i = 0; i < n; ++i) xn[static_cast<std::size_t>(i)] += b[static_cast<std::size_t>(i)];
    // Newton corrector at t + dt
    bool corr_ok = false;
    if (pred_ok) {
      for (int it = 0; it < 3; ++it) {
        eval_h(xn, t + dt, rhs, jac, true);
        auto a = jac;
        std::array<Cd, kMaxVars> nb;
        for (int i = 0; i < n; ++i) nb[static_cast<std::size_t>(i)] = -rhs[static_cast<std::size_t>(i)];
        if (!solve_linear<Cd, double>(a, nb, n)) break;
        double step = 0, size = 0;
        for (int i = 0; i < n; ++i) {
          xn[static_cast<std::size_t>(i)] += nb[static_cast<std::size_t>(i)];
          step = std::max(step, static_cast<double>(abs(nb[static_cast<std::size_t>(i)])));
          size = std::max(size, static_cast<double>(abs(xn[static_cast<std::size_t>(i)])));
        }
        if (step <= cfg.corrector_tol * (1.0 + size)) {
          corr_ok = true;
          break;
        }
      }
    }
    double size = 0;
    for (int i = 0; i < n; ++i)
      size = std::max(size, static_cast<double>(abs(xn[static_cast<std::size_t>(i)])));
    if (corr_ok && size < 1e10) {
      x = xn;
      t += dt;
      if (++streak >= 4) {
        dt = std::min(dt * 1.7, 0.1);
        streak = 0;
      }
    } else {
      if (size >= 1e10) {
        TrackOutcome bad;
        bad.diverged = true;
        return bad;
      }
      dt /= 2;
      streak = 0;
      if (dt < cfg.step_min) return {};
    }
  }
  TrackOutcome out;
  out.x = std::move(x);
  out.ok = true;
  return out;
}

}  // namespace

RootSet solve_system_with_values(const std::vector<MultiPoly>& equations,
                                 const std::vector<int>& unknowns,
                                 const std::map<int, BigComplex>& values,
                                 const SolverConfig& cfg) {
  const int n = static_cast<int>(unknowns.size());
  if (n < 2 || n > kMaxVars)
    throw ContractError("solve_system: supports 2 to 4 unknowns, got " + std::to_string(n));
  if (equations.size() != unknowns.size())
    throw ContractError("solve_system: system must be square");

  // double-precision tracking copies, magnitude-normalized per equation
  DoubleSystem sys;
  sys.nvars = n;
  std::vector<double> scales;
  for (const auto& eq : equations) {
    NumPoly<Cd> p = convert_poly<double>(eq, unknowns, values);
    if (p.degree < 1) throw ContractError("solve_system: equation degenerates to a constant");
    double s = max_coeff_mag(p);
    for (auto& t : p.terms) t.coeff = Cd{t.coeff.re / s, t.coeff.im / s};
    scales.push_back(s);
    sys.start_deg.push_back(p.degree);
    sys.maxdeg = std::max(sys.maxdeg, p.degree);
    sys.f.push_back(std::move(p));
  }
  for (std::size_t i = 0; i < equations.size(); ++i) {
    std::vector<NumPoly<Cd>> row;
    for (int j = 0; j < n; ++j) {
      MultiPoly d = equations[i].partial_derivative(unknowns[static_cast<std::size_t>(j)]);
      NumPoly<Cd> pd = convert_poly<double>(d, unknowns, values);
      for (auto& t : pd.terms)
        t.coeff = Cd{t.coeff.re / scales[i], t.coeff.im / scales[i]};
      pd.nvars = n;
      row.push_back(std::move(pd));
    }
    sys.jac.push_back(std::move(row));
  }

  std::mt19937 rng(cfg.seed);
  std::uniform_real_distribution<double> angle(0.2, 6.0);
  double phi = angle(rng);
  const Cd gamma{std::cos(phi), std::sin(phi)};

  long bezout = 1;
  for (int d : sys.start_deg) bezout *= d;

  RootSet rs;
  rs.paths_tracked = bezout;
  std::vector<std::vector<Cd>> endpoints;
  std::vector<int> idx(static_cast<std::size_t>(n), 0);
  for (long path = 0; path < bezout; ++path) {
    std::vector<Cd> x0;
    for (int j = 0; j < n; ++j) {
      double th = 2.0 * M_PI * idx[static_cast<std::size_t>(j)] /
                  sys.start_deg[static_cast<std::size_t>(j)];
      x0.push_back(Cd{std::cos(th), std::sin(th)});
    }
    TrackOutcome res = track_path(sys, gamma, std::move(x0), cfg);
    if (res.ok)
      endpoints.push_back(std::move(res.x));
    else
      ++rs.path_failures;
    // lexicographic advance
    for (int j = 0; j < n; ++j) {
      if (++idx[static_cast<std::size_t>(j)] < sys.start_deg[static_cast<std::size_t>(j)]) break;
      idx[static_cast<std::size_t>(j)] = 0;
    }
  }

  // multiprecision Newton polish against the folded-exact system
  with_precision(cfg.precision_bits, [&](auto level) {
    constexpr unsigned L = decltype(level)::value;
    using R = RealN<L>;
    using C = Cplx<R>;
    std::vector<NumPoly<C>> f;
    std::vector<std::vector<NumPoly<C>>> jac;
    for (std::size_t i = 0; i < equations.size(); ++i) {
      NumPoly<C> p = convert_poly<R>(equations[i], unknowns, values);
      R s(scales[i]);
      for (auto& t : p.terms) t.coeff = C{t.coeff.re / s, t.coeff.im / s};
      f.push_back(std::move(p));
      std::vector<NumPoly<C>> row;
      for (int j = 0; j < n; ++j) {
        NumPoly<C> pd = convert_poly<R>(
            equations[i].partial_derivative(unknowns[static_cast<std::size_t>(j)]), unknowns,
            values);
        for (auto& t : pd.terms) t.coeff = C{t.coeff.re / s, t.coeff.im / s};
        pd.nvars = n;
        row.push_back(std::move(pd));
      }
      jac.push_back(std::move(row));
    }
    int maxdeg = sys.maxdeg;
    std::vector<std::vector<C>> pow;
    const R target = R(cfg.polish_tol) / 100;
    for (const auto& endpoint : endpoints) {
      std::vector<C> x;
      for (const auto& v : endpoint) x.push_back(C{R(v.re), R(v.im)});
      bool singular = false;
      R last_step(-1);
      int stagnant = 0;
      for (int it = 0; it < cfg.max_newton_polish; ++it) {
        fill_powers(x, maxdeg, pow);
        std::array<C, kMaxVars> b;
        std::array<std::array<C, kMaxVars>, kMaxVars> a;
        for (int i = 0; i < n; ++i) {
          b[static_cast<std::size_t>(i)] = -f[static_cast<std::size_t>(i)].eval(pow);
          for (int j = 0; j < n; ++j)
            a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                jac[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].eval(pow);
        }
        if (!solve_linear<C, R>(a, b, n)) {
          singular = true;
          break;
        }
        R step(0), size(0);
        for (int i = 0; i < n; ++i) {
          x[static_cast<std::size_t>(i)] += b[static_cast<std::size_t>(i)];
          step = std::max(step, abs(b[static_cast<std::size_t>(i)]));
          size = std::max(size, abs(x[static_cast<std::size_t>(i)]));
        }
        if (step <= target * (1 + size)) break;
        if (last_step >= 0 && step > last_step / 2) {
          if (++stagnant > 8) {
            singular = true;
            break;
          }
        } else {
          stagnant = 0;
        }
        last_step = step;
      }
      // residual: max relative backward error over the equations
      fill_powers(x, maxdeg, pow);
      R res(0);
      for (int i = 0; i < n; ++i) {
        R scale(0);
        C val{};
        for (const auto& t : f[static_cast<std::size_t>(i)].terms) {
          C term = t.coeff;
          R mag = abs(t.coeff);
          for (int j = 0; j < n; ++j) {
            int e = t.exps[static_cast<std::size_t>(j)];
            if (e > 0) {
              term *= pow[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)];
              mag *= abs(pow[static_cast<std::size_t>(j)][static_cast<std::size_t>(e)]);
            }
          }
          val += term;
          scale += mag;
        }
        if (scale == R(0)) scale = R(1);
        res = std::max(res, abs(val) / scale);
      }
      Root root;
      for (int j = 0; j < n; ++j)
        root.values.push_back(convert_complex<BigReal>(x[static_cast<std::size_t>(j)]));
      root.residual = BigReal(res);
      root.singular = singular;
      root.converged = !singular && res <= R(cfg.polish_tol);
      rs.roots.push_back(std::move(root));
    }
    return 0;
  });

  merge_clusters(rs.roots, cfg.merge_tol, rs.diagnostics);
  return rs;
}

}  // namespace ds0::detail

namespace ds0 {

RootSet solve_system(const std::vector<MultiPoly>& equations, const std::vector<int>& unknowns,
                     const SolverConfig& cfg) {
  return detail::solve_system_with_values(equations, unknowns, {}, cfg);
}

}  // namespace ds0
