#include "ds0/solver.hpp"
#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "ds0/errors.hpp"
#include "solver_internal.hpp"

namespace ds0 {

namespace {

template <unsigned L>
using Rl = RealN<L>;
template <unsigned L>
using Cl = Cplx<RealN<L>>;

// Horner values of p and p' at z.
template <unsigned L>
void horner2(const std::vector<Cl<L>>& a, const Cl<L>& z, Cl<L>& p, Cl<L>& dp) {
  p = a.back();
  dp = Cl<L>{};
  for (std::size_t k = a.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[k];
  }
}

// Coefficient-magnitude scale sum |a_k| |z|^k; the denominator of the
// relative backward error.
template <unsigned L>
Rl<L> coeff_scale(const std::vector<Rl<L>>& amag, const Rl<L>& zabs) {
  Rl<L> s = amag.back();
  for (std::size_t k = amag.size() - 1; k-- > 0;) s = s * zabs + amag[k];
  return s;
}

// Newton-polygon (upper convex hull) start radii with deterministic angular
// spread; the standard simultaneous-iteration initialization.
template <unsigned L>
std::vector<Cl<L>> initial_guesses(const std::vector<Cl<L>>& a, unsigned seed) {
  using R = Rl<L>;
  using std::log;
  using bmp::log;
  const std::size_t deg = a.size() - 1;
  struct Pt {
    std::size_t k;
    R logmag;
  };
  std::vector<Pt> pts;
  for (std::size_t k = 0; k <= deg; ++k) {
    R m = abs(a[k]);
    if (m != 0) pts.push_back({k, log(m)});
  }
  // upper hull by monotone chain
  std::vector<Pt> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const Pt& p1 = hull[hull.size() - 2];
      const Pt& p2 = hull[hull.size() - 1];
      R cross = (R(static_cast<long>(p2.k - p1.k))) * (pt.logmag - p1.logmag) -
                (R(static_cast<long>(pt.k - p1.k))) * (p2.logmag - p1.logmag);
      if (cross >= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(pt);
  }
  std::vector<Cl<L>> z;
  z.reserve(deg);
  const R two_pi = 2 * boost::math::constants::pi<R>();
  double base = 0.371954 + 1e-4 * static_cast<double>(seed % 1009);
  for (std::size_t s = 0; s + 1 < hull.size(); ++s) {
    const Pt& p1 = hull[s];
    const Pt& p2 = hull[s + 1];
    std::size_t q = p2.k - p1.k;
    R rho = bmp::exp((p1.logmag - p2.logmag) / static_cast<long>(q));
    for (std::size_t j = 0; j < q; ++j) {
      R ang = two_pi * (R(static_cast<long>(j)) + R(base) + R(0.161803) * static_cast<long>(s)) /
              static_cast<long>(q);
      z.push_back(Cl<L>{rho * bmp::cos(ang), rho * bmp::sin(ang)});
    }
  }
  return z;
}

template <unsigned L>
struct UniOut {
  std::vector<Cl<L>> roots;
  std::vector<Rl<L>> residuals;
  std::vector<char> converged;
};

template <unsigned L>
UniOut<L> aberth(const std::vector<Cl<L>>& coeffs, const SolverConfig& cfg) {
  using R = Rl<L>;
  const std::size_t deg = coeffs.size() - 1;
  std::vector<R> amag(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) amag[k] = abs(coeffs[k]);

  UniOut<L> out;
  out.roots = initial_guesses<L>(coeffs, cfg.seed);
  out.converged.assign(deg, 0);
  out.residuals.assign(deg, R(0));
  if (out.roots.size() != deg) throw Error("aberth: initialization size mismatch");

  const R stop = std::max(R(cfg.polish_tol) / 100, bmp::ldexp(R(1), -static_cast<int>(L) + 18));
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    bool all_done = true;
    for (std::size_t i = 0; i < deg; ++i) {
      if (out.converged[i]) continue;
      Cl<L> p, dp;
      horner2(coeffs, out.roots[i], p, dp);
      R scale = coeff_scale(amag, abs(out.roots[i]));
      if (abs(p) <= stop * scale) {
        out.converged[i] = 1;
        continue;
      }
      all_done = false;
      Cl<L> newton = (dp.re == 0 && dp.im == 0) ? Cl<L>{R(1), R(0)} : p / dp;
      Cl<L> s{};
      for (std::size_t j = 0; j < deg; ++j) {
        if (j == i) continue;
        Cl<L> d = out.roots[i] - out.roots[j];
        if (d.re == 0 && d.im == 0) d = Cl<L>{bmp::ldexp(R(1), -static_cast<int>(L) / 2), R(0)};
        s += Cl<L>{R(1), R(0)} / d;
      }
      Cl<L> denom = Cl<L>{R(1), R(0)} - newton * s;
      Cl<L> w = (abs(denom) < R(1e-30)) ? newton : newton / denom;
      out.roots[i] -= w;
    }
    if (all_done) break;
  }
  // Newton polish and final residuals.
  for (std::size_t i = 0; i < deg; ++i) {
    for (int it = 0; it < 6; ++it) {
      Cl<L> p, dp;
      horner2(coeffs, out.roots[i], p, dp);
      if (dp.re == 0 && dp.im == 0) break;
      Cl<L> w = p / dp;
      out.roots[i] -= w;
      if (abs(w) <= bmp::ldexp(R(1), -static_cast<int>(L) + 8) * (abs(out.roots[i]) + 1)) break;
    }
    Cl<L> p, dp;
    horner2(coeffs, out.roots[i], p, dp);
    R scale = coeff_scale(amag, abs(out.roots[i]));
    out.residuals[i] = abs(p) / scale;
    if (out.residuals[i] <= R(cfg.polish_tol)) out.converged[i] = 1;
  }
  return out;
}

RootSet solve_numeric_univariate(std::vector<BigComplex> coeffs, const SolverConfig& cfg) {
  RootSet rs;
  // strip exact zero roots and an exactly zero leading tail
  while (!coeffs.empty() && coeffs.back().re == 0 && coeffs.back().im == 0) coeffs.pop_back();
  if (coeffs.size() <= 1) throw ContractError("roots_univariate: polynomial degree must be >= 1");
  int zero_mult = 0;
  while (coeffs.front().re == 0 && coeffs.front().im == 0) {
    coeffs.erase(coeffs.begin());
    ++zero_mult;
  }
  const std::size_t deg = coeffs.size() - 1;
  rs.paths_tracked = static_cast<long>(deg) + zero_mult;
  if (zero_mult > 0) {
    Root zero;
    zero.values = {BigComplex{}};
    zero.residual = BigReal(0);
    zero.multiplicity = zero_mult;
    rs.roots.push_back(std::move(zero));
  }
  if (deg >= 1) {
    unsigned bits = cfg.precision_bits;
    if (deg > 64) bits = std::max(bits, 2 * static_cast<unsigned>(deg));
    with_precision(bits, [&](auto level) {
      constexpr unsigned L = decltype(level)::value;
      std::vector<Cl<L>> a(coeffs.size());
      for (std::size_t k = 0; k < coeffs.size(); ++k) a[k] = convert_complex<Rl<L>>(coeffs[k]);
      UniOut<L> out = aberth<L>(a, cfg);
      for (std::size_t i = 0; i < out.roots.size(); ++i) {
        Root r;
        r.values = {convert_complex<BigReal>(out.roots[i])};
        r.residual = BigReal(out.residuals[i]);
        r.converged = out.converged[i] != 0;
        if (!r.converged) ++rs.path_failures;
        rs.roots.push_back(std::move(r));
      }
      return 0;
    });
  }
  detail::merge_clusters(rs.roots, cfg.merge_tol, rs.diagnostics);
  return rs;
}

}  // namespace

std::string tag_name(RootTag tag) {
  switch (tag) {
    case RootTag::none: return "none";
    case RootTag::pt_axis: return "pt_axis";
    case RootTag::largest_real: return "largest_real";
    case RootTag::off_axis: return "off_axis";
  }
  return "?";
}

RootSet roots_univariate(const MultiPoly& poly, int var, const SolverConfig& cfg) {
  auto exact = poly.univariate_coefficients(var);
  std::vector<BigComplex> coeffs(exact.size());
  for (std::size_t k = 0; k < exact.size(); ++k) coeffs[k] = to_complex<BigReal>(exact[k]);
  RootSet rs = solve_numeric_univariate(std::move(coeffs), cfg);
  rs.unknowns = {var};
  return rs;
}

RootSet roots_univariate(const std::vector<BigComplex>& coeffs, const SolverConfig& cfg) {
  RootSet rs = solve_numeric_univariate(coeffs, cfg);
  rs.unknowns = {0};
  return rs;
}

RootSet solve_truncated(const TruncatedSystem& system, const SolverConfig& cfg) {
  RootSet rs;
  const std::vector<int>& seeds = system.unknowns;
  if (seeds.size() == 1) {
    // collapse the closed-off symbols to their numeric values
    const int var = seeds.front();
    const MultiPoly& eq = system.equations.front();
    int deg = eq.degree_in(var);
    std::vector<BigComplex> coeffs(static_cast<std::size_t>(deg) + 1);
    for (const auto& [m, c] : eq.terms()) {
      BigComplex value = to_complex<BigReal>(c);
      int power = 0;
      for (const auto& [i, e] : m.factors()) {
        if (i == var) {
          power = e;
        } else {
          auto it = system.closure_values.find(i);
          if (it == system.closure_values.end())
            throw Error("solve_truncated: unexpected symbol G" + std::to_string(i));
          value *= pow_int(it->second, e);
        }
      }
      coeffs[static_cast<std::size_t>(power)] += value;
    }
    rs = solve_numeric_univariate(std::move(coeffs), cfg);
  } else {
    rs = detail::solve_system_with_values(system.equations, seeds, system.closure_values, cfg);
  }
  rs.theory = system.theory.name;
  rs.order = system.order;
  rs.closure = system.closure;
  rs.unknowns = seeds;
  return rs;
}

RootSet select_physical(const RootSet& rs, Selection criterion, const SolverConfig& cfg) {
  RootSet out = rs;
  out.roots.clear();
  const BigReal axis(cfg.axis_tol);
  auto axis_dist = [](const BigComplex& z, bool imaginary_axis) {
    return imaginary_axis ? abs(BigComplex{z.re, BigReal(0)}) : abs(BigComplex{BigReal(0), z.im});
  };
  switch (criterion) {
    case Selection::pt_axis_negative_imaginary:
    case Selection::positive_real_axis: {
      const bool imag_axis = criterion == Selection::pt_axis_negative_imaginary;
      std::vector<Root> on_axis;
      for (const auto& r : rs.roots) {
        const BigComplex& z = r.value();
        BigReal mag = abs(z);
        if (mag == 0) continue;
        bool half_plane = imag_axis ? (z.im < 0) : (z.re > 0);
        if (half_plane && axis_dist(z, imag_axis) <= axis * mag) {
          Root keep = r;
          keep.tag = RootTag::pt_axis;
          on_axis.push_back(std::move(keep));
        }
      }
      if (!on_axis.empty()) {
        out.roots = std::move(on_axis);
        break;
      }
      // fall back to the group nearest the axis (e.g. the symmetric pair
      // straddling it), tagged off-axis
      BigReal best(-1);
      for (const auto& r : rs.roots) {
        const BigComplex& z = r.value();
        BigReal mag = abs(z);
        if (mag == 0) continue;
        if (imag_axis ? (z.im >= 0) : (z.re <= 0)) continue;
        BigReal d = axis_dist(z, imag_axis) / mag;
        if (best < 0 || d < best) best = d;
      }
      if (best < 0) {
        out.diagnostics.push_back("selection empty: no roots in the physical half plane");
        break;
      }
      for (const auto& r : rs.roots) {
        const BigComplex& z = r.value();
        BigReal mag = abs(z);
        if (mag == 0) continue;
        if (imag_axis ? (z.im >= 0) : (z.re <= 0)) continue;
        if (axis_dist(z, imag_axis) / mag <= best * BigReal("1.000001") + BigReal(1e-30)) {
          Root keep = r;
          keep.tag = RootTag::off_axis;
          out.roots.push_back(std::move(keep));
        }
      }
      out.diagnostics.push_back("no on-axis root; returning the nearest off-axis group");
      break;
    }
    case Selection::largest_real: {
      const Root* best = nullptr;
      for (const auto& r : rs.roots) {
        const BigComplex& z = r.value();
        if (z.re <= 0) continue;
        if (abs(BigComplex{BigReal(0), z.im}) > axis * abs(z)) continue;
        if (!best || z.re > best->value().re) best = &r;
      }
      if (best) {
        Root keep = *best;
        keep.tag = RootTag::largest_real;
        out.roots.push_back(std::move(keep));
      } else {
        out.diagnostics.push_back("selection empty: no positive real roots");
      }
      break;
    }
  }
  return out;
}

const Root* nearest_root(const RootSet& rs, const BigComplex& target) {
  const Root* best = nullptr;
  BigReal best_d(0);
  for (const auto& r : rs.roots) {
    BigReal d = abs(r.value() - target);
    if (!best || d < best_d) {
      best = &r;
      best_d = d;
    }
  }
  return best;
}

std::vector<const Root*> nearest_group(const RootSet& rs, const BigComplex& target,
                                       double rel_window) {
  std::vector<const Root*> group;
  const Root* best = nearest_root(rs, target);
  if (!best) return group;
  BigReal best_d = abs(best->value() - target);
  BigReal window = best_d * (1 + BigReal(rel_window)) + BigReal(1e-40);
  for (const auto& r : rs.roots)
    if (abs(r.value() - target) <= window) group.push_back(&r);
  return group;
}

namespace detail {

// Union-find cluster merge of nearby roots (relative tolerance).
void merge_clusters(std::vector<Root>& roots, double merge_tol, std::vector<std::string>& notes) {
  const std::size_t n = roots.size();
  std::vector<std::size_t> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](std::size_t i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  BigReal tol(merge_tol);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (roots[i].values.size() != roots[j].values.size()) continue;
      BigReal dist(0), scale(1);
      for (std::size_t c = 0; c < roots[i].values.size(); ++c) {
        dist = std::max(dist, abs(roots[i].values[c] - roots[j].values[c]));
        scale = std::max(scale, std::max(abs(roots[i].values[c]), abs(roots[j].values[c])));
      }
      if (dist <= tol * scale) parent[find(i)] = find(j);
    }
  std::vector<Root> merged;
  std::vector<char> used(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = find(i);
    if (used[r]) continue;
    std::vector<std::size_t> members;
    for (std::size_t j = 0; j < n; ++j)
      if (find(j) == r) members.push_back(j);
    used[r] = 1;
    Root rep = roots[members.front()];
    if (members.size() > 1) {
      // centroid, combined multiplicity
      for (std::size_t c = 0; c < rep.values.size(); ++c) {
        BigComplex sum{};
        for (std::size_t m : members) sum += roots[m].values[c];
        BigReal inv = BigReal(1) / static_cast<long>(members.size());
        rep.values[c] = BigComplex{sum.re * inv, sum.im * inv};
      }
      rep.multiplicity = 0;
      for (std::size_t m : members) {
        rep.multiplicity += roots[m].multiplicity;
        rep.residual = std::max(rep.residual, roots[m].residual);
        rep.converged = rep.converged && roots[m].converged;
      }
      notes.push_back("merged cluster of " + std::to_string(members.size()) + " roots");
    }
    merged.push_back(std::move(rep));
  }
  roots = std::move(merged);
}

}  // namespace detail

std::string RootSet::csv() const {
  std::ostringstream os;
  os << "theory,order,seed_index,re,im,residual,tag\n";
  for (const auto& r : roots) {
    for (std::size_t c = 0; c < r.values.size(); ++c) {
      os << theory << "," << order << "," << (c < unknowns.size() ? unknowns[c] : 0) << ","
         << real_str(r.values[c].re) << "," << real_str(r.values[c].im) << ","
         << real_str(r.residual, 6) << "," << tag_name(r.tag) << "\n";
    }
  }
  return os.str();
}

std::string RootSet::json() const {
  nlohmann::json j;
  j["theory"] = theory;
  j["order"] = order;
  j["closure"] = closure;
  j["unknowns"] = unknowns;
  j["paths_tracked"] = paths_tracked;
  j["path_failures"] = path_failures;
  j["diagnostics"] = diagnostics;
  j["roots"] = nlohmann::json::array();
  for (const auto& r : roots) {
    nlohmann::json jr;
    jr["residual"] = real_str(r.residual, 6);
    jr["tag"] = tag_name(r.tag);
    jr["multiplicity"] = r.multiplicity;
    jr["converged"] = r.converged;
    jr["singular"] = r.singular;
    jr["values"] = nlohmann::json::array();
    for (std::size_t c = 0; c < r.values.size(); ++c) {
      jr["values"].push_back({{"seed", c < unknowns.size() ? unknowns[c] : 0},
                              {"re", real_str(r.values[c].re)},
                              {"im", real_str(r.values[c].im)}});
    }
    j["roots"].push_back(std::move(jr));
  }
  return j.dump(2);
}

}  // namespace ds0
