#include "ds0/tower.hpp"

#include <algorithm>

#include "ds0/errors.hpp"

namespace ds0 {

namespace {

constexpr std::size_t kTermBudget = 2'000'000;

// Partitions of n into at most k parts: upper bound on the term count of the
// tower equation with top index n (parity reduction only shrinks it).
std::size_t partitions_le(int n, int k) {
  static constexpr std::size_t kCap = ~std::size_t(0) / 4;
  std::vector<std::size_t> row(static_cast<std::size_t>(n) + 1, 0);
  row[0] = 1;
  for (int part = 1; part <= k; ++part)
    for (int v = part; v <= n; ++v) {
      std::size_t s = row[static_cast<std::size_t>(v)] + row[static_cast<std::size_t>(v - part)];
      row[static_cast<std::size_t>(v)] = std::min(s, kCap);
    }
  return row[static_cast<std::size_t>(n)];
}

// Drops every monomial containing an odd Green's index.
MultiPoly zero_odd_indices(const MultiPoly& p) {
  MultiPoly r;
  for (const auto& [m, c] : p.terms()) {
    bool odd = false;
    for (const auto& [i, e] : m.factors())
      if (i % 2 == 1) {
        odd = true;
        break;
      }
    if (!odd) r.add_term(m, c);
  }
  return r;
}

DsTower generate(const TheorySpec& theory, int count, int to_top) {
  if (count < 1 && to_top < 1) throw ContractError("generate_tower: need count >= 1");
  DsTower tower{theory, {}};
  const int m = theory.power;
  if (m < 2) throw ContractError("generate_tower: interaction power must be >= 2");
  // Projected size check before any work: entry with top t has at most
  // partitions_le(t, m-1) terms.
  {
    int last_top = to_top > 0 ? to_top : m - 2 + count + (theory.parity_symmetric ? count : 0);
    std::size_t projected = 0;
    for (int t = m - 1; t <= last_top; ++t) {
      projected += partitions_le(t, m - 1);
      if (projected > kTermBudget)
        throw ResourceError("generate_tower: projected term count exceeds budget at G" +
                            std::to_string(t));
    }
  }
  MultiPoly master = complete_bell(m - 1);
  GaussianRational inv_lambda = GaussianRational(1) / theory.coupling;
  std::size_t total_terms = 0;
  for (int d = 0;; ++d) {
    int top = m - 1 + d;
    // coupling * (d/dJ)^d B_{m-1} = (d/dJ)^d J, so the source survives only
    // in the first derivative.
    MultiPoly eq = master;
    if (d == 1) eq -= MultiPoly::constant(inv_lambda);
    if (theory.parity_symmetric) eq = zero_odd_indices(eq);
    if (!eq.is_zero()) {
      if (eq.coefficient(Monomial::green(top)) != GaussianRational(1))
        throw Error("generate_tower: top coefficient not 1 at G" + std::to_string(top));
      total_terms += eq.term_count();
      if (total_terms > kTermBudget)
        throw ResourceError("generate_tower: term budget exceeded at G" + std::to_string(top));
      tower.entries.push_back({top, std::move(eq)});
    }
    bool done = to_top > 0 ? top >= to_top : static_cast<int>(tower.entries.size()) >= count;
    if (done) break;
    master = j_derivative(master);
  }
  return tower;
}

}  // namespace

const TowerEntry* DsTower::entry_for_top(int top) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), top,
                             [](const TowerEntry& e, int t) { return e.top < t; });
  return (it != entries.end() && it->top == top) ? &*it : nullptr;
}

DsTower generate_tower(const TheorySpec& theory, int count) { return generate(theory, count, 0); }

DsTower generate_tower_to_top(const TheorySpec& theory, int top) {
  return generate(theory, 0, top);
}

int top_index_for_order(const TheorySpec& theory, int order) {
  return theory.parity_symmetric ? 2 * order : order;
}

int min_order(const TheorySpec& theory) {
  // Smallest order whose truncated system is square in the seeds: enough
  // equations must exist to match the closed-off unknowns.
  int s = theory.effective_seed_count();
  if (theory.parity_symmetric) return theory.power / 2 + s - 1;
  return theory.power + s - 2;
}

ClosureScheme ClosureScheme::with_values(Kind k, std::function<BigComplex(int)> v) {
  if (k != Kind::zero && !v)
    throw ContractError("closure scheme needs a value source for closed-off Green's functions");
  ClosureScheme c;
  c.kind = k;
  c.value = std::move(v);
  return c;
}

std::string ClosureScheme::name() const {
  switch (kind) {
    case Kind::zero: return "zero";
    case Kind::asymptotic: return "asymptotic";
    case Kind::exact: return "exact";
  }
  return "?";
}

std::map<int, MultiPoly> seed_expressions(const DsTower& tower, int limit) {
  std::map<int, MultiPoly> exprs;
  const auto seeds = tower.theory.seeds();
  auto is_seed = [&](int i) { return std::find(seeds.begin(), seeds.end(), i) != seeds.end(); };
  for (const auto& entry : tower.entries) {
    if (entry.top > limit) break;
    MultiPoly rhs = entry.rhs();
    std::map<int, const MultiPoly*> repl;
    for (int idx : rhs.indices())
      if (!is_seed(idx) && exprs.count(idx)) repl.emplace(idx, &exprs.at(idx));
    exprs.emplace(entry.top, substitute_many(rhs, repl));
  }
  return exprs;
}

TruncatedSystem truncate(const DsTower& tower, int order, const ClosureScheme& closure) {
  const TheorySpec& theory = tower.theory;
  const int top = top_index_for_order(theory, order);
  if (order < min_order(theory))
    throw ContractError("truncate: order " + std::to_string(order) + " below the minimum " +
                        std::to_string(min_order(theory)) + " for " + theory.name);
  if (tower.max_top() < top) throw ContractError("truncate: tower too short for requested order");

  TruncatedSystem sys;
  sys.theory = theory;
  sys.order = order;
  sys.closure = closure.name();
  sys.unknowns = theory.seeds();

  // The s highest surviving unknowns get the closure value; everything below
  // them is eliminated by forward substitution.
  const int s = theory.effective_seed_count();
  if (s == 0) throw ContractError("truncate: theory " + theory.name + " is already determined");
  std::vector<int> closed;
  for (int idx = top; static_cast<int>(closed.size()) < s; --idx) {
    if (theory.parity_symmetric && idx % 2 == 1) continue;
    closed.push_back(idx);
  }
  std::sort(closed.begin(), closed.end());
  sys.closed_tops = closed;
  for (int idx : closed)
    sys.closure_values[idx] =
        closure.kind == ClosureScheme::Kind::zero ? BigComplex{} : closure.value(idx);

  const int substitution_limit = closed.front() - 1;
  auto exprs = seed_expressions(tower, substitution_limit);

  auto is_closed = [&](int i) { return std::find(closed.begin(), closed.end(), i) != closed.end(); };
  for (const auto& entry : tower.entries) {
    if (!is_closed(entry.top)) continue;
    if (entry.top > top) break;
    std::map<int, const MultiPoly*> repl;
    for (int idx : entry.eq.indices())
      if (exprs.count(idx)) repl.emplace(idx, &exprs.at(idx));
    MultiPoly residual = substitute_many(entry.eq, repl);
    // Under zero closure the closed-off symbols drop out exactly.
    if (closure.kind == ClosureScheme::Kind::zero) {
      MultiPoly z = MultiPoly::zero();
      std::map<int, const MultiPoly*> zrepl;
      for (int idx : closed)
        if (residual.contains_index(idx)) zrepl.emplace(idx, &z);
      residual = substitute_many(residual, zrepl);
    }
    sys.equations.push_back(std::move(residual));
  }
  if (static_cast<int>(sys.equations.size()) != s)
    throw Error("truncate: system is not square (" + std::to_string(sys.equations.size()) +
                " equations for " + std::to_string(s) + " unknowns)");
  return sys;
}

MultiPoly eliminate_univariate(const DsTower& tower, int order) {
  const TheorySpec& theory = tower.theory;
  if (theory.effective_seed_count() != 1)
    throw ContractError("eliminate_univariate: theory " + theory.name +
                        " has more than one seed unknown");
  TruncatedSystem sys = truncate(tower, order, ClosureScheme::zero_closure());
  const MultiPoly& p = sys.equations.front();
  const int var = sys.unknowns.front();
  auto coeffs = p.univariate_coefficients(var);
  GaussianRational lead = coeffs.back();
  MultiPoly monic = p;
  monic.scale(GaussianRational(1) / lead);
  return monic;
}

std::vector<BigComplex> higher_greens_from_seed(const DsTower& tower,
                                                const std::map<int, BigComplex>& seed_values,
                                                unsigned bits) {
  for (int s : tower.theory.seeds())
    if (!seed_values.count(s))
      throw ContractError("higher_greens_from_seed: missing value for seed G" + std::to_string(s));
  return with_precision(bits, [&](auto level) {
    constexpr unsigned L = decltype(level)::value;
    using C = Cplx<RealN<L>>;
    std::map<int, C> values;
    for (const auto& [i, v] : seed_values) values[i] = convert_complex<RealN<L>>(v);
    int top = tower.max_top();
    std::vector<BigComplex> out(static_cast<std::size_t>(top));
    for (const auto& [i, v] : values)
      if (i <= top) out[static_cast<std::size_t>(i - 1)] = convert_complex<BigReal>(v);
    for (const auto& entry : tower.entries) {
      // rhs touches only indices below entry.top, all already assigned.
      C g{};
      const MultiPoly rhs = entry.rhs();
      for (const auto& [m, c] : rhs.terms()) {
        C t = to_complex<RealN<L>>(c);
        for (const auto& [i, e] : m.factors()) t *= pow_int(values.at(i), e);
        g += t;
      }
      values[entry.top] = g;
      out[static_cast<std::size_t>(entry.top - 1)] = convert_complex<BigReal>(g);
    }
    return out;
  });
}

}  // namespace ds0
