#pragma once

#include <string>
#include <vector>

#include "ds0/numeric.hpp"
#include "ds0/theory.hpp"
#include "ds0/tower.hpp"

namespace ds0 {

struct ExtrapolationReport {
  std::vector<BigReal> sequence;  // input values a_n at n = n_start, n_start+1, ...
  int n_start = 1;
  int order = 0;         // Richardson order k actually used
  BigReal limit;         // extrapolated limit
  BigReal uncertainty;   // |R_k - R_{k-1}|
  std::vector<BigReal> estimates;  // R_0..R_kmax evaluated at the sequence tail
};

// k-th order Richardson extrapolation of a sequence assumed to behave like
// L + a_1/n + a_2/n^2 + ...; uses the k+1 trailing samples.
ExtrapolationReport richardson(const std::vector<BigReal>& seq, int k, int n_start = 1);

// Scans k = 1..max_k and keeps the order whose successive estimates agree
// best; deterministic for a fixed input.
ExtrapolationReport richardson_auto(const std::vector<BigReal>& seq, int max_k, int n_start = 1);

// Factorial growth law G_n ~ C(n) (n-1)! r^n (-i)^n with C(n) = c0 + c1/n.
// For the parity theories only even n are meaningful (step = 2); the
// constants carry the sign/phase pattern, e.g. c0 = -2 reproduces
// G_{2n} ~ 2 r^{2n} (-1)^{n+1} (2n-1)! for the Hermitian quartic theory.
struct GrowthModel {
  std::string theory;
  BigReal rate;
  BigComplex c0, c1;
  int index_step = 1;

  BigComplex value(int n) const;  // predicted G_n, overflow-safe via lgamma
};

// The published asymptotic laws with their pinned amplitudes.
GrowthModel growth_model_paper(const TheorySpec& theory, const BigReal& rate);

// Same law with the amplitude refitted linearly in 1/n from the two largest
// supplied orders; absorbs finite-n drift for closure use. greens[k] = G_{k+1}.
GrowthModel fit_growth_model(const TheorySpec& theory, const BigReal& rate,
                             const std::vector<BigComplex>& greens);

struct RateExtraction {
  BigReal rate;
  ExtrapolationReport report;
};

// Numeric route: ratio statistics of exact Green's functions (forward
// substitution from the closed-form seeds), Richardson-extrapolated.
// Quartic: |G_{2n+2}|/(|G_{2n}|(2n+1)(2n)) -> r^2; otherwise
// |G_{n+1}|/(|G_n| n) -> r.
RateExtraction growth_rate_richardson(const TheorySpec& theory, int max_n = 48,
                                      unsigned bits = 512);

// Closure scheme fed by a growth model: closed-off G_n get model.value(n).
ClosureScheme asymptotic_closure(const GrowthModel& model);

struct AnalyticRate {
  BigReal x0;  // smallest positive zero of the linearized generating function
  BigReal rate;  // 1/x0
};

// Analytic route: hermitian_quartic locates the zero of the cosine-transform
// solution of y''' = x y; pt_cubic integrates the Airy equation u'' = -x u
// from exact initial data. Bracketing failures raise Error with a scan trace.
AnalyticRate growth_rate_analytic(const TheorySpec& theory, unsigned bits = 256);

}  // namespace ds0
