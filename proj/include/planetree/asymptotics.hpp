#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "planetree/moments.hpp"
#include "planetree/series.hpp"
#include "planetree/systems.hpp"

namespace planetree {

// Leading-order coefficient growth A * b^n * n^npow.
// source is "exact form" when amplitude/base are evaluated from the exact
// expression recorded in `form`, or "reference decimal" when only a printed
// decimal is known (then `form` repeats the decimal).
struct AsymptoticConstant {
  std::string quantity;  // e.g. "E(sigma)", "Var(rho)", "E(wiener*z)"
  double amplitude;
  double base;
  double npow;  // 0, 5/2, or 5 (the Wiener variance)
  std::string form;
  std::string source;
};

// r(X_n, Y_n) ~ amplitude * base^n with base in (0,1)
struct CorrelationAsymptotic {
  IndexName x;
  IndexName y;
  double amplitude;
  double base;
};

// Dominant singularity of a system's total, with the defining polynomial
// (ascending integer coefficients) and an isolating rational bracket when
// one is known, and the admissible radius interval where documented.
// `factors` carries the full factored reference polynomial; factors without
// a positive real root take no part in bracketing.
struct SingularityRecord {
  SystemId system;
  double z0;
  std::string exact_form;  // "" when only a decimal is known
  std::vector<long> poly;  // empty when no polynomial is known
  std::optional<std::pair<mpq_class, mpq_class>> bracket;
  std::optional<std::pair<double, double>> radius_interval;
  std::vector<std::vector<long>> factors;
};

struct Catalog {
  std::vector<AsymptoticConstant> constants;
  std::vector<CorrelationAsymptotic> correlations;
  std::vector<SingularityRecord> singularities;

  const AsymptoticConstant& constant(const std::string& quantity) const;
  const CorrelationAsymptotic& correlation(IndexName x, IndexName y) const;
  const SingularityRecord& singularity(SystemId id) const;
};

// Immutable catalog of every reference constant the reports compare against.
const Catalog& reference_catalog();

// Domb-Sykes fit: least squares of f_{n+1}/f_n against a + b/n over
// n in [n_lo, n_hi). Returns (a, rms residual); a estimates 1/z0.
// Requires positive coefficients on the window and order >= n_hi.
std::pair<double, double> estimate_growth(const Series& total,
                                          std::int64_t n_lo,
                                          std::int64_t n_hi);

// Bisection to interval width <= 1e-12 with exact rational sign
// evaluations. The polynomial must change sign on [lo, hi].
double find_root(const std::vector<long>& poly, const mpq_class& lo,
                 const mpq_class& hi);

// Combines component asymptotics into r(X_n, Y_n) ~ amp * base^n for the
// six index pairs. The E(X)E(Y) product term dominates or co-dominates
// according to the base comparison b_XY vs b_X*b_Y; the result is
// normalized by sqrt of the leading variance terms.
std::vector<CorrelationAsymptotic> compose_correlations(const Catalog& cat);

struct ConvergenceRow {
  std::int64_t n;
  double exact_value;
  double asymptotic_value;
  double ratio;  // exact / asymptotic
};

// Exact series value against the catalog asymptotic for n in [n_min, n_max].
// Variances are normalized by the two-term form A_XX b_XX^n - (A_X b_X^n)^2;
// the one-term leading form converges too slowly to witness below n ~ 10^3.
std::vector<ConvergenceRow> convergence_report(const std::string& quantity,
                                               std::int64_t n_max,
                                               std::int64_t n_min = 1);

struct GrowthCheck {
  SystemId system;
  double estimate;   // fitted 1/z0
  double reference;  // 1/z0 from the catalog
  double rel_error;
  double error_band;
  bool inside_interval;  // 1/estimate within the documented radius bounds
};

// Domb-Sykes checks for the six pair systems, window = upper half of order.
std::vector<GrowthCheck> growth_checks(std::int64_t order);

}  // namespace planetree
