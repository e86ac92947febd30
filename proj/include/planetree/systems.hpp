#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "planetree/series.hpp"

namespace planetree {

// Functional-equation systems solved by z-adic fixed-point iteration.
// Single-index systems come first, then pair systems (joint generating
// functions of two indices), then the distance-weighted systems.
enum class SystemId {
  T,
  S,
  Z,
  R,
  D,
  W,
  SZ,
  SR,
  ZR,
  SS,
  ZZ,
  RR,
  DSWS,
  DZWZ,
  DRWR,
};

const std::vector<SystemId>& all_systems();
const std::string& system_name(SystemId id);
SystemId system_from_name(const std::string& name);

// Unknowns in canonical order, e.g. SZ -> {SZ11, SZ12, SZ21, SZ22}.
const std::vector<std::string>& unknown_names(SystemId id);

// Enumerator monomial whose per-n aggregate equals the unknown's
// coefficients, e.g. SZ21 -> "sigma2*z1". The empty monomial is "1".
const std::string& unknown_tag(SystemId id, const std::string& unknown);
const std::string& total_tag(SystemId id);

struct SystemSolution {
  SystemId id;
  std::int64_t order;
  // canonical unknown order, each series at `order`
  std::vector<std::pair<std::string, Series>> unknowns;
  Series total;

  const Series& unknown(const std::string& name) const;
};

// Solves the system (and its dependencies, recursively) to the requested
// order. Iterates from the zero vector; after k iterations coefficients
// up to z^k are exact, so N+1 iterations converge and one extra iteration
// verifies stability. Results are memoized per process; a cached solution
// of higher order is sliced down. Every unknown is validated to have
// nonnegative integer coefficients.
SystemSolution solve(SystemId id, std::int64_t order);

// Integer polynomial in (z, s), stored as explicit terms coeff*z^zpow*s^spow.
struct BivariateTerm {
  std::int64_t zpow;
  std::int64_t spow;
  long coeff;
};

struct BivariatePoly {
  std::string name;
  std::vector<BivariateTerm> terms;
};

// P(z, s(z)) truncated at s.order()
Series evaluate_bivariate(const BivariatePoly& poly, const Series& s);

// true iff P(z, s(z)) == 0 modulo z^{order+1}
bool verify_annihilator(const Series& s, const BivariatePoly& poly);

// Known annihilating polynomials, keyed by the series they annihilate:
// "S2", "Z2", "SZ22", "SR11", "SS_total", "ZZ_total".
const std::vector<BivariatePoly>& annihilator_catalog();
const BivariatePoly& annihilator(const std::string& name);

// Square-root closed forms, keys {q1, q2, T, R1, R2, D, W}:
//   q1 = sqrt(1-4z), q2 = sqrt(2(1-10z+q1)), T = (1-q1)/2,
//   R1 = (1+q1-q2)/4, R2 = R1(1-q1)/(2q1),
//   D = 2z^2/(q1^2(1+q1)), W = z^2/q1^4.
// Every form except q1, q2 must vanish at z=0 (branch check).
std::map<std::string, Series> closed_forms(std::int64_t order);

}  // namespace planetree
