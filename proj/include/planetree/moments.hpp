#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "planetree/enumerate.hpp"
#include "planetree/series.hpp"
#include "planetree/systems.hpp"

namespace planetree {

enum class IndexName { Sigma, Z, Rho, Wiener };

IndexName index_from_name(const std::string& name);
const std::string& index_name(IndexName x);

// Generating-function systems backing each index and index pair.
// index_square_system is empty for Wiener: no w^2 series exists.
SystemId index_single_system(IndexName x);
std::optional<SystemId> index_square_system(IndexName x);
SystemId index_cross_system(IndexName x, IndexName y);

// Correlation coefficient with its provenance:
//   Exact       cov / sqrt(varX*varY) where the product is a rational square
//   Decimal     interval square root, 40 guard digits; |hi-lo| <= error_bound
//   Undefined   varX*varY == 0 (degenerate, e.g. n = 1)
//   Unavailable a Wiener variance past the enumeration cap
struct CorrelationValue {
  enum class Kind { Undefined, Exact, Decimal, Unavailable };

  Kind kind = Kind::Undefined;
  mpq_class exact;
  double approx = 0.0;
  double error_bound = 0.0;

  std::string to_string() const;
  double as_double() const;  // NaN when not numeric
};

struct MomentRow {
  std::int64_t n = 0;
  mpq_class e_x, e_y, e_xy, cov;
  // absent only for a Wiener index past the enumeration cap
  std::optional<mpq_class> var_x, var_y;
  CorrelationValue r;
};

// [z^n] total / t_n
mpq_class expected(const Series& total, std::int64_t n);

// Exact moment rows for n = 1..n_max, built from the generating-function
// systems. Var(wiener) has no series source and falls back to enumeration,
// so Wiener-pair correlations past enum_cap come out Unavailable.
// The pair (wiener, wiener) is unsupported.
std::vector<MomentRow> correlation_table(
    IndexName x, IndexName y, std::int64_t n_max,
    std::int64_t enum_cap = kDefaultEnumerationCap);

// The same row computed by exhaustive enumeration; oracle for the above.
MomentRow enumeration_row(IndexName x, IndexName y, std::int64_t n,
                          std::int64_t enum_cap = kDefaultEnumerationCap);

bool rows_equal(const MomentRow& a, const MomentRow& b);

}  // namespace planetree
