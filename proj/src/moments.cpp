#include "planetree/moments.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <utility>

#include "planetree/systems.hpp"

namespace planetree {

namespace {

const std::string kIndexNames[] = {"sigma", "z", "rho", "wiener"};
const std::string kIndexTags[] = {"sigma", "z", "rho", "w"};

}  // namespace

SystemId index_single_system(IndexName x) {
  switch (x) {
    case IndexName::Sigma: return SystemId::S;
    case IndexName::Z: return SystemId::Z;
    case IndexName::Rho: return SystemId::R;
    case IndexName::Wiener: return SystemId::W;
  }
  throw std::logic_error("index_single_system: bad index");
}

std::optional<SystemId> index_square_system(IndexName x) {
  switch (x) {
    case IndexName::Sigma: return SystemId::SS;
    case IndexName::Z: return SystemId::ZZ;
    case IndexName::Rho: return SystemId::RR;
    case IndexName::Wiener: return std::nullopt;
  }
  throw std::logic_error("index_square_system: bad index");
}

SystemId index_cross_system(IndexName x, IndexName y) {
  auto pair_is = [&](IndexName a, IndexName b) {
    return (x == a && y == b) || (x == b && y == a);
  };
  if (pair_is(IndexName::Sigma, IndexName::Z)) return SystemId::SZ;
  if (pair_is(IndexName::Sigma, IndexName::Rho)) return SystemId::SR;
  if (pair_is(IndexName::Z, IndexName::Rho)) return SystemId::ZR;
  if (pair_is(IndexName::Wiener, IndexName::Sigma)) return SystemId::DSWS;
  if (pair_is(IndexName::Wiener, IndexName::Z)) return SystemId::DZWZ;
  if (pair_is(IndexName::Wiener, IndexName::Rho)) return SystemId::DRWR;
  throw std::invalid_argument("index_cross_system: unsupported pair");
}

namespace {

constexpr int kGuardDigits = 40;

// lo <= sqrt(v) <= hi with hi - lo < 10^-kGuardDigits / den(v)
std::pair<mpq_class, mpq_class> sqrt_interval(const mpq_class& v) {
  mpz_class scale2;
  mpz_ui_pow_ui(scale2.get_mpz_t(), 10, 2 * kGuardDigits);
  mpz_class nd = v.get_num() * v.get_den() * scale2;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), nd.get_mpz_t());
  mpz_class scale1;
  mpz_ui_pow_ui(scale1.get_mpz_t(), 10, kGuardDigits);
  mpz_class denom = v.get_den() * scale1;
  mpq_class lo(root, denom);
  lo.canonicalize();
  mpq_class hi(root + 1, denom);
  hi.canonicalize();
  return {lo, hi};
}

CorrelationValue make_r(const mpq_class& cov,
                        const std::optional<mpq_class>& var_x,
                        const std::optional<mpq_class>& var_y) {
  CorrelationValue out;
  if (!var_x || !var_y) {
    out.kind = CorrelationValue::Kind::Unavailable;
    return out;
  }
  mpq_class prod = *var_x * *var_y;
  if (sgn(prod) < 0) {
    throw std::logic_error("negative variance product");
  }
  if (prod == 0) {
    out.kind = CorrelationValue::Kind::Undefined;
    return out;
  }
  if (mpz_perfect_square_p(prod.get_num().get_mpz_t()) &&
      mpz_perfect_square_p(prod.get_den().get_mpz_t())) {
    mpz_class sn, sd;
    mpz_sqrt(sn.get_mpz_t(), prod.get_num().get_mpz_t());
    mpz_sqrt(sd.get_mpz_t(), prod.get_den().get_mpz_t());
    mpq_class root(sn, sd);
    root.canonicalize();
    out.kind = CorrelationValue::Kind::Exact;
    out.exact = cov / root;
    out.approx = out.exact.get_d();
    return out;
  }
  auto [lo, hi] = sqrt_interval(prod);
  mpq_class r_lo = cov / hi;
  mpq_class r_hi = cov / lo;
  if (r_lo > r_hi) std::swap(r_lo, r_hi);
  out.kind = CorrelationValue::Kind::Decimal;
  mpq_class mid = (r_lo + r_hi) / 2;
  out.approx = mid.get_d();
  out.error_bound = mpq_class(r_hi - r_lo).get_d();
  return out;
}

// E(W_n^2) from an exhaustive sweep; the only variance with no series source
mpq_class wiener_square_expectation(std::int64_t n, std::int64_t cap) {
  AggregateRow agg = aggregate(n, {"w^2"}, cap);
  mpq_class e(agg.sums[0].second, agg.count);
  e.canonicalize();
  return e;
}

MomentRow finish_row(std::int64_t n, mpq_class e_x, mpq_class e_y,
                     mpq_class e_xy, std::optional<mpq_class> var_x,
                     std::optional<mpq_class> var_y) {
  MomentRow row;
  row.n = n;
  row.cov = e_xy - e_x * e_y;
  row.e_x = std::move(e_x);
  row.e_y = std::move(e_y);
  row.e_xy = std::move(e_xy);
  row.var_x = std::move(var_x);
  row.var_y = std::move(var_y);
  row.r = make_r(row.cov, row.var_x, row.var_y);
  return row;
}

}  // namespace

IndexName index_from_name(const std::string& name) {
  for (int i = 0; i < 4; ++i) {
    if (kIndexNames[i] == name) return static_cast<IndexName>(i);
  }
  throw std::invalid_argument(
      "unknown index '" + name + "'; valid: sigma z rho wiener");
}

const std::string& index_name(IndexName x) {
  return kIndexNames[static_cast<int>(x)];
}

std::string CorrelationValue::to_string() const {
  switch (kind) {
    case Kind::Undefined: return "undefined";
    case Kind::Unavailable: return "unavailable";
    case Kind::Exact: return coeff_to_string(exact);
    case Kind::Decimal: {
      char buf[64];
      std::snprintf(buf, sizeof(buf), "%.15g", approx);
      return buf;
    }
  }
  return "undefined";
}

double CorrelationValue::as_double() const {
  switch (kind) {
    case Kind::Exact:
    case Kind::Decimal: return approx;
    default: return std::nan("");
  }
}

mpq_class expected(const Series& total, std::int64_t n) {
  if (n < 1 || n > total.order()) {
    throw std::out_of_range("expected: n = " + std::to_string(n) +
                            " out of range for order " +
                            std::to_string(total.order()));
  }
  mpq_class e = total[n] / mpq_class(tree_count(n));
  return e;
}

std::vector<MomentRow> correlation_table(IndexName x, IndexName y,
                                         std::int64_t n_max,
                                         std::int64_t enum_cap) {
  if (x == IndexName::Wiener && y == IndexName::Wiener) {
    throw std::invalid_argument(
        "correlation_table: pair (wiener, wiener) is unsupported; E(W^2) "
        "has no series source");
  }
  if (n_max < 1) {
    throw std::invalid_argument("correlation_table: n_max must be >= 1");
  }
  const Series tx = solve(index_single_system(x), n_max).total;
  const Series ty = solve(index_single_system(y), n_max).total;
  const Series txy = x == y ? solve(*index_square_system(x), n_max).total
                            : solve(index_cross_system(x, y), n_max).total;
  std::optional<Series> sxx, syy;
  if (auto sq = index_square_system(x)) sxx = solve(*sq, n_max).total;
  if (auto sq = index_square_system(y)) syy = solve(*sq, n_max).total;

  auto variance_at = [&](const std::optional<Series>& sq, const mpq_class& e,
                         std::int64_t n) -> std::optional<mpq_class> {
    if (sq) return expected(*sq, n) - e * e;
    if (n <= enum_cap) return wiener_square_expectation(n, enum_cap) - e * e;
    return std::nullopt;
  };

  std::vector<MomentRow> rows;
  rows.reserve(n_max);
  for (std::int64_t n = 1; n <= n_max; ++n) {
    mpq_class e_x = expected(tx, n);
    mpq_class e_y = expected(ty, n);
    mpq_class e_xy = expected(txy, n);
    std::optional<mpq_class> var_x = variance_at(sxx, e_x, n);
    std::optional<mpq_class> var_y =
        x == y ? var_x : variance_at(syy, e_y, n);
    rows.push_back(finish_row(n, std::move(e_x), std::move(e_y),
                              std::move(e_xy), std::move(var_x),
                              std::move(var_y)));
  }
  return rows;
}

MomentRow enumeration_row(IndexName x, IndexName y, std::int64_t n,
                          std::int64_t enum_cap) {
  if (x == IndexName::Wiener && y == IndexName::Wiener) {
    throw std::invalid_argument(
        "enumeration_row: pair (wiener, wiener) is unsupported");
  }
  const std::string& tag_x = kIndexTags[static_cast<int>(x)];
  const std::string& tag_y = kIndexTags[static_cast<int>(y)];
  mpz_class count = 0, sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
  TreeStream stream(n, enum_cap);
  while (auto t = stream.next()) {
    IndexBundle b = compute_indices(*t);
    mpz_class vx = monomial_value(b, tag_x);
    mpz_class vy = monomial_value(b, tag_y);
    count += 1;
    sx += vx;
    sy += vy;
    sxy += vx * vy;
    sxx += vx * vx;
    syy += vy * vy;
  }
  auto ratio = [&](const mpz_class& num) {
    mpq_class q(num, count);
    q.canonicalize();
    return q;
  };
  mpq_class e_x = ratio(sx), e_y = ratio(sy), e_xy = ratio(sxy);
  mpq_class var_x = ratio(sxx) - e_x * e_x;
  mpq_class var_y = ratio(syy) - e_y * e_y;
  return finish_row(n, std::move(e_x), std::move(e_y), std::move(e_xy),
                    std::move(var_x), std::move(var_y));
}

bool rows_equal(const MomentRow& a, const MomentRow& b) {
  if (a.n != b.n || a.e_x != b.e_x || a.e_y != b.e_y || a.e_xy != b.e_xy ||
      a.cov != b.cov || a.var_x != b.var_x || a.var_y != b.var_y) {
    return false;
  }
  if (a.r.kind != b.r.kind) return false;
  switch (a.r.kind) {
    case CorrelationValue::Kind::Exact: return a.r.exact == b.r.exact;
    case CorrelationValue::Kind::Decimal: return a.r.approx == b.r.approx;
    default: return true;
  }
}

}  // namespace planetree
