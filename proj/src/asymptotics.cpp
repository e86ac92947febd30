#include "planetree/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace planetree {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

int priority(IndexName x) {
  switch (x) {
    case IndexName::Wiener: return 0;
    case IndexName::Sigma: return 1;
    case IndexName::Z: return 2;
    case IndexName::Rho: return 3;
  }
  return 4;
}

std::string e_key(IndexName x) { return "E(" + index_name(x) + ")"; }
std::string var_key(IndexName x) { return "Var(" + index_name(x) + ")"; }

std::string cross_key(IndexName x, IndexName y) {
  if (priority(x) > priority(y)) std::swap(x, y);
  return "E(" + index_name(x) + "*" + index_name(y) + ")";
}

Catalog build_catalog() {
  const double s13 = std::sqrt(13.0);
  const double s5 = std::sqrt(5.0);
  const double b_z = (35.0 + 13.0 * s13) / 54.0;

  Catalog cat;
  cat.constants = {
      {"E(sigma)", std::sqrt(3.0) * 16.0 / 27.0, 27.0 / 16.0, 0,
       "sqrt(3)*16/27 * (27/16)^n", "exact form"},
      {"E(z)", std::sqrt((65.0 - s13) / 78.0), b_z, 0,
       "sqrt((65-sqrt(13))/78) * ((35+13*sqrt(13))/54)^n", "exact form"},
      {"E(rho)", 16.0 / (3.0 * std::sqrt(15.0)), 25.0 / 16.0, 0,
       "16/(3*sqrt(15)) * (25/16)^n", "exact form"},
      {"E(wiener)", std::sqrt(kPi) / 4.0, 1.0, 2.5,
       "sqrt(pi)/4 * n^(5/2)", "exact form"},
      {"E(sigma*z)", 0.92565, 2.54408, 0, "0.92565 * 2.54408^n",
       "reference decimal"},
      {"E(sigma*rho)", 1.36653, 2.66477, 0, "1.36653 * 2.66477^n",
       "reference decimal"},
      {"E(z*rho)", std::sqrt(5.0 * (128985.0 + 57683.0 * s5) / 58.0) / 116.0,
       8.0 * (7.0 - 3.0 * s5), 0,
       "sqrt(5*(128985+57683*sqrt(5))/58)/116 * (8*(7-3*sqrt(5)))^n",
       "exact form"},
      {"E(wiener*sigma)", 20.0 * std::sqrt(kPi) / 81.0, 27.0 / 16.0, 2.5,
       "20*sqrt(pi)/81 * n^(5/2) * (27/16)^n", "exact form"},
      {"E(wiener*z)", (91.0 - 5.0 * s13) * std::sqrt(kPi) / 312.0, b_z, 2.5,
       "(91-5*sqrt(13))*sqrt(pi)/312 * n^(5/2) * ((35+13*sqrt(13))/54)^n",
       "exact form"},
      {"E(wiener*rho)", 4.0 * std::sqrt(kPi) / 15.0, 25.0 / 16.0, 2.5,
       "4*sqrt(pi)/15 * n^(5/2) * (25/16)^n", "exact form"},
      {"Var(sigma)", 1.03802, 2.86096, 0, "1.03802 * 2.86096^n",
       "reference decimal"},
      {"Var(z)", 0.77227, 2.31549, 0, "0.77227 * 2.31549^n",
       "reference decimal"},
      {"Var(rho)", 64.0 * std::sqrt(14.0) / 147.0, 81.0 / 32.0, 0,
       "64*sqrt(14)/147 * (81/32)^n", "exact form"},
      {"Var(wiener)", (16.0 - 5.0 * kPi) / 80.0, 1.0, 5,
       "(16-5*pi)/80 * n^5", "exact form"},
  };

  cat.correlations = {
      {IndexName::Sigma, IndexName::Z, -1.01706, 0.99405},
      {IndexName::Sigma, IndexName::Rho, 1.05088, 0.99023},
      {IndexName::Z, IndexName::Rho, -1.08924, 0.97853},
      {IndexName::Wiener, IndexName::Sigma, -0.27891, 0.99767},
      {IndexName::Wiener, IndexName::Z, 0.40351, 0.99637},
      {IndexName::Wiener, IndexName::Rho, -1.78357, 0.98209},
  };

  using Poly = std::vector<long>;
  const Poly t_poly = {-1, 4};
  const Poly s_poly = {-4, 27};
  const Poly z_poly = {-27, 140, 144};
  const Poly r_poly = {-4, 25};
  const Poly sr_cubic = {3844, -40936, -412, 125};
  const Poly sr_quad = {81, 0, 8};  // no real roots
  const Poly zr_quad = {1, -448, 4096};
  const Poly zr_conj = {531441, 2894400, 2560000};  // no positive real roots
  const Poly rr_poly = {-8, 81};
  auto br = [](long nl, long dl, long nh, long dh) {
    return std::make_pair(mpq_class(nl, dl), mpq_class(nh, dh));
  };

  cat.singularities = {
      {SystemId::T, 0.25, "1/4", t_poly, br(1, 5, 3, 10), std::nullopt,
       {t_poly}},
      {SystemId::S, 4.0 / 27.0, "4/27", s_poly, br(1, 10, 1, 5), std::nullopt,
       {s_poly}},
      {SystemId::Z, (13.0 * s13 - 35.0) / 72.0, "(13*sqrt(13)-35)/72", z_poly,
       br(3, 20, 9, 50), std::nullopt, {z_poly}},
      {SystemId::R, 0.16, "4/25", r_poly, br(3, 20, 17, 100), std::nullopt,
       {r_poly}},
      {SystemId::SZ, 0.0982673, "", {}, std::nullopt,
       std::pair{1.0 / 16.0, (13.0 * s13 - 35.0) * (s5 - 1.0) / 144.0}, {}},
      {SystemId::SR, 0.0938166, "", sr_cubic, br(9, 100, 1, 10),
       std::pair{1.0 / 16.0, 2.0 * (s5 - 1.0) / 25.0},
       {s_poly, sr_quad, sr_quad, sr_cubic}},
      {SystemId::ZR, (7.0 + 3.0 * s5) / 128.0, "(7+3*sqrt(5))/128", zr_quad,
       br(1, 10, 11, 100), std::pair{1.0 / 16.0, 4.0 / 25.0},
       {zr_quad, zr_conj}},
      {SystemId::SS, 0.0873832, "", {}, std::nullopt,
       std::pair{1.0 / 16.0, 64.0 / 729.0}, {}},
      {SystemId::ZZ, 0.107969, "", {}, std::nullopt,
       std::pair{1.0 / 16.0, (1711.0 - 455.0 * s13) / 648.0}, {}},
      {SystemId::RR, 8.0 / 81.0, "8/81", rr_poly, br(9, 100, 1, 10),
       std::pair{1.0 / 16.0, 64.0 / 625.0}, {rr_poly}},
  };
  return cat;
}

struct QuantitySpec {
  bool is_var;
  std::vector<IndexName> operands;  // one or two
};

QuantitySpec parse_quantity(const std::string& q) {
  QuantitySpec spec;
  std::string inner;
  if (q.size() > 3 && q.compare(0, 2, "E(") == 0 && q.back() == ')') {
    spec.is_var = false;
    inner = q.substr(2, q.size() - 3);
  } else if (q.size() > 5 && q.compare(0, 4, "Var(") == 0 && q.back() == ')') {
    spec.is_var = true;
    inner = q.substr(4, q.size() - 5);
  } else {
    throw std::invalid_argument("unknown quantity '" + q +
                                "'; expected E(...) or Var(...)");
  }
  std::size_t star = inner.find('*');
  if (star == std::string::npos) {
    spec.operands = {index_from_name(inner)};
  } else {
    spec.operands = {index_from_name(inner.substr(0, star)),
                     index_from_name(inner.substr(star + 1))};
  }
  if (spec.is_var && spec.operands.size() != 1) {
    throw std::invalid_argument("unknown quantity '" + q + "'");
  }
  return spec;
}

}  // namespace

const AsymptoticConstant& Catalog::constant(const std::string& quantity) const {
  for (const auto& c : constants) {
    if (c.quantity == quantity) return c;
  }
  throw std::invalid_argument("no catalog constant for " + quantity);
}

const CorrelationAsymptotic& Catalog::correlation(IndexName x,
                                                  IndexName y) const {
  for (const auto& c : correlations) {
    if ((c.x == x && c.y == y) || (c.x == y && c.y == x)) return c;
  }
  throw std::invalid_argument("no catalog correlation for (" + index_name(x) +
                              ", " + index_name(y) + ")");
}

const SingularityRecord& Catalog::singularity(SystemId id) const {
  for (const auto& s : singularities) {
    if (s.system == id) return s;
  }
  throw std::invalid_argument("no singularity record for system " +
                              system_name(id));
}

const Catalog& reference_catalog() {
  static const Catalog cat = build_catalog();
  return cat;
}

std::pair<double, double> estimate_growth(const Series& total,
                                          std::int64_t n_lo,
                                          std::int64_t n_hi) {
  if (n_lo < 1 || n_hi <= n_lo + 1) {
    throw std::invalid_argument("estimate_growth: window must satisfy 1 <= n_lo < n_hi - 1");
  }
  if (n_hi > total.order()) {
    throw std::invalid_argument("estimate_growth: window exceeds series order");
  }
  for (std::int64_t n = n_lo; n <= n_hi; ++n) {
    if (sgn(total[n]) <= 0) {
      throw std::domain_error("estimate_growth: nonpositive coefficient at z^" +
                              std::to_string(n));
    }
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const std::int64_t m = n_hi - n_lo;
  std::vector<double> xs(m), ys(m);
  for (std::int64_t i = 0; i < m; ++i) {
    const std::int64_t n = n_lo + i;
    mpq_class ratio = total[n + 1] / total[n];
    xs[i] = 1.0 / static_cast<double>(n);
    ys[i] = ratio.get_d();
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double md = static_cast<double>(m);
  const double denom = md * sxx - sx * sx;
  const double a = (sy * sxx - sx * sxy) / denom;
  const double b = (md * sxy - sx * sy) / denom;
  double ss = 0;
  for (std::int64_t i = 0; i < m; ++i) {
    const double resid = ys[i] - a - b * xs[i];
    ss += resid * resid;
  }
  return {a, std::sqrt(ss / md)};
}

double find_root(const std::vector<long>& poly, const mpq_class& lo0,
                 const mpq_class& hi0) {
  if (poly.empty()) {
    throw std::invalid_argument("find_root: empty polynomial");
  }
  if (!(lo0 < hi0)) {
    throw std::invalid_argument("find_root: empty bracket");
  }
  auto eval_sign = [&poly](const mpq_class& x) {
    mpq_class acc = 0;
    for (auto it = poly.rbegin(); it != poly.rend(); ++it) {
      acc = acc * x + *it;
    }
    return sgn(acc);
  };
  mpq_class lo = lo0, hi = hi0;
  const int s_lo = eval_sign(lo);
  if (s_lo == 0) return lo.get_d();
  if (eval_sign(hi) == 0) return hi.get_d();
  if (s_lo == eval_sign(hi)) {
    throw std::invalid_argument("find_root: no sign change on the bracket");
  }
  const mpq_class target_width(1, 1000000000000L);
  while (hi - lo > target_width) {
    mpq_class mid = (lo + hi) / 2;
    const int s_mid = eval_sign(mid);
    if (s_mid == 0) {
      lo = mid;
      hi = mid;
      break;
    }
    (s_mid == s_lo ? lo : hi) = mid;
  }
  return mpq_class((lo + hi) / 2).get_d();
}

std::vector<CorrelationAsymptotic> compose_correlations(const Catalog& cat) {
  const std::pair<IndexName, IndexName> pairs[] = {
      {IndexName::Sigma, IndexName::Z},
      {IndexName::Sigma, IndexName::Rho},
      {IndexName::Z, IndexName::Rho},
      {IndexName::Wiener, IndexName::Sigma},
      {IndexName::Wiener, IndexName::Z},
      {IndexName::Wiener, IndexName::Rho},
  };
  std::vector<CorrelationAsymptotic> out;
  out.reserve(6);
  for (const auto& [x, y] : pairs) {
    const AsymptoticConstant& cxy = cat.constant(cross_key(x, y));
    const AsymptoticConstant& cx = cat.constant(e_key(x));
    const AsymptoticConstant& cy = cat.constant(e_key(y));
    const AsymptoticConstant& vx = cat.constant(var_key(x));
    const AsymptoticConstant& vy = cat.constant(var_key(y));
    // Cov = E(XY) - E(X)E(Y): both terms grow like base^n up to n-powers,
    // and the larger base wins; equal bases cancel at the amplitude level.
    const double b_prod = cx.base * cy.base;
    double amp_num, base_num;
    if (std::abs(cxy.base - b_prod) <= 1e-9 * cxy.base) {
      amp_num = cxy.amplitude - cx.amplitude * cy.amplitude;
      base_num = cxy.base;
    } else if (cxy.base < b_prod) {
      amp_num = -(cx.amplitude * cy.amplitude);
      base_num = b_prod;
    } else {
      amp_num = cxy.amplitude;
      base_num = cxy.base;
    }
    out.push_back({x, y, amp_num / std::sqrt(vx.amplitude * vy.amplitude),
                   base_num / std::sqrt(vx.base * vy.base)});
  }
  return out;
}

std::vector<ConvergenceRow> convergence_report(const std::string& quantity,
                                               std::int64_t n_max,
                                               std::int64_t n_min) {
  if (n_min < 1 || n_max < n_min) {
    throw std::invalid_argument("convergence_report: bad n range");
  }
  const QuantitySpec spec = parse_quantity(quantity);
  const Catalog& cat = reference_catalog();

  if (spec.is_var) {
    const IndexName x = spec.operands[0];
    auto sq = index_square_system(x);
    if (!sq) {
      throw std::invalid_argument(
          "convergence_report: Var(wiener) has no exact series source");
    }
    const Series sqs = solve(*sq, n_max).total;
    const Series tot = solve(index_single_system(x), n_max).total;
    const AsymptoticConstant& cv = cat.constant(var_key(x));
    const AsymptoticConstant& ce = cat.constant(e_key(x));
    std::vector<ConvergenceRow> rows;
    rows.reserve(n_max - n_min + 1);
    for (std::int64_t n = n_min; n <= n_max; ++n) {
      mpq_class e = expected(tot, n);
      const double exact = mpq_class(expected(sqs, n) - e * e).get_d();
      const double lead = cv.amplitude * std::pow(cv.base, n);
      const double mean = ce.amplitude * std::pow(ce.base, n);
      const double asym = lead - mean * mean;
      rows.push_back({n, exact, asym, exact / asym});
    }
    return rows;
  }

  const AsymptoticConstant& c =
      spec.operands.size() == 1
          ? cat.constant(e_key(spec.operands[0]))
          : cat.constant(cross_key(spec.operands[0], spec.operands[1]));
  const SystemId sys =
      spec.operands.size() == 1
          ? index_single_system(spec.operands[0])
          : index_cross_system(spec.operands[0], spec.operands[1]);
  const Series tot = solve(sys, n_max).total;
  std::vector<ConvergenceRow> rows;
  rows.reserve(n_max - n_min + 1);
  for (std::int64_t n = n_min; n <= n_max; ++n) {
    const double exact = expected(tot, n).get_d();
    const double asym = c.amplitude * std::pow(c.base, n) *
                        std::pow(static_cast<double>(n), c.npow);
    rows.push_back({n, exact, asym, exact / asym});
  }
  return rows;
}

std::vector<GrowthCheck> growth_checks(std::int64_t order) {
  const SystemId ids[] = {SystemId::SZ, SystemId::SR, SystemId::ZR,
                          SystemId::SS, SystemId::ZZ, SystemId::RR};
  std::vector<GrowthCheck> out;
  out.reserve(6);
  for (SystemId id : ids) {
    const Series tot = solve(id, order).total;
    auto [a, band] = estimate_growth(tot, order / 2, order);
    const SingularityRecord& rec = reference_catalog().singularity(id);
    const double ref = 1.0 / rec.z0;
    bool inside = true;
    if (rec.radius_interval) {
      const double radius = 1.0 / a;
      inside = radius >= rec.radius_interval->first &&
               radius <= rec.radius_interval->second;
    }
    out.push_back({id, a, ref, std::abs(a - ref) / ref, band, inside});
  }
  return out;
}

}  // namespace planetree
