// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on failure.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "planetree/asymptotics.hpp"
#include "planetree/enumerate.hpp"
#include "planetree/moments.hpp"
#include "planetree/sample.hpp"
#include "planetree/systems.hpp"

using namespace planetree;

namespace {

int g_failures = 0;

void report(int k, bool ok, const std::string& what,
            const std::string& detail = "") {
  std::string line = std::string(ok ? "PASS" : "FAIL") + " criterion " +
                     std::to_string(k) + ": " + what;
  if (!detail.empty()) line += " (" + detail + ")";
  std::puts(line.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// ------------------------------------------------------------- criterion 1

bool oracle_equivalence(std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  for (SystemId id : all_systems()) {
    const SystemSolution sol = solve(id, 10);
    std::vector<std::string> tags;
    for (std::size_t i = 0; i < sol.unknowns.size(); ++i)
      tags.push_back(unknown_tag(id, sol.unknowns[i].first));
    tags.push_back(total_tag(id));
    for (std::int64_t n = 1; n <= 10; ++n) {
      const AggregateRow agg = aggregate(n, tags);
      for (std::size_t i = 0; i < sol.unknowns.size(); ++i) {
        if (sol.unknowns[i].second[n] != agg.sums[i].second) {
          detail = system_name(id) + "." + sol.unknowns[i].first +
                   " mismatch at n=" + std::to_string(n);
          return false;
        }
      }
      if (sol.total[n] != agg.sums.back().second) {
        detail = system_name(id) + " total mismatch at n=" + std::to_string(n);
        return false;
      }
    }
  }
  const double dt = seconds_since(t0);
  char buf[64];
  std::snprintf(buf, sizeof buf, "15 systems, %.1fs", dt);
  detail = buf;
  return dt < 120.0;
}

// ------------------------------------------------------------- criterion 2

bool annihilators(std::string& detail) {
  const std::int64_t N = 40;
  const std::pair<const char*, Series> targets[] = {
      {"SZ22", solve(SystemId::SZ, N).unknown("SZ22")},
      {"SR11", solve(SystemId::SR, N).unknown("SR11")},
      {"SS_total", solve(SystemId::SS, N).total},
      {"ZZ_total", solve(SystemId::ZZ, N).total},
  };
  for (const auto& [name, s] : targets) {
    if (!verify_annihilator(s, annihilator(name))) {
      detail = std::string(name) + " does not vanish";
      return false;
    }
  }
  return true;
}

// ------------------------------------------------------------- criterion 3

bool closed_form_equalities(std::string& detail) {
  const std::int64_t N = 50;
  const auto forms = closed_forms(N);
  const std::pair<const char*, std::pair<SystemId, const char*>> checks[] = {
      {"T", {SystemId::T, "T"}},   {"R1", {SystemId::R, "R1"}},
      {"R2", {SystemId::R, "R2"}}, {"D", {SystemId::D, "D"}},
      {"W", {SystemId::W, "W"}},
  };
  for (const auto& [key, src] : checks) {
    if (!(forms.at(key) == solve(src.first, N).unknown(src.second))) {
      detail = std::string("closed form ") + key + " differs";
      return false;
    }
  }

  const SystemSolution s = solve(SystemId::S, N);
  const Series inv2 = series_inv1m(s.unknown("S2"));
  if (!(s.unknown("S1") == series_mulz(inv2))) {
    detail = "S1 = z/(1-S2) fails";
    return false;
  }
  if (!(s.unknown("S2") == series_mulz(series_mul(inv2, inv2)))) {
    detail = "z/(1-S2)^2 = S2 fails";
    return false;
  }
  const SystemSolution z = solve(SystemId::Z, N);
  const Series z2 = z.unknown("Z2");
  if (!(series_divz(series_mul(series_mul(z2, z2), z2), 1) ==
        z.unknown("Z1").truncated(N - 1))) {
    detail = "Z1 = Z2^3/z fails";
    return false;
  }
  const SystemSolution sz = solve(SystemId::SZ, N);
  if (!(series_sub(Series::one(N - 1),
                   series_inv_unit(series_divz(sz.unknown("SZ22"), 1))) ==
        sz.total.truncated(N - 1))) {
    detail = "SZ = 1 - z/SZ22 fails";
    return false;
  }
  return true;
}

// ------------------------------------------------------------- criterion 4

bool growth_estimates(std::string& detail) {
  const auto checks = growth_checks(300);
  double worst = 0.0;
  for (const GrowthCheck& g : checks) {
    worst = std::max(worst, g.rel_error);
    if (g.rel_error > 0.002) {
      detail = system_name(g.system) + " off by " +
               std::to_string(g.rel_error * 100) + "%";
      return false;
    }
    if (!g.inside_interval) {
      detail = system_name(g.system) + " outside its radius interval";
      return false;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "worst relative error %.3e", worst);
  detail = buf;
  return true;
}

// ------------------------------------------------------------- criterion 5

int sign_at(const std::vector<long>& poly, const mpq_class& x) {
  mpq_class acc;
  for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
  return sgn(acc);
}

bool polynomial_roots(std::string& detail) {
  const Catalog& cat = reference_catalog();
  const mpq_class eps = mpq_class(1) / mpq_class(1e10);

  const SingularityRecord& sr = cat.singularity(SystemId::SR);
  const double cubic_root =
      find_root(sr.poly, sr.bracket->first, sr.bracket->second);
  if (std::fabs(cubic_root - 0.0938166) > 5e-8) {
    detail = "cubic root " + std::to_string(cubic_root);
    return false;
  }
  // the true root lies within 1e-10: exact sign change across the window
  if (sign_at(sr.poly, mpq_class(cubic_root) - eps) *
          sign_at(sr.poly, mpq_class(cubic_root) + eps) >=
      0) {
    detail = "cubic root not isolated to 1e-10";
    return false;
  }

  const SingularityRecord& zr = cat.singularity(SystemId::ZR);
  const double quad_root =
      find_root(zr.poly, zr.bracket->first, zr.bracket->second);
  const double quad_exact = (7.0 + 3.0 * std::sqrt(5.0)) / 128.0;
  if (std::fabs(quad_root - quad_exact) > 1e-10) {
    detail = "quadratic root off by " +
             std::to_string(std::fabs(quad_root - quad_exact));
    return false;
  }
  return true;
}

// ---------------------------------------------------------- criteria 6 & 7

struct TrendSpec {
  const char* quantity;
  std::int64_t n0;  // recorded onset of the monotone error decrease
};

bool mean_asymptotics(std::string& detail) {
  // n0 values recorded from this implementation's own convergence tables
  const TrendSpec specs[] = {
      {"E(sigma)", 1},     {"E(z)", 3},        {"E(rho)", 6},
      {"E(sigma*z)", 3},   {"E(sigma*rho)", 5}, {"E(z*rho)", 6},
      {"Var(sigma)", 69},  {"Var(z)", 7},      {"Var(rho)", 27},
  };
  double worst = 0.0;
  for (const TrendSpec& spec : specs) {
    const auto rows = convergence_report(spec.quantity, 200);
    auto err = [&](std::int64_t n) { return std::fabs(rows[n - 1].ratio - 1.0); };
    worst = std::max(worst, err(200));
    if (err(200) > 0.02) {
      detail = std::string(spec.quantity) + " at " + std::to_string(err(200));
      return false;
    }
    if (err(200) >= err(50)) {
      detail = std::string(spec.quantity) + " error not decreasing on [50,200]";
      return false;
    }
    for (std::int64_t n = spec.n0; n < 200; ++n) {
      if (err(n + 1) > err(n) + 1e-12) {
        detail = std::string(spec.quantity) + " not monotone at n=" +
                 std::to_string(n + 1);
        return false;
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "worst |ratio-1| = %.4f at n=200", worst);
  detail = buf;
  return true;
}

bool wiener_asymptotics(std::string& detail) {
  const char* quantities[] = {"E(wiener)", "E(wiener*sigma)", "E(wiener*z)",
                              "E(wiener*rho)"};
  std::vector<std::vector<ConvergenceRow>> tables;
  for (const char* q : quantities) {
    tables.push_back(convergence_report(q, 400));
    const auto& rows = tables.back();
    const double e400 = std::fabs(rows[399].ratio - 1.0);
    const double e100 = std::fabs(rows[99].ratio - 1.0);
    if (e400 > 0.05) {
      detail = std::string(q) + " at " + std::to_string(e400);
      return false;
    }
    if (e400 >= e100) {
      detail = std::string(q) + " error not decreasing on [100,400]";
      return false;
    }
  }

  // slowest-quantity error envelope: log-log slope against n
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int m = 301;
  for (std::int64_t n = 100; n <= 400; ++n) {
    double env = 0.0;
    for (const auto& rows : tables)
      env = std::max(env, std::fabs(rows[n - 1].ratio - 1.0));
    const double x = std::log(static_cast<double>(n)), y = std::log(env);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
  char buf[64];
  std::snprintf(buf, sizeof buf, "error envelope slope %.3f", slope);
  detail = buf;
  return slope >= -0.7 && slope <= -0.3;
}

// ------------------------------------------------------------- criterion 8

bool table_reproduction(std::string& detail) {
  const Catalog& cat = reference_catalog();
  double worst = 0.0;
  for (const CorrelationAsymptotic& c : compose_correlations(cat)) {
    const CorrelationAsymptotic& ref = cat.correlation(c.x, c.y);
    const double ea =
        std::fabs(c.amplitude - ref.amplitude) / std::fabs(ref.amplitude);
    const double eb = std::fabs(c.base - ref.base) / ref.base;
    worst = std::max(worst, std::max(ea, eb));
    if (ea > 0.005 || eb > 0.005) {
      detail = index_name(c.x) + ":" + index_name(c.y) + " off by " +
               std::to_string(std::max(ea, eb) * 100) + "%";
      return false;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "worst relative error %.2e", worst);
  detail = buf;
  return true;
}

// ------------------------------------------------------------- criterion 9

bool sampler_checks(std::string& detail) {
  for (std::int64_t n : {4, 5, 6}) {
    const std::int64_t m = 200 * tree_count(n).get_si();
    const ChiSquare cs = chi_square_uniformity(n, m, 0);
    if (!(cs.survival > 0.001)) {
      detail = "chi-square at n=" + std::to_string(n) + ", survival " +
               std::to_string(cs.survival);
      return false;
    }
  }

  SampleConfig cfg;
  cfg.n = 30;
  cfg.m = 100000;
  cfg.seed = 0;
  const auto est = empirical_moments(cfg, {"w"});
  const double mean = est[0].second.mean.get_d();
  const double se = std::sqrt(est[0].second.variance.get_d() / cfg.m);
  const double exact = expected(solve(SystemId::W, 30).total, 30).get_d();
  if (std::fabs(mean - exact) > 3.0 * se) {
    detail = "W mean at n=30 off by " +
             std::to_string(std::fabs(mean - exact) / se) + " SE";
    return false;
  }

  SampleConfig big;
  big.n = 300;
  big.m = 200000;
  big.seed = 0;
  const auto var_est = empirical_moments(big, {"w"});
  const double predicted = (16.0 - 5.0 * std::numbers::pi) / 80.0 *
                           std::pow(300.0, 5.0);
  const double ratio = var_est[0].second.variance.get_d() / predicted;
  char buf[64];
  std::snprintf(buf, sizeof buf, "Var(W_300) MC/asymptotic = %.4f", ratio);
  detail = buf;
  return ratio >= 0.9 && ratio <= 1.1;
}

// ------------------------------------------------------------ criterion 10

bool finite_n_correlations(std::string& detail) {
  using P = std::pair<IndexName, IndexName>;
  const P pairs[] = {
      {IndexName::Sigma, IndexName::Z},      {IndexName::Sigma, IndexName::Rho},
      {IndexName::Z, IndexName::Rho},        {IndexName::Wiener, IndexName::Sigma},
      {IndexName::Wiener, IndexName::Z},     {IndexName::Wiener, IndexName::Rho},
      {IndexName::Sigma, IndexName::Sigma},  {IndexName::Z, IndexName::Z},
      {IndexName::Rho, IndexName::Rho},
  };
  for (const auto& [x, y] : pairs) {
    const auto table = correlation_table(x, y, 10);
    for (const MomentRow& row : table) {
      if (!rows_equal(row, enumeration_row(x, y, row.n))) {
        detail = index_name(x) + ":" + index_name(y) + " differs at n=" +
                 std::to_string(row.n);
        return false;
      }
    }
  }

  const Catalog& cat = reference_catalog();
  const P cross[] = {{IndexName::Sigma, IndexName::Z},
                     {IndexName::Sigma, IndexName::Rho},
                     {IndexName::Z, IndexName::Rho}};
  for (const auto& [x, y] : cross) {
    const auto table = correlation_table(x, y, 60);
    const double r60 = table.back().r.as_double();
    const double amp = cat.correlation(x, y).amplitude;
    if (!(r60 * amp > 0.0)) {
      detail = "sign of r_60 for " + index_name(x) + ":" + index_name(y) +
               " disagrees with the reference amplitude";
      return false;
    }
  }
  return true;
}

using Criterion = bool (*)(std::string&);

void run_criterion(int k, Criterion fn, const char* what) {
  std::string detail;
  bool ok = false;
  try {
    ok = fn(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  report(k, ok, what, detail);
}

}  // namespace

int main() {
  run_criterion(1, oracle_equivalence,
                "fixed-point series equal exhaustive aggregates for n <= 10");
  run_criterion(2, annihilators, "annihilating polynomials vanish modulo z^41");
  run_criterion(3, closed_form_equalities,
                "closed forms and quotient identities hold to order 50");
  run_criterion(4, growth_estimates,
                "ratio-fit growth matches the reference singularities within 0.2%");
  run_criterion(5, polynomial_roots,
                "bisection reproduces the cubic and quadratic roots to 1e-10");
  run_criterion(6, mean_asymptotics,
                "index moments within 2% of their asymptotics at n=200, error decreasing");
  run_criterion(7, wiener_asymptotics,
                "distance moments within 5% at n=400 with n^(-1/2)-consistent decay");
  run_criterion(8, table_reproduction,
                "composed correlation asymptotics within 0.5% of the references");
  run_criterion(9, sampler_checks,
                "sampler uniform by chi-square and consistent with exact moments");
  run_criterion(10, finite_n_correlations,
                "series correlations equal enumeration for n <= 10, signs agree at n=60");

  if (g_failures == 0) {
    std::puts("all criteria passed");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
