#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "planetree/asymptotics.hpp"

using namespace planetree;

TEST_CASE("catalog constants carry their exact forms") {
  const Catalog& cat = reference_catalog();
  CHECK(cat.constants.size() == 14);

  CHECK(cat.constant("E(sigma)").amplitude ==
        doctest::Approx(std::sqrt(3.0) * 16.0 / 27.0).epsilon(1e-15));
  CHECK(cat.constant("E(sigma)").base == 27.0 / 16.0);
  CHECK(cat.constant("E(sigma)").npow == 0.0);
  CHECK(cat.constant("E(sigma)").source == "exact form");

  CHECK(cat.constant("E(rho)").amplitude ==
        doctest::Approx(16.0 / (3.0 * std::sqrt(15.0))).epsilon(1e-15));
  CHECK(cat.constant("Var(rho)").base == 2.53125);  // 81/32 dyadic, so exact
  CHECK(cat.constant("E(wiener)").npow == 2.5);
  CHECK(cat.constant("E(wiener)").base == 1.0);
  CHECK(cat.constant("Var(wiener)").npow == 5.0);
  CHECK(cat.constant("Var(wiener)").amplitude ==
        doctest::Approx((16.0 - 5.0 * std::numbers::pi) / 80.0).epsilon(1e-15));
  CHECK(cat.constant("E(sigma*z)").source == "reference decimal");
  CHECK(cat.constant("E(sigma*z)").base == doctest::Approx(2.54408));

  // decimals recomputed by hand pin the exact-form transcriptions
  CHECK(cat.constant("E(sigma)").amplitude ==
        doctest::Approx(1.02640).epsilon(1e-5));
  CHECK(cat.constant("E(rho)").amplitude ==
        doctest::Approx(1.37706).epsilon(1e-5));
  CHECK(cat.constant("E(wiener)").amplitude ==
        doctest::Approx(0.443113).epsilon(1e-5));
  CHECK(cat.constant("Var(rho)").amplitude ==
        doctest::Approx(1.62902).epsilon(1e-5));
  CHECK(cat.constant("E(z)").base == doctest::Approx(1.51615).epsilon(1e-5));
  CHECK(cat.constant("E(z*rho)").base ==
        doctest::Approx(2.33437).epsilon(1e-5));

  CHECK_THROWS_AS(cat.constant("E(q)"), std::invalid_argument);
}

TEST_CASE("correlation catalog looks up symmetrically") {
  const Catalog& cat = reference_catalog();
  CHECK(cat.correlations.size() == 6);
  const CorrelationAsymptotic& a =
      cat.correlation(IndexName::Sigma, IndexName::Z);
  const CorrelationAsymptotic& b =
      cat.correlation(IndexName::Z, IndexName::Sigma);
  CHECK(a.amplitude == b.amplitude);
  CHECK(a.amplitude == doctest::Approx(-1.01706));
  CHECK(a.base == doctest::Approx(0.99405));
  CHECK(cat.correlation(IndexName::Wiener, IndexName::Rho).amplitude ==
        doctest::Approx(-1.78357));
  CHECK_THROWS_AS(cat.correlation(IndexName::Sigma, IndexName::Sigma),
                  std::invalid_argument);
}

TEST_CASE("singularity records and their radius intervals") {
  const Catalog& cat = reference_catalog();
  CHECK(cat.singularities.size() == 10);
  CHECK(cat.singularity(SystemId::T).z0 == 0.25);
  CHECK(cat.singularity(SystemId::S).z0 == doctest::Approx(4.0 / 27.0));
  CHECK(cat.singularity(SystemId::RR).exact_form == "8/81");
  CHECK(cat.singularity(SystemId::SZ).poly.empty());
  CHECK(cat.singularity(SystemId::ZR).z0 ==
        doctest::Approx((7.0 + 3.0 * std::sqrt(5.0)) / 128.0).epsilon(1e-15));

  for (const SingularityRecord& rec : cat.singularities) {
    if (rec.radius_interval) {
      CHECK(rec.z0 >= rec.radius_interval->first);
      CHECK(rec.z0 <= rec.radius_interval->second);
    }
    if (rec.bracket) {
      CHECK(rec.bracket->first.get_d() < rec.z0);
      CHECK(rec.bracket->second.get_d() > rec.z0);
    }
  }
  CHECK_THROWS_AS(cat.singularity(SystemId::D), std::invalid_argument);
}

TEST_CASE("find_root recovers every bracketed singularity") {
  const Catalog& cat = reference_catalog();
  for (const SingularityRecord& rec : cat.singularities) {
    if (rec.poly.empty()) continue;
    REQUIRE(rec.bracket.has_value());
    const double root =
        find_root(rec.poly, rec.bracket->first, rec.bracket->second);
    CHECK(root == doctest::Approx(rec.z0).epsilon(1e-6));
  }

  // exact root at an endpoint
  CHECK(find_root({0, 1}, 0, 1) == 0.0);
  CHECK(find_root({-1, 4}, mpq_class(1, 4), 1) == 0.25);

  CHECK_THROWS_AS(find_root({}, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(find_root({-1, 4}, mpq_class(1, 3), mpq_class(1, 2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(find_root({-1, 4}, 1, 0), std::invalid_argument);
}

TEST_CASE("ratio fit estimates the growth of the tree count") {
  const Series total = solve(SystemId::T, 200).total;
  const auto [a, rms] = estimate_growth(total, 100, 200);
  CHECK(a == doctest::Approx(4.0).epsilon(1e-3));
  CHECK(rms < 1e-4);

  CHECK_THROWS_AS(estimate_growth(total, 0, 10), std::invalid_argument);
  CHECK_THROWS_AS(estimate_growth(total, 10, 11), std::invalid_argument);
  CHECK_THROWS_AS(estimate_growth(total, 100, 201), std::invalid_argument);
  // the distance total vanishes at n = 1
  CHECK_THROWS_AS(estimate_growth(solve(SystemId::D, 10).total, 1, 6),
                  std::domain_error);
}

TEST_CASE("composed correlation asymptotics match the references") {
  const Catalog& cat = reference_catalog();
  const auto composed = compose_correlations(cat);
  REQUIRE(composed.size() == 6);
  for (const CorrelationAsymptotic& c : composed) {
    const CorrelationAsymptotic& ref = cat.correlation(c.x, c.y);
    const std::string pair = index_name(c.x) + ":" + index_name(c.y);
    CAPTURE(pair);
    CHECK(std::fabs(c.amplitude - ref.amplitude) <=
          0.005 * std::fabs(ref.amplitude));
    CHECK(std::fabs(c.base - ref.base) <= 0.005 * ref.base);
    CHECK(c.base > 0.0);
    CHECK(c.base < 1.0);
  }
}

TEST_CASE("exact series converge to the catalog asymptotics") {
  const auto rows = convergence_report("E(sigma)", 40);
  REQUIRE(rows.size() == 40);
  CHECK(rows.front().n == 1);
  CHECK(rows.back().n == 40);
  CHECK(rows.back().ratio == doctest::Approx(1.0).epsilon(0.01));
  CHECK(std::fabs(rows.back().ratio - 1.0) < std::fabs(rows[9].ratio - 1.0));

  const auto var_rows = convergence_report("Var(rho)", 40, 30);
  REQUIRE(var_rows.size() == 11);
  CHECK(var_rows.front().n == 30);
  CHECK(var_rows.back().ratio == doctest::Approx(1.0).epsilon(0.05));

  const auto w_rows = convergence_report("E(wiener*rho)", 40);
  CHECK(w_rows.back().ratio == doctest::Approx(1.0).epsilon(0.35));

  CHECK_THROWS_AS(convergence_report("E(q)", 10), std::invalid_argument);
  CHECK_THROWS_AS(convergence_report("Var(wiener)", 10), std::invalid_argument);
  CHECK_THROWS_AS(convergence_report("Var(sigma*z)", 10), std::invalid_argument);
  CHECK_THROWS_AS(convergence_report("E(sigma)", 10, 0), std::invalid_argument);
  CHECK_THROWS_AS(convergence_report("E(sigma)", 10, 11), std::invalid_argument);
  CHECK(convergence_report("E(sigma)", 10, 10).size() == 1);
}

TEST_CASE("growth estimates sit inside the admissible radius bounds") {
  const auto checks = growth_checks(60);
  REQUIRE(checks.size() == 6);
  for (const GrowthCheck& g : checks) {
    CAPTURE(system_name(g.system));
    CHECK(g.rel_error < 0.02);
    CHECK(g.inside_interval);
    CHECK(g.estimate == doctest::Approx(g.reference).epsilon(0.02));
  }
}
