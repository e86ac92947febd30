#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <stdexcept>
#include <string>

#include "planetree/enumerate.hpp"
#include "planetree/tree.hpp"

using namespace planetree;

TEST_CASE("tree_count matches the Catalan formula") {
  CHECK(tree_count(1) == 1);
  CHECK(tree_count(2) == 1);
  CHECK(tree_count(3) == 2);
  CHECK(tree_count(8) == 429);
  CHECK(tree_count(16) == 9694845);
  CHECK(tree_count(100) ==
        mpz_class("227508830794229349661819540395688853956041682601541047340"));
  CHECK_THROWS_AS(tree_count(0), std::invalid_argument);
}

TEST_CASE("stream yields every tree exactly once in word order") {
  for (std::int64_t n = 1; n <= 11; ++n) {
    TreeStream stream(n);
    std::string prev;
    mpz_class seen = 0;
    while (true) {
      const std::string word = stream.peek_word();
      if (!stream.next()) break;
      if (seen > 0) CHECK(prev < word);
      prev = word;
      ++seen;
    }
    CHECK(seen == tree_count(n));
  }
}

TEST_CASE("the first word is fully nested, the last is flat") {
  TreeStream stream(5);
  CHECK(stream.peek_word() == "(((())))");
  std::string last;
  while (true) {
    last = stream.peek_word();
    if (!stream.next()) break;
  }
  CHECK(last == "()()()()");
}

TEST_CASE("the cap guards accidental full sweeps") {
  CHECK_THROWS_AS(TreeStream(kDefaultEnumerationCap + 1), std::out_of_range);
  CHECK_NOTHROW(TreeStream(18, 18));
  CHECK_THROWS_AS(TreeStream(0), std::invalid_argument);
}

TEST_CASE("aggregate sums known index totals") {
  const AggregateRow r3 = aggregate(3, {"sigma", "z", "rho", "d", "w"});
  CHECK(r3.n == 3);
  CHECK(r3.count == 2);
  CHECK(r3.sums[0] == std::pair<std::string, mpz_class>("sigma", 10));
  CHECK(r3.sums[1].second == 6);
  CHECK(r3.sums[2].second == 12);
  CHECK(r3.sums[3].second == 5);
  CHECK(r3.sums[4].second == 8);

  CHECK(aggregate(2, {"w"}).sums[0].second == 1);
  CHECK(aggregate(3, {"sigma*z"}).sums[0].second == 30);
}

TEST_CASE("monomials accept root-split factors and powers") {
  const IndexBundle edge = compute_indices(parse_tree("(())"));
  CHECK(monomial_value(edge, "sigma") == 3);
  CHECK(monomial_value(edge, "sigma2*z2") == 2);
  CHECK(monomial_value(edge, "sigma^2") == 9);
  CHECK(monomial_value(edge, "d*w") == 1);
  CHECK(monomial_value(edge, "1") == 1);

  // both trees on 3 vertices have w = 4
  CHECK(aggregate(3, {"w^2"}).sums[0].second == 32);
  CHECK(aggregate(3, {"1"}).sums[0].second == tree_count(3));
}

TEST_CASE("unknown factors are named in the error") {
  const IndexBundle leaf = compute_indices(parse_tree("()"));
  CHECK_THROWS_WITH(
      monomial_value(leaf, "wiener"),
      "monomial 'wiener': unknown factor 'wiener'; valid factors: "
      "sigma sigma1 sigma2 z z1 z2 rho rho1 rho2 d w (or the whole tag \"1\")");
  CHECK_THROWS_AS(monomial_value(leaf, "sigma^x"), std::invalid_argument);
  CHECK_THROWS_AS(monomial_value(leaf, ""), std::invalid_argument);
  CHECK_THROWS_AS(aggregate(17, {"sigma"}), std::out_of_range);
}
