#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "planetree/enumerate.hpp"
#include "planetree/tree.hpp"

using namespace planetree;

namespace {

std::string path_word(std::int64_t n) {
  return std::string(n, '(') + std::string(n, ')');
}

std::string star_word(std::int64_t n) {
  std::string w = "(";
  for (std::int64_t i = 1; i < n; ++i) w += "()";
  return w + ")";
}

mpz_class fib(std::int64_t k) {
  mpz_class f;
  mpz_fib_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return f;
}

}  // namespace

TEST_CASE("codec round-trips every tree up to n = 6") {
  for (std::int64_t n = 1; n <= 6; ++n) {
    TreeStream stream(n);
    while (true) {
      const std::string word = stream.peek_word();
      auto t = stream.next();
      if (!t) break;
      const std::string text = encode_tree(*t);
      CHECK(text == "(" + word + ")");
      CHECK(parse_tree(text).parent == t->parent);
    }
  }
}

TEST_CASE("parse rejects malformed input naming the byte") {
  CHECK_THROWS_WITH(parse_tree(""), "parse error at byte 0: empty input");
  CHECK_THROWS_WITH(parse_tree("(("), "parse error at byte 2: unclosed '('");
  CHECK_THROWS_WITH(parse_tree("())"),
                    "parse error at byte 2: unmatched ')'");
  CHECK_THROWS_WITH(parse_tree(")"), "parse error at byte 0: unmatched ')'");
  CHECK_THROWS_WITH(parse_tree("()()"),
                    "parse error at byte 2: content after the outer pair closed");
  CHECK_THROWS_WITH(parse_tree("(a)"),
                    "parse error at byte 1: expected '(' or ')'");
}

TEST_CASE("index bundles on the smallest trees") {
  const IndexBundle leaf = compute_indices(parse_tree("()"));
  CHECK(leaf.n == 1);
  CHECK(leaf.sigma1 == 1);
  CHECK(leaf.sigma2 == 1);
  CHECK(leaf.z1 == 0);
  CHECK(leaf.z2 == 1);
  CHECK(leaf.rho1 == 1);
  CHECK(leaf.rho2 == 0);
  CHECK(leaf.d == 0);
  CHECK(leaf.w == 0);

  const IndexBundle edge = compute_indices(parse_tree("(())"));
  CHECK(edge.sigma() == 3);
  CHECK(edge.z() == 2);
  CHECK(edge.rho() == 3);
  CHECK(edge.d == 1);
  CHECK(edge.w == 1);

  const IndexBundle p3 = compute_indices(parse_tree("((()))"));
  CHECK(p3.sigma() == 5);
  CHECK(p3.z() == 3);
  CHECK(p3.rho() == 6);
  CHECK(p3.d == 3);
  CHECK(p3.w == 4);

  // cherry: same sigma/z/rho as the path but shallower
  const IndexBundle cherry = compute_indices(parse_tree("(()())"));
  CHECK(cherry.sigma() == 5);
  CHECK(cherry.z() == 3);
  CHECK(cherry.rho() == 6);
  CHECK(cherry.d == 2);
  CHECK(cherry.w == 4);
}

TEST_CASE("wiener index matches the BFS oracle on every tree up to n = 10") {
  for (std::int64_t n = 1; n <= 10; ++n) {
    TreeStream stream(n);
    while (auto t = stream.next()) {
      CHECK(compute_indices(*t).w == wiener_direct(*t));
    }
  }
}

TEST_CASE("paths follow the Fibonacci and simplex laws") {
  for (std::int64_t n = 1; n <= 20; ++n) {
    const IndexBundle b = compute_indices(parse_tree(path_word(n)));
    CHECK(b.sigma() == fib(n + 2));
    CHECK(b.z() == fib(n + 1));
    CHECK(b.rho() == n * (n + 1) / 2);
    CHECK(b.d == n * (n - 1) / 2);
    CHECK(b.w == n * (n * n - 1) / 6);
  }
}

TEST_CASE("stars follow the power laws") {
  for (std::int64_t n = 2; n <= 20; ++n) {
    const IndexBundle b = compute_indices(parse_tree(star_word(n)));
    mpz_class pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(n - 1));
    CHECK(b.sigma() == pow2 + 1);
    CHECK(b.z() == n);
    CHECK(b.rho() == pow2 + n - 1);
    CHECK(b.d == n - 1);
    CHECK(b.w == (n - 1) * (n - 1));
  }
}

TEST_CASE("deep trees are handled iteratively") {
  const std::int64_t n = 100000;
  const Tree t = parse_tree(path_word(n));
  CHECK(t.size() == n);
  CHECK(encode_tree(t) == path_word(n));
  const IndexBundle b = compute_indices(t);
  CHECK(b.d == mpz_class(n) * (n - 1) / 2);
}
