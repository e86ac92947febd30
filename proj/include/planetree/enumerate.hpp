#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "planetree/tree.hpp"

namespace planetree {

// t_16 = 9,694,845 keeps a full sweep cheap; larger n needs an explicit cap.
inline constexpr std::int64_t kDefaultEnumerationCap = 16;

// t_n = C(2n-2, n-1) / n
mpz_class tree_count(std::int64_t n);

// All rooted ordered trees on n vertices, each exactly once, in lexicographic
// Dyck-word order ('(' < ')'); the first word is the fully nested one.
class TreeStream {
 public:
  explicit TreeStream(std::int64_t n,
                      std::int64_t cap = kDefaultEnumerationCap);
  std::optional<Tree> next();
  // the Dyck word (semilength n-1) of the tree next() would return
  const std::string& peek_word() const { return word_; }

 private:
  bool advance();  // successor word; false when exhausted
  std::int64_t n_;
  std::string word_;
  bool done_ = false;
};

struct AggregateRow {
  std::int64_t n = 0;
  mpz_class count;
  std::vector<std::pair<std::string, mpz_class>> sums;  // preserves input order
};

// Product of index powers for one tree, e.g. "sigma*z", "w^2", "sigma2*z2".
// Valid factor names: sigma sigma1 sigma2 z z1 z2 rho rho1 rho2 d w,
// each with an optional ^k. Unknown names throw, listing the valid set.
mpz_class monomial_value(const IndexBundle& b, const std::string& tag);

// Exact sums of requested monomials over every tree of size n.
AggregateRow aggregate(std::int64_t n, const std::vector<std::string>& monomials,
                       std::int64_t cap = kDefaultEnumerationCap);

}  // namespace planetree
