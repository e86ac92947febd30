#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace planetree {

// Rooted ordered tree in preorder: vertex 0 is the root and parent[i] < i
// for every i >= 1 (parent[0] == 0). The flat layout keeps parsing,
// evaluation and destruction iterative regardless of tree depth.
struct Tree {
  std::vector<std::uint32_t> parent;

  std::int64_t size() const { return static_cast<std::int64_t>(parent.size()); }
};

// Balanced-parentheses codec. "()" is the single vertex; a tree's encoding is
// "(" + concatenated child encodings + ")".
Tree parse_tree(const std::string& text);  // malformed input -> std::invalid_argument naming the offending byte
std::string encode_tree(const Tree& t);

// All eight root-split quantities plus the vertex count.
// sigma1/sigma2: independent vertex subsets containing / avoiding the root.
// z1/z2: matchings covering / avoiding the root.
// rho1/rho2: subtrees containing / avoiding the root.
// d: sum of root distances; w: sum of distances over unordered vertex pairs.
struct IndexBundle {
  mpz_class sigma1, sigma2;
  mpz_class z1, z2;
  mpz_class rho1, rho2;
  mpz_class d, w;
  std::int64_t n = 0;

  mpz_class sigma() const { return sigma1 + sigma2; }
  mpz_class z() const { return z1 + z2; }
  mpz_class rho() const { return rho1 + rho2; }
};

// Single post-order sweep; leaf base case sigma1=sigma2=1, z1=0, z2=1,
// rho1=1, rho2=0, d=0, w=0. The cross term of w ranges over ordered pairs of
// distinct branches.
IndexBundle compute_indices(const Tree& t);

// Distance sum by explicit breadth-first search from every vertex; oracle for
// compute_indices().w.
mpz_class wiener_direct(const Tree& t);

}  // namespace planetree
