#include "planetree/tree.hpp"

#include <deque>
#include <stdexcept>

namespace planetree {

Tree parse_tree(const std::string& text) {
  auto fail = [&](std::size_t pos, const char* what) {
    throw std::invalid_argument("parse error at byte " + std::to_string(pos) +
                                ": " + what);
  };
  if (text.empty()) fail(0, "empty input");
  Tree t;
  std::vector<std::uint32_t> stack;  // open vertices, innermost last
  for (std::size_t pos = 0; pos < text.size(); ++pos) {
    char ch = text[pos];
    if (ch == '(') {
      if (stack.empty() && !t.parent.empty())
        fail(pos, "content after the outer pair closed");
      auto id = static_cast<std::uint32_t>(t.parent.size());
      t.parent.push_back(stack.empty() ? 0 : stack.back());
      stack.push_back(id);
    } else if (ch == ')') {
      if (stack.empty()) fail(pos, "unmatched ')'");
      stack.pop_back();
    } else {
      fail(pos, "expected '(' or ')'");
    }
  }
  if (!stack.empty()) fail(text.size(), "unclosed '('");
  if (t.parent.empty()) fail(0, "no vertices");
  return t;
}

std::string encode_tree(const Tree& t) {
  const std::int64_t n = t.size();
  std::vector<std::vector<std::uint32_t>> children(n);
  for (std::int64_t i = 1; i < n; ++i)
    children[t.parent[i]].push_back(static_cast<std::uint32_t>(i));
  std::string out;
  out.reserve(2 * n);
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;  // (vertex, next child slot)
  out.push_back('(');
  stack.emplace_back(0, 0);
  while (!stack.empty()) {
    auto& [v, slot] = stack.back();
    if (slot < children[v].size()) {
      std::uint32_t c = children[v][slot++];
      out.push_back('(');
      stack.emplace_back(c, 0);
    } else {
      out.push_back(')');
      stack.pop_back();
    }
  }
  return out;
}

IndexBundle compute_indices(const Tree& t) {
  const std::int64_t n = t.size();
  struct Acc {
    mpz_class sigma1{1}, sigma2{1};
    mpz_class z1{0}, zprod{1};  // zprod = prod (z1+z2) over merged children
    mpz_class rho1{1}, rho2{0};
    mpz_class dsum{0}, wsum{0};       // sums of child d and w
    mpz_class across{0}, bcross{0};   // A = sum(d_i+s_i), B = sum((d_i+s_i)s_i)
    std::int64_t subsize = 0;         // S = sum of child sizes
  };
  std::vector<Acc> acc(n);
  IndexBundle out;
  mpz_class tmp;
  // children precede nothing: preorder gives parent[i] < i, so a reverse scan
  // finalizes each vertex after all its children merged into it
  for (std::int64_t i = n - 1; i >= 0; --i) {
    Acc& a = acc[i];
    // finalize vertex i
    mpz_class size = a.subsize + 1;
    mpz_class d = a.dsum + size - 1;
    mpz_class z2 = a.zprod;
    // cross term: sum_{i != j} (d_i + s_i) s_j = A*S - B
    mpz_class cross = a.across * a.subsize - a.bcross;
    mpz_class w = d + a.wsum + cross;
    if (i == 0) {
      out.sigma1 = a.sigma1;
      out.sigma2 = a.sigma2;
      out.z1 = a.z1;
      out.z2 = z2;
      out.rho1 = a.rho1;
      out.rho2 = a.rho2;
      out.d = d;
      out.w = w;
      out.n = n;
      break;
    }
    // merge vertex i into its parent
    Acc& p = acc[t.parent[i]];
    p.sigma1 *= a.sigma2;
    tmp = a.sigma1 + a.sigma2;
    p.sigma2 *= tmp;
    // z1 must fold the new child before zprod changes
    tmp = a.z1 + z2;
    p.z1 = p.z1 * tmp + z2 * p.zprod;
    p.zprod *= tmp;
    tmp = 1 + a.rho1;
    p.rho1 *= tmp;
    p.rho2 += a.rho1 + a.rho2;
    p.dsum += d;
    p.wsum += w;
    tmp = d + size;
    p.across += tmp;
    p.bcross += tmp * size;
    p.subsize += size.get_si();
  }
  return out;
}

mpz_class wiener_direct(const Tree& t) {
  const std::int64_t n = t.size();
  std::vector<std::vector<std::uint32_t>> adj(n);
  for (std::int64_t i = 1; i < n; ++i) {
    adj[t.parent[i]].push_back(static_cast<std::uint32_t>(i));
    adj[i].push_back(t.parent[i]);
  }
  mpz_class total = 0;
  std::vector<std::int64_t> dist(n);
  std::deque<std::uint32_t> queue;
  for (std::int64_t s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    queue.clear();
    queue.push_back(static_cast<std::uint32_t>(s));
    std::int64_t acc = 0;
    while (!queue.empty()) {
      std::uint32_t v = queue.front();
      queue.pop_front();
      acc += dist[v];
      for (std::uint32_t u : adj[v]) {
        if (dist[u] < 0) {
          dist[u] = dist[v] + 1;
          queue.push_back(u);
        }
      }
    }
    total += acc;
  }
  return total / 2;  // unordered pairs
}

}  // namespace planetree
