#include "planetree/enumerate.hpp"

#include <stdexcept>

namespace planetree {

mpz_class tree_count(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("tree_count: n must be positive");
  mpz_class binom;
  mpz_bin_uiui(binom.get_mpz_t(), 2 * n - 2, n - 1);
  return binom / n;
}

TreeStream::TreeStream(std::int64_t n, std::int64_t cap) : n_(n) {
  if (n < 1) throw std::invalid_argument("trees_of_size: n must be positive");
  if (n > cap)
    throw std::out_of_range("trees_of_size: n = " + std::to_string(n) +
                            " exceeds the enumeration cap " +
                            std::to_string(cap));
  const std::int64_t m = n - 1;
  word_.assign(m, '(');
  word_.append(m, ')');
}

namespace {

Tree word_to_tree(const std::string& word) {
  Tree t;
  t.parent.reserve(word.size() / 2 + 1);
  t.parent.push_back(0);  // root
  std::vector<std::uint32_t> stack{0};
  for (char ch : word) {
    if (ch == '(') {
      auto id = static_cast<std::uint32_t>(t.parent.size());
      t.parent.push_back(stack.back());
      stack.push_back(id);
    } else {
      stack.pop_back();
    }
  }
  return t;
}

}  // namespace

std::optional<Tree> TreeStream::next() {
  if (done_) return std::nullopt;
  Tree t = word_to_tree(word_);
  if (!advance()) done_ = true;
  return t;
}

bool TreeStream::advance() {
  // successor in lexicographic order: flip the rightmost '(' whose prefix
  // balance stays legal, then close with the smallest completion '('^o ')'^c
  const std::int64_t len = static_cast<std::int64_t>(word_.size());
  if (len == 0) return false;
  std::vector<std::int64_t> balance(len + 1, 0);
  for (std::int64_t i = 0; i < len; ++i)
    balance[i + 1] = balance[i] + (word_[i] == '(' ? 1 : -1);
  for (std::int64_t i = len - 1; i >= 0; --i) {
    if (word_[i] != '(') continue;
    const std::int64_t p = balance[i];  // balance before position i
    if (p < 1) continue;                // ')' here would dip below zero
    const std::int64_t rest = len - i - 1;
    if (rest < p - 1) continue;  // not enough room to close everything
    word_[i] = ')';
    const std::int64_t opens = (rest - (p - 1)) / 2;
    for (std::int64_t j = 0; j < rest; ++j)
      word_[i + 1 + j] = j < opens ? '(' : ')';
    return true;
  }
  return false;
}

namespace {

constexpr const char* kValidFactors =
    "sigma sigma1 sigma2 z z1 z2 rho rho1 rho2 d w (or the whole tag \"1\")";

const mpz_class* factor_value(const IndexBundle& b, const std::string& name,
                              mpz_class& scratch) {
  if (name == "sigma1") return &b.sigma1;
  if (name == "sigma2") return &b.sigma2;
  if (name == "z1") return &b.z1;
  if (name == "z2") return &b.z2;
  if (name == "rho1") return &b.rho1;
  if (name == "rho2") return &b.rho2;
  if (name == "d") return &b.d;
  if (name == "w") return &b.w;
  if (name == "sigma") {
    scratch = b.sigma();
    return &scratch;
  }
  if (name == "z") {
    scratch = b.z();
    return &scratch;
  }
  if (name == "rho") {
    scratch = b.rho();
    return &scratch;
  }
  return nullptr;
}

}  // namespace

mpz_class monomial_value(const IndexBundle& b, const std::string& tag) {
  if (tag == "1") return 1;  // empty monomial: plain tree count
  mpz_class result = 1;
  std::size_t pos = 0;
  while (pos < tag.size()) {
    std::size_t star = tag.find('*', pos);
    std::string factor =
        tag.substr(pos, star == std::string::npos ? star : star - pos);
    pos = star == std::string::npos ? tag.size() : star + 1;
    unsigned long power = 1;
    if (std::size_t caret = factor.find('^'); caret != std::string::npos) {
      const std::string exp = factor.substr(caret + 1);
      factor.resize(caret);
      if (exp.empty() || exp.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("monomial '" + tag + "': bad exponent '" +
                                    exp + "'");
      power = std::stoul(exp);
    }
    mpz_class scratch;
    const mpz_class* v = factor_value(b, factor, scratch);
    if (v == nullptr)
      throw std::invalid_argument("monomial '" + tag + "': unknown factor '" +
                                  factor + "'; valid factors: " +
                                  kValidFactors);
    mpz_class powed;
    mpz_pow_ui(powed.get_mpz_t(), v->get_mpz_t(), power);
    result *= powed;
  }
  if (tag.empty())
    throw std::invalid_argument("monomial tag must be nonempty");
  return result;
}

AggregateRow aggregate(std::int64_t n, const std::vector<std::string>& monomials,
                       std::int64_t cap) {
  AggregateRow row;
  row.n = n;
  row.count = 0;
  row.sums.reserve(monomials.size());
  for (const auto& tag : monomials) row.sums.emplace_back(tag, mpz_class(0));
  // validate tags up front so bad input fails before a long sweep
  {
    IndexBundle probe = compute_indices(parse_tree("()"));
    for (const auto& tag : monomials) monomial_value(probe, tag);
  }
  TreeStream stream(n, cap);
  while (auto t = stream.next()) {
    IndexBundle b = compute_indices(*t);
    row.count += 1;
    for (auto& [tag, sum] : row.sums) sum += monomial_value(b, tag);
  }
  return row;
}

}  // namespace planetree
