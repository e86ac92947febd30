#include "planetree/sample.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "planetree/enumerate.hpp"

namespace planetree {

namespace {

std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xBF58476D1CE4E5B9ull;
  x ^= x >> 27;
  x *= 0x94D049BB133111EBull;
  x ^= x >> 31;
  return x;
}

}  // namespace

Rng::Rng(std::uint64_t seed, std::uint64_t stream_index)
    : state_(mix64(mix64(seed) + stream_index)) {}

std::uint64_t Rng::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  return mix64(state_);
}

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("Rng::below: bound must be >= 1");
  unsigned __int128 prod = static_cast<unsigned __int128>(next()) * bound;
  auto low = static_cast<std::uint64_t>(prod);
  if (low < bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    while (low < threshold) {
      prod = static_cast<unsigned __int128>(next()) * bound;
      low = static_cast<std::uint64_t>(prod);
    }
  }
  return static_cast<std::uint64_t>(prod >> 64);
}

Tree sample_tree(std::int64_t n, std::uint64_t stream_index,
                 std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample_tree: n must be positive");
  Rng rng(seed, stream_index);
  const std::int64_t len = 2 * n - 1;  // n-1 ups, n downs
  std::vector<std::int8_t> steps(len);
  for (std::int64_t i = 0; i < n - 1; ++i) steps[i] = 1;
  for (std::int64_t i = n - 1; i < len; ++i) steps[i] = -1;
  for (std::int64_t i = len - 1; i >= 1; --i) {
    const auto j = static_cast<std::int64_t>(
        rng.below(static_cast<std::uint64_t>(i + 1)));
    std::swap(steps[i], steps[j]);
  }
  // cycle lemma: the rotation starting right after the first prefix-sum
  // minimum is the unique ballot sequence; its final step is a down-step
  std::int64_t best = 0, bestpos = -1, sum = 0;
  for (std::int64_t i = 0; i < len; ++i) {
    sum += steps[i];
    if (sum < best) {
      best = sum;
      bestpos = i;
    }
  }
  const std::int64_t start = bestpos + 1;  // len when the minimum is at the end
  Tree t;
  t.parent.reserve(n);
  t.parent.push_back(0);
  std::vector<std::uint32_t> stack{0};
  for (std::int64_t k = 0; k < len - 1; ++k) {  // trailing down-step dropped
    const std::int8_t s = steps[(start + k) % len];
    if (s == 1) {
      auto id = static_cast<std::uint32_t>(t.parent.size());
      t.parent.push_back(stack.back());
      stack.push_back(id);
    } else {
      stack.pop_back();
    }
  }
  return t;
}

namespace {

struct TagAccum {
  mpz_class sum;
  mpz_class sumsq;
};

void accumulate_range(const SampleConfig& cfg,
                      const std::vector<std::string>& monomials,
                      std::int64_t lo, std::int64_t hi,
                      std::vector<TagAccum>& acc) {
  mpz_class v;
  for (std::int64_t i = lo; i < hi; ++i) {
    Tree t = sample_tree(cfg.n, static_cast<std::uint64_t>(i), cfg.seed);
    IndexBundle b = compute_indices(t);
    for (std::size_t k = 0; k < monomials.size(); ++k) {
      v = monomial_value(b, monomials[k]);
      acc[k].sum += v;
      acc[k].sumsq += v * v;
    }
  }
}

}  // namespace

std::vector<std::pair<std::string, MomentEstimate>> empirical_moments(
    const SampleConfig& cfg, const std::vector<std::string>& monomials) {
  if (cfg.n < 1 || cfg.m < 1)
    throw std::invalid_argument("empirical_moments: n and m must be >= 1");
  {
    IndexBundle probe = compute_indices(parse_tree("()"));
    for (const auto& tag : monomials) monomial_value(probe, tag);
  }
  int nchunks = 1;
#ifdef _OPENMP
  nchunks = std::max(1, omp_get_max_threads());
#endif
  const std::int64_t chunk = (cfg.m + nchunks - 1) / nchunks;
  std::vector<std::vector<TagAccum>> partial(
      nchunks, std::vector<TagAccum>(monomials.size()));
#pragma omp parallel for schedule(static, 1)
  for (int c = 0; c < nchunks; ++c) {
    const std::int64_t lo = c * chunk;
    const std::int64_t hi = std::min<std::int64_t>(cfg.m, lo + chunk);
    if (lo < hi) accumulate_range(cfg, monomials, lo, hi, partial[c]);
  }
  std::vector<std::pair<std::string, MomentEstimate>> out;
  out.reserve(monomials.size());
  for (std::size_t k = 0; k < monomials.size(); ++k) {
    mpz_class sum = 0, sumsq = 0;
    for (int c = 0; c < nchunks; ++c) {
      sum += partial[c][k].sum;
      sumsq += partial[c][k].sumsq;
    }
    MomentEstimate est;
    est.mean = mpq_class(sum, mpz_class(cfg.m));
    est.mean.canonicalize();
    if (cfg.m > 1) {
      // (m*sumsq - sum^2) / (m*(m-1))
      mpq_class var(cfg.m * sumsq - sum * sum,
                    mpz_class(cfg.m) * mpz_class(cfg.m - 1));
      var.canonicalize();
      est.variance = var;
    }
    out.emplace_back(monomials[k], std::move(est));
  }
  return out;
}

namespace {

// lower regularized gamma by series; requires x < a + 1
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// upper regularized gamma by Lentz continued fraction; requires x >= a + 1
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-15) break;
  }
  return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0)
    throw std::invalid_argument("gamma_p: need a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
  if (a <= 0.0 || x < 0.0)
    throw std::invalid_argument("gamma_q: need a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  return x < a + 1.0 ? 1.0 - gamma_p_series(a, x) : gamma_q_cf(a, x);
}

ChiSquare chi_square_uniformity(std::int64_t n, std::int64_t m,
                                std::uint64_t seed) {
  std::map<std::string, std::int64_t> slot;
  {
    TreeStream stream(n);
    while (auto t = stream.next()) {
      const auto id = static_cast<std::int64_t>(slot.size());
      slot[encode_tree(*t)] = id;
    }
  }
  const auto tn = static_cast<std::int64_t>(slot.size());
  std::vector<std::int64_t> obs(tn, 0);
  for (std::int64_t i = 0; i < m; ++i) {
    Tree t = sample_tree(n, static_cast<std::uint64_t>(i), seed);
    ++obs[slot.at(encode_tree(t))];
  }
  const double expected = static_cast<double>(m) / static_cast<double>(tn);
  ChiSquare out;
  for (std::int64_t k = 0; k < tn; ++k) {
    const double diff = static_cast<double>(obs[k]) - expected;
    out.statistic += diff * diff / expected;
  }
  out.dof = tn - 1;
  out.survival = out.dof == 0 ? 1.0
                              : gamma_q(0.5 * static_cast<double>(out.dof),
                                        0.5 * out.statistic);
  return out;
}

}  // namespace planetree
