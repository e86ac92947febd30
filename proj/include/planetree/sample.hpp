#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "planetree/tree.hpp"

namespace planetree {

struct SampleConfig {
  std::int64_t n = 1;
  std::int64_t m = 1;
  std::uint64_t seed = 0;
};

// SplitMix64 with counter-based substreams: the state for (seed, stream_index)
// is mix64(mix64(seed) + stream_index), so any partition of the index range
// across workers draws identical values. Pure 64-bit arithmetic end to end;
// no platform-dependent distributions.
class Rng {
 public:
  Rng(std::uint64_t seed, std::uint64_t stream_index);
  std::uint64_t next();
  // uniform in [0, bound), bound >= 1; multiply-shift with rejection so the
  // result is unbiased and identical on every platform
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

// Uniform over all t_n trees: shuffle the multiset of n-1 up-steps and n
// down-steps, take the unique cycle-lemma rotation that is a ballot sequence,
// drop its trailing down-step and decode the Dyck word.
// Deterministic function of (n, stream_index, seed).
Tree sample_tree(std::int64_t n, std::uint64_t stream_index,
                 std::uint64_t seed);

struct MomentEstimate {
  mpq_class mean;
  mpq_class variance;  // unbiased (m-1 divisor); 0 when m == 1
};

// Exact-integer accumulation of sum(x) and sum(x^2) per monomial over m
// samples with stream indices 0..m-1. Chunked across threads when OpenMP is
// enabled; the merge is exact integer addition, so results never depend on
// the schedule.
std::vector<std::pair<std::string, MomentEstimate>> empirical_moments(
    const SampleConfig& cfg, const std::vector<std::string>& monomials);

// Chi-square uniformity test over all t_n trees with m samples.
struct ChiSquare {
  double statistic = 0.0;
  std::int64_t dof = 0;
  double survival = 1.0;  // P(chi2_dof > statistic)
};
ChiSquare chi_square_uniformity(std::int64_t n, std::int64_t m,
                                std::uint64_t seed);

// regularized incomplete gamma: P(a,x) lower, Q(a,x) = 1 - P(a,x)
double gamma_p(double a, double x);
double gamma_q(double a, double x);

}  // namespace planetree
