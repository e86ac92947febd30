// Timings for the parallel kernels against their serial references.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "planetree/sample.hpp"
#include "planetree/series.hpp"
#include "planetree/systems.hpp"
#include "planetree/tree.hpp"

using namespace planetree;

namespace {

template <typename F>
double best_of(int reps, F&& fn) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const double dt =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (dt < best) best = dt;
  }
  return best;
}

void bench_mul(std::int64_t order) {
  const Series t = solve(SystemId::T, order).total;
  Series parallel = Series::zero(order), serial = Series::zero(order);
  const double tp = best_of(3, [&] { parallel = series_mul(t, t); });
  const double ts = best_of(3, [&] { serial = series_mul_serial(t, t); });
  if (!(parallel == serial)) {
    std::fprintf(stderr, "kernel mismatch at order %lld\n",
                 static_cast<long long>(order));
    std::exit(1);
  }
  std::printf("series_mul      order %-5lld  parallel %8.3f ms   serial %8.3f ms   x%.2f\n",
              static_cast<long long>(order), tp * 1e3, ts * 1e3, ts / tp);
}

void bench_solve(std::int64_t order) {
  // cold solve: the process-wide memo has not seen this order chain
  const auto t0 = std::chrono::steady_clock::now();
  const SystemSolution sol = solve(SystemId::SR, order);
  const double dt =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  std::printf("solve(SR)       order %-5lld  %8.3f ms   (top coefficient %zu digits)\n",
              static_cast<long long>(order), dt * 1e3,
              sol.total[order].get_num().get_str().size());
}

void bench_sampler(std::int64_t n, std::int64_t m) {
  SampleConfig cfg;
  cfg.n = n;
  cfg.m = m;
  cfg.seed = 1;
  const double dt = best_of(2, [&] { empirical_moments(cfg, {"w"}); });
  std::printf("empirical w     n=%-4lld m=%-6lld  %8.3f ms   %.0f samples/s\n",
              static_cast<long long>(n), static_cast<long long>(m), dt * 1e3,
              m / dt);
}

}  // namespace

int main(int argc, char** argv) {
  const std::int64_t order = argc > 1 ? std::atoll(argv[1]) : 400;
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled: serial build\n");
#endif
  bench_mul(order / 2);
  bench_mul(order);
  bench_solve(order);
  bench_sampler(100, 20000);
  return 0;
}
