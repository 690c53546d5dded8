// Times the OpenMP kernels against their serial reference implementations
// on the large replica shapes and checks they agree while doing so.

#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "crowdsel/crowding.hpp"
#include "crowdsel/rankers.hpp"
#include "crowdsel/reference.hpp"
#include "synthetic.hpp"

using namespace crowdsel;

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <typename F>
double time_best_of(int rounds, F&& f) {
  double best = 1e300;
  for (int i = 0; i < rounds; ++i) {
    const auto start = std::chrono::steady_clock::now();
    f();
    best = std::min(best, seconds_since(start));
  }
  return best;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif

  {
    testsupport::ReplicaSpec spec{"ovarian", 216, 4000, 30, 8, 0.55, 0.10, 0.030};
    const Dataset ds = testsupport::make_replica(spec, 1);

    std::vector<CrowdingScore> parallel, serial;
    const double t_par = time_best_of(3, [&] { parallel = crowding_scores(ds); });
    const double t_ser = time_best_of(3, [&] { serial = reference::crowding_scores_serial(ds); });
    const bool equal = parallel == serial;
    std::printf("crowding  %4zux%-5zu  parallel %8.4f s  serial %8.4f s  speedup %.2fx  %s\n",
                ds.n_samples(), ds.n_features(), t_par, t_ser, t_ser / t_par,
                equal ? "bit-identical" : "MISMATCH");
    if (!equal) return 1;
  }

  {
    testsupport::ReplicaSpec spec{"colon", 62, 2000, 24, 6, 0.50, 0.12, 0.030};
    const Dataset ds = testsupport::make_replica(spec, 2);

    std::vector<double> parallel;
    std::vector<double> serial;
    const double t_par = time_best_of(3, [&] { parallel = relieff_scores(ds, 5).values; });
    const double t_ser =
        time_best_of(3, [&] { serial = reference::relieff_scores_serial(ds, 5); });
    double max_diff = 0.0;
    for (std::size_t j = 0; j < parallel.size(); ++j)
      max_diff = std::max(max_diff, std::abs(parallel[j] - serial[j]));
    std::printf("relieff   %4zux%-5zu  parallel %8.4f s  serial %8.4f s  speedup %.2fx  max|diff| %.2e\n",
                ds.n_samples(), ds.n_features(), t_par, t_ser, t_ser / t_par, max_diff);
    if (max_diff > 1e-12) return 1;
  }
  return 0;
}
