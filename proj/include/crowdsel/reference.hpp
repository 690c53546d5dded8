#pragma once

// Plain serial re-derivations of the parallel kernels. These are kept
// deliberately naive and structurally independent of the main
// implementations; the test suites assert agreement and bench/ compares
// runtimes. Not linked into the CLI.

#include <span>
#include <vector>

#include "crowdsel/crowding.hpp"
#include "crowdsel/dataset.hpp"

namespace crowdsel::reference {

// One sort per sample, direct neighbour-gap arithmetic, summed in sample
// order. Must equal crowdsel::crowding_scores bit for bit.
std::vector<CrowdingScore> crowding_scores_serial(const Dataset& ds);

// O(m^2 * n) ReliefF: full distance recomputation per neighbour query.
std::vector<double> relieff_scores_serial(const Dataset& ds, int k_neighbors);

// Exact two-sided rank-sum p by enumerating every C(n_a+n_b, n_a) rank
// split. Valid only for untied pooled samples; sizes beyond ~12 get slow.
double wilcoxon_exact_p_enumerated(std::span<const double> a, std::span<const double> b);

}  // namespace crowdsel::reference
