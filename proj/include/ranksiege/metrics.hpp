#pragma once

#include "ranksiege/core.hpp"

namespace ranksiege {

struct MetricReport {
    double reciprocal_rank = 0.0;  // in (0, 1]
    double kendall_tau = 0.0;      // in [-1, 1]
};

// 1 / (1-based position of target's winner inside produced).
double reciprocal_rank(const Ranking& target, const Ranking& produced);

// Classic Kendall rank correlation: (concordant - discordant) / (n(n-1)/2).
// Equals 1 iff the rankings are identical; the [0,1] variant some tables
// use is (tau + 1) / 2.
double kendall_tau(const Ranking& target, const Ranking& produced);

MetricReport evaluate_rankings(const Ranking& target, const Ranking& produced);

}  // namespace ranksiege
