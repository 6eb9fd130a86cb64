// Shared test-only oracles, independent of the library's solver paths.
#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "ranksiege/estimation.hpp"

namespace ranksiege::testing {

// Brute-force Euclidean projection onto the simplex: enumerate every
// candidate support set as the top-k entries after sorting, solve the
// equality-constrained projection in closed form, keep the feasible
// candidate closest to v.
inline std::vector<double> qp_simplex_projection(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] > v[b]; });

    std::vector<double> best(n, 0.0);
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= n; ++k) {
        double sum = 0.0;
        for (std::size_t r = 0; r < k; ++r) sum += v[idx[r]];
        const double shift = (sum - 1.0) / static_cast<double>(k);
        std::vector<double> cand(n, 0.0);
        bool feasible = true;
        for (std::size_t r = 0; r < k; ++r) {
            cand[idx[r]] = v[idx[r]] - shift;
            if (cand[idx[r]] < -1e-15) feasible = false;
        }
        for (std::size_t r = k; r < n; ++r)
            if (v[idx[r]] - shift > 1e-15) feasible = false;
        if (!feasible) continue;
        double dist = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double d = cand[i] - v[i];
            dist += d * d;
        }
        if (dist < best_dist) {
            best_dist = dist;
            best = std::move(cand);
        }
    }
    return best;
}

struct GridBest {
    double value = -std::numeric_limits<double>::infinity();
    std::vector<double> theta;
};

// Exhaustive maximization over a 3-candidate simplex grid intersected with
// the support ball. `filter` (optional) can further restrict the region.
inline GridBest grid_search_n3(const SupportSet& support,
                               const std::function<double(const std::vector<double>&)>& objective,
                               int grid,
                               const std::function<bool(const std::vector<double>&)>& filter = {}) {
    GridBest best;
    const std::vector<double>& c = support.center.values;
    std::vector<double> th(3);
    for (int a = 0; a <= grid; ++a) {
        for (int b = 0; b <= grid - a; ++b) {
            th[0] = static_cast<double>(a) / grid;
            th[1] = static_cast<double>(b) / grid;
            th[2] = 1.0 - th[0] - th[1];
            double d2 = 0.0;
            for (int i = 0; i < 3; ++i) {
                const double d = th[i] - c[i];
                d2 += d * d;
            }
            if (d2 > support.radius_sq) continue;
            if (filter && !filter(th)) continue;
            const double val = objective(th);
            if (val > best.value) {
                best.value = val;
                best.theta = th;
            }
        }
    }
    return best;
}

}  // namespace ranksiege::testing
