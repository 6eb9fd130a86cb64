#pragma once

#include <vector>

#include "ranksiege/core.hpp"

namespace ranksiege {

// Symmetrized graph Laplacian L0 = D - W with W_ij = w_ij + w_ji, plus the
// net-flow divergence div_i = sum_j (w_ij - w_ji). Row sums of L0 are zero
// and L0 is positive semidefinite.
struct LaplacianSystem {
    int n = 0;
    std::vector<double> laplacian;   // row-major n*n
    std::vector<double> divergence;  // length n
};

LaplacianSystem build_laplacian(const ComparisonGraph& graph);

// Row-stochastic transition matrix of the empirical comparison chain.
// The walk moves from i toward j with probability proportional to the
// fraction of {i,j} comparisons that j won, scaled by 1/d_max where d_max
// is the maximum number of distinct opponents of any candidate; self-loops
// absorb the remainder so every row sums to 1.
struct TransitionMatrix {
    int n = 0;
    std::vector<double> entries;  // row-major n*n

    double at(int i, int j) const { return entries[static_cast<std::size_t>(i) * n + j]; }
};

// d_override, when positive, replaces d_max (must be >= d_max to keep rows
// substochastic before self-loops).
TransitionMatrix build_transition(const ComparisonGraph& graph, int d_override = 0);

// Minimal-norm least-squares scores: theta = pinv(L0) * div, so the scores
// sum to zero and candidates who win the majority of their comparisons
// score higher. Throws AggregationError when the undirected comparison
// graph is disconnected.
PreferenceScores hodgerank(const ComparisonGraph& graph);

struct RankCentralityOptions {
    double tol = 1e-10;
    long max_iters = 1'000'000;
    int d_override = 0;
};

// Stationary distribution of the empirical comparison chain via power
// iteration. Requires an irreducible chain; throws AggregationError when
// the chain is reducible and NumericError (carrying the residual) when the
// iteration does not converge.
PreferenceScores rank_centrality(const ComparisonGraph& graph,
                                 const RankCentralityOptions& opts = {});

}  // namespace ranksiege
