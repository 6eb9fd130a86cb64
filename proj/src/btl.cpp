#include "ranksiege/btl.hpp"

#include <cmath>
#include <numeric>

namespace ranksiege {

double softplus(double x) {
    if (x > 0) return x + std::log1p(std::exp(-x));
    return std::log1p(std::exp(x));
}

namespace {

double sigmoid(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

}  // namespace

double btl_prob(const PreferenceScores& scores, Candidate i, Candidate j) {
    const int n = scores.size();
    if (i < 0 || j < 0 || i >= n || j >= n || i == j)
        throw InvalidArgumentError("btl_prob requires two distinct candidates in range");
    if (i < j) return sigmoid(scores[i] - scores[j]);
    return 1.0 - btl_prob(scores, j, i);
}

Comparison sample_comparison(const PreferenceScores& scores, const PairIndex& pair, Rng& rng,
                             Origin origin) {
    const double p = btl_prob(scores, pair.i, pair.j);
    if (rng.uniform() < p) return Comparison{pair.i, pair.j, origin};
    return Comparison{pair.j, pair.i, origin};
}

double log_likelihood(const PreferenceScores& scores, std::span<const double> pair_weights) {
    const int n = scores.size();
    if (static_cast<int>(pair_weights.size()) != num_ordered_pairs(n))
        throw InvalidArgumentError("pair weight vector length does not match n(n-1)");
    double ll = 0.0;
    int flat = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double w = pair_weights[flat++];
            if (w != 0.0) ll -= w * softplus(scores[j] - scores[i]);
        }
    }
    return ll;
}

double log_likelihood(const PreferenceScores& scores, const ComparisonGraph& graph) {
    if (graph.n != scores.size())
        throw InvalidArgumentError("graph size does not match score length");
    std::vector<double> w(graph.weights.begin(), graph.weights.end());
    return log_likelihood(scores, w);
}

PreferenceScores target_scores_from_ranking(const Ranking& target) {
    const int n = target.size();
    if (n < 2) throw InvalidArgumentError("target ranking needs at least 2 candidates");
    target.positions();  // validates the permutation
    const double denom = static_cast<double>(n) * (n + 1) / 2.0;
    std::vector<double> v(n, 0.0);
    for (int k = 0; k < n; ++k) v[target.order[k]] = static_cast<double>(n - k) / denom;
    return PreferenceScores{std::move(v)};
}

PreferenceScores scores_from_strengths(std::span<const double> strengths) {
    std::vector<double> v(strengths.size());
    for (std::size_t i = 0; i < strengths.size(); ++i) {
        if (!(strengths[i] > 0))
            throw InvalidArgumentError("strengths must be strictly positive");
        v[i] = std::log(strengths[i]);
    }
    return PreferenceScores{std::move(v)};
}

std::vector<double> strengths_from_scores(const PreferenceScores& scores) {
    std::vector<double> s(scores.values.size());
    double tot = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) tot += (s[i] = std::exp(scores.values[i]));
    for (double& x : s) x /= tot;
    return s;
}

}  // namespace ranksiege
