#include "ranksiege/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ranksiege {

int pair_flat(Candidate i, Candidate j, int n) {
    if (i < 0 || j < 0 || i >= n || j >= n)
        throw InvalidArgumentError("candidate index out of range for pair (" +
                                   std::to_string(i) + ", " + std::to_string(j) + "), n=" +
                                   std::to_string(n));
    if (i == j)
        throw InvalidArgumentError("self-comparison (" + std::to_string(i) + ", " +
                                   std::to_string(j) + ") is not a valid pair");
    return i * (n - 1) + (j > i ? j - 1 : j);
}

PairIndex make_pair(Candidate i, Candidate j, int n) {
    return PairIndex{i, j, pair_flat(i, j, n)};
}

PairIndex pair_from_flat(int flat, int n) {
    if (flat < 0 || flat >= num_ordered_pairs(n))
        throw InvalidArgumentError("flat pair index " + std::to_string(flat) +
                                   " out of range for n=" + std::to_string(n));
    const int i = flat / (n - 1);
    const int r = flat % (n - 1);
    const int j = r >= i ? r + 1 : r;
    return PairIndex{i, j, flat};
}

std::int64_t ComparisonGraph::total() const {
    return std::accumulate(weights.begin(), weights.end(), std::int64_t{0});
}

std::vector<double> ComparisonGraph::normalized() const {
    const double tot = static_cast<double>(total());
    if (tot <= 0)
        throw InvalidArgumentError("cannot normalize an empty comparison graph");
    std::vector<double> p(weights.size());
    for (std::size_t k = 0; k < weights.size(); ++k)
        p[k] = static_cast<double>(weights[k]) / tot;
    return p;
}

ComparisonGraph weights_from_stream(std::span<const Comparison> stream, int n) {
    ComparisonGraph g(n);
    for (const Comparison& c : stream) g.add(c);
    return g;
}

std::vector<int> Ranking::positions() const {
    const int n = size();
    std::vector<int> pos(n, -1);
    for (int k = 0; k < n; ++k) {
        const Candidate c = order[k];
        if (c < 0 || c >= n || pos[c] != -1)
            throw InvalidArgumentError("ranking is not a permutation of 0..n-1");
        pos[c] = k;
    }
    return pos;
}

Ranking ranking_from_scores(const PreferenceScores& scores) {
    const int n = scores.size();
    for (double v : scores.values)
        if (std::isnan(v)) throw InvalidArgumentError("NaN score cannot be ranked");
    std::vector<Candidate> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Candidate a, Candidate b) {
        if (scores.values[a] != scores.values[b]) return scores.values[a] > scores.values[b];
        return a < b;
    });
    return Ranking{std::move(order)};
}

}  // namespace ranksiege
