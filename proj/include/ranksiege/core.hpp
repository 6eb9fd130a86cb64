#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ranksiege/errors.hpp"

namespace ranksiege {

// Candidate indices are 0-based everywhere in memory; file formats and
// reports use 1-based ids.
using Candidate = int;

inline int num_ordered_pairs(int n) { return n * (n - 1); }

// Ordered pair (i, j), read "i beats j", with its flat position in the
// lexicographic enumeration of all n(n-1) ordered pairs.
struct PairIndex {
    Candidate i = 0;
    Candidate j = 0;
    int flat = 0;
};

// Flat index of the ordered pair (i, j) among the n(n-1) ordered pairs,
// lexicographic. Bijective for fixed n; throws on i == j or out of range.
int pair_flat(Candidate i, Candidate j, int n);
PairIndex make_pair(Candidate i, Candidate j, int n);
PairIndex pair_from_flat(int flat, int n);

enum class Origin : std::uint8_t { Original, Adversarial };

struct Comparison {
    Candidate winner = 0;
    Candidate loser = 0;
    Origin origin = Origin::Original;

    friend bool operator==(const Comparison& a, const Comparison& b) {
        return a.winner == b.winner && a.loser == b.loser && a.origin == b.origin;
    }
};

// Per-ordered-pair occurrence counts over n candidates. Counts stay exact
// integers until normalized downstream.
struct ComparisonGraph {
    int n = 0;
    std::vector<std::int64_t> weights;  // length n(n-1), flat pair order

    ComparisonGraph() = default;
    explicit ComparisonGraph(int n_) : n(n_), weights(num_ordered_pairs(n_), 0) {}

    std::int64_t weight(Candidate i, Candidate j) const { return weights[pair_flat(i, j, n)]; }
    void add(const Comparison& c, std::int64_t count = 1) {
        weights[pair_flat(c.winner, c.loser, n)] += count;
    }
    std::int64_t total() const;

    // Counts rescaled to a probability vector over ordered pairs.
    std::vector<double> normalized() const;
};

ComparisonGraph weights_from_stream(std::span<const Comparison> stream, int n);

// Length-n real score vector. Under the simplex constraint the entries are
// nonnegative and sum to 1; unconstrained score vectors (e.g. HodgeRank
// output) use the same carrier.
struct PreferenceScores {
    std::vector<double> values;

    PreferenceScores() = default;
    explicit PreferenceScores(std::vector<double> v) : values(std::move(v)) {}

    int size() const { return static_cast<int>(values.size()); }
    double operator[](int i) const { return values[i]; }
};

// Permutation of {0, .., n-1}, best candidate first.
struct Ranking {
    std::vector<Candidate> order;

    Ranking() = default;
    explicit Ranking(std::vector<Candidate> o) : order(std::move(o)) {}

    int size() const { return static_cast<int>(order.size()); }

    // Position (0-based) of each candidate; throws if not a permutation.
    std::vector<int> positions() const;
};

// Descending sort by score, ties broken by ascending candidate index.
// NaN scores are rejected.
Ranking ranking_from_scores(const PreferenceScores& scores);

}  // namespace ranksiege
