#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "ranksiege/core.hpp"
#include "ranksiege/rng.hpp"

using namespace ranksiege;

namespace {

// Independent enumeration of ordered pairs in lexicographic order.
std::vector<std::pair<int, int>> enumerate_pairs(int n) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (j != i) out.emplace_back(i, j);
    return out;
}

}  // namespace

TEST_CASE("pair_flat matches the lexicographic enumeration") {
    CHECK(pair_flat(0, 1, 3) == 0);
    // Position of (2,1) among the 6 ordered pairs of n=3, counted by hand
    // against the enumeration oracle.
    const auto pairs3 = enumerate_pairs(3);
    const auto it = std::find(pairs3.begin(), pairs3.end(), std::make_pair(2, 1));
    CHECK(static_cast<int>(it - pairs3.begin()) == 5);
    CHECK(pair_flat(2, 1, 3) == 5);

    for (int n = 2; n <= 7; ++n) {
        const auto pairs = enumerate_pairs(n);
        for (std::size_t k = 0; k < pairs.size(); ++k)
            CHECK(pair_flat(pairs[k].first, pairs[k].second, n) == static_cast<int>(k));
    }
}

TEST_CASE("pair_flat rejects self-pairs and out-of-range candidates") {
    CHECK_THROWS_AS(pair_flat(1, 1, 3), InvalidArgumentError);
    CHECK_THROWS_AS(pair_flat(-1, 0, 3), InvalidArgumentError);
    CHECK_THROWS_AS(pair_flat(0, 3, 3), InvalidArgumentError);
    CHECK_THROWS_AS(pair_from_flat(6, 3), InvalidArgumentError);
}

TEST_CASE("pair index round-trips for every n up to 32") {
    for (int n = 2; n <= 32; ++n) {
        for (int flat = 0; flat < num_ordered_pairs(n); ++flat) {
            const PairIndex p = pair_from_flat(flat, n);
            CHECK(p.i != p.j);
            CHECK(pair_flat(p.i, p.j, n) == flat);
        }
    }
}

TEST_CASE("weights_from_stream counts occurrences") {
    const std::vector<Comparison> stream{{1, 2}, {1, 2}, {2, 1}};
    const ComparisonGraph g = weights_from_stream(stream, 3);
    CHECK(g.weight(1, 2) == 2);
    CHECK(g.weight(2, 1) == 1);
    CHECK(g.weight(0, 1) == 0);
    CHECK(g.total() == 3);
}

TEST_CASE("weights_from_stream on an empty stream is all zeros") {
    const ComparisonGraph g = weights_from_stream({}, 4);
    CHECK(g.total() == 0);
    CHECK_THROWS_AS(g.normalized(), InvalidArgumentError);
}

TEST_CASE("weights_from_stream rejects out-of-range candidates") {
    const std::vector<Comparison> stream{{0, 5}};
    CHECK_THROWS_AS(weights_from_stream(stream, 3), InvalidArgumentError);
}

TEST_CASE("weights_from_stream total equals stream length at study scale") {
    Rng rng(7);
    std::vector<Comparison> stream;
    for (int k = 0; k < 744; ++k) {
        const int i = static_cast<int>(rng.uniform_index(10));
        int j = static_cast<int>(rng.uniform_index(9));
        if (j >= i) ++j;
        stream.push_back({i, j});
    }
    CHECK(weights_from_stream(stream, 10).total() == 744);
}

TEST_CASE("weights_from_stream is permutation-covariant") {
    Rng rng(11);
    const int n = 6;
    std::vector<Comparison> stream;
    for (int k = 0; k < 200; ++k) {
        const int i = static_cast<int>(rng.uniform_index(n));
        int j = static_cast<int>(rng.uniform_index(n - 1));
        if (j >= i) ++j;
        stream.push_back({i, j});
    }
    std::vector<int> relabel(n);
    std::iota(relabel.begin(), relabel.end(), 0);
    for (std::size_t k = n; k > 1; --k)
        std::swap(relabel[k - 1], relabel[rng.uniform_index(k)]);

    std::vector<Comparison> relabeled;
    for (const Comparison& c : stream)
        relabeled.push_back({relabel[c.winner], relabel[c.loser]});
    const ComparisonGraph before = weights_from_stream(stream, n);
    const ComparisonGraph after = weights_from_stream(relabeled, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) CHECK(after.weight(relabel[i], relabel[j]) == before.weight(i, j));
}

TEST_CASE("ranking_from_scores sorts descending with index tie-break") {
    CHECK(ranking_from_scores(PreferenceScores{{0.5, 0.3, 0.2}}).order ==
          std::vector<int>{0, 1, 2});
    CHECK(ranking_from_scores(PreferenceScores{{0.1, 0.2, 0.7}}).order ==
          std::vector<int>{2, 1, 0});
    CHECK(ranking_from_scores(PreferenceScores{{0.4, 0.4, 0.2}}).order ==
          std::vector<int>{0, 1, 2});
}

TEST_CASE("ranking_from_scores rejects NaN") {
    CHECK_THROWS_AS(ranking_from_scores(PreferenceScores{{0.1, std::nan("")}}),
                    InvalidArgumentError);
}

TEST_CASE("ranking_from_scores is invariant to positive scaling") {
    Rng rng(3);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(5);
        for (double& x : v) x = rng.uniform();
        const auto base = ranking_from_scores(PreferenceScores{v}).order;
        for (double a : {0.1, 2.0, 1e6}) {
            std::vector<double> scaled = v;
            for (double& x : scaled) x *= a;
            CHECK(ranking_from_scores(PreferenceScores{scaled}).order == base);
        }
    }
}

TEST_CASE("Ranking::positions validates permutations") {
    CHECK_THROWS_AS((Ranking{{0, 0, 1}}).positions(), InvalidArgumentError);
    CHECK_THROWS_AS((Ranking{{0, 3, 1}}).positions(), InvalidArgumentError);
    const Ranking r{{2, 0, 1}};
    CHECK(r.positions() == std::vector<int>{1, 2, 0});
}
