#include <doctest.h>

#include <cmath>

#include "ranksiege/sampling.hpp"

using namespace ranksiege;

namespace {

std::vector<Comparison> numbered_stream(int len) {
    std::vector<Comparison> s;
    s.reserve(len);
    for (int k = 0; k < len; ++k) s.push_back({k + 1, 0, Origin::Original});
    return s;
}

bool is_adversarial(const Comparison& c) { return c.origin == Origin::Adversarial; }

// History-dependent mixture of two sources: the adversarial source pushes
// its share toward the given density, so later emissions depend on the
// prefix (a dynamic stream).
std::vector<Comparison> dynamic_mixed_stream(int len, double target_density, Rng& rng) {
    std::vector<Comparison> s;
    s.reserve(len);
    int adversarial = 0;
    for (int k = 0; k < len; ++k) {
        const double current = k == 0 ? 0.0 : static_cast<double>(adversarial) / k;
        const double p = current < target_density ? 0.9 : 0.05;
        const bool adv = rng.uniform() < p;
        if (adv) ++adversarial;
        s.push_back({1, 0, adv ? Origin::Adversarial : Origin::Original});
    }
    return s;
}

// 99th-percentile chi-square critical values for the tested cell counts.
double chi2_crit_99(int dof) {
    switch (dof) {
        case 1: return 6.6349;
        case 49: return 74.919;
        case 99: return 134.642;
    }
    REQUIRE(false);
    return 0;
}

}  // namespace

TEST_CASE("bernoulli keeps everything at rate 1 and nothing at rate 0") {
    const auto stream = numbered_stream(100);
    Rng rng(1);
    CHECK(bernoulli_sample(stream, 1.0, rng) == stream);
    CHECK(bernoulli_sample(stream, 0.0, rng).empty());
    CHECK_THROWS_AS(bernoulli_sample(stream, 1.5, rng), InvalidArgumentError);
}

TEST_CASE("bernoulli sample size stays within the binomial window") {
    const auto stream = numbered_stream(10000);
    Rng rng(2024);
    const auto sample = bernoulli_sample(stream, 0.5, rng);
    CHECK(sample.size() >= 4700);
    CHECK(sample.size() <= 5300);
}

TEST_CASE("bernoulli sample size has the binomial mean over many runs") {
    const int T = 500, runs = 10000;
    const double rho = 0.3;
    const auto stream = numbered_stream(T);
    Rng rng(99);
    double total = 0;
    for (int r = 0; r < runs; ++r)
        total += static_cast<double>(bernoulli_sample(stream, rho, rng).size());
    const double mean = total / runs;
    const double sigma_mean = std::sqrt(T * rho * (1 - rho)) / std::sqrt(static_cast<double>(runs));
    CHECK(std::abs(mean - T * rho) < 3 * sigma_mean);
}

TEST_CASE("reservoir returns the whole stream when capacity covers it") {
    const auto stream = numbered_stream(20);
    Rng rng(5);
    CHECK(reservoir_sample(stream, 20, rng) == stream);
    CHECK(reservoir_sample(stream, 50, rng) == stream);
    CHECK_THROWS_AS(reservoir_sample(stream, 0, rng), InvalidArgumentError);
}

TEST_CASE("reservoir of capacity 1 picks each of two items evenly") {
    const auto stream = numbered_stream(2);
    Rng rng(7);
    int first = 0;
    const int runs = 10000;
    for (int r = 0; r < runs; ++r)
        if (reservoir_sample(stream, 1, rng)[0] == stream[0]) ++first;
    const double freq = static_cast<double>(first) / runs;
    CHECK(freq > 0.48);
    CHECK(freq < 0.52);
}

TEST_CASE("reservoir inclusion frequency is k/T per index") {
    const int k = 10, T = 100, runs = 10000;
    const auto stream = numbered_stream(T);
    Rng rng(11);
    std::vector<int> included(T, 0);
    for (int r = 0; r < runs; ++r)
        for (const Comparison& c : reservoir_sample(stream, k, rng)) ++included[c.winner - 1];
    for (int idx = 0; idx < T; ++idx) {
        const double freq = static_cast<double>(included[idx]) / runs;
        CHECK(freq > 0.09);
        CHECK(freq < 0.11);
    }
}

TEST_CASE("reservoir inclusion counts pass the chi-square test at 0.01") {
    struct Case {
        int k, T;
    };
    Rng rng(311);
    for (const Case c : {Case{1, 2}, Case{5, 50}, Case{10, 100}}) {
        const auto stream = numbered_stream(c.T);
        const int runs = 10000;
        std::vector<long> counts(c.T, 0);
        for (int r = 0; r < runs; ++r)
            for (const Comparison& item : reservoir_sample(stream, c.k, rng))
                ++counts[item.winner - 1];
        const double expected = static_cast<double>(runs) * c.k / c.T;
        double stat = 0;
        for (long obs : counts) {
            const double d = obs - expected;
            stat += d * d / expected;
        }
        CHECK(stat < chi2_crit_99(c.T - 1));
    }
}

TEST_CASE("both samplers preserve the relative order of retained elements") {
    const auto stream = numbered_stream(500);
    Rng rng(13);
    auto check_order = [](const std::vector<Comparison>& sample) {
        int last = -1;
        for (const Comparison& c : sample) {
            const int pos = c.winner - 1;
            CHECK(pos > last);
            last = pos;
        }
    };
    for (int r = 0; r < 20; ++r) {
        check_order(bernoulli_sample(stream, 0.3, rng));
        check_order(reservoir_sample(stream, 40, rng));
    }
}

TEST_CASE("density counts predicate matches") {
    std::vector<Comparison> all(10, Comparison{1, 0, Origin::Adversarial});
    CHECK(density(all, is_adversarial) == doctest::Approx(1.0));

    std::vector<Comparison> half;
    for (int k = 0; k < 10; ++k)
        half.push_back({1, 0, k % 2 == 0 ? Origin::Adversarial : Origin::Original});
    CHECK(density(half, is_adversarial) == doctest::Approx(0.5));

    std::vector<Comparison> mixed;
    for (int k = 0; k < 300; ++k) mixed.push_back({1, 0, Origin::Adversarial});
    for (int k = 0; k < 700; ++k) mixed.push_back({1, 0, Origin::Original});
    CHECK(density(mixed, is_adversarial) == doctest::Approx(0.3));

    CHECK_THROWS_AS(density({}, is_adversarial), InvalidArgumentError);
}

TEST_CASE("representativeness trial with a keep-everything sampler has zero gap") {
    Rng rng(17);
    const auto stream = dynamic_mixed_stream(2000, 0.3, rng);
    SamplerConfig cfg;
    cfg.kind = SamplerKind::Bernoulli;
    cfg.rate = 1.0;
    cfg.seed = 3;
    const auto res = representativeness_trial(stream, cfg, is_adversarial, 0.05);
    CHECK(res.approx_ok);
    CHECK(res.gap == doctest::Approx(0.0));
}

TEST_CASE("parameters at the dynamic-stream bound are representative") {
    const double eps = 0.05, delta = 0.05;
    const int len = 10000, trials = 100;
    const std::size_t source_card = 90;  // 10 candidates' worth of ordered pairs
    Rng stream_rng(19);
    int ok_bern = 0, ok_res = 0;
    for (int t = 0; t < trials; ++t) {
        const auto stream = dynamic_mixed_stream(len, 0.3, stream_rng);
        SamplerConfig bern;
        bern.kind = SamplerKind::Bernoulli;
        bern.rate = std::min(1.0, bernoulli_rate_bound(source_card, eps, delta, len));
        bern.seed = 1000 + t;
        if (representativeness_trial(stream, bern, is_adversarial, eps).approx_ok) ++ok_bern;

        SamplerConfig res;
        res.kind = SamplerKind::Reservoir;
        res.capacity =
            std::min<std::size_t>(len, reservoir_capacity_bound(source_card, eps, delta));
        res.seed = 2000 + t;
        if (representativeness_trial(stream, res, is_adversarial, eps).approx_ok) ++ok_res;
    }
    CHECK(ok_bern >= 95);
    CHECK(ok_res >= 95);
}

TEST_CASE("a vanishing sampling rate frequently misses the density") {
    Rng stream_rng(23);
    const auto stream = dynamic_mixed_stream(20000, 0.3, stream_rng);
    int bad = 0;
    const int trials = 200;
    for (int t = 0; t < trials; ++t) {
        SamplerConfig cfg;
        cfg.kind = SamplerKind::Bernoulli;
        cfg.rate = 3e-4;  // a handful of retained items
        cfg.seed = 100 + t;
        try {
            if (!representativeness_trial(stream, cfg, is_adversarial, 0.05).approx_ok) ++bad;
        } catch (const InvalidArgumentError&) {
            ++bad;  // empty sample
        }
    }
    CHECK(bad > trials / 4);
}
