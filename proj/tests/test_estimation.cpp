#include <doctest.h>

#include <cmath>

#include "ranksiege/estimation.hpp"
#include "ranksiege/rng.hpp"
#include "test_support.hpp"

using namespace ranksiege;

namespace {

std::vector<double> random_pair_distribution(int n, Rng& rng) {
    std::vector<double> p(num_ordered_pairs(n));
    double sum = 0.0;
    for (double& x : p) sum += (x = -std::log(1.0 - rng.uniform()));
    for (double& x : p) x /= sum;
    return p;
}

SupportSet random_support(int n, double beta, Rng& rng) {
    std::vector<double> c(n);
    double sum = 0.0;
    for (double& x : c) sum += (x = 0.2 + rng.uniform());
    for (double& x : c) x /= sum;
    return SupportSet{PreferenceScores{c}, beta};
}

}  // namespace

TEST_CASE("simplex_project hand examples") {
    const std::vector<double> onsimplex{0.2, 0.3, 0.5};
    CHECK(simplex_project(onsimplex).values == onsimplex);

    const auto forced = simplex_project(std::vector<double>{2.0, 0.0});
    CHECK(forced[0] == doctest::Approx(1.0));
    CHECK(forced[1] == doctest::Approx(0.0));

    // Hand-solved 2-dim projection: shift = 0.1.
    const auto shifted = simplex_project(std::vector<double>{0.8, 0.4});
    CHECK(shifted[0] == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(shifted[1] == doctest::Approx(0.3).epsilon(1e-12));

    CHECK_THROWS_AS(simplex_project(std::vector<double>{}), InvalidArgumentError);
}

TEST_CASE("simplex_project matches the brute-force QP oracle") {
    Rng rng(2);
    for (int trial = 0; trial < 1000; ++trial) {
        const int dim = 2 + static_cast<int>(rng.uniform_index(5));
        std::vector<double> v(dim);
        for (double& x : v) x = 4.0 * (rng.uniform() - 0.5);
        const auto got = simplex_project(v).values;
        const auto want = testing::qp_simplex_projection(v);
        for (int i = 0; i < dim; ++i) CHECK(std::abs(got[i] - want[i]) <= 1e-9);
    }
}

TEST_CASE("dro_objective reduces to the log-likelihood at gamma 0") {
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_index(3));
        const auto p = random_pair_distribution(n, rng);
        std::vector<double> th(n);
        for (double& x : th) x = rng.uniform();
        const PreferenceScores scores{th};
        CHECK(dro_objective(scores, p, 0.0) ==
              doctest::Approx(log_likelihood(scores, p)).epsilon(1e-12));
    }
}

TEST_CASE("dro_objective at uniform scores is -(sqrt(gamma) N + 1) ln 2") {
    const int n = 4;
    const int N = num_ordered_pairs(n);
    Rng rng(5);
    const auto p = random_pair_distribution(n, rng);
    const PreferenceScores uniform{std::vector<double>(n, 1.0 / n)};
    for (double gamma : {0.0, 0.3, 2.0}) {
        CHECK(dro_objective(uniform, p, gamma) ==
              doctest::Approx(-(std::sqrt(gamma) * N + 1.0) * std::log(2.0)).epsilon(1e-12));
    }
}

TEST_CASE("dro_objective decreases as gamma grows") {
    Rng rng(7);
    const int n = 4;
    const auto p = random_pair_distribution(n, rng);
    const PreferenceScores th{{0.5, 0.3, 0.15, 0.05}};
    double prev = dro_objective(th, p, 0.0);
    for (double gamma : {0.01, 0.1, 1.0, 10.0}) {
        const double cur = dro_objective(th, p, gamma);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("dro_objective rejects unnormalized weights") {
    const PreferenceScores th{{0.5, 0.5}};
    std::vector<double> bad{0.7, 0.7};
    CHECK_THROWS_AS(dro_objective(th, bad, 0.1), InvalidArgumentError);
}

TEST_CASE("dro_gradient matches central finite differences") {
    Rng rng(11);
    int checked = 0;
    while (checked < 100) {
        const int n = 3 + static_cast<int>(rng.uniform_index(3));
        const auto p = random_pair_distribution(n, rng);
        const double gamma = rng.uniform();
        std::vector<double> th(n);
        double sum = 0.0;
        for (double& x : th) sum += (x = 0.1 + rng.uniform());
        for (double& x : th) x /= sum;  // interior point
        const PreferenceScores scores{th};
        const auto grad = dro_gradient(scores, p, gamma);
        const double h = 1e-6;
        double err2 = 0.0, norm2 = 0.0;
        for (int k = 0; k < n; ++k) {
            auto plus = th, minus = th;
            plus[k] += h;
            minus[k] -= h;
            const double fd = (dro_objective(PreferenceScores{plus}, p, gamma) -
                               dro_objective(PreferenceScores{minus}, p, gamma)) /
                              (2 * h);
            const double d = fd - grad[k];
            err2 += d * d;
            norm2 += grad[k] * grad[k];
        }
        CHECK(std::sqrt(err2) <= 1e-5 * std::sqrt(norm2));
        ++checked;
    }
}

TEST_CASE("mle on symmetric two-candidate weights stays uniform") {
    std::vector<double> p{0.5, 0.5};
    const SupportSet support{PreferenceScores{{0.5, 0.5}}, 0.05};
    const PreferenceScores th = mle(p, support);
    CHECK(th[0] == doctest::Approx(0.5).epsilon(1e-7));
    CHECK(th[1] == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("mle collapses to the center as beta vanishes") {
    Rng rng(13);
    const int n = 3;
    const auto p = random_pair_distribution(n, rng);
    SupportSet support = make_support(Ranking{{2, 0, 1}}, 1e-12);
    const PreferenceScores th = mle(p, support);
    for (int i = 0; i < n; ++i)
        CHECK(th[i] == doctest::Approx(support.center[i]).epsilon(1e-5));
}

TEST_CASE("mle matches the n=3 grid-search oracle on a strongly ordered instance") {
    ComparisonGraph g(3);
    g.add({0, 1}, 15);
    g.add({0, 2}, 12);
    g.add({1, 2}, 10);
    g.add({1, 0}, 3);
    g.add({2, 0}, 2);
    g.add({2, 1}, 8);
    const auto p = g.normalized();
    const SupportSet support = make_support(Ranking{{0, 1, 2}}, 0.05);

    const PreferenceScores th = mle(p, support);
    CHECK(support.contains(th.values, 1e-8));
    const double solver_obj = log_likelihood(th, p);

    const auto grid = testing::grid_search_n3(
        support, [&](const std::vector<double>& cand) {
            return log_likelihood(PreferenceScores{cand}, p);
        },
        2000);
    CHECK(std::abs(solver_obj - grid.value) <= 1e-3);
    CHECK(solver_obj >= grid.value - 1e-9);  // the grid can only undershoot
}

TEST_CASE("mle never returns an objective below the center") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_index(3));
        const auto p = random_pair_distribution(n, rng);
        const SupportSet support = random_support(n, 0.05, rng);
        const PreferenceScores th = mle(p, support);
        CHECK(log_likelihood(th, p) >=
              log_likelihood(support.center, p) - 1e-9);
    }
}

TEST_CASE("robust_estimate at gamma 0 agrees with mle in objective") {
    Rng rng(19);
    RobustConfig cfg;
    cfg.gamma = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_index(3));
        const auto p = random_pair_distribution(n, rng);
        const SupportSet support = random_support(n, 0.05, rng);
        const RobustEstimate est = robust_estimate(p, support, cfg);
        const PreferenceScores direct = mle(p, support);
        CHECK(std::abs(est.objective - log_likelihood(direct, p)) <= 1e-6);
    }
}

TEST_CASE("a huge gamma pulls the estimate toward the flattest feasible point") {
    // Penalty-dominant oracle: the gamma term is minimized at equal scores,
    // so the solution approaches the support's closest point to uniform.
    const int n = 4;
    Rng rng(23);
    const auto p = random_pair_distribution(n, rng);
    const SupportSet support{PreferenceScores{{0.55, 0.25, 0.15, 0.05}}, 0.05};

    std::vector<double> uniform(n, 1.0 / n);
    std::vector<double> oracle = uniform;
    double d2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double d = uniform[i] - support.center[i];
        d2 += d * d;
    }
    if (d2 > support.radius_sq) {
        const double s = std::sqrt(support.radius_sq / d2);
        for (int i = 0; i < n; ++i)
            oracle[i] = support.center[i] + s * (uniform[i] - support.center[i]);
    }

    RobustConfig cfg;
    cfg.gamma = 1e6;
    const RobustEstimate est = robust_estimate(p, support, cfg);
    for (int i = 0; i < n; ++i) CHECK(std::abs(est.theta[i] - oracle[i]) <= 1e-2);
}

TEST_CASE("robust_estimate matches the n=3 grid oracle") {
    Rng rng(29);
    ComparisonGraph g(3);
    const int wins[3][3] = {{0, 4, 3}, {14, 0, 6}, {13, 12, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j && wins[i][j]) g.add({i, j}, wins[i][j]);
    REQUIRE(g.total() == 52 + 8);  // 60 comparisons
    const auto p = g.normalized();
    const SupportSet support = make_support(Ranking{{2, 1, 0}}, 0.05);
    RobustConfig cfg;
    cfg.gamma = 0.1;

    const RobustEstimate est = robust_estimate(p, support, cfg);
    CHECK(support.contains(est.theta.values, 1e-8));

    const auto grid = testing::grid_search_n3(
        support, [&](const std::vector<double>& cand) {
            return dro_objective(PreferenceScores{cand}, p, cfg.gamma);
        },
        2000);
    CHECK(std::abs(est.objective - grid.value) <= 1e-3);
    CHECK(est.objective >= grid.value - 1e-9);
}

TEST_CASE("robust_estimate satisfies both support constraints within 1e-8") {
    Rng rng(31);
    RobustConfig cfg;
    cfg.gamma = 0.05;
    for (int trial = 0; trial < 10; ++trial) {
        const int n = 3 + static_cast<int>(rng.uniform_index(4));
        const auto p = random_pair_distribution(n, rng);
        const SupportSet support = random_support(n, 0.04, rng);
        const RobustEstimate est = robust_estimate(p, support, cfg);
        double sum = 0.0;
        for (double x : est.theta.values) {
            CHECK(x >= -1e-8);
            sum += x;
        }
        CHECK(std::abs(sum - 1.0) <= 1e-8);
        double d2 = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = est.theta[i] - support.center[i];
            d2 += d * d;
        }
        CHECK(d2 <= support.radius_sq + 1e-8);
    }
}

TEST_CASE("bisection probes have non-increasing ball slack in mu") {
    Rng rng(37);
    RobustConfig cfg;
    cfg.gamma = 0.02;
    const int n = 4;
    const auto p = random_pair_distribution(n, rng);
    const SupportSet support{PreferenceScores{{0.55, 0.25, 0.15, 0.05}}, 0.02};
    const RobustEstimate est = robust_estimate(p, support, cfg);
    REQUIRE(est.probes.size() >= 3);
    auto probes = est.probes;
    std::sort(probes.begin(), probes.end());
    for (std::size_t k = 1; k < probes.size(); ++k)
        CHECK(probes[k].second <= probes[k - 1].second + 1e-6);
}

TEST_CASE("restricted estimation respects the half-space and detects infeasibility") {
    Rng rng(41);
    const int n = 3;
    const auto p = random_pair_distribution(n, rng);
    const SupportSet support = make_support(Ranking{{0, 1, 2}}, 0.05);

    const HalfspaceRestriction swap{2, 0};  // theta2 >= theta0
    const PreferenceScores th = mle(p, support, {}, swap);
    CHECK(th[2] >= th[0] - 1e-10);

    // Tiny ball around a strict order leaves no room for the swap.
    const SupportSet tight = make_support(Ranking{{0, 1, 2}}, 1e-6);
    CHECK_THROWS_AS(mle(p, tight, {}, swap), InvalidArgumentError);
}
