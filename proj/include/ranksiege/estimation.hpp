#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "ranksiege/btl.hpp"
#include "ranksiege/core.hpp"

namespace ranksiege {

// Feasible region of every estimation: simplex points within a squared
// distance `radius_sq` of the center (the adversary's target scores).
struct SupportSet {
    PreferenceScores center;
    double radius_sq = 0.05;

    int size() const { return center.size(); }
    bool contains(std::span<const double> theta, double tol = 1e-8) const;
    void validate() const;
};

SupportSet make_support(const Ranking& target, double beta);

struct RobustConfig {
    double gamma = 1e-4;          // Wasserstein radius
    double bisection_tol = 1e-4;  // stop once |mu_max - mu_min| <= tol * mu_inf
    double pg_step = 0.1;         // eta0 for the projected-gradient inner solves
    int pg_iters = 2000;          // T1
    double ball_slack_tol = 1e-9; // refine mu until the ball slack is this tight
    int extreme_samples = 100;    // support samples used to estimate mu_inf

    void validate() const;
};

// Extra linear restriction theta[hi] >= theta[lo] used by the stopping
// statistics.
struct HalfspaceRestriction {
    Candidate hi = 0;
    Candidate lo = 0;
};

// Exact Euclidean projection onto the unit simplex.
PreferenceScores simplex_project(std::span<const double> v);

// Objective of the distributionally robust estimation, in maximization
// orientation:
//   h(theta) = sqrt(gamma) * sum_(i,j) log g_ij(theta)
//            + sum_(i,j) p_ij * log g_ij(theta).
// At gamma = 0 this is exactly log_likelihood(theta, p).
double dro_objective(const PreferenceScores& scores, std::span<const double> p, double gamma);
std::vector<double> dro_gradient(const PreferenceScores& scores, std::span<const double> p,
                                 double gamma);

struct MleOptions {
    double pg_step = 0.1;
    int pg_iters = 2000;
};

// Approximate maximizer of the log-likelihood over the support set (plus an
// optional half-space restriction). The result's objective is never below
// the objective at the support center (minus solver tolerance).
PreferenceScores mle(std::span<const double> pair_weights, const SupportSet& support,
                     const MleOptions& opts = {},
                     std::optional<HalfspaceRestriction> restrict = std::nullopt,
                     std::span<const double> warm_start = {});
PreferenceScores mle(const ComparisonGraph& graph, const SupportSet& support,
                     const MleOptions& opts = {});

struct RobustEstimate {
    PreferenceScores theta;
    double objective = 0.0;  // h(theta)
    double mu = 0.0;         // final ball-constraint dual
    std::vector<std::pair<double, double>> probes;  // (mu, grad H(mu)) along the search
};

// Outer bisection over the ball dual mu driven by
// grad H(mu) = 0.5 * ||theta(mu) - center||^2 - beta, inner projected
// gradient on the simplex. At gamma = 0 the result agrees with mle up to
// solver tolerance.
RobustEstimate robust_estimate(std::span<const double> p, const SupportSet& support,
                               const RobustConfig& cfg,
                               std::optional<HalfspaceRestriction> restrict = std::nullopt,
                               std::span<const double> warm_start = {});

// Squared distance from the support center to the closest simplex point in
// the half-space; infeasibility of a restricted estimation is detected by
// comparing this against the ball radius.
double restriction_distance_sq(const SupportSet& support, const HalfspaceRestriction& r);

}  // namespace ranksiege
