#include "ranksiege/estimation.hpp"

#include <algorithm>
#include <cmath>

#include "ranksiege/rng.hpp"
#include "solvers.hpp"

namespace ranksiege {

using detail::Vec;

bool SupportSet::contains(std::span<const double> theta, double tol) const {
    if (static_cast<int>(theta.size()) != size()) return false;
    double sum = 0.0;
    for (double x : theta) {
        if (x < -tol) return false;
        sum += x;
    }
    if (std::abs(sum - 1.0) > tol) return false;
    return detail::dist_sq(theta, center.values) <= radius_sq + tol;
}

void SupportSet::validate() const {
    if (size() < 2) throw InvalidArgumentError("support set needs at least 2 candidates");
    if (!(radius_sq > 0)) throw InvalidArgumentError("support radius must be positive");
}

SupportSet make_support(const Ranking& target, double beta) {
    SupportSet s{target_scores_from_ranking(target), beta};
    s.validate();
    return s;
}

void RobustConfig::validate() const {
    if (!(gamma >= 0)) throw InvalidArgumentError("gamma must be nonnegative");
    if (!(bisection_tol > 0) || !(pg_step > 0) || pg_iters < 1)
        throw InvalidArgumentError("robust config tolerances must be positive");
}

PreferenceScores simplex_project(std::span<const double> v) {
    if (v.empty()) throw InvalidArgumentError("cannot project an empty vector");
    Vec x(v.begin(), v.end());
    for (double xi : x)
        if (!std::isfinite(xi)) throw InvalidArgumentError("simplex projection needs finite input");
    detail::project_simplex_inplace(x);
    return PreferenceScores{std::move(x)};
}

namespace {

void check_pair_distribution(std::span<const double> p, int n) {
    if (static_cast<int>(p.size()) != num_ordered_pairs(n))
        throw InvalidArgumentError("pair distribution length does not match n(n-1)");
    double sum = 0.0;
    for (double x : p) {
        if (x < -1e-12) throw InvalidArgumentError("pair distribution has negative entries");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-8)
        throw InvalidArgumentError("pair distribution is not normalized within 1e-8");
}

double sigmoid(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

// h and its gradient share the per-pair weight sqrt(gamma) + p_ij.
double weighted_negsp(std::span<const double> theta, std::span<const double> p,
                      double sqrt_gamma) {
    const int n = static_cast<int>(theta.size());
    double acc = 0.0;
    int flat = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            acc -= (sqrt_gamma + p[flat++]) * softplus(theta[j] - theta[i]);
        }
    return acc;
}

Vec weighted_negsp_grad(std::span<const double> theta, std::span<const double> p,
                        double sqrt_gamma) {
    const int n = static_cast<int>(theta.size());
    Vec g(n, 0.0);
    int flat = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double w = sqrt_gamma + p[flat++];
            const double s = sigmoid(theta[j] - theta[i]);  // = 1 - g_ij
            g[i] += w * s;
            g[j] -= w * s;
        }
    return g;
}

std::vector<detail::ConstraintSet> support_constraints(
    const SupportSet& support, const std::optional<HalfspaceRestriction>& restrict,
    bool include_ball) {
    std::vector<detail::ConstraintSet> sets;
    sets.push_back(detail::simplex_constraint());
    if (restrict) sets.push_back(detail::halfspace_constraint(restrict->hi, restrict->lo));
    if (include_ball) sets.push_back(detail::ball_constraint(support.center.values, support.radius_sq));
    return sets;
}

void check_restriction_feasible(const SupportSet& support,
                                const std::optional<HalfspaceRestriction>& restrict) {
    if (!restrict) return;
    const double d2 = restriction_distance_sq(support, *restrict);
    if (d2 > support.radius_sq + 1e-10)
        throw InvalidArgumentError(
            "half-space restriction is infeasible: the support ball excludes every point with "
            "theta[" + std::to_string(restrict->hi) + "] >= theta[" +
            std::to_string(restrict->lo) + "]");
}

}  // namespace

double restriction_distance_sq(const SupportSet& support, const HalfspaceRestriction& r) {
    Vec x = support.center.values;
    auto sets = support_constraints(support, r, /*include_ball=*/false);
    detail::dykstra_project(x, sets, 1000, 1e-13);
    return detail::dist_sq(x, support.center.values);
}

double dro_objective(const PreferenceScores& scores, std::span<const double> p, double gamma) {
    if (!(gamma >= 0)) throw InvalidArgumentError("gamma must be nonnegative");
    check_pair_distribution(p, scores.size());
    return weighted_negsp(scores.values, p, std::sqrt(gamma));
}

std::vector<double> dro_gradient(const PreferenceScores& scores, std::span<const double> p,
                                 double gamma) {
    if (!(gamma >= 0)) throw InvalidArgumentError("gamma must be nonnegative");
    check_pair_distribution(p, scores.size());
    return weighted_negsp_grad(scores.values, p, std::sqrt(gamma));
}

PreferenceScores mle(std::span<const double> pair_weights, const SupportSet& support,
                     const MleOptions& opts, std::optional<HalfspaceRestriction> restrict,
                     std::span<const double> warm_start) {
    support.validate();
    const int n = support.size();
    if (static_cast<int>(pair_weights.size()) != num_ordered_pairs(n))
        throw InvalidArgumentError("pair weight length does not match the support dimension");
    check_restriction_feasible(support, restrict);

    auto sets = support_constraints(support, restrict, /*include_ball=*/true);
    auto project = [&sets](Vec& v) { detail::dykstra_project(v, sets); };
    auto obj = [&](std::span<const double> th) { return weighted_negsp(th, pair_weights, 0.0); };
    auto grad = [&](std::span<const double> th) {
        return weighted_negsp_grad(th, pair_weights, 0.0);
    };

    Vec x0 = warm_start.empty() ? support.center.values : Vec(warm_start.begin(), warm_start.end());
    detail::PgOptions pg{opts.pg_step, opts.pg_iters};
    detail::PgResult res = detail::pg_maximize(obj, grad, project, std::move(x0), pg);

    // The center is always feasible; never return anything worse.
    Vec center = support.center.values;
    if (restrict) {
        auto feas = support_constraints(support, restrict, true);
        detail::dykstra_project(center, feas);
    }
    if (obj(center) > res.f) return PreferenceScores{std::move(center)};
    return PreferenceScores{std::move(res.x)};
}

PreferenceScores mle(const ComparisonGraph& graph, const SupportSet& support,
                     const MleOptions& opts) {
    return mle(graph.normalized(), support, opts);
}

RobustEstimate robust_estimate(std::span<const double> p, const SupportSet& support,
                               const RobustConfig& cfg,
                               std::optional<HalfspaceRestriction> restrict,
                               std::span<const double> warm_start) {
    support.validate();
    cfg.validate();
    const int n = support.size();
    check_pair_distribution(p, n);
    check_restriction_feasible(support, restrict);

    const double sqrt_gamma = std::sqrt(cfg.gamma);
    const double beta = support.radius_sq;
    const Vec& center = support.center.values;

    auto h = [&](std::span<const double> th) { return weighted_negsp(th, p, sqrt_gamma); };
    auto h_grad = [&](std::span<const double> th) {
        return weighted_negsp_grad(th, p, sqrt_gamma);
    };

    // Inner problem at a fixed dual mu: maximize h(theta) - mu/2 ||theta-c||^2
    // over the simplex (plus the optional half-space).
    auto inner_sets = support_constraints(support, restrict, /*include_ball=*/false);
    auto inner_project = [&inner_sets](Vec& v) {
        if (inner_sets.size() == 1)
            inner_sets[0].project(v);
        else
            detail::dykstra_project(v, inner_sets);
    };
    detail::PgOptions pg{cfg.pg_step, cfg.pg_iters};
    Vec inner_warm =
        warm_start.empty() ? center : Vec(warm_start.begin(), warm_start.end());
    auto solve_inner = [&](double mu) {
        auto obj = [&](std::span<const double> th) {
            return h(th) - 0.5 * mu * detail::dist_sq(th, center);
        };
        auto grad = [&](std::span<const double> th) {
            Vec g = h_grad(th);
            for (int i = 0; i < n; ++i) g[i] -= mu * (th[i] - center[i]);
            return g;
        };
        detail::PgResult r = detail::pg_maximize(obj, grad, inner_project, inner_warm, pg);
        inner_warm = r.x;
        return r.x;
    };

    RobustEstimate out;
    auto finish = [&](Vec theta, double mu) {
        detail::project_ball_inplace(theta, center, beta);  // clip solver-noise overshoot
        out.theta = PreferenceScores{std::move(theta)};
        out.objective = h(out.theta.values);
        out.mu = mu;
        return out;
    };

    Vec theta0 = solve_inner(0.0);
    const double slack0 = 0.5 * detail::dist_sq(theta0, center) - 0.5 * beta;
    out.probes.emplace_back(0.0, slack0);
    if (slack0 <= cfg.ball_slack_tol) return finish(std::move(theta0), 0.0);

    // Dual upper bound from the per-pair worst-case losses over the support,
    // estimated at the center and sampled ball-boundary points.
    Vec z(static_cast<std::size_t>(num_ordered_pairs(n)), 0.0);
    {
        Rng zrng(0x5eedULL);
        auto absorb = [&](std::span<const double> th) {
            int flat = 0;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    if (j == i) continue;
                    z[flat] = std::max(z[flat], softplus(th[j] - th[i]));
                    ++flat;
                }
        };
        absorb(center);
        Vec point(n);
        for (int s = 0; s < cfg.extreme_samples; ++s) {
            double norm_sq = 0.0, mean = 0.0;
            for (int i = 0; i < n; ++i) mean += (point[i] = zrng.uniform() - 0.5);
            mean /= n;
            for (int i = 0; i < n; ++i) {
                point[i] -= mean;  // keep the step inside the sum-1 affine hull
                norm_sq += point[i] * point[i];
            }
            if (norm_sq <= 0) continue;
            const double scale = std::sqrt(beta / norm_sq);
            for (int i = 0; i < n; ++i) point[i] = center[i] + scale * point[i];
            detail::project_simplex_inplace(point);
            absorb(point);
        }
    }
    const int m = num_ordered_pairs(n);
    double z_inf = 0.0, z_two = 0.0;
    for (double zi : z) {
        z_inf = std::max(z_inf, zi);
        z_two += zi * zi;
    }
    z_two = std::sqrt(z_two);
    double mu_inf = std::max(m * z_inf, std::sqrt(m / (2.0 * beta)) * z_two);
    if (!(mu_inf > 0)) mu_inf = 1.0;

    auto ball_slack = [&](std::span<const double> th) {
        return 0.5 * detail::dist_sq(th, center) - 0.5 * beta;
    };

    // Make sure the bracket is valid: grad H(mu_inf) must be <= 0.
    Vec theta_hi = solve_inner(mu_inf);
    double slack_hi = ball_slack(theta_hi);
    out.probes.emplace_back(mu_inf, slack_hi);
    for (int guard = 0; guard < 60 && slack_hi > 0; ++guard) {
        mu_inf *= 4.0;
        theta_hi = solve_inner(mu_inf);
        slack_hi = ball_slack(theta_hi);
        out.probes.emplace_back(mu_inf, slack_hi);
    }

    double mu_lo = 0.0, mu_hi = mu_inf;
    Vec best_feasible = theta_hi;  // feasible iterate with the smallest mu so far
    const double window_floor = 1e-15 * mu_inf;
    for (int it = 0; it < 200; ++it) {
        const double window = mu_hi - mu_lo;
        if (window <= window_floor) break;
        const double mu = 0.5 * (mu_lo + mu_hi);
        Vec theta = solve_inner(mu);
        const double slack = ball_slack(theta);
        out.probes.emplace_back(mu, slack);
        if (slack > 0) {
            mu_lo = mu;
        } else {
            mu_hi = mu;
            best_feasible = std::move(theta);
        }
        if (window <= cfg.bisection_tol * mu_inf && std::abs(slack) <= cfg.ball_slack_tol) {
            if (slack > 0) {
                best_feasible = solve_inner(mu_hi);
                return finish(std::move(best_feasible), mu_hi);
            }
            return finish(std::move(best_feasible), mu);
        }
    }
    return finish(std::move(best_feasible), mu_hi);
}

}  // namespace ranksiege
