#include "ranksiege/policy.hpp"

#include <algorithm>
#include <cmath>

#include "solvers.hpp"

namespace ranksiege {

using detail::Vec;

void StoppingConfig::validate() const {
    if (!(chi > 0.0 && chi < 1.0)) throw InvalidArgumentError("chi must lie in (0, 1)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgumentError("alpha must lie in (0, 1)");
    if (!(gamma >= 0.0)) throw InvalidArgumentError("gamma must be nonnegative");
}

double z_threshold(double chi, double alpha) {
    if (!(chi > 0.0 && chi < 1.0)) throw InvalidArgumentError("chi must lie in (0, 1)");
    if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgumentError("alpha must lie in (0, 1)");
    const double l = std::abs(std::log(chi));
    return l * (1.0 + std::pow(l, -alpha));
}

void GenerationRule::validate(int n) const {
    if (static_cast<int>(probs.size()) != num_ordered_pairs(n))
        throw InvalidArgumentError("generation rule length does not match n(n-1)");
    double sum = 0.0;
    for (double x : probs) {
        if (x < -1e-12) throw InvalidArgumentError("generation rule has negative entries");
        sum += x;
    }
    if (std::abs(sum - 1.0) > 1e-6)
        throw InvalidArgumentError("generation rule does not sum to 1");
}

namespace {

double sigmoid(double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

using WarmMap = std::map<std::pair<Candidate, Candidate>, std::vector<double>>;

// Best objective over {theta[hi] >= theta[lo]} n Supp: h when robust,
// log-likelihood otherwise.
double restricted_best(Candidate hi, Candidate lo, std::span<const double> p,
                       const SupportSet& support, const StoppingConfig& cfg,
                       const RobustConfig& solver, WarmMap* warm) {
    const HalfspaceRestriction r{hi, lo};
    std::span<const double> start{};
    std::vector<double>* slot = nullptr;
    if (warm) {
        slot = &(*warm)[{hi, lo}];
        if (!slot->empty()) start = *slot;
    }
    if (cfg.robust) {
        RobustConfig rc = solver;
        rc.gamma = cfg.gamma;
        RobustEstimate est = robust_estimate(p, support, rc, r, start);
        if (slot) *slot = est.theta.values;
        return est.objective;
    }
    MleOptions mo{solver.pg_step, solver.pg_iters};
    PreferenceScores th = mle(p, support, mo, r, start);
    if (slot) *slot = th.values;
    return log_likelihood(th, p);
}

// Analytic cap on any |delta|: both constrained optima lie within the
// support ball, over which the objective varies by at most
// (sqrt(gamma)*N [robust] + 1) * 2*sqrt(2*beta).
double delta_bound(const SupportSet& support, const StoppingConfig& cfg) {
    const double pair_mass =
        (cfg.robust ? std::sqrt(cfg.gamma) * num_ordered_pairs(support.size()) : 0.0) + 1.0;
    return pair_mass * 2.0 * std::sqrt(2.0 * support.radius_sq);
}

double delta_likelihood_impl(Candidate i, Candidate j, std::span<const double> p,
                             const SupportSet& support, const StoppingConfig& cfg,
                             const RobustConfig& solver, WarmMap* warm) {
    if (i == j) throw InvalidArgumentError("delta requires two distinct candidates");
    const double best_ij = restricted_best(i, j, p, support, cfg, solver, warm);
    const double best_ji = restricted_best(j, i, p, support, cfg, solver, warm);
    return best_ij - best_ji;
}

bool should_stop_impl(std::span<const double> p, const SupportSet& support,
                      const StoppingConfig& cfg, const RobustConfig& solver, WarmMap* warm,
                      std::map<std::pair<Candidate, Candidate>, double>* gap_cache,
                      double bound) {
    cfg.validate();
    support.validate();
    const int n = support.size();
    const double z = z_threshold(cfg.chi, cfg.alpha);
    if (bound < z) return false;  // no gap can reach the threshold

    std::vector<std::pair<Candidate, Candidate>> pairs;
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (Candidate i = 0; i < n; ++i)
        for (Candidate j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    if (gap_cache) {
        // Probe the historically weakest pairs first so a non-stop answer
        // is usually decided by the first evaluation.
        std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& a, const auto& b) {
            auto ga = gap_cache->find(a), gb = gap_cache->find(b);
            const double va = ga == gap_cache->end() ? 0.0 : ga->second;
            const double vb = gb == gap_cache->end() ? 0.0 : gb->second;
            return va < vb;
        });
    }

    const double stop_level = std::exp(-z);
    double sum = 0.0;
    for (const auto& [i, j] : pairs) {
        const double gap =
            std::abs(delta_likelihood_impl(i, j, p, support, cfg, solver, warm));
        if (gap_cache) (*gap_cache)[{i, j}] = gap;
        if (cfg.mode == StopMode::S2) {
            if (gap < z) return false;
        } else {
            sum += std::exp(-gap);
            if (sum > stop_level) return false;
        }
    }
    return true;
}

}  // namespace

double delta_likelihood(Candidate i, Candidate j, std::span<const double> p,
                        const SupportSet& support, const StoppingConfig& cfg,
                        const RobustConfig& solver) {
    cfg.validate();
    return delta_likelihood_impl(i, j, p, support, cfg, solver, nullptr);
}

bool should_stop(std::span<const double> p, const SupportSet& support,
                 const StoppingConfig& cfg, const RobustConfig& solver) {
    return should_stop_impl(p, support, cfg, solver, nullptr, nullptr,
                            delta_bound(support, cfg));
}

namespace {

// Drift of the lambda-weighted pair distributions between theta_hat and a
// candidate theta: per ordered pair, K_ij(theta) = g_ij(theta_hat) *
// (softplus(theta_j - theta_i) - softplus(hat margin)), weighted by lambda.
struct DriftObjective {
    int n;
    Vec coef;      // lambda_ij * g_ij(theta_hat)
    Vec sp_hat;    // softplus of theta_hat margins, per ordered pair

    double value(std::span<const double> th) const {
        double acc = 0.0;
        int flat = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                if (coef[flat] != 0.0)
                    acc += coef[flat] * (softplus(th[j] - th[i]) - sp_hat[flat]);
                ++flat;
            }
        return acc;
    }

    Vec grad(std::span<const double> th) const {
        Vec g(n, 0.0);
        int flat = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                const double c = coef[flat++];
                if (c == 0.0) continue;
                const double s = sigmoid(th[j] - th[i]);
                g[j] += c * s;
                g[i] -= c * s;
            }
        return g;
    }
};

DriftObjective make_drift(const GenerationRule& rule, const PreferenceScores& theta_hat) {
    const int n = theta_hat.size();
    DriftObjective d;
    d.n = n;
    d.coef.assign(rule.probs.size(), 0.0);
    d.sp_hat.assign(rule.probs.size(), 0.0);
    int flat = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double m = theta_hat.values[j] - theta_hat.values[i];
            d.sp_hat[flat] = softplus(m);
            d.coef[flat] = rule.probs[flat] * (1.0 - sigmoid(m));  // g_ij(theta_hat)
            ++flat;
        }
    return d;
}

// K_ij(theta) for every ordered pair: g_ij(hat) * log(g_ij(hat)/g_ij(theta)),
// independent of lambda.
Vec drift_terms(const PreferenceScores& theta_hat, std::span<const double> theta) {
    const int n = theta_hat.size();
    Vec k(static_cast<std::size_t>(num_ordered_pairs(n)), 0.0);
    int flat = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double m_hat = theta_hat.values[j] - theta_hat.values[i];
            const double g_hat = 1.0 - sigmoid(m_hat);
            k[flat] = g_hat * (softplus(theta[j] - theta[i]) - softplus(m_hat));
            ++flat;
        }
    return k;
}

struct RegionSolve {
    bool feasible = false;
    double value = 0.0;
    Vec theta;
};

RegionSolve solve_region(const DriftObjective& drift, const SupportSet& support, Candidate above,
                         Candidate below, double pg_step, int pg_iters,
                         const PreferenceScores& theta_hat, WarmMap* warm) {
    RegionSolve out;
    const HalfspaceRestriction r{below, above};  // region: theta[below] >= theta[above]
    if (restriction_distance_sq(support, r) > support.radius_sq + 1e-10) return out;

    std::vector<detail::ConstraintSet> sets;
    sets.push_back(detail::simplex_constraint());
    sets.push_back(detail::halfspace_constraint(below, above));
    sets.push_back(detail::ball_constraint(support.center.values, support.radius_sq));
    auto project = [&sets](Vec& v) { detail::dykstra_project(v, sets); };

    Vec x0;
    if (warm) {
        auto it = warm->find({above, below});
        if (it != warm->end() && !it->second.empty()) x0 = it->second;
    }
    if (x0.empty()) {
        x0 = theta_hat.values;  // tie the swapped pair, stay near theta_hat
        const double m = 0.5 * (x0[above] + x0[below]);
        x0[above] = m;
        x0[below] = m;
    }

    auto obj = [&](std::span<const double> th) { return -drift.value(th); };
    auto grad = [&](std::span<const double> th) {
        Vec g = drift.grad(th);
        for (double& gi : g) gi = -gi;
        return g;
    };
    detail::PgOptions pg{pg_step, pg_iters};
    detail::PgResult res = detail::pg_maximize(obj, grad, project, std::move(x0), pg);
    out.feasible = true;
    out.value = -res.f;
    out.theta = std::move(res.x);
    if (warm) (*warm)[{above, below}] = out.theta;
    return out;
}

InnerMinResult inner_min_impl(const GenerationRule& rule, const PreferenceScores& theta_hat,
                              const SupportSet& support, double pg_step, int pg_iters,
                              WarmMap* warm) {
    const int n = theta_hat.size();
    rule.validate(n);
    support.validate();
    const Ranking pi = ranking_from_scores(theta_hat);
    const DriftObjective drift = make_drift(rule, theta_hat);

    InnerMinResult best;
    bool found = false;
    for (int k = 0; k + 1 < n; ++k) {
        const Candidate above = pi.order[k], below = pi.order[k + 1];
        RegionSolve sol =
            solve_region(drift, support, above, below, pg_step, pg_iters, theta_hat, warm);
        if (!sol.feasible) continue;
        if (!found || sol.value < best.value) {
            best.value = sol.value;
            best.argmin = PreferenceScores{sol.theta};
            best.region = k;
            found = true;
        }
    }
    if (!found)
        throw InvalidArgumentError(
            "every adjacent-transposition region is infeasible for the support ball");
    return best;
}

GenerationRule solve_rule_impl(const PreferenceScores& theta_est, const SupportSet& support,
                               int iters, double c0, double pg_step, int pg_iters,
                               WarmMap* warm) {
    const int n = theta_est.size();
    const int N = num_ordered_pairs(n);
    if (iters < 1) throw InvalidArgumentError("mirror descent needs at least one iteration");

    Vec log_lambda(N, 0.0);
    Vec lambda(N, 1.0 / N);
    Vec average(N, 0.0);
    GenerationRule current{lambda};
    for (int l = 1; l <= iters; ++l) {
        current.probs = lambda;
        const InnerMinResult inner =
            inner_min_impl(current, theta_est, support, pg_step, pg_iters, warm);
        const Vec k = drift_terms(theta_est, inner.argmin.values);
        const double eta = c0 / std::sqrt(static_cast<double>(l));
        double max_log = -1e300;
        for (int idx = 0; idx < N; ++idx) {
            log_lambda[idx] += eta * k[idx];  // subgradient d = -K
            max_log = std::max(max_log, log_lambda[idx]);
        }
        double sum = 0.0;
        for (int idx = 0; idx < N; ++idx) sum += (lambda[idx] = std::exp(log_lambda[idx] - max_log));
        for (int idx = 0; idx < N; ++idx) {
            lambda[idx] /= sum;
            average[idx] += lambda[idx];
        }
    }
    for (double& x : average) x /= static_cast<double>(iters);
    return GenerationRule{std::move(average)};
}

}  // namespace

InnerMinResult inner_min(const GenerationRule& rule, const PreferenceScores& theta_hat,
                         const SupportSet& support, double pg_step, int pg_iters) {
    return inner_min_impl(rule, theta_hat, support, pg_step, pg_iters, nullptr);
}

GenerationRule solve_generation_rule(const PreferenceScores& theta_est,
                                     const SupportSet& support, int iters, double c0,
                                     double pg_step, int pg_iters) {
    return solve_rule_impl(theta_est, support, iters, c0, pg_step, pg_iters, nullptr);
}

GenerationRule mix_exploration(const GenerationRule& rule, double p_explore) {
    if (!(p_explore >= 0.0 && p_explore <= 1.0))
        throw InvalidArgumentError("exploration probability must lie in [0, 1]");
    const double uniform = 1.0 / static_cast<double>(rule.probs.size());
    GenerationRule out = rule;
    for (double& x : out.probs) x = p_explore * uniform + (1.0 - p_explore) * x;
    return out;
}

GenerationRule baseline_rule(BaselineKind kind, const Ranking& target, int n) {
    if (target.size() != n) throw InvalidArgumentError("target ranking does not match n");
    const auto pos = target.positions();
    const int N = num_ordered_pairs(n);
    GenerationRule rule{std::vector<double>(N, 0.0)};
    switch (kind) {
        case BaselineKind::Random: {
            const double p = 1.0 / N;
            for (double& x : rule.probs) x = p;
            break;
        }
        case BaselineKind::Greedy: {
            const Candidate winner = target.order[0];
            const double p = 1.0 / (n - 1);
            for (Candidate j = 0; j < n; ++j)
                if (j != winner) rule.probs[pair_flat(winner, j, n)] = p;
            break;
        }
        case BaselineKind::Straight: {
            const double p = 2.0 / N;  // n(n-1)/2 consistent pairs
            for (Candidate i = 0; i < n; ++i)
                for (Candidate j = 0; j < n; ++j)
                    if (i != j && pos[i] < pos[j]) rule.probs[pair_flat(i, j, n)] = p;
            break;
        }
    }
    return rule;
}

Comparison sample_from_rule(const GenerationRule& rule, int n, Rng& rng, Origin origin) {
    rule.validate(n);
    double total = 0.0;
    for (double x : rule.probs) total += x;
    const double u = rng.uniform() * total;
    double acc = 0.0;
    int chosen = static_cast<int>(rule.probs.size()) - 1;
    for (std::size_t k = 0; k < rule.probs.size(); ++k) {
        acc += rule.probs[k];
        if (u < acc) {
            chosen = static_cast<int>(k);
            break;
        }
    }
    const PairIndex pair = pair_from_flat(chosen, n);
    return Comparison{pair.i, pair.j, origin};
}

Comparison adversarial_generation(std::span<const double> p, const SupportSet& support,
                                  const PolicyConfig& cfg, Rng& rng) {
    const RobustEstimate est = robust_estimate(p, support, cfg.robust);
    GenerationRule rule = solve_generation_rule(est.theta, support, cfg.mirror_iters,
                                                cfg.mirror_c0, cfg.robust.pg_step,
                                                cfg.robust.pg_iters);
    rule = mix_exploration(rule, cfg.p_explore);
    return sample_from_rule(rule, support.size(), rng, Origin::Adversarial);
}

AttackSession::AttackSession(SupportSet support, PolicyConfig cfg)
    : support_(std::move(support)), cfg_(std::move(cfg)) {
    support_.validate();
    cfg_.stopping.validate();
    cfg_.robust.validate();
}

bool AttackSession::should_stop(std::span<const double> p) {
    if (gap_bound_ < 0.0) gap_bound_ = delta_bound(support_, cfg_.stopping);
    return should_stop_impl(p, support_, cfg_.stopping, cfg_.robust, &gap_warm_, &gap_cache_,
                            gap_bound_);
}

Comparison AttackSession::generate(std::span<const double> p, Rng& rng) {
    const RobustEstimate est = robust_estimate(p, support_, cfg_.robust, std::nullopt,
                                               theta_warm_);
    theta_warm_ = est.theta.values;
    GenerationRule rule =
        solve_rule_impl(est.theta, support_, cfg_.mirror_iters, cfg_.mirror_c0,
                        cfg_.robust.pg_step, cfg_.robust.pg_iters, &region_warm_);
    last_rule_ = mix_exploration(rule, cfg_.p_explore);
    return sample_from_rule(last_rule_, support_.size(), rng, Origin::Adversarial);
}

}  // namespace ranksiege
