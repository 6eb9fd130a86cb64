#pragma once

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "ranksiege/estimation.hpp"
#include "ranksiege/rng.hpp"

namespace ranksiege {

enum class StopMode { S1, S2 };

struct StoppingConfig {
    StopMode mode = StopMode::S2;
    double chi = 1e-3;    // relative insertion cost, in (0, 1)
    double alpha = 0.5;   // threshold exponent, in (0, 1)
    bool robust = true;   // gap objective: robust h when true, log-likelihood when false
    double gamma = 1e-4;  // Wasserstein radius used by the robust gaps

    void validate() const;
};

// z_alpha(chi) = |log chi| * (1 + |log chi|^(-alpha)).
double z_threshold(double chi, double alpha);

// Constrained-optima gap for the ordered pair (i, j):
//   (best objective over {theta_i >= theta_j} n Supp)
// - (best objective over {theta_j >= theta_i} n Supp).
// Antisymmetric by construction.
double delta_likelihood(Candidate i, Candidate j, std::span<const double> p,
                        const SupportSet& support, const StoppingConfig& cfg,
                        const RobustConfig& solver = {});

// S1: sum over unordered pairs of exp(-|delta|) <= exp(-z).
// S2: min over unordered pairs of |delta| >= z.
bool should_stop(std::span<const double> p, const SupportSet& support,
                 const StoppingConfig& cfg, const RobustConfig& solver = {});

// Categorical distribution over the n(n-1) ordered pairs.
struct GenerationRule {
    std::vector<double> probs;

    void validate(int n) const;
};

struct InnerMinResult {
    double value = 0.0;
    PreferenceScores argmin;
    int region = -1;  // adjacent-transposition index in pi(theta_hat)
};

// Minimum over theta with pi(theta) != pi(theta_hat) of the lambda-weighted
// drift sum_(i,j) lambda_ij g_ij(theta_hat) log(g_ij(theta_hat)/g_ij(theta)).
// The feasible set decomposes into the n-1 adjacent-transposition regions of
// pi(theta_hat); each convex region is solved by projected gradient and the
// best region wins. Throws when every region is infeasible.
InnerMinResult inner_min(const GenerationRule& rule, const PreferenceScores& theta_hat,
                         const SupportSet& support, double pg_step = 0.1, int pg_iters = 2000);

// Entropic mirror descent on the simplex for the max-min generation rule;
// returns the average of the iterates. eta_l = c0 / sqrt(l).
GenerationRule solve_generation_rule(const PreferenceScores& theta_est,
                                     const SupportSet& support, int iters, double c0,
                                     double pg_step = 0.1, int pg_iters = 2000);

// Convex mixture with the uniform distribution over all n(n-1) ordered pairs.
GenerationRule mix_exploration(const GenerationRule& rule, double p_explore);

enum class BaselineKind { Random, Greedy, Straight };

// Random: uniform over all ordered pairs. Greedy: uniform over the n-1
// pairs (target winner, other). Straight: uniform over the n(n-1)/2 pairs
// consistent with the target ranking.
GenerationRule baseline_rule(BaselineKind kind, const Ranking& target, int n);

Comparison sample_from_rule(const GenerationRule& rule, int n, Rng& rng,
                            Origin origin = Origin::Adversarial);

struct PolicyConfig {
    StoppingConfig stopping;
    RobustConfig robust;
    int mirror_iters = 25;
    double mirror_c0 = 10.0;
    double p_explore = 0.05;
};

// One adversarial emission: robust-estimate the scores from the observed
// pair distribution, solve the generation rule, mix in exploration, then
// draw one ordered pair.
Comparison adversarial_generation(std::span<const double> p, const SupportSet& support,
                                  const PolicyConfig& cfg, Rng& rng);

// Stateful wrapper used by the game engine: same mathematics as the free
// functions, with warm starts carried between turns and cheap early exits
// in the stopping check.
class AttackSession {
public:
    AttackSession(SupportSet support, PolicyConfig cfg);

    bool should_stop(std::span<const double> p);
    Comparison generate(std::span<const double> p, Rng& rng);

    const GenerationRule& last_rule() const { return last_rule_; }

private:
    SupportSet support_;
    PolicyConfig cfg_;
    std::vector<double> theta_warm_;
    std::map<std::pair<Candidate, Candidate>, std::vector<double>> region_warm_;
    std::map<std::pair<Candidate, Candidate>, std::vector<double>> gap_warm_;
    std::map<std::pair<Candidate, Candidate>, double> gap_cache_;
    GenerationRule last_rule_;
    double gap_bound_ = -1.0;  // analytic cap on |delta|, computed lazily
};

}  // namespace ranksiege
