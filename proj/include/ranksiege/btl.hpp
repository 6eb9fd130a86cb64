#pragma once

#include <span>

#include "ranksiege/core.hpp"
#include "ranksiege/rng.hpp"

namespace ranksiege {

// Bradley-Terry-Luce kernel in the exponential-margin parametrization:
// the probability that i beats j is 1 / (1 + exp(theta_j - theta_i)).
// The strength-scale form (positive strengths s, P = s_i / (s_i + s_j))
// is the reparametrization s = exp(theta); converters below.

// Numerically stable log(1 + exp(x)).
double softplus(double x);

// P(i beats j). The i < j orientation is computed once and the complement
// is derived, so btl_prob(.., i, j) + btl_prob(.., j, i) == 1 bit-exactly.
double btl_prob(const PreferenceScores& scores, Candidate i, Candidate j);

// One BTL draw for the given pair; winner is pair.i with prob btl_prob(i, j).
Comparison sample_comparison(const PreferenceScores& scores, const PairIndex& pair, Rng& rng,
                             Origin origin = Origin::Original);

// Sum over ordered pairs of w_ij * log P(i beats j). Weights may be integer
// counts or any nonnegative reals (e.g. a normalized pair distribution).
double log_likelihood(const PreferenceScores& scores, std::span<const double> pair_weights);
double log_likelihood(const PreferenceScores& scores, const ComparisonGraph& graph);

// Simplex point whose argsort equals the target ranking: equally spaced
// descending values (n, n-1, .., 1) / (n(n+1)/2) along the target order.
PreferenceScores target_scores_from_ranking(const Ranking& target);

// Strength-scale <-> exponential-margin conversions. margins_from_strengths
// takes positive strengths; scores_to_strengths exponentiates and normalizes
// to sum 1.
PreferenceScores scores_from_strengths(std::span<const double> strengths);
std::vector<double> strengths_from_scores(const PreferenceScores& scores);

}  // namespace ranksiege
