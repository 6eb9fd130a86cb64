#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ranksiege/core.hpp"
#include "ranksiege/rng.hpp"

namespace ranksiege {

enum class SamplerKind { Identity, Bernoulli, Reservoir };

struct SamplerConfig {
    SamplerKind kind = SamplerKind::Identity;
    double rate = 1.0;        // Bernoulli keep probability, in [0, 1]
    std::size_t capacity = 1; // reservoir size, >= 1
    std::uint64_t seed = 0;

    void validate() const;
};

using ComparisonPredicate = std::function<bool(const Comparison&)>;

// Keep each element independently with probability `rate`; relative order
// preserved; deterministic given the generator state.
std::vector<Comparison> bernoulli_sample(std::span<const Comparison> stream, double rate,
                                         Rng& rng);

// Algorithm R: after T >= capacity items every item is retained with
// probability capacity/T. Retained elements are reported in stream order.
std::vector<Comparison> reservoir_sample(std::span<const Comparison> stream,
                                         std::size_t capacity, Rng& rng);

std::vector<Comparison> run_sampler(std::span<const Comparison> stream,
                                    const SamplerConfig& config);

// Fraction of the sample satisfying the predicate; errors on empty input.
double density(std::span<const Comparison> sample, const ComparisonPredicate& membership);

struct RepresentativenessResult {
    bool approx_ok = false;
    double gap = 0.0;  // |density(stream) - density(sample)|
};

RepresentativenessResult representativeness_trial(std::span<const Comparison> stream,
                                                  const SamplerConfig& sampler,
                                                  const ComparisonPredicate& membership,
                                                  double epsilon);

// Dynamic-stream parameter bounds: any rate/capacity at or above these makes
// the sampler (epsilon, delta)-representative w.r.t. a source of
// `source_cardinality` distinct comparisons.
double bernoulli_rate_bound(std::size_t source_cardinality, double epsilon, double delta,
                            std::size_t stream_length);
std::size_t reservoir_capacity_bound(std::size_t source_cardinality, double epsilon,
                                     double delta);

}  // namespace ranksiege
