#include "ranksiege/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace ranksiege {

void SamplerConfig::validate() const {
    switch (kind) {
        case SamplerKind::Identity:
            return;
        case SamplerKind::Bernoulli:
            if (!(rate >= 0.0 && rate <= 1.0))
                throw InvalidArgumentError("bernoulli rate must lie in [0, 1]");
            return;
        case SamplerKind::Reservoir:
            if (capacity < 1) throw InvalidArgumentError("reservoir capacity must be >= 1");
            return;
    }
    throw InvalidArgumentError("unknown sampler kind");
}

std::vector<Comparison> bernoulli_sample(std::span<const Comparison> stream, double rate,
                                         Rng& rng) {
    if (!(rate >= 0.0 && rate <= 1.0))
        throw InvalidArgumentError("bernoulli rate must lie in [0, 1]");
    std::vector<Comparison> out;
    for (const Comparison& c : stream)
        if (rng.uniform() < rate) out.push_back(c);
    return out;
}

std::vector<Comparison> reservoir_sample(std::span<const Comparison> stream,
                                         std::size_t capacity, Rng& rng) {
    if (capacity < 1) throw InvalidArgumentError("reservoir capacity must be >= 1");
    std::vector<std::pair<std::size_t, Comparison>> slots;  // (stream index, item)
    slots.reserve(std::min(capacity, stream.size()));
    for (std::size_t t = 0; t < stream.size(); ++t) {
        if (slots.size() < capacity) {
            slots.emplace_back(t, stream[t]);
            continue;
        }
        const std::size_t pick = rng.uniform_index(t + 1);
        if (pick < capacity) slots[pick] = {t, stream[t]};
    }
    std::sort(slots.begin(), slots.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Comparison> out;
    out.reserve(slots.size());
    for (const auto& [idx, c] : slots) out.push_back(c);
    return out;
}

std::vector<Comparison> run_sampler(std::span<const Comparison> stream,
                                    const SamplerConfig& config) {
    config.validate();
    Rng rng(config.seed);
    switch (config.kind) {
        case SamplerKind::Identity:
            return {stream.begin(), stream.end()};
        case SamplerKind::Bernoulli:
            return bernoulli_sample(stream, config.rate, rng);
        case SamplerKind::Reservoir:
            return reservoir_sample(stream, config.capacity, rng);
    }
    throw InvalidArgumentError("unknown sampler kind");
}

double density(std::span<const Comparison> sample, const ComparisonPredicate& membership) {
    if (sample.empty()) throw InvalidArgumentError("density of an empty sample is undefined");
    std::size_t hits = 0;
    for (const Comparison& c : sample)
        if (membership(c)) ++hits;
    return static_cast<double>(hits) / static_cast<double>(sample.size());
}

RepresentativenessResult representativeness_trial(std::span<const Comparison> stream,
                                                  const SamplerConfig& sampler,
                                                  const ComparisonPredicate& membership,
                                                  double epsilon) {
    const std::vector<Comparison> sample = run_sampler(stream, sampler);
    if (sample.empty())
        throw InvalidArgumentError("sampler produced an empty sample; trial undefined");
    const double gap = std::abs(density(stream, membership) - density(sample, membership));
    return RepresentativenessResult{gap <= epsilon, gap};
}

double bernoulli_rate_bound(std::size_t source_cardinality, double epsilon, double delta,
                            std::size_t stream_length) {
    return 10.0 * (std::log(static_cast<double>(source_cardinality)) + std::log(4.0 / delta)) /
           (epsilon * epsilon * static_cast<double>(stream_length));
}

std::size_t reservoir_capacity_bound(std::size_t source_cardinality, double epsilon,
                                     double delta) {
    const double k = 10.0 *
                     (std::log(static_cast<double>(source_cardinality)) + std::log(2.0 / delta)) /
                     (epsilon * epsilon);
    return static_cast<std::size_t>(std::ceil(k));
}

}  // namespace ranksiege
