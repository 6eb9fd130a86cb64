#include "ranksiege/game.hpp"

#include <algorithm>
#include <cmath>

#include "ranksiege/btl.hpp"

namespace ranksiege {

void GameConfig::validate() const {
    if (n < 2) throw InvalidArgumentError("game needs at least 2 candidates");
    if (turns < 1) throw InvalidArgumentError("turns must be >= 1");
    if (insert_budget < 0) throw InvalidArgumentError("insert budget must be >= 0");
    if (!(observe_prob >= 0.0 && observe_prob <= 1.0))
        throw InvalidArgumentError("observe probability must lie in [0, 1]");
    if (target.size() != n) throw InvalidArgumentError("target ranking does not match n");
    target.positions();
    if (stream.empty() && true_scores.size() != n)
        throw InvalidArgumentError("synthesis needs true scores of length n");
    for (const Comparison& c : stream)
        pair_flat(c.winner, c.loser, n);  // range check
    sampler.validate();
    if (sampler.kind == SamplerKind::Reservoir)
        throw InvalidArgumentError(
            "reservoir sampling evicts collected comparisons and cannot back the online game; "
            "use identity or bernoulli");
    if (!(beta > 0)) throw InvalidArgumentError("beta must be positive");
}

std::vector<std::uint8_t> mask_flags(std::size_t count, double observe_prob, Rng& rng) {
    if (!(observe_prob >= 0.0 && observe_prob <= 1.0))
        throw InvalidArgumentError("observe probability must lie in [0, 1]");
    std::vector<std::uint8_t> flags(count, 0);
    for (std::size_t k = 0; k < count; ++k) flags[k] = rng.uniform() < observe_prob ? 1 : 0;
    return flags;
}

std::vector<Comparison> mask_knowledge(std::span<const Comparison> fresh, double observe_prob,
                                       Rng& rng) {
    const auto flags = mask_flags(fresh.size(), observe_prob, rng);
    std::vector<Comparison> out;
    for (std::size_t k = 0; k < fresh.size(); ++k)
        if (flags[k]) out.push_back(fresh[k]);
    return out;
}

VictimResult aggregate_victim(const ComparisonGraph& graph, bool hodgerank_victim) {
    VictimResult res;
    try {
        res.scores = hodgerank_victim ? hodgerank(graph) : rank_centrality(graph);
        res.ranking = ranking_from_scores(res.scores);
        res.ok = true;
    } catch (const Error& e) {
        res.error = e.what();
    }
    return res;
}

ComparisonGraph GameTrace::weights_through(int turn_count) const {
    ComparisonGraph g(n);
    for (int t = 0; t < turn_count && t < static_cast<int>(turns.size()); ++t) {
        const TurnRecord& rec = turns[t];
        for (std::size_t k = 0; k < rec.original.size(); ++k)
            if (rec.retained[k]) g.add(rec.original[k]);
        for (std::size_t k = 0; k < rec.inserted.size(); ++k)
            if (rec.inserted_retained[k]) g.add(rec.inserted[k]);
    }
    return g;
}

bool operator==(const GameTrace& a, const GameTrace& b) {
    if (a.n != b.n || a.seed != b.seed || a.total_inserted != b.total_inserted) return false;
    if (a.final_graph.weights != b.final_graph.weights) return false;
    if (a.turns.size() != b.turns.size()) return false;
    for (std::size_t t = 0; t < a.turns.size(); ++t) {
        const TurnRecord &x = a.turns[t], &y = b.turns[t];
        if (x.original != y.original || x.retained != y.retained || x.observed != y.observed ||
            x.inserted != y.inserted || x.inserted_retained != y.inserted_retained ||
            x.waited != y.waited || x.stopped != y.stopped)
            return false;
    }
    return true;
}

namespace {

// Uniform unordered pair {i < j} from one bounded draw.
PairIndex draw_unordered_pair(int n, Rng& rng) {
    const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
    std::uint64_t k = rng.uniform_index(total);
    for (int i = 0; i < n - 1; ++i) {
        const std::uint64_t row = static_cast<std::uint64_t>(n - 1 - i);
        if (k < row) return make_pair(i, i + 1 + static_cast<int>(k), n);
        k -= row;
    }
    throw NumericError("unordered pair draw out of range");
}

}  // namespace

GameTrace run_game(const GameConfig& config) {
    config.validate();
    const int n = config.n;
    Rng rng(config.seed);

    GameTrace trace;
    trace.n = n;
    trace.seed = config.seed;
    trace.turns.reserve(config.turns);

    ComparisonGraph collected(n);  // the ranker's weights, post-sampler
    std::vector<double> knowledge(num_ordered_pairs(n), 0.0);
    double knowledge_total = 0.0;

    const SupportSet support = make_support(config.target, config.beta);
    std::optional<AttackSession> session;
    GenerationRule baseline;
    switch (config.policy) {
        case PolicyKind::Proposed:
            session.emplace(support, config.policy_params);
            break;
        case PolicyKind::Random:
            baseline = baseline_rule(BaselineKind::Random, config.target, n);
            break;
        case PolicyKind::Greedy:
            baseline = baseline_rule(BaselineKind::Greedy, config.target, n);
            break;
        case PolicyKind::Straight:
            baseline = baseline_rule(BaselineKind::Straight, config.target, n);
            break;
        case PolicyKind::None:
            break;
    }

    auto admit = [&](Rng& r) {
        return config.sampler.kind == SamplerKind::Identity || r.uniform() < config.sampler.rate;
    };

    const std::size_t stream_len = config.stream.size();
    std::vector<double> p_buffer;
    for (int t = 1; t <= config.turns; ++t) {
        TurnRecord rec;

        // Original-source emissions: one BTL draw per turn when
        // synthesizing, otherwise this turn's block of the recorded stream.
        if (config.stream.empty()) {
            const PairIndex pair = draw_unordered_pair(n, rng);
            rec.original.push_back(sample_comparison(config.true_scores, pair, rng));
        } else {
            const std::size_t from = (static_cast<std::size_t>(t - 1) * stream_len) / config.turns;
            const std::size_t to = (static_cast<std::size_t>(t) * stream_len) / config.turns;
            for (std::size_t k = from; k < to; ++k) rec.original.push_back(config.stream[k]);
        }

        rec.retained.assign(rec.original.size(), 0);
        rec.observed.assign(rec.original.size(), 0);
        bool knowledge_updated = false;
        for (std::size_t k = 0; k < rec.original.size(); ++k) {
            if (!admit(rng)) continue;
            rec.retained[k] = 1;
            collected.add(rec.original[k]);
            // Masking applies to what reached the collection; once missed,
            // a comparison never becomes visible later.
            if (rng.uniform() < config.observe_prob) {
                rec.observed[k] = 1;
                knowledge[pair_flat(rec.original[k].winner, rec.original[k].loser, n)] += 1.0;
                knowledge_total += 1.0;
                knowledge_updated = true;
            }
        }

        rec.waited = !knowledge_updated;
        if (knowledge_updated && config.policy != PolicyKind::None && config.insert_budget > 0 &&
            knowledge_total > 0) {
            for (int s = 0; s < config.insert_budget; ++s) {
                Comparison emitted;
                if (session) {
                    p_buffer.assign(knowledge.begin(), knowledge.end());
                    for (double& x : p_buffer) x /= knowledge_total;
                    if (session->should_stop(p_buffer)) {
                        rec.stopped = true;
                        break;
                    }
                    emitted = session->generate(p_buffer, rng);
                } else {
                    emitted = sample_from_rule(baseline, n, rng, Origin::Adversarial);
                }
                rec.inserted.push_back(emitted);
                const bool kept = admit(rng);
                rec.inserted_retained.push_back(kept ? 1 : 0);
                if (kept) collected.add(emitted);
                // The adversary always knows its own emissions.
                knowledge[pair_flat(emitted.winner, emitted.loser, n)] += 1.0;
                knowledge_total += 1.0;
                ++trace.total_inserted;
            }
        }
        trace.turns.push_back(std::move(rec));
    }

    trace.final_graph = std::move(collected);
    if (config.victim == VictimKind::HodgeRank || config.victim == VictimKind::Both)
        trace.hodge = aggregate_victim(trace.final_graph, true);
    if (config.victim == VictimKind::RankCentrality || config.victim == VictimKind::Both)
        trace.centrality = aggregate_victim(trace.final_graph, false);
    return trace;
}

}  // namespace ranksiege
