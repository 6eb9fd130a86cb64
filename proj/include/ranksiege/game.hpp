#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ranksiege/aggregators.hpp"
#include "ranksiege/core.hpp"
#include "ranksiege/policy.hpp"
#include "ranksiege/sampling.hpp"

namespace ranksiege {

enum class PolicyKind { Proposed, Random, Greedy, Straight, None };
enum class VictimKind { HodgeRank, RankCentrality, Both };

struct GameConfig {
    int n = 0;
    PreferenceScores true_scores;    // exponential-margin scores; used when stream is empty
    std::vector<Comparison> stream;  // recorded stream to replay; empty = synthesize
    Ranking target;
    int turns = 1;
    int insert_budget = 0;  // S0, per turn
    double observe_prob = 1.0;
    SamplerConfig sampler;  // Identity or Bernoulli; reservoir eviction would
                            // violate the online no-deletion constraint
    PolicyKind policy = PolicyKind::None;
    PolicyConfig policy_params;
    double beta = 0.05;  // support ball radius around the target scores
    VictimKind victim = VictimKind::Both;
    std::uint64_t seed = 0;

    void validate() const;
};

struct TurnRecord {
    std::vector<Comparison> original;        // emitted by the original source
    std::vector<std::uint8_t> retained;      // sampler decision per original
    std::vector<std::uint8_t> observed;      // adversary observation per original
    std::vector<Comparison> inserted;        // adversarial emissions
    std::vector<std::uint8_t> inserted_retained;
    bool waited = false;   // knowledge not updated; adversary took no action
    bool stopped = false;  // stopping rule fired before the budget ran out
};

struct VictimResult {
    bool ok = false;
    PreferenceScores scores;
    Ranking ranking;
    std::string error;
};

struct GameTrace {
    int n = 0;
    std::uint64_t seed = 0;
    std::vector<TurnRecord> turns;
    ComparisonGraph final_graph;
    std::int64_t total_inserted = 0;
    std::optional<VictimResult> hodge;
    std::optional<VictimResult> centrality;

    // Graph of every retained comparison through the first `turn_count`
    // turns (the ranker's collected weights at that point).
    ComparisonGraph weights_through(int turn_count) const;

    friend bool operator==(const GameTrace&, const GameTrace&);
};

// Each comparison independently revealed with probability observe_prob;
// the flags variant reports the per-item coin for trace bookkeeping.
std::vector<std::uint8_t> mask_flags(std::size_t count, double observe_prob, Rng& rng);
std::vector<Comparison> mask_knowledge(std::span<const Comparison> fresh, double observe_prob,
                                       Rng& rng);

// Aggregates a graph for one victim, reporting failures in the result
// instead of throwing.
VictimResult aggregate_victim(const ComparisonGraph& graph, bool hodgerank_victim);

GameTrace run_game(const GameConfig& config);

}  // namespace ranksiege
