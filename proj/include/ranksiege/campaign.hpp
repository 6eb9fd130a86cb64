#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ranksiege/game.hpp"

namespace ranksiege {

// One experiment campaign: trials x policies games, every game aggregated
// by both victims from the same trace.
struct CampaignConfig {
    int n = 0;
    std::vector<double> true_strengths;  // BTL strengths for synthesis
    std::string stream_file;             // replay source; overrides synthesis
    long stream_length = 0;              // synthesized base-stream size
    bool shuffle_per_trial = true;
    std::vector<Candidate> target;  // 0-based in memory, 1-based in JSON
    int turns = 0;                  // 0 derives turns from turns_fraction
    double turns_fraction = 0.0;
    int insert_budget = 5;
    double observe_prob = 0.8;
    SamplerConfig sampler;
    std::vector<PolicyKind> policies{PolicyKind::Proposed};
    std::vector<std::string> victims{"hodgerank", "rankcentrality"};
    int trials = 1;
    std::uint64_t seed = 1;
    double beta = 0.05;
    PolicyConfig policy_params;
    bool per_turn_series = true;
    std::string output_dir = "ranksiege-out";
};

CampaignConfig campaign_from_json_text(const std::string& text);
CampaignConfig campaign_from_file(const std::string& path);

struct TrialOutcome {
    int trial = 0;
    std::string policy;
    std::string victim;
    bool ok = false;
    double rrank = 0.0;
    double ktau = 0.0;
    std::string error;
    long inserted = 0;
};

struct CampaignResult {
    std::vector<TrialOutcome> rows;
    // Mean metric per turn, keyed "policy/victim"; filled only when the
    // config asks for per-turn series.
    std::map<std::string, std::vector<double>> series_rrank;
    std::map<std::string, std::vector<double>> series_ktau;
    // Total adversarial emissions per flat pair index, keyed by policy.
    std::map<std::string, std::vector<long>> pair_frequency;
};

std::string policy_name(PolicyKind kind);
PolicyKind policy_from_name(const std::string& name);

CampaignResult run_campaign(const CampaignConfig& config, int jobs = 1);

// results.json, summary.csv and plotdata/*.csv under config.output_dir.
void write_campaign_outputs(const CampaignConfig& config, const CampaignResult& result);

std::string results_json_text(const CampaignConfig& config, const CampaignResult& result);
std::string summary_csv_text(const CampaignResult& result);

std::string trace_to_json_text(const GameTrace& trace);

// CLI entry points. Throwing follows the library error hierarchy; main
// maps the categories onto exit codes.
void cmd_simulate(const std::string& config_path, int jobs, std::ostream& out);
void cmd_aggregate(const std::string& stream_path, const std::string& victim,
                   std::ostream& out);
void cmd_ingest(const std::string& input_path, const std::string& format,
                const std::string& out_path, std::ostream& out);

}  // namespace ranksiege
