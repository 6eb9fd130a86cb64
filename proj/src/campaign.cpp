#include "ranksiege/campaign.hpp"

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <ostream>
#include <thread>

#include "ranksiege/btl.hpp"
#include "ranksiege/data_io.hpp"
#include "ranksiege/metrics.hpp"

namespace ranksiege {

using nlohmann::json;

std::string policy_name(PolicyKind kind) {
    switch (kind) {
        case PolicyKind::Proposed: return "proposed";
        case PolicyKind::Random: return "random";
        case PolicyKind::Greedy: return "greedy";
        case PolicyKind::Straight: return "straight";
        case PolicyKind::None: return "none";
    }
    return "?";
}

PolicyKind policy_from_name(const std::string& name) {
    if (name == "proposed") return PolicyKind::Proposed;
    if (name == "random") return PolicyKind::Random;
    if (name == "greedy") return PolicyKind::Greedy;
    if (name == "straight") return PolicyKind::Straight;
    if (name == "none") return PolicyKind::None;
    throw InvalidArgumentError("unknown policy: " + name);
}

namespace {

std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

[[noreturn]] void config_error(const std::string& field, const std::string& why) {
    throw InvalidArgumentError("config field '" + field + "': " + why);
}

template <typename T>
T get_field(const json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        config_error(key, e.what());
    }
}

}  // namespace

CampaignConfig campaign_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw DataError("config root must be a JSON object");

    static const std::vector<std::string> known{
        "n",         "true_strengths", "stream_file",   "stream_length", "shuffle_per_trial",
        "target",    "turns",          "turns_fraction", "insert_budget", "observe_prob",
        "sampler",   "policies",       "victims",       "trials",        "seed",
        "beta",      "policy_params",  "per_turn_series", "output_dir"};
    for (const auto& [key, value] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            config_error(key, "unknown field");

    CampaignConfig c;
    c.n = get_field<int>(j, "n", 0);
    c.true_strengths = get_field<std::vector<double>>(j, "true_strengths", {});
    c.stream_file = get_field<std::string>(j, "stream_file", "");
    c.stream_length = get_field<long>(j, "stream_length", 0);
    c.shuffle_per_trial = get_field<bool>(j, "shuffle_per_trial", true);
    const auto target_1based = get_field<std::vector<int>>(j, "target", {});
    if (target_1based.empty()) config_error("target", "required (1-based ranking, best first)");
    for (int id : target_1based) {
        if (id < 1) config_error("target", "candidate ids are 1-based");
        c.target.push_back(id - 1);
    }
    c.turns = get_field<int>(j, "turns", 0);
    c.turns_fraction = get_field<double>(j, "turns_fraction", 0.0);
    c.insert_budget = get_field<int>(j, "insert_budget", 5);
    c.observe_prob = get_field<double>(j, "observe_prob", 0.8);
    if (j.contains("sampler")) {
        const json& s = j.at("sampler");
        const std::string kind = get_field<std::string>(s, "kind", "identity");
        if (kind == "identity")
            c.sampler.kind = SamplerKind::Identity;
        else if (kind == "bernoulli")
            c.sampler.kind = SamplerKind::Bernoulli;
        else if (kind == "reservoir")
            c.sampler.kind = SamplerKind::Reservoir;
        else
            config_error("sampler.kind", "must be identity, bernoulli or reservoir");
        c.sampler.rate = get_field<double>(s, "rate", 1.0);
        c.sampler.capacity = get_field<std::size_t>(s, "capacity", 1);
    }
    if (j.contains("policies")) {
        c.policies.clear();
        for (const auto& name : get_field<std::vector<std::string>>(j, "policies", {}))
            c.policies.push_back(policy_from_name(name));
        if (c.policies.empty()) config_error("policies", "must name at least one policy");
    }
    c.victims = get_field<std::vector<std::string>>(j, "victims", c.victims);
    for (const auto& v : c.victims)
        if (v != "hodgerank" && v != "rankcentrality")
            throw InvalidArgumentError("unknown victim: " + v);
    c.trials = get_field<int>(j, "trials", 1);
    if (c.trials < 1) config_error("trials", "must be >= 1");
    c.seed = get_field<std::uint64_t>(j, "seed", 1);
    c.beta = get_field<double>(j, "beta", 0.05);
    if (j.contains("policy_params")) {
        const json& p = j.at("policy_params");
        PolicyConfig& pp = c.policy_params;
        pp.stopping.chi = get_field<double>(p, "chi", pp.stopping.chi);
        pp.stopping.alpha = get_field<double>(p, "alpha", pp.stopping.alpha);
        pp.stopping.robust = get_field<bool>(p, "robust", pp.stopping.robust);
        pp.stopping.gamma = get_field<double>(p, "gamma", pp.stopping.gamma);
        const std::string mode = get_field<std::string>(p, "stop_mode", "S2");
        if (mode == "S1")
            pp.stopping.mode = StopMode::S1;
        else if (mode == "S2")
            pp.stopping.mode = StopMode::S2;
        else
            config_error("policy_params.stop_mode", "must be S1 or S2");
        pp.robust.gamma = pp.stopping.gamma;
        pp.robust.bisection_tol = get_field<double>(p, "bisection_tol", pp.robust.bisection_tol);
        pp.robust.pg_step = get_field<double>(p, "pg_step", pp.robust.pg_step);
        pp.robust.pg_iters = get_field<int>(p, "pg_iters", pp.robust.pg_iters);
        pp.mirror_iters = get_field<int>(p, "mirror_iters", pp.mirror_iters);
        pp.mirror_c0 = get_field<double>(p, "c0", pp.mirror_c0);
        pp.p_explore = get_field<double>(p, "p_explore", pp.p_explore);
    } else {
        c.policy_params.robust.gamma = c.policy_params.stopping.gamma;
    }
    c.per_turn_series = get_field<bool>(j, "per_turn_series", true);
    c.output_dir = get_field<std::string>(j, "output_dir", c.output_dir);

    if (c.stream_file.empty()) {
        if (c.true_strengths.empty())
            config_error("true_strengths", "required when no stream_file is given");
        if (c.stream_length < 1)
            config_error("stream_length", "required when no stream_file is given");
        if (c.n == 0) c.n = static_cast<int>(c.true_strengths.size());
        if (c.n != static_cast<int>(c.true_strengths.size()))
            config_error("true_strengths", "length must equal n");
    }
    return c;
}

CampaignConfig campaign_from_file(const std::string& path) {
    return campaign_from_json_text(read_file(path));
}

namespace {

struct TaskSeries {
    // Per-turn metrics; NaN where aggregation failed.
    std::vector<double> rrank_h, ktau_h, rrank_rc, ktau_rc;
};

struct TaskResult {
    std::vector<TrialOutcome> outcomes;
    TaskSeries series;
    std::vector<long> pair_counts;
};

double metric_or_nan(const std::optional<VictimResult>& vr, const Ranking& target, bool rrank) {
    if (!vr || !vr->ok) return std::numeric_limits<double>::quiet_NaN();
    return rrank ? reciprocal_rank(target, vr->ranking) : kendall_tau(target, vr->ranking);
}

std::vector<double> mean_ignoring_nan(const std::vector<const std::vector<double>*>& series) {
    if (series.empty()) return {};
    const std::size_t len = series.front()->size();
    std::vector<double> mean(len, std::numeric_limits<double>::quiet_NaN());
    for (std::size_t t = 0; t < len; ++t) {
        double sum = 0.0;
        int count = 0;
        for (const auto* s : series) {
            const double v = (*s)[t];
            if (!std::isnan(v)) {
                sum += v;
                ++count;
            }
        }
        if (count > 0) mean[t] = sum / count;
    }
    return mean;
}

}  // namespace

CampaignResult run_campaign(const CampaignConfig& config, int jobs) {
    if (jobs < 1) jobs = 1;

    // Base stream: recorded file or one synthesized BTL sample, reused
    // (reshuffled) across trials.
    std::vector<Comparison> base_stream;
    int n = config.n;
    if (!config.stream_file.empty()) {
        base_stream = parse_pairwise_csv(read_file(config.stream_file));
        n = std::max(n, candidate_count(base_stream));
    } else {
        const PreferenceScores truth = scores_from_strengths(config.true_strengths);
        Rng rng(mix_seed(config.seed ^ 0x73747265616dULL));  // stream synthesis draws
        base_stream.reserve(config.stream_length);
        for (long k = 0; k < config.stream_length; ++k) {
            const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
            std::uint64_t pick = rng.uniform_index(total);
            int i = 0;
            while (pick >= static_cast<std::uint64_t>(n - 1 - i)) {
                pick -= n - 1 - i;
                ++i;
            }
            const PairIndex pair = make_pair(i, i + 1 + static_cast<int>(pick), n);
            base_stream.push_back(sample_comparison(truth, pair, rng));
        }
    }
    if (n < 2) throw InvalidArgumentError("campaign needs at least 2 candidates");
    if (static_cast<int>(config.target.size()) != n)
        throw InvalidArgumentError("target ranking length must equal the candidate count");

    int turns = config.turns;
    if (turns == 0 && config.turns_fraction > 0)
        turns = std::max(1, static_cast<int>(std::llround(
                                config.turns_fraction * static_cast<double>(base_stream.size()))));
    if (turns < 1) throw InvalidArgumentError("turns (or turns_fraction) must be set");

    const Ranking target{config.target};
    const bool want_h = std::find(config.victims.begin(), config.victims.end(), "hodgerank") !=
                        config.victims.end();
    const bool want_rc = std::find(config.victims.begin(), config.victims.end(),
                                   "rankcentrality") != config.victims.end();

    struct Task {
        PolicyKind policy;
        int trial;
    };
    std::vector<Task> tasks;
    for (PolicyKind pk : config.policies)
        for (int trial = 0; trial < config.trials; ++trial) tasks.push_back({pk, trial});
    std::vector<TaskResult> task_results(tasks.size());

    auto run_task = [&](std::size_t idx) {
        const Task& task = tasks[idx];
        GameConfig gc;
        gc.n = n;
        gc.target = target;
        gc.turns = turns;
        gc.insert_budget = task.policy == PolicyKind::None ? 0 : config.insert_budget;
        gc.observe_prob = config.observe_prob;
        gc.sampler = config.sampler;
        gc.policy = task.policy;
        gc.policy_params = config.policy_params;
        gc.beta = config.beta;
        gc.victim = VictimKind::Both;
        gc.seed = config.seed + static_cast<std::uint64_t>(task.trial);
        gc.stream = base_stream;
        if (config.shuffle_per_trial && config.trials > 1) {
            Rng shuffle_rng(mix_seed(gc.seed));
            for (std::size_t k = gc.stream.size(); k > 1; --k) {
                const std::size_t pick = shuffle_rng.uniform_index(k);
                std::swap(gc.stream[k - 1], gc.stream[pick]);
            }
        }
        if (!config.true_strengths.empty())
            gc.true_scores = scores_from_strengths(config.true_strengths);

        const GameTrace trace = run_game(gc);
        TaskResult& out = task_results[idx];

        auto record = [&](const std::optional<VictimResult>& vr, const std::string& victim) {
            TrialOutcome row;
            row.trial = task.trial;
            row.policy = policy_name(task.policy);
            row.victim = victim;
            row.inserted = trace.total_inserted;
            if (vr && vr->ok) {
                row.ok = true;
                row.rrank = reciprocal_rank(target, vr->ranking);
                row.ktau = kendall_tau(target, vr->ranking);
            } else if (vr) {
                row.error = vr->error;
            }
            out.outcomes.push_back(std::move(row));
        };
        if (want_h) record(trace.hodge, "hodgerank");
        if (want_rc) record(trace.centrality, "rankcentrality");

        if (config.per_turn_series) {
            out.series.rrank_h.resize(turns);
            out.series.ktau_h.resize(turns);
            out.series.rrank_rc.resize(turns);
            out.series.ktau_rc.resize(turns);
            ComparisonGraph running(n);
            for (int t = 1; t <= turns; ++t) {
                const TurnRecord& rec = trace.turns[t - 1];
                for (std::size_t k = 0; k < rec.original.size(); ++k)
                    if (rec.retained[k]) running.add(rec.original[k]);
                for (std::size_t k = 0; k < rec.inserted.size(); ++k)
                    if (rec.inserted_retained[k]) running.add(rec.inserted[k]);
                std::optional<VictimResult> h, rc;
                if (want_h) h = aggregate_victim(running, true);
                if (want_rc) rc = aggregate_victim(running, false);
                out.series.rrank_h[t - 1] = metric_or_nan(h, target, true);
                out.series.ktau_h[t - 1] = metric_or_nan(h, target, false);
                out.series.rrank_rc[t - 1] = metric_or_nan(rc, target, true);
                out.series.ktau_rc[t - 1] = metric_or_nan(rc, target, false);
            }
        }

        out.pair_counts.assign(num_ordered_pairs(n), 0);
        for (const TurnRecord& rec : trace.turns)
            for (const Comparison& c : rec.inserted)
                ++out.pair_counts[pair_flat(c.winner, c.loser, n)];
    };

    if (jobs == 1) {
        for (std::size_t idx = 0; idx < tasks.size(); ++idx) run_task(idx);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const int workers = std::min<std::size_t>(jobs, tasks.size());
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (std::size_t idx = next.fetch_add(1); idx < tasks.size();
                     idx = next.fetch_add(1))
                    run_task(idx);
            });
        for (auto& th : pool) th.join();
    }

    CampaignResult result;
    for (const TaskResult& tr : task_results)
        for (const TrialOutcome& row : tr.outcomes) result.rows.push_back(row);

    for (PolicyKind pk : config.policies) {
        const std::string pname = policy_name(pk);
        std::vector<const std::vector<double>*> rh, kh, rrc, krc;
        std::vector<long> freq(num_ordered_pairs(n), 0);
        for (std::size_t idx = 0; idx < tasks.size(); ++idx) {
            if (tasks[idx].policy != pk) continue;
            if (config.per_turn_series) {
                rh.push_back(&task_results[idx].series.rrank_h);
                kh.push_back(&task_results[idx].series.ktau_h);
                rrc.push_back(&task_results[idx].series.rrank_rc);
                krc.push_back(&task_results[idx].series.ktau_rc);
            }
            for (std::size_t f = 0; f < freq.size(); ++f)
                freq[f] += task_results[idx].pair_counts[f];
        }
        if (config.per_turn_series) {
            if (want_h) {
                result.series_rrank[pname + "/hodgerank"] = mean_ignoring_nan(rh);
                result.series_ktau[pname + "/hodgerank"] = mean_ignoring_nan(kh);
            }
            if (want_rc) {
                result.series_rrank[pname + "/rankcentrality"] = mean_ignoring_nan(rrc);
                result.series_ktau[pname + "/rankcentrality"] = mean_ignoring_nan(krc);
            }
        }
        result.pair_frequency[pname] = std::move(freq);
    }
    return result;
}

namespace {

struct Stats {
    int count = 0;
    double mean = 0, median = 0, iqr_low = 0, iqr_high = 0;
};

double percentile(std::vector<double> sorted, double q) {
    if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
    const double idx = q * (static_cast<double>(sorted.size()) - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(idx));
    const std::size_t hi = static_cast<std::size_t>(std::ceil(idx));
    const double frac = idx - static_cast<double>(lo);
    return sorted[lo] * (1 - frac) + sorted[hi] * frac;
}

Stats stats_of(std::vector<double> values) {
    Stats s;
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    s.count = static_cast<int>(values.size());
    for (double v : values) s.mean += v;
    s.mean /= s.count;
    s.median = percentile(values, 0.5);
    s.iqr_low = percentile(values, 0.25);
    s.iqr_high = percentile(values, 0.75);
    return s;
}

json config_echo(const CampaignConfig& c) {
    json policies = json::array();
    for (PolicyKind pk : c.policies) policies.push_back(policy_name(pk));
    json target = json::array();
    for (Candidate cand : c.target) target.push_back(cand + 1);
    return json{{"n", c.n},
                {"target", target},
                {"turns", c.turns},
                {"turns_fraction", c.turns_fraction},
                {"insert_budget", c.insert_budget},
                {"observe_prob", c.observe_prob},
                {"trials", c.trials},
                {"seed", c.seed},
                {"beta", c.beta},
                {"policies", policies},
                {"victims", c.victims},
                {"stream_file", c.stream_file},
                {"stream_length", c.stream_length}};
}

}  // namespace

std::string results_json_text(const CampaignConfig& config, const CampaignResult& result) {
    json rows = json::array();
    for (const TrialOutcome& r : result.rows) {
        json row{{"trial", r.trial},   {"policy", r.policy}, {"victim", r.victim},
                 {"ok", r.ok},         {"inserted", r.inserted}};
        if (r.ok) {
            row["rrank"] = r.rrank;
            row["ktau"] = r.ktau;
        } else {
            row["error"] = r.error;
        }
        rows.push_back(std::move(row));
    }
    json doc{{"config", config_echo(config)}, {"rows", rows}};
    return doc.dump(2) + "\n";
}

std::string summary_csv_text(const CampaignResult& result) {
    std::map<std::pair<std::string, std::string>, std::pair<std::vector<double>, std::vector<double>>>
        cells;
    for (const TrialOutcome& r : result.rows) {
        if (!r.ok) continue;
        auto& cell = cells[{r.policy, r.victim}];
        cell.first.push_back(r.rrank);
        cell.second.push_back(r.ktau);
    }
    std::string out = "policy,victim,metric,count,mean,median,iqr_low,iqr_high\n";
    auto emit = [&out](const std::string& policy, const std::string& victim,
                       const std::string& metric, const Stats& s) {
        out += policy + "," + victim + "," + metric + "," + std::to_string(s.count) + "," +
               std::to_string(s.mean) + "," + std::to_string(s.median) + "," +
               std::to_string(s.iqr_low) + "," + std::to_string(s.iqr_high) + "\n";
    };
    for (const auto& [key, cell] : cells) {
        emit(key.first, key.second, "rrank", stats_of(cell.first));
        emit(key.first, key.second, "ktau", stats_of(cell.second));
    }
    return out;
}

void write_campaign_outputs(const CampaignConfig& config, const CampaignResult& result) {
    namespace fs = std::filesystem;
    const fs::path dir(config.output_dir);
    fs::create_directories(dir / "plotdata");

    write_file((dir / "results.json").string(), results_json_text(config, result));
    write_file((dir / "summary.csv").string(), summary_csv_text(result));

    // Box-plot data: one column per policy, one row per trial.
    for (const std::string& victim : config.victims) {
        for (const char* metric : {"rrank", "ktau"}) {
            std::map<std::string, std::map<int, std::string>> columns;
            for (const TrialOutcome& r : result.rows) {
                if (r.victim != victim) continue;
                columns[r.policy][r.trial] =
                    r.ok ? std::to_string(metric == std::string("rrank") ? r.rrank : r.ktau) : "";
            }
            std::string csv = "trial";
            for (PolicyKind pk : config.policies) csv += "," + policy_name(pk);
            csv += "\n";
            for (int trial = 0; trial < config.trials; ++trial) {
                csv += std::to_string(trial);
                for (PolicyKind pk : config.policies) {
                    csv += ",";
                    auto it = columns.find(policy_name(pk));
                    if (it != columns.end() && it->second.count(trial))
                        csv += it->second[trial];
                }
                csv += "\n";
            }
            write_file((dir / "plotdata" / ("box_" + std::string(metric) + "_" + victim + ".csv"))
                           .string(),
                       csv);
        }
    }

    // Per-turn mean metric series.
    if (config.per_turn_series) {
        for (const std::string& victim : config.victims) {
            for (const char* metric : {"rrank", "ktau"}) {
                const auto& series = metric == std::string("rrank") ? result.series_rrank
                                                                    : result.series_ktau;
                std::size_t turns = 0;
                for (PolicyKind pk : config.policies) {
                    auto it = series.find(policy_name(pk) + "/" + victim);
                    if (it != series.end()) turns = std::max(turns, it->second.size());
                }
                std::string csv = "turn";
                for (PolicyKind pk : config.policies) csv += "," + policy_name(pk);
                csv += "\n";
                for (std::size_t t = 0; t < turns; ++t) {
                    csv += std::to_string(t + 1);
                    for (PolicyKind pk : config.policies) {
                        csv += ",";
                        auto it = series.find(policy_name(pk) + "/" + victim);
                        if (it != series.end() && t < it->second.size() &&
                            !std::isnan(it->second[t]))
                            csv += std::to_string(it->second[t]);
                    }
                    csv += "\n";
                }
                write_file((dir / "plotdata" /
                            ("perturn_" + std::string(metric) + "_" + victim + ".csv"))
                               .string(),
                           csv);
            }
        }
    }

    // Adversarial pair-frequency histograms; pair numbering follows the
    // lexicographic flat order, 1-based.
    for (const auto& [policy, freq] : result.pair_frequency) {
        std::string csv = "pair_no,winner,loser,count\n";
        for (std::size_t f = 0; f < freq.size(); ++f) {
            const PairIndex pair = pair_from_flat(static_cast<int>(f), config.n);
            csv += std::to_string(f + 1) + "," + std::to_string(pair.i + 1) + "," +
                   std::to_string(pair.j + 1) + "," + std::to_string(freq[f]) + "\n";
        }
        write_file((dir / "plotdata" / ("pairfreq_" + policy + ".csv")).string(), csv);
    }
}

std::string trace_to_json_text(const GameTrace& trace) {
    json turns = json::array();
    for (const TurnRecord& rec : trace.turns) {
        json original = json::array(), inserted = json::array();
        for (const Comparison& c : rec.original)
            original.push_back(json::array({c.winner + 1, c.loser + 1}));
        for (const Comparison& c : rec.inserted)
            inserted.push_back(json::array({c.winner + 1, c.loser + 1}));
        turns.push_back(json{{"original", original},
                             {"retained", rec.retained},
                             {"observed", rec.observed},
                             {"inserted", inserted},
                             {"inserted_retained", rec.inserted_retained},
                             {"waited", rec.waited},
                             {"stopped", rec.stopped}});
    }
    json victims = json::object();
    auto victim_json = [](const VictimResult& vr) {
        json v{{"ok", vr.ok}};
        if (vr.ok) {
            v["scores"] = vr.scores.values;
            json ranking = json::array();
            for (Candidate c : vr.ranking.order) ranking.push_back(c + 1);
            v["ranking"] = ranking;
        } else {
            v["error"] = vr.error;
        }
        return v;
    };
    if (trace.hodge) victims["hodgerank"] = victim_json(*trace.hodge);
    if (trace.centrality) victims["rankcentrality"] = victim_json(*trace.centrality);
    json doc{{"n", trace.n},
             {"seed", trace.seed},
             {"total_inserted", trace.total_inserted},
             {"turns", turns},
             {"final_weights", trace.final_graph.weights},
             {"victims", victims}};
    return doc.dump(2) + "\n";
}

void cmd_simulate(const std::string& config_path, int jobs, std::ostream& out) {
    CampaignConfig config = campaign_from_file(config_path);
    if (const char* env_seed = std::getenv("RANKSIEGE_SEED")) {
        try {
            config.seed = std::stoull(env_seed);
        } catch (const std::exception&) {
            throw InvalidArgumentError("RANKSIEGE_SEED must be an unsigned integer");
        }
    }
    const CampaignResult result = run_campaign(config, jobs);
    write_campaign_outputs(config, result);
    out << summary_csv_text(result);
    out << "wrote " << config.output_dir << "/results.json, summary.csv, plotdata/\n";
}

void cmd_aggregate(const std::string& stream_path, const std::string& victim,
                   std::ostream& out) {
    if (victim != "hodgerank" && victim != "rankcentrality")
        throw InvalidArgumentError("unknown victim: " + victim);
    const std::vector<Comparison> stream = parse_pairwise_csv(read_file(stream_path));
    const int n = candidate_count(stream);
    if (n < 2) throw AggregationError("stream has fewer than 2 candidates; nothing to rank");
    const ComparisonGraph graph = weights_from_stream(stream, n);
    const PreferenceScores scores =
        victim == "hodgerank" ? hodgerank(graph) : rank_centrality(graph);
    const Ranking ranking = ranking_from_scores(scores);
    json ranking_json = json::array();
    for (Candidate c : ranking.order) ranking_json.push_back(c + 1);
    json doc{{"victim", victim},
             {"n", n},
             {"comparisons", stream.size()},
             {"scores", scores.values},
             {"ranking", ranking_json}};
    out << doc.dump(2) << "\n";
}

void cmd_ingest(const std::string& input_path, const std::string& format,
                const std::string& out_path, std::ostream& out) {
    const std::string text = read_file(input_path);
    std::vector<Comparison> stream;
    json manifest;
    if (format == "preflib") {
        const Election e = parse_preflib(text);
        stream = ballots_to_comparisons(e.ballots);
        manifest["n"] = e.n;
        manifest["ballots"] = e.total_ballots();
        manifest["comparisons"] = e.induced_comparisons();
    } else if (format == "csv") {
        stream = parse_pairwise_csv(text);
        manifest["n"] = candidate_count(stream);
        manifest["comparisons"] = stream.size();
    } else {
        throw InvalidArgumentError("unknown format: " + format + " (expected preflib or csv)");
    }
    manifest["source"] = input_path;
    manifest["format"] = format;
    write_file(out_path, serialize_stream(stream));
    write_file(out_path + ".manifest.json", manifest.dump(2) + "\n");
    out << manifest.dump(2) << "\n";
}

}  // namespace ranksiege
