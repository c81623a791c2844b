#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "mleap/meta.hpp"

namespace mleap {

enum class StrategyKind { ri, interp, mli, greedy_mli };

std::string_view to_string(StrategyKind s) noexcept;
StrategyKind strategy_from_string(std::string_view s);

struct GeneratorSpec {
    int n = 8;
    int degree = 3;
    std::uint64_t seed = 0;
};

struct ExperimentConfig {
    std::optional<std::string> graph_path;  // takes precedence over `generator`
    GeneratorSpec generator;
    StrategyKind strategy = StrategyKind::interp;
    int p = 8;
    /// Explicit level list, "conjectured", or "search". Empty picks the
    /// strategy default: [p] for ri, [1..p] for interp, conjectured otherwise.
    std::string schedule;
    int runs = 50;
    int c = 50;  // greedy-mli starts
    double keep_tol = 1e-6;
    int search_c = 20;  // runs per trial when schedule == "search"
    std::uint64_t seed = 0;
    StopConfig stop;
    AdamConfig adam;

    void validate() const;
};

struct CostModel {
    double t_single_us = 1.0;  // one prepare-run-measure repetition
    double m_shots = 1000.0;   // repetitions per iteration
    double t_gate_us = 0.01;
    double t_prep_meas_us = 1.0;
    /// Repetitions at a level cost t_prep_meas + level * (edges + 1) * t_gate
    /// instead of t_single.
    bool include_circuit = false;

    void validate() const;
};

/// One optimization round, flattened for serialization. For greedy-mli `run`
/// is 0 and `lineage` identifies the start; otherwise `lineage` is 0.
struct RoundRecord {
    int run = 0;
    int lineage = 0;
    int level = 0;
    ParamVector init;
    ParamVector final_params;
    std::vector<double> f_history;
    int iterations = 0;
    StopReason stop_reason = StopReason::max_iter;
    double f_best = 0.0;
    double r = 0.0;
    bool survived = true;
};

struct RunRecord {
    int index = 0;
    std::uint64_t seed = 0;
    double final_f = 0.0;
    double final_r = 0.0;
    int iterations = 0;
    ParamVector final_params;
};

struct LevelSummary {
    int level = 0;
    int rounds = 0;
    double oar = 0.0;
    double aar = 0.0;
    long long iterations = 0;
};

struct ExperimentSummary {
    nlohmann::json config;  // echo of the inputs
    int n = 0;
    std::vector<Edge> edges;
    std::string fingerprint;
    int f_max = 0;
    StrategyKind strategy = StrategyKind::interp;
    std::vector<int> schedule;
    std::vector<RoundRecord> rounds;
    std::vector<RunRecord> runs;
    std::vector<LevelSummary> levels;
    long long total_iterations = 0;
    CostModel cost_model;
    double estimated_runtime_s = 0.0;
};

ExperimentSummary run_experiment(const ExperimentConfig& cfg, const CostModel& model = {});

/// Same, on an already prepared problem with a resolved schedule.
ExperimentSummary run_experiment(const ExperimentConfig& cfg, const Problem& problem,
                                 const Schedule& schedule, const CostModel& model = {});

/// t * M * T for one round of T iterations at `level`.
double round_runtime_s(int iterations, int level, std::size_t edges, const CostModel& model);

double estimate_runtime(const StrategyResult& run, std::size_t edges, const CostModel& model);
double estimate_runtime(const std::vector<StrategyResult>& runs, std::size_t edges,
                        const CostModel& model);
/// Sums over every lineage optimized at every level.
double estimate_runtime(const GreedyResult& result, std::size_t edges, const CostModel& model);
double estimate_runtime(const ExperimentSummary& summary, const CostModel& model);

struct IterationTotals {
    std::vector<std::pair<int, long long>> per_level;  // ascending level
    long long total = 0;
};

IterationTotals total_iterations(const std::vector<StrategyResult>& runs);
IterationTotals total_iterations(const GreedyResult& result);
IterationTotals total_iterations(const std::vector<RoundRecord>& rounds);

/// Per-level OAR/AAR/iterations from the raw rounds.
std::vector<LevelSummary> aggregate_levels(const std::vector<RoundRecord>& rounds);

nlohmann::json to_json(const ExperimentSummary& summary);
ExperimentSummary summary_from_json(const nlohmann::json& j);

/// Serialized form: 2-space indented JSON followed by a newline.
std::string summary_json_text(const ExperimentSummary& summary);

/// "level,metric,value" rows: oar, aar, iterations and rounds per level, then
/// totals under level "all".
std::string summary_table_csv(const ExperimentSummary& summary);
/// "run,seed,final_f,final_r,iterations", one row per run record.
std::string summary_runs_csv(const ExperimentSummary& summary);

enum class SummaryFormat { json, csv };

/// json writes `path`; csv writes the table to `path` and the per-run rows
/// next to it with a ".runs.csv" suffix. Throws IoError.
void emit_summary(const ExperimentSummary& summary, SummaryFormat format, const std::string& path);
std::string runs_csv_path(const std::string& table_path);

ExperimentSummary load_summary(const std::string& path);

/// Recomputes iteration counts, per-level aggregates, ratios and the runtime
/// estimate from the raw rounds. Returns one message per mismatch.
std::vector<std::string> verify_summary(const ExperimentSummary& summary);

void write_text_file(const std::string& path, std::string_view text);
std::string read_text_file(const std::string& path);

}  // namespace mleap
