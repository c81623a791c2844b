#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mleap/optimizer.hpp"
#include "mleap/rng.hpp"

namespace mleap {

/// Strictly increasing list of levels at which optimization runs. The last
/// entry is the target level.
class Schedule {
public:
    explicit Schedule(std::vector<int> levels);

    static Schedule interp(int p);
    static Schedule single(int p);
    /// "1,2,4,10"
    static Schedule parse(std::string_view text);

    const std::vector<int>& levels() const noexcept { return levels_; }
    int target() const noexcept { return levels_.back(); }
    std::size_t size() const noexcept { return levels_.size(); }
    std::string to_string() const;

    friend bool operator==(const Schedule&, const Schedule&) = default;

private:
    std::vector<int> levels_;
};

/// One graph plus everything derived from it once: the simulator's cut table
/// and the exact MaxCut value.
struct Problem {
    Graph graph;
    QaoaSimulator sim;
    int f_max;

    explicit Problem(Graph g, SimulatorOptions opts = {});
};

/// Level p -> p + 1. Entry t of the result (1-based) is
/// ((t-1)/p) x_{t-1} + ((p-t+1)/p) x_t with out-of-range terms dropped, so
/// the first and last entries carry over unchanged.
ParamVector interpolate_one(const ParamVector& params);
/// Repeated interpolate_one up to `level`. Throws if `level` is below the
/// current level.
ParamVector interpolate_to(const ParamVector& params, int level);

/// gamma_i ~ U[-pi/4, pi/4), beta_i ~ U[-pi/2, pi/2).
ParamVector random_init(int p, Rng& rng);

struct LevelRecord {
    int level = 0;
    ParamVector init;
    OptimizationTrace trace;
};

struct StrategyResult {
    std::vector<LevelRecord> records;
    double final_f = 0.0;  // best F of the last round
    double final_r = 0.0;
    std::uint64_t seed = 0;
};

/// Random start at the first scheduled level, then interpolate-and-optimize
/// through the rest. Schedule [1..p] is INTERP; [p] is plain random init.
StrategyResult run_mli(const Problem& problem, const Schedule& schedule, Rng& rng,
                       const AdamConfig& acfg = {}, const StopConfig& scfg = {});

/// Independent runs, run i seeded with derive_seed(master_seed, i). Runs are
/// spread over the OpenMP worker pool; output order is by run index.
std::vector<StrategyResult> run_many(const Problem& problem, const Schedule& schedule, int runs,
                                     std::uint64_t master_seed, const AdamConfig& acfg = {},
                                     const StopConfig& scfg = {});

struct Candidate {
    ParamVector params;
    double f = 0.0;
    double r = 0.0;
};

/// Indices of candidates with f >= (1 - keep_tol) * best f, in input order.
std::vector<std::size_t> select_survivors(const std::vector<Candidate>& candidates, double keep_tol);

struct GreedyRound {
    std::size_t lineage = 0;  // index of the level-one start this descends from
    LevelRecord record;
    bool survived = false;
};

struct GreedyLevel {
    int level = 0;
    std::vector<GreedyRound> rounds;
    std::size_t survivors = 0;
};

struct GreedyResult {
    std::vector<GreedyLevel> levels;
    /// Lineage with the highest final F, as a plain run record.
    StrategyResult best;
    std::size_t best_lineage = 0;

    std::vector<std::size_t> survivor_counts() const;
};

/// c starts optimized at the first level; after every level only candidates
/// within keep_tol (relative) of the level's best F are interpolated onward.
/// Lineage i starts from the same parameters as run i of run_many with the
/// same master seed.
GreedyResult run_greedy_mli(const Problem& problem, const Schedule& schedule, int c, double keep_tol,
                            std::uint64_t master_seed, const AdamConfig& acfg = {},
                            const StopConfig& scfg = {});

}  // namespace mleap
