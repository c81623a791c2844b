#include "mleap/strategies.hpp"

#include <omp.h>

#include <algorithm>
#include <charconv>
#include <numbers>

#include "mleap/errors.hpp"

namespace mleap {

Schedule::Schedule(std::vector<int> levels) : levels_(std::move(levels)) {
    if (levels_.empty()) throw ParameterError("schedule is empty");
    if (levels_.front() < 1) throw ParameterError("schedule levels must be positive");
    for (std::size_t i = 1; i < levels_.size(); ++i)
        if (levels_[i] <= levels_[i - 1]) throw ParameterError("schedule must be strictly increasing: " + to_string());
}

Schedule Schedule::interp(int p) {
    if (p < 1) throw ParameterError("level must be positive");
    std::vector<int> q(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) q[i] = i + 1;
    return Schedule(std::move(q));
}

Schedule Schedule::single(int p) { return Schedule({p}); }

Schedule Schedule::parse(std::string_view text) {
    std::vector<int> q;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        auto item = text.substr(pos, comma - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        int level = 0;
        const auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), level);
        if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
            throw ParameterError("bad schedule entry \"" + std::string(item) + "\" in \"" + std::string(text) + "\"");
        q.push_back(level);
        pos = comma + 1;
    }
    return Schedule(std::move(q));
}

std::string Schedule::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(levels_[i]);
    }
    return s;
}

Problem::Problem(Graph g, SimulatorOptions opts)
    : graph(std::move(g)), sim(graph, opts), f_max(max_cut_brute_force(graph).f_max) {
    if (f_max <= 0) throw ParameterError("graph has no edges; MaxCut value is zero");
}

namespace {

std::vector<double> interpolate_family(const std::vector<double>& x) {
    const std::size_t p = x.size();
    std::vector<double> out(p + 1);
    const double dp = static_cast<double>(p);
    for (std::size_t t = 1; t <= p + 1; ++t) {
        const double w_prev = static_cast<double>(t - 1) / dp;
        const double w_cur = static_cast<double>(p - t + 1) / dp;
        double v = 0.0;
        if (t >= 2) v += w_prev * x[t - 2];
        if (t <= p) v += w_cur * x[t - 1];
        out[t - 1] = v;
    }
    // Endpoints carry over bit-for-bit.
    out.front() = x.front();
    out.back() = x.back();
    return out;
}

}  // namespace

ParamVector interpolate_one(const ParamVector& params) {
    if (params.level() == 0) throw ParameterError("cannot interpolate an empty parameter vector");
    return ParamVector(interpolate_family(params.gammas), interpolate_family(params.betas));
}

ParamVector interpolate_to(const ParamVector& params, int level) {
    if (level < static_cast<int>(params.level()))
        throw ParameterError("cannot interpolate from level " + std::to_string(params.level()) + " down to " +
                             std::to_string(level));
    ParamVector out = params;
    while (static_cast<int>(out.level()) < level) out = interpolate_one(out);
    return out;
}

ParamVector random_init(int p, Rng& rng) {
    if (p < 1) throw ParameterError("level must be positive");
    constexpr double pi = std::numbers::pi;
    std::vector<double> gammas(static_cast<std::size_t>(p)), betas(static_cast<std::size_t>(p));
    for (auto& g : gammas) g = rng.uniform(-pi / 4, pi / 4);
    for (auto& b : betas) b = rng.uniform(-pi / 2, pi / 2);
    return ParamVector(std::move(gammas), std::move(betas));
}

StrategyResult run_mli(const Problem& problem, const Schedule& schedule, Rng& rng, const AdamConfig& acfg,
                       const StopConfig& scfg) {
    StrategyResult result;
    ParamVector next = random_init(schedule.levels().front(), rng);
    for (int level : schedule.levels()) {
        if (static_cast<int>(next.level()) != level) next = interpolate_to(next, level);
        LevelRecord rec{level, next, adam_maximize(problem.sim, next, acfg, scfg)};
        next = rec.trace.final_params;
        result.records.push_back(std::move(rec));
    }
    result.final_f = result.records.back().trace.best_f();
    result.final_r = approximation_ratio(result.final_f, problem.f_max);
    return result;
}

std::vector<StrategyResult> run_many(const Problem& problem, const Schedule& schedule, int runs,
                                     std::uint64_t master_seed, const AdamConfig& acfg, const StopConfig& scfg) {
    if (runs < 1) throw ParameterError("runs must be at least 1");
    std::vector<StrategyResult> results(static_cast<std::size_t>(runs));
    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
    for (int i = 0; i < runs; ++i) {
        try {
            const auto seed = derive_seed(master_seed, static_cast<std::uint64_t>(i));
            Rng rng(seed);
            results[i] = run_mli(problem, schedule, rng, acfg, scfg);
            results[i].seed = seed;
        } catch (...) {
#pragma omp critical
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return results;
}

std::vector<std::size_t> select_survivors(const std::vector<Candidate>& candidates, double keep_tol) {
    if (candidates.empty()) throw ParameterError("survivor selection needs at least one candidate");
    if (!(keep_tol >= 0.0)) throw ParameterError("keep_tol must be non-negative");
    double best = candidates.front().f;
    for (const auto& c : candidates) best = std::max(best, c.f);
    const double bar = (1.0 - keep_tol) * best;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < candidates.size(); ++i)
        if (candidates[i].f >= bar) keep.push_back(i);
    return keep;
}

std::vector<std::size_t> GreedyResult::survivor_counts() const {
    std::vector<std::size_t> k;
    for (const auto& lvl : levels) k.push_back(lvl.survivors);
    return k;
}

GreedyResult run_greedy_mli(const Problem& problem, const Schedule& schedule, int c, double keep_tol,
                            std::uint64_t master_seed, const AdamConfig& acfg, const StopConfig& scfg) {
    if (c < 1) throw ParameterError("greedy start count c must be at least 1");

    struct Lineage {
        std::size_t id;
        ParamVector next;
        std::vector<LevelRecord> history;
    };
    std::vector<Lineage> alive;
    alive.reserve(static_cast<std::size_t>(c));
    for (int i = 0; i < c; ++i) {
        Rng rng(derive_seed(master_seed, static_cast<std::uint64_t>(i)));
        alive.push_back({static_cast<std::size_t>(i), random_init(schedule.levels().front(), rng), {}});
    }

    GreedyResult out;
    for (int level : schedule.levels()) {
        const auto count = static_cast<std::ptrdiff_t>(alive.size());
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
        for (std::ptrdiff_t i = 0; i < count; ++i) {
            try {
                auto& lin = alive[i];
                auto init = interpolate_to(lin.next, level);
                auto trace = adam_maximize(problem.sim, init, acfg, scfg);
                lin.history.push_back({level, std::move(init), std::move(trace)});
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);

        // Selection barrier.
        std::vector<Candidate> cands;
        cands.reserve(alive.size());
        for (const auto& lin : alive) {
            const auto& rec = lin.history.back();
            const double f = rec.trace.best_f();
            cands.push_back({rec.trace.final_params, f, approximation_ratio(f, problem.f_max)});
        }
        const auto keep = select_survivors(cands, keep_tol);

        GreedyLevel lvl;
        lvl.level = level;
        lvl.survivors = keep.size();
        for (const auto& lin : alive) lvl.rounds.push_back({lin.id, lin.history.back(), false});
        for (auto k : keep) lvl.rounds[k].survived = true;
        out.levels.push_back(std::move(lvl));

        if (level == schedule.target()) {
            // Best lineage: highest F, lowest id on ties (keep is in id order).
            std::size_t best = keep.front();
            for (auto k : keep)
                if (cands[k].f > cands[best].f) best = k;
            out.best_lineage = alive[best].id;
            out.best.records = alive[best].history;
            out.best.final_f = cands[best].f;
            out.best.final_r = cands[best].r;
            out.best.seed = derive_seed(master_seed, alive[best].id);
            break;
        }

        std::vector<Lineage> next;
        next.reserve(keep.size());
        for (auto k : keep) {
            alive[k].next = alive[k].history.back().trace.final_params;
            next.push_back(std::move(alive[k]));
        }
        alive = std::move(next);
    }
    return out;
}

}  // namespace mleap
