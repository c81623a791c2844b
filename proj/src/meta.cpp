#include "mleap/meta.hpp"

#include <omp.h>

#include <algorithm>

#include "mleap/errors.hpp"

namespace mleap {

double quasi_optimum_interp(const Problem& problem, int p, int c, std::uint64_t master_seed, const AdamConfig& acfg,
                            const StopConfig& scfg) {
    if (c < 1) throw ParameterError("c must be at least 1");
    const auto runs = run_many(problem, Schedule::interp(p), c, master_seed, acfg, scfg);
    double best = runs.front().final_f;
    for (const auto& r : runs) best = std::max(best, r.final_f);
    return best;
}

SearchRecord search_l_star_record(const Problem& problem, int p, const SearchConfig& cfg) {
    if (p < 4) throw ParameterError("depth-step search needs a target level of at least 4, got " + std::to_string(p));
    if (cfg.c < 1) throw ParameterError("c must be at least 1");

    // The reference INTERP runs also provide the pre-trained parameters at
    // every lower level, with matching per-run seeds.
    const auto interp = run_many(problem, Schedule::interp(p), cfg.c, cfg.master_seed, cfg.adam, cfg.stop);

    SearchRecord rec;
    rec.f_quasi = interp.front().final_f;
    for (const auto& r : interp) rec.f_quasi = std::max(rec.f_quasi, r.final_f);

    int l = p - (p + 1) / 2;
    while (l >= 1 && l <= p - 2 && std::find(rec.visited.begin(), rec.visited.end(), l) == rec.visited.end()) {
        rec.visited.push_back(l);
        const int q0 = p - l;

        std::vector<double> finals(static_cast<std::size_t>(cfg.c));
        std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 1)
        for (int i = 0; i < cfg.c; ++i) {
            try {
                const auto& pre = interp[i].records[static_cast<std::size_t>(q0 - 1)].trace.final_params;
                finals[i] = adam_maximize(problem.sim, interpolate_to(pre, p), cfg.adam, cfg.stop).best_f();
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);

        const double best = *std::max_element(finals.begin(), finals.end());
        rec.trials[l] = best;
        const double delta_f = rec.f_quasi - best;
        if (delta_f <= 0.0) {
            rec.accepted.push_back(l);
            ++l;
        } else {
            --l;
        }
    }
    if (!rec.accepted.empty()) rec.l_star = *std::max_element(rec.accepted.begin(), rec.accepted.end());
    return rec;
}

int search_l_star(const Problem& problem, int p, const SearchConfig& cfg) {
    const auto rec = search_l_star_record(problem, p, cfg);
    if (rec.accepted.empty())
        throw NoViableStepError("no depth step reached the INTERP quasi-optimum at level " + std::to_string(p));
    return rec.l_star;
}

namespace {

template <class StepFn>
Schedule recurse_schedule(int p, StepFn next_lower) {
    if (p < 1) throw ParameterError("level must be positive");
    std::vector<int> tail;
    int target = p;
    while (target > 3) {
        tail.push_back(target);
        const int lower = next_lower(target);
        if (lower < 1 || lower >= target) {
            // No viable step: level-by-level below this target.
            --target;
            break;
        }
        target = lower;
    }
    std::vector<int> q;
    for (int i = 1; i <= target; ++i) q.push_back(i);
    q.insert(q.end(), tail.rbegin(), tail.rend());
    return Schedule(std::move(q));
}

}  // namespace

Schedule build_q_star(const Problem& problem, int p, const SearchConfig& cfg) {
    return recurse_schedule(p, [&](int target) {
        const auto rec = search_l_star_record(problem, target, cfg);
        return rec.accepted.empty() ? target : target - rec.l_star;
    });
}

Schedule conjectured_q(int p) {
    return recurse_schedule(p, [](int target) {
        if (target == 4) return 2;
        return target % 2 == 0 ? target / 2 - 1 : (target - 1) / 2;
    });
}

}  // namespace mleap
