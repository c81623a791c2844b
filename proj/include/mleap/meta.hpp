#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "mleap/strategies.hpp"

namespace mleap {

struct SearchConfig {
    int c = 20;
    std::uint64_t master_seed = 0;
    AdamConfig adam;
    StopConfig stop;
};

/// Best final F over c INTERP runs to level p.
double quasi_optimum_interp(const Problem& problem, int p, int c, std::uint64_t master_seed,
                            const AdamConfig& acfg = {}, const StopConfig& scfg = {});

struct SearchRecord {
    std::vector<int> accepted;           // s, in acceptance order
    std::vector<int> visited;            // every l tried, in order
    double f_quasi = 0.0;
    std::map<int, double> trials;        // l -> best MLI F
    int l_star = 0;                      // 0 when nothing was accepted

    int q0_star(int p) const { return p - l_star; }
};

/// Walks the depth step from p - ceil(p/2): a step is accepted when the best
/// of c leapfrog completions reaches the INTERP quasi-optimum, then l grows;
/// otherwise l shrinks. Stops when l leaves [1, p-2] or comes back to a value
/// already tried. Requires p >= 4.
SearchRecord search_l_star_record(const Problem& problem, int p, const SearchConfig& cfg);

/// max(accepted). Throws NoViableStepError when nothing was accepted.
int search_l_star(const Problem& problem, int p, const SearchConfig& cfg);

/// Recursively replaces each target with target - l* until the target is at
/// most 3, then prepends [1..target]. A target with no viable step keeps every
/// level below it.
Schedule build_q_star(const Problem& problem, int p, const SearchConfig& cfg);

/// Closed-form schedule from the observed regularity of q0*:
/// p/2 - 1 for even p > 4, (p-1)/2 for odd p > 4, 2 for p = 4.
Schedule conjectured_q(int p);

}  // namespace mleap
