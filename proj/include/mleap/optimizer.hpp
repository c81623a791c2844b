#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mleap/simulator.hpp"

namespace mleap {

struct StopConfig {
    double delta = 0.001;
    int max_iter = 1000;

    void validate() const;
};

struct AdamConfig {
    double learning_rate = 0.05;
    double decay1 = 0.9;
    double decay2 = 0.999;
    double epsilon = 1e-8;

    void validate() const;
};

enum class StopReason { converged, max_iter };

std::string_view to_string(StopReason r) noexcept;
StopReason stop_reason_from_string(std::string_view s);

struct OptimizationTrace {
    std::vector<double> f_history;  // F after each update
    ParamVector final_params;
    int iterations = 0;
    StopReason stop_reason = StopReason::max_iter;

    double final_f() const { return f_history.back(); }
    double best_f() const;
};

/// Adam moment state for ascent on a fixed number of parameters.
class AdamAscent {
public:
    AdamAscent(std::size_t dim, AdamConfig cfg);

    /// Moves `x` one bias-corrected Adam step along +grad.
    void step(std::span<double> x, std::span<const double> grad);

    int steps_taken() const noexcept { return t_; }

private:
    AdamConfig cfg_;
    std::vector<double> m_;
    std::vector<double> v_;
    int t_ = 0;
    double decay1_pow_ = 1.0;
    double decay2_pow_ = 1.0;
};

/// Two consecutive F differences both at most delta; needs three values.
bool should_stop(std::span<const double> f_history, double delta) noexcept;

/// Maximizes F from `init`; returns the last iterate, not the best seen.
OptimizationTrace adam_maximize(const QaoaSimulator& sim, const ParamVector& init,
                                const AdamConfig& acfg = {}, const StopConfig& scfg = {});
OptimizationTrace adam_maximize(const Graph& g, const ParamVector& init,
                                const AdamConfig& acfg = {}, const StopConfig& scfg = {});

double approximation_ratio(double f, double f_max);

}  // namespace mleap
