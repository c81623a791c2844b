#include "mleap/optimizer.hpp"

#include <algorithm>
#include <cmath>

#include "mleap/errors.hpp"

namespace mleap {

void StopConfig::validate() const {
    if (!(delta > 0.0)) throw ParameterError("delta must be positive");
    if (max_iter < 1) throw ParameterError("max_iter must be at least 1");
}

void AdamConfig::validate() const {
    if (!(learning_rate > 0.0)) throw ParameterError("learning rate must be positive");
    if (!(decay1 >= 0.0 && decay1 < 1.0)) throw ParameterError("decay1 must lie in [0, 1)");
    if (!(decay2 >= 0.0 && decay2 < 1.0)) throw ParameterError("decay2 must lie in [0, 1)");
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
}

std::string_view to_string(StopReason r) noexcept {
    return r == StopReason::converged ? "converged" : "max_iter";
}

StopReason stop_reason_from_string(std::string_view s) {
    if (s == "converged") return StopReason::converged;
    if (s == "max_iter") return StopReason::max_iter;
    throw ParameterError("unknown stop reason \"" + std::string(s) + "\"");
}

double OptimizationTrace::best_f() const { return *std::max_element(f_history.begin(), f_history.end()); }

AdamAscent::AdamAscent(std::size_t dim, AdamConfig cfg) : cfg_(cfg), m_(dim, 0.0), v_(dim, 0.0) { cfg_.validate(); }

void AdamAscent::step(std::span<double> x, std::span<const double> grad) {
    ++t_;
    decay1_pow_ *= cfg_.decay1;
    decay2_pow_ *= cfg_.decay2;
    const double c1 = 1.0 - decay1_pow_;
    const double c2 = 1.0 - decay2_pow_;
    for (std::size_t i = 0; i < x.size(); ++i) {
        m_[i] = cfg_.decay1 * m_[i] + (1.0 - cfg_.decay1) * grad[i];
        v_[i] = cfg_.decay2 * v_[i] + (1.0 - cfg_.decay2) * grad[i] * grad[i];
        const double m_hat = m_[i] / c1;
        const double v_hat = v_[i] / c2;
        x[i] += cfg_.learning_rate * m_hat / (std::sqrt(v_hat) + cfg_.epsilon);
    }
}

bool should_stop(std::span<const double> f, double delta) noexcept {
    const std::size_t n = f.size();
    if (n < 3) return false;
    return std::abs(f[n - 1] - f[n - 2]) <= delta && std::abs(f[n - 2] - f[n - 3]) <= delta;
}

OptimizationTrace adam_maximize(const QaoaSimulator& sim, const ParamVector& init, const AdamConfig& acfg,
                                const StopConfig& scfg) {
    acfg.validate();
    scfg.validate();
    if (init.level() == 0 || init.gammas.size() != init.betas.size())
        throw ParameterError("initial parameters are not a valid parameter vector");

    auto x = init.flatten();
    AdamAscent adam(x.size(), acfg);
    auto current = sim.value_and_gradient(init);

    OptimizationTrace trace;
    trace.f_history.reserve(static_cast<std::size_t>(std::min(scfg.max_iter, 256)));
    for (int it = 0; it < scfg.max_iter; ++it) {
        adam.step(x, current.gradient);
        current = sim.value_and_gradient(ParamVector::unflatten(x));
        trace.f_history.push_back(current.value);
        if (should_stop(trace.f_history, scfg.delta)) {
            trace.stop_reason = StopReason::converged;
            break;
        }
    }
    trace.iterations = static_cast<int>(trace.f_history.size());
    trace.final_params = ParamVector::unflatten(x);
    return trace;
}

OptimizationTrace adam_maximize(const Graph& g, const ParamVector& init, const AdamConfig& acfg,
                                const StopConfig& scfg) {
    return adam_maximize(QaoaSimulator(g), init, acfg, scfg);
}

double approximation_ratio(double f, double f_max) {
    if (!(f_max > 0.0)) throw ParameterError("approximation ratio needs a positive F_max");
    return f / f_max;
}

}  // namespace mleap
