#include "mleap/simulator.hpp"

#include <omp.h>

#include <cmath>
#include <numbers>

#include "mleap/errors.hpp"

namespace mleap {

using kernels::amp_t;

ParamVector::ParamVector(std::vector<double> g, std::vector<double> b) : gammas(std::move(g)), betas(std::move(b)) {
    if (gammas.empty() || gammas.size() != betas.size())
        throw ParameterError("parameter vector needs equal, positive numbers of gammas and betas (got " +
                             std::to_string(gammas.size()) + " and " + std::to_string(betas.size()) + ")");
}

std::vector<double> ParamVector::flatten() const {
    std::vector<double> flat(gammas);
    flat.insert(flat.end(), betas.begin(), betas.end());
    return flat;
}

ParamVector ParamVector::unflatten(const std::vector<double>& flat) {
    if (flat.size() % 2 != 0) throw ParameterError("flattened parameter vector has odd length");
    const auto p = static_cast<std::ptrdiff_t>(flat.size() / 2);
    return ParamVector({flat.begin(), flat.begin() + p}, {flat.begin() + p, flat.end()});
}

Statevector::Statevector(int qubits, std::vector<amp_t> amps) : qubits_(qubits), amps_(std::move(amps)) {
    if (qubits_ < 1 || qubits_ > 62 || amps_.size() != (std::size_t{1} << qubits_))
        throw ParameterError("statevector of " + std::to_string(amps_.size()) + " amplitudes does not match " +
                             std::to_string(qubits_) + " qubits");
}

double Statevector::norm() const { return std::sqrt(kernels::norm_squared(amps_)); }

Statevector plus_state(int qubits, SimulatorOptions opts) {
    if (qubits < 1) throw ParameterError("qubit count must be positive");
    if (qubits > opts.max_qubits)
        throw CapacityError("statevector limited to " + std::to_string(opts.max_qubits) + " qubits, requested " +
                            std::to_string(qubits));
    const std::size_t dim = std::size_t{1} << qubits;
    return Statevector(qubits, std::vector<amp_t>(dim, amp_t(1.0 / std::sqrt(static_cast<double>(dim)), 0.0)));
}

namespace {

std::vector<amp_t> phase_table(int max_cut, double gamma) {
    std::vector<amp_t> phases(static_cast<std::size_t>(max_cut) + 1);
    for (int k = 0; k <= max_cut; ++k) phases[k] = std::polar(1.0, gamma * k);
    return phases;
}

void check_size(const Statevector& s, const Graph& g) {
    if (s.qubits() != g.n())
        throw ParameterError("statevector has " + std::to_string(s.qubits()) + " qubits, graph has " +
                             std::to_string(g.n()) + " vertices");
}

}  // namespace

Statevector apply_cost_layer(Statevector state, const Graph& g, double gamma) {
    check_size(state, g);
    std::vector<int> cut(state.size());
    for (std::size_t x = 0; x < cut.size(); ++x) cut[x] = cut_value(g, static_cast<std::uint64_t>(x));
    kernels::apply_phase(state.amplitudes(), cut, phase_table(static_cast<int>(g.edge_count()), gamma));
    return state;
}

Statevector apply_mixer_layer(Statevector state, double beta) {
    kernels::apply_mixer(state.amplitudes(), state.qubits(), beta);
    return state;
}

QaoaSimulator::QaoaSimulator(const Graph& g, SimulatorOptions opts)
    : qubits_(g.n()), edge_count_(static_cast<int>(g.edge_count())) {
    if (qubits_ > opts.max_qubits)
        throw CapacityError("statevector limited to " + std::to_string(opts.max_qubits) + " qubits, graph has " +
                            std::to_string(qubits_) + " vertices");
    const auto dim = static_cast<std::ptrdiff_t>(std::size_t{1} << qubits_);
    cut_.resize(static_cast<std::size_t>(dim));
#pragma omp parallel for schedule(static) if (dim >= (std::ptrdiff_t{1} << 14))
    for (std::ptrdiff_t x = 0; x < dim; ++x) cut_[x] = cut_value(g, static_cast<std::uint64_t>(x));
}

void QaoaSimulator::apply_cost(std::vector<amp_t>& amps, double gamma) const {
    kernels::apply_phase(amps, cut_, phase_table(edge_count_, gamma));
}

Statevector QaoaSimulator::evolve(const ParamVector& params) const {
    if (params.level() == 0) throw ParameterError("cannot evolve with an empty parameter vector");
    auto state = plus_state(qubits_, {.max_qubits = qubits_});
    auto& amps = state.amplitudes();
    for (std::size_t i = 0; i < params.level(); ++i) {
        apply_cost(amps, params.gammas[i]);
        kernels::apply_mixer(amps, qubits_, params.betas[i]);
    }
    return state;
}

double QaoaSimulator::expectation(const Statevector& state) const {
    if (state.qubits() != qubits_)
        throw ParameterError("statevector has " + std::to_string(state.qubits()) + " qubits, simulator has " +
                             std::to_string(qubits_));
    return kernels::expectation(state.amplitudes(), cut_);
}

double QaoaSimulator::expectation(const ParamVector& params) const { return expectation(evolve(params)); }

ValueAndGradient QaoaSimulator::value_and_gradient(const ParamVector& params) const {
    const std::size_t p = params.level();
    auto state = evolve(params);
    auto& phi = state.amplitudes();

    ValueAndGradient out;
    out.value = kernels::expectation(phi, cut_);
    out.gradient.assign(2 * p, 0.0);

    // lambda = C psi, pulled back through the layers alongside phi. For a
    // layer exp(i theta G) the derivative is -2 Im <lambda|G|phi> taken just
    // after the layer.
    std::vector<amp_t> lambda(phi.size());
    for (std::size_t x = 0; x < phi.size(); ++x) lambda[x] = phi[x] * static_cast<double>(cut_[x]);

    for (std::size_t k = p; k-- > 0;) {
        out.gradient[p + k] = -2.0 * kernels::mixer_overlap(lambda, phi, qubits_).imag();
        kernels::apply_mixer(phi, qubits_, -params.betas[k]);
        kernels::apply_mixer(lambda, qubits_, -params.betas[k]);

        out.gradient[k] = -2.0 * kernels::cost_overlap(lambda, phi, cut_).imag();
        if (k > 0) {
            apply_cost(phi, -params.gammas[k]);
            apply_cost(lambda, -params.gammas[k]);
        }
    }
    return out;
}

Statevector evolve(const Graph& g, const ParamVector& params, SimulatorOptions opts) {
    return QaoaSimulator(g, opts).evolve(params);
}

double expectation(const Graph& g, const Statevector& state) {
    check_size(state, g);
    double sum = 0.0;
    for (std::size_t x = 0; x < state.size(); ++x)
        sum += std::norm(state[x]) * cut_value(g, static_cast<std::uint64_t>(x));
    return sum;
}

std::vector<double> gradient(const Graph& g, const ParamVector& params, SimulatorOptions opts) {
    return QaoaSimulator(g, opts).value_and_gradient(params).gradient;
}

Landscape landscape_scan(const Graph& g, int resolution, SimulatorOptions opts) {
    return landscape_scan(QaoaSimulator(g, opts), resolution);
}

Landscape landscape_scan(const QaoaSimulator& sim, int resolution) {
    if (resolution < 2) throw ParameterError("landscape resolution must be at least 2");
    constexpr double pi = std::numbers::pi;
    Landscape out;
    out.resolution = resolution;
    out.gammas.resize(resolution);
    out.betas.resize(resolution);
    for (int i = 0; i < resolution; ++i) {
        out.gammas[i] = -pi / 4 + (pi / 2) * i / resolution;
        out.betas[i] = -pi / 2 + pi * i / resolution;
    }
    const auto total = static_cast<std::ptrdiff_t>(resolution) * resolution;
    out.values.resize(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic, 16)
    for (std::ptrdiff_t idx = 0; idx < total; ++idx) {
        const auto i = idx / resolution, j = idx % resolution;
        out.values[idx] = sim.expectation(ParamVector({out.gammas[i]}, {out.betas[j]}));
    }
    return out;
}

}  // namespace mleap
