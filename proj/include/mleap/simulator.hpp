#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "mleap/graph.hpp"
#include "mleap/kernels.hpp"

namespace mleap {

/// QAOA angles for a p-level ansatz: gammas drive the cost layers, betas the
/// mixer layers.
struct ParamVector {
    std::vector<double> gammas;
    std::vector<double> betas;

    ParamVector() = default;
    /// Throws ParameterError unless both lists have the same positive length.
    ParamVector(std::vector<double> gammas, std::vector<double> betas);

    std::size_t level() const noexcept { return gammas.size(); }

    /// (gamma_1..gamma_p, beta_1..beta_p)
    std::vector<double> flatten() const;
    static ParamVector unflatten(const std::vector<double>& flat);

    friend bool operator==(const ParamVector&, const ParamVector&) = default;
};

struct SimulatorOptions {
    int max_qubits = 24;
};

class Statevector {
public:
    using amp_t = kernels::amp_t;

    Statevector(int qubits, std::vector<amp_t> amps);

    int qubits() const noexcept { return qubits_; }
    std::size_t size() const noexcept { return amps_.size(); }
    const std::vector<amp_t>& amplitudes() const noexcept { return amps_; }
    std::vector<amp_t>& amplitudes() noexcept { return amps_; }
    const amp_t& operator[](std::size_t x) const { return amps_[x]; }
    double norm() const;

private:
    int qubits_;
    std::vector<amp_t> amps_;
};

/// |+>^n. Throws CapacityError above the qubit guard.
Statevector plus_state(int qubits, SimulatorOptions opts = {});

/// Multiplies amplitude x by exp(i gamma cut(x)).
Statevector apply_cost_layer(Statevector state, const Graph& g, double gamma);
/// Applies exp(i beta sum_j X_j).
Statevector apply_mixer_layer(Statevector state, double beta);

struct ValueAndGradient {
    double value = 0.0;
    std::vector<double> gradient;  // flattened parameter order
};

/// Exact simulation of the MaxCut QAOA ansatz on one graph. Holds the cut
/// table (cut value of each basis state), so repeated evaluations on the same
/// graph cost O(p n 2^n) each.
class QaoaSimulator {
public:
    explicit QaoaSimulator(const Graph& g, SimulatorOptions opts = {});

    int qubits() const noexcept { return qubits_; }
    int edge_count() const noexcept { return edge_count_; }
    const std::vector<int>& cut_table() const noexcept { return cut_; }

    Statevector evolve(const ParamVector& params) const;
    double expectation(const Statevector& state) const;
    double expectation(const ParamVector& params) const;

    /// F and dF/d(gamma, beta) via one forward pass and a reverse sweep that
    /// un-applies the layers. Memory is three statevectors.
    ValueAndGradient value_and_gradient(const ParamVector& params) const;

    void apply_cost(std::vector<kernels::amp_t>& amps, double gamma) const;

private:
    int qubits_;
    int edge_count_;
    std::vector<int> cut_;
};

Statevector evolve(const Graph& g, const ParamVector& params, SimulatorOptions opts = {});
double expectation(const Graph& g, const Statevector& state);
std::vector<double> gradient(const Graph& g, const ParamVector& params, SimulatorOptions opts = {});

/// p = 1 expectation over gamma in [-pi/4, pi/4), beta in [-pi/2, pi/2).
/// values[i * resolution + j] is F(gammas[i], betas[j]).
struct Landscape {
    int resolution = 0;
    std::vector<double> gammas;
    std::vector<double> betas;
    std::vector<double> values;

    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * resolution + j]; }
};

Landscape landscape_scan(const Graph& g, int resolution, SimulatorOptions opts = {});
Landscape landscape_scan(const QaoaSimulator& sim, int resolution);

}  // namespace mleap
