#include <cmath>

#include "mleap/kernels.hpp"

namespace mleap::kernels::serial {

void apply_phase(std::span<amp_t> amps, std::span<const int> cut, std::span<const amp_t> phases) {
    for (std::size_t x = 0; x < amps.size(); ++x) amps[x] *= phases[cut[x]];
}

void apply_mixer(std::span<amp_t> amps, int qubits, double beta) {
    const double c = std::cos(beta);
    const amp_t is(0.0, std::sin(beta));
    const std::size_t dim = amps.size();
    for (int j = 0; j < qubits; ++j) {
        const std::size_t stride = std::size_t{1} << j;
        for (std::size_t base = 0; base < dim; base += 2 * stride) {
            for (std::size_t x = base; x < base + stride; ++x) {
                const amp_t a0 = amps[x];
                const amp_t a1 = amps[x + stride];
                amps[x] = c * a0 + is * a1;
                amps[x + stride] = is * a0 + c * a1;
            }
        }
    }
}

double expectation(std::span<const amp_t> amps, std::span<const int> cut) {
    double sum = 0.0;
    for (std::size_t x = 0; x < amps.size(); ++x) sum += std::norm(amps[x]) * cut[x];
    return sum;
}

amp_t cost_overlap(std::span<const amp_t> lhs, std::span<const amp_t> rhs, std::span<const int> cut) {
    amp_t sum = 0.0;
    for (std::size_t x = 0; x < lhs.size(); ++x) sum += std::conj(lhs[x]) * rhs[x] * static_cast<double>(cut[x]);
    return sum;
}

amp_t mixer_overlap(std::span<const amp_t> lhs, std::span<const amp_t> rhs, int qubits) {
    amp_t sum = 0.0;
    for (std::size_t x = 0; x < lhs.size(); ++x) {
        amp_t flipped = 0.0;
        for (int j = 0; j < qubits; ++j) flipped += rhs[x ^ (std::size_t{1} << j)];
        sum += std::conj(lhs[x]) * flipped;
    }
    return sum;
}

double norm_squared(std::span<const amp_t> amps) {
    double sum = 0.0;
    for (const auto& a : amps) sum += std::norm(a);
    return sum;
}

}  // namespace mleap::kernels::serial
