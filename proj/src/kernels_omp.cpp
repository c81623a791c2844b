#include <omp.h>

#include <atomic>
#include <cmath>
#include <vector>

#include "mleap/kernels.hpp"

namespace mleap::kernels {

namespace {

std::size_t block_count(std::size_t n) { return (n + reduction_block - 1) / reduction_block; }

// Deterministic reduction: body(begin, end) is summed serially per block, the
// partials are combined in block order.
template <class T, class Body>
T blocked_sum(std::size_t n, Body body) {
    const auto blocks = static_cast<std::ptrdiff_t>(block_count(n));
    std::vector<T> partial(static_cast<std::size_t>(blocks), T{});
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t b = 0; b < blocks; ++b) {
        const std::size_t begin = static_cast<std::size_t>(b) * reduction_block;
        const std::size_t end = std::min(n, begin + reduction_block);
        partial[static_cast<std::size_t>(b)] = body(begin, end);
    }
    T sum{};
    for (const auto& p : partial) sum += p;
    return sum;
}

}  // namespace

namespace omp {

void apply_phase(std::span<amp_t> amps, std::span<const int> cut, std::span<const amp_t> phases) {
    const auto dim = static_cast<std::ptrdiff_t>(amps.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t x = 0; x < dim; ++x) amps[x] *= phases[cut[x]];
}

void apply_mixer(std::span<amp_t> amps, int qubits, double beta) {
    const double c = std::cos(beta);
    const amp_t is(0.0, std::sin(beta));
    const auto pairs = static_cast<std::ptrdiff_t>(amps.size() / 2);
#pragma omp parallel
    for (int j = 0; j < qubits; ++j) {
        const std::size_t stride = std::size_t{1} << j;
        const std::size_t low = stride - 1;
        // Pair k -> index with a zero inserted at bit j.
#pragma omp for schedule(static)
        for (std::ptrdiff_t k = 0; k < pairs; ++k) {
            const auto uk = static_cast<std::size_t>(k);
            const std::size_t x = ((uk & ~low) << 1) | (uk & low);
            const amp_t a0 = amps[x];
            const amp_t a1 = amps[x + stride];
            amps[x] = c * a0 + is * a1;
            amps[x + stride] = is * a0 + c * a1;
        }
    }
}

double expectation(std::span<const amp_t> amps, std::span<const int> cut) {
    return blocked_sum<double>(amps.size(), [&](std::size_t b, std::size_t e) {
        double s = 0.0;
        for (std::size_t x = b; x < e; ++x) s += std::norm(amps[x]) * cut[x];
        return s;
    });
}

amp_t cost_overlap(std::span<const amp_t> lhs, std::span<const amp_t> rhs, std::span<const int> cut) {
    return blocked_sum<amp_t>(lhs.size(), [&](std::size_t b, std::size_t e) {
        amp_t s = 0.0;
        for (std::size_t x = b; x < e; ++x) s += std::conj(lhs[x]) * rhs[x] * static_cast<double>(cut[x]);
        return s;
    });
}

amp_t mixer_overlap(std::span<const amp_t> lhs, std::span<const amp_t> rhs, int qubits) {
    return blocked_sum<amp_t>(lhs.size(), [&](std::size_t b, std::size_t e) {
        amp_t s = 0.0;
        for (std::size_t x = b; x < e; ++x) {
            amp_t flipped = 0.0;
            for (int j = 0; j < qubits; ++j) flipped += rhs[x ^ (std::size_t{1} << j)];
            s += std::conj(lhs[x]) * flipped;
        }
        return s;
    });
}

double norm_squared(std::span<const amp_t> amps) {
    return blocked_sum<double>(amps.size(), [&](std::size_t b, std::size_t e) {
        double s = 0.0;
        for (std::size_t x = b; x < e; ++x) s += std::norm(amps[x]);
        return s;
    });
}

}  // namespace omp

namespace {

std::atomic<std::size_t> g_threshold{std::size_t{1} << 14};

bool go_parallel(std::size_t n) { return n >= g_threshold.load(std::memory_order_relaxed) && !omp_in_parallel(); }

}  // namespace

std::size_t parallel_threshold() noexcept { return g_threshold.load(std::memory_order_relaxed); }
void set_parallel_threshold(std::size_t amplitudes) noexcept {
    g_threshold.store(amplitudes, std::memory_order_relaxed);
}

void apply_phase(std::span<amp_t> amps, std::span<const int> cut, std::span<const amp_t> phases) {
    go_parallel(amps.size()) ? omp::apply_phase(amps, cut, phases) : serial::apply_phase(amps, cut, phases);
}

void apply_mixer(std::span<amp_t> amps, int qubits, double beta) {
    go_parallel(amps.size()) ? omp::apply_mixer(amps, qubits, beta) : serial::apply_mixer(amps, qubits, beta);
}

// Reductions always go through the blocked form so a result does not depend
// on whether the call happened inside a parallel region. Below one block the
// two are the same loop.
double expectation(std::span<const amp_t> amps, std::span<const int> cut) {
    return go_parallel(amps.size()) || amps.size() > reduction_block ? omp::expectation(amps, cut)
                                                                     : serial::expectation(amps, cut);
}

amp_t cost_overlap(std::span<const amp_t> lhs, std::span<const amp_t> rhs, std::span<const int> cut) {
    return go_parallel(lhs.size()) || lhs.size() > reduction_block ? omp::cost_overlap(lhs, rhs, cut)
                                                                   : serial::cost_overlap(lhs, rhs, cut);
}

amp_t mixer_overlap(std::span<const amp_t> lhs, std::span<const amp_t> rhs, int qubits) {
    return go_parallel(lhs.size()) || lhs.size() > reduction_block ? omp::mixer_overlap(lhs, rhs, qubits)
                                                                   : serial::mixer_overlap(lhs, rhs, qubits);
}

double norm_squared(std::span<const amp_t> amps) {
    return go_parallel(amps.size()) || amps.size() > reduction_block ? omp::norm_squared(amps)
                                                                     : serial::norm_squared(amps);
}

}  // namespace mleap::kernels
