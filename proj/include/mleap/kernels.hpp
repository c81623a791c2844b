#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Statevector kernels in two flavours with identical signatures:
//
//   kernels::serial  plain loops, the reference the parallel path is tested
//                    against;
//   kernels::omp     OpenMP work-sharing versions.
//
// Reductions in the OpenMP flavour sum fixed-size blocks serially and then
// combine the block partials in index order, so results are bit-identical for
// any thread count. They can differ from the serial flavour in the last ulp.
//
// Amplitude index bit j is qubit j. `cut` holds the cut value of every basis
// index; `phases[k]` is the phase applied to amplitudes whose cut is k.

namespace mleap::kernels {

using amp_t = std::complex<double>;

/// Reduction block length of the OpenMP flavour. States no larger than this
/// reduce in a single block.
inline constexpr std::size_t reduction_block = 4096;

namespace serial {

void apply_phase(std::span<amp_t> amps, std::span<const int> cut, std::span<const amp_t> phases);
/// cos(beta) I + i sin(beta) X on every qubit.
void apply_mixer(std::span<amp_t> amps, int qubits, double beta);
/// sum |a_x|^2 cut_x
double expectation(std::span<const amp_t> amps, std::span<const int> cut);
/// sum conj(l_x) cut_x r_x
amp_t cost_overlap(std::span<const amp_t> lhs, std::span<const amp_t> rhs, std::span<const int> cut);
/// sum_j sum_x conj(l_x) r_{x ^ 2^j}
amp_t mixer_overlap(std::span<const amp_t> lhs, std::span<const amp_t> rhs, int qubits);
double norm_squared(std::span<const amp_t> amps);

}  // namespace serial

namespace omp {

void apply_phase(std::span<amp_t> amps, std::span<const int> cut, std::span<const amp_t> phases);
void apply_mixer(std::span<amp_t> amps, int qubits, double beta);
double expectation(std::span<const amp_t> amps, std::span<const int> cut);
amp_t cost_overlap(std::span<const amp_t> lhs, std::span<const amp_t> rhs, std::span<const int> cut);
amp_t mixer_overlap(std::span<const amp_t> lhs, std::span<const amp_t> rhs, int qubits);
double norm_squared(std::span<const amp_t> amps);

}  // namespace omp

/// Selects a flavour per call: OpenMP for states of at least
/// `parallel_threshold()` amplitudes when not already inside a parallel
/// region, serial otherwise. Batch drivers parallelize over runs, so the
/// per-run kernels then stay serial.
std::size_t parallel_threshold() noexcept;
void set_parallel_threshold(std::size_t amplitudes) noexcept;

void apply_phase(std::span<amp_t> amps, std::span<const int> cut, std::span<const amp_t> phases);
void apply_mixer(std::span<amp_t> amps, int qubits, double beta);
double expectation(std::span<const amp_t> amps, std::span<const int> cut);
amp_t cost_overlap(std::span<const amp_t> lhs, std::span<const amp_t> rhs, std::span<const int> cut);
amp_t mixer_overlap(std::span<const amp_t> lhs, std::span<const amp_t> rhs, int qubits);
double norm_squared(std::span<const amp_t> amps);

}  // namespace mleap::kernels
