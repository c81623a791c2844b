// Serial reference kernels against their OpenMP counterparts, plus the
// dispatched simulator entry points. Run with OMP_NUM_THREADS to vary the pool.

#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "mleap/kernels.hpp"
#include "mleap/simulator.hpp"
#include "mleap/strategies.hpp"

namespace {

using mleap::kernels::amp_t;

struct Fixture {
    std::vector<amp_t> amps;
    std::vector<int> cut;
    std::vector<amp_t> phases;

    explicit Fixture(int n) {
        mleap::Rng rng(static_cast<std::uint64_t>(n));
        const auto g = mleap::generate_regular(n, 3, rng);
        const std::size_t size = std::size_t{1} << n;
        amps.assign(size, amp_t(1.0 / std::sqrt(static_cast<double>(size)), 0.0));
        cut.resize(size);
        for (std::size_t x = 0; x < size; ++x) cut[x] = mleap::cut_value(g, x);
        for (std::size_t c = 0; c <= g.edge_count(); ++c) phases.push_back(std::polar(1.0, 0.3 * c));
    }
};

template <auto Phase, auto Mixer>
void layer(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    Fixture f(n);
    for (auto _ : st) {
        Phase(f.amps, f.cut, f.phases);
        Mixer(f.amps, n, 0.4);
        benchmark::ClobberMemory();
    }
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(f.amps.size()));
}

template <auto Expect>
void expectation(benchmark::State& st) {
    Fixture f(static_cast<int>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(Expect(f.amps, f.cut));
    st.SetItemsProcessed(st.iterations() * static_cast<std::int64_t>(f.amps.size()));
}

void value_and_gradient(benchmark::State& st) {
    const int n = static_cast<int>(st.range(0));
    mleap::Rng rng(7);
    const mleap::QaoaSimulator sim(mleap::generate_regular(n, 3, rng));
    const auto params = mleap::random_init(4, rng);
    for (auto _ : st) benchmark::DoNotOptimize(sim.value_and_gradient(params));
}

void run_many(benchmark::State& st) {
    mleap::Rng rng(3);
    const mleap::Problem problem(mleap::generate_regular(8, 3, rng));
    for (auto _ : st)
        benchmark::DoNotOptimize(mleap::run_many(problem, mleap::Schedule::interp(4), static_cast<int>(st.range(0)), 1));
}

}  // namespace

BENCHMARK(layer<mleap::kernels::serial::apply_phase, mleap::kernels::serial::apply_mixer>)
    ->Name("layer/serial")->DenseRange(16, 22, 2);
BENCHMARK(layer<mleap::kernels::omp::apply_phase, mleap::kernels::omp::apply_mixer>)
    ->Name("layer/omp")->DenseRange(16, 22, 2);
BENCHMARK(expectation<mleap::kernels::serial::expectation>)->Name("expectation/serial")->DenseRange(16, 22, 2);
BENCHMARK(expectation<mleap::kernels::omp::expectation>)->Name("expectation/omp")->DenseRange(16, 22, 2);
BENCHMARK(value_and_gradient)->DenseRange(12, 20, 4)->Unit(benchmark::kMillisecond);
BENCHMARK(run_many)->Arg(8)->Arg(32)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
