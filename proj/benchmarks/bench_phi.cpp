#include <benchmark/benchmark.h>

#include <numbers>

#include <qpulse/fock.hpp>
#include <qpulse/jcm.hpp>
#include <qpulse/optimal.hpp>

using namespace qpulse;

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

static void bm_phi_theta(benchmark::State& state) {
    const PulseSpec spec{kPi / 2.0, kPi / 2.0, int(state.range(0)), 0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi_theta(spec).amps.data());
    }
    state.SetLabel("dim=" + std::to_string(spec.effective_dim()));
}
BENCHMARK(bm_phi_theta)->Arg(25)->Arg(100)->Arg(400);

static void bm_phi_theta_gaussian(benchmark::State& state) {
    const PulseSpec spec{kPi / 2.0, kPi / 2.0, int(state.range(0)), 0};
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi_theta_gaussian(spec, true).amps.data());
    }
}
BENCHMARK(bm_phi_theta_gaussian)->Arg(25)->Arg(100)->Arg(400);

static void bm_phi_two(benchmark::State& state) {
    const PulseSpec spec{kPi / 2.0, kPi / 2.0, int(state.range(0)), 0};
    const FieldState p1 = phi_theta(spec);
    const JcmBlocks b = build_blocks(spec.gT(), spec.effective_dim());
    for (auto _ : state) {
        benchmark::DoNotOptimize(phi_two(spec, p1, b).state.amps.data());
    }
}
BENCHMARK(bm_phi_two)->Arg(25)->Arg(100);

static void bm_squeezed_state(benchmark::State& state) {
    const int D = int(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(squeezed_state(5.0, 0.25, D).amps.data());
    }
}
BENCHMARK(bm_squeezed_state)->Arg(108)->Arg(408);

BENCHMARK_MAIN();
