#include <benchmark/benchmark.h>

#include <numbers>

#include <qpulse/fock.hpp>
#include <qpulse/gate_metrics.hpp>
#include <qpulse/jcm.hpp>
#include <qpulse/optimal.hpp>
#include <qpulse/recycler.hpp>

using namespace qpulse;

namespace {
constexpr double kPi = std::numbers::pi;
} // namespace

static void bm_gate_error_pure(benchmark::State& state) {
    const PulseSpec spec{kPi / 2.0, kPi / 2.0, int(state.range(0)), 0};
    const JcmBlocks b = build_blocks(spec.gT(), spec.effective_dim());
    const FieldState field = phi_theta(spec);
    const RotationTarget rt = ideal_rotation(kPi, spec.phi);
    const QubitState atom = ancilla_state(1.1, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gate_error(field, atom, rt, b));
    }
}
BENCHMARK(bm_gate_error_pure)->Arg(25)->Arg(100)->Arg(400);

static void bm_gate_error_density(benchmark::State& state) {
    const PulseSpec spec{kPi / 2.0, kPi / 2.0, int(state.range(0)), 0};
    const JcmBlocks b = build_blocks(spec.gT(), spec.effective_dim());
    const FieldDensity mix = mixed_fixed_point({spec.theta, spec.phi, 0.05}, spec);
    const RotationTarget rt = ideal_rotation(kPi, spec.phi);
    const QubitState atom = ancilla_state(1.1, 0.3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(gate_error(mix, atom, rt, b));
    }
}
BENCHMARK(bm_gate_error_density)->Arg(25)->Arg(100);

static void bm_ensemble_256(benchmark::State& state) {
    const PulseSpec spec{kPi / 2.0, kPi / 2.0, 25, 0};
    const JcmBlocks b = build_blocks(spec.gT(), spec.effective_dim());
    const FieldState field = phi_theta(spec);
    const RotationTarget rt = ideal_rotation(kPi, spec.phi);
    const auto ens = random_bloch_ensemble(256, 4242);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ensemble_errors(field, rt, b, ens, 4242).mean);
    }
}
BENCHMARK(bm_ensemble_256);

static void bm_bloch_sampling(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(random_bloch_ensemble(int(state.range(0)), 99).data());
    }
}
BENCHMARK(bm_bloch_sampling)->Arg(256)->Arg(4096);

BENCHMARK_MAIN();
