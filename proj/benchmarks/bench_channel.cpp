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

static void bm_ancilla_channel(benchmark::State& state) {
    const int n = int(state.range(0));
    const PulseSpec spec{kPi / 2.0, kPi / 2.0, n, 0};
    const JcmBlocks b = build_blocks(spec.gT(), spec.effective_dim());
    const AncillaSpec anc{spec.theta, spec.phi, 0.02};
    FieldDensity rho = projector(phi_theta(spec));
    for (auto _ : state) {
        rho = ancilla_channel(rho, anc, b);
        benchmark::DoNotOptimize(rho.mat.data());
    }
    state.SetLabel("dim=" + std::to_string(spec.effective_dim()));
}
BENCHMARK(bm_ancilla_channel)->Arg(25)->Arg(50)->Arg(100);

static void bm_joint_density_oracle(benchmark::State& state) {
    const int n = int(state.range(0));
    const PulseSpec spec{kPi / 2.0, kPi / 2.0, n, 0};
    const JcmBlocks b = build_blocks(spec.gT(), spec.effective_dim());
    const QubitState v1 = ancilla_state(spec.theta, spec.phi);
    const Eigen::MatrixXcd joint =
        joint_density(projector(phi_theta(spec)), v1 * v1.adjoint());
    for (auto _ : state) {
        benchmark::DoNotOptimize(trace_out_atom(evolve_joint_density(b, joint)).mat.data());
    }
}
BENCHMARK(bm_joint_density_oracle)->Arg(25)->Arg(50);

static void bm_iterate_step(benchmark::State& state) {
    const PulseSpec spec{kPi / 2.0, kPi / 2.0, 25, 0};
    const JcmBlocks b = build_blocks(spec.gT(), spec.effective_dim());
    const AncillaSpec anc{spec.theta, spec.phi, 0.0};
    const FieldDensity rho0 = projector(phi_theta(spec));
    for (auto _ : state) {
        benchmark::DoNotOptimize(iterate(rho0, anc, b, 5, 0.0).rho.mat.data());
    }
}
BENCHMARK(bm_iterate_step);

BENCHMARK_MAIN();
