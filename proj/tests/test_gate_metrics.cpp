#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <qpulse/fock.hpp>
#include <qpulse/gate_metrics.hpp>
#include <qpulse/jcm.hpp>
#include <qpulse/optimal.hpp>
#include <qpulse/recycler.hpp>

using namespace qpulse;

namespace {
constexpr double kPi = std::numbers::pi;

JcmBlocks blocks_for(const PulseSpec& spec) {
    return build_blocks(spec.gT(), spec.effective_dim());
}

double post_field_fidelity(const FieldState& field, const QubitState& atom,
                           const JcmBlocks& b) {
    const JointState out = evolve_joint(b, joint_product(field, atom));
    const FieldDensity rho{out.g_block * out.g_block.adjoint() +
                           out.e_block * out.e_block.adjoint()};
    return fidelity(field, rho);
}
} // namespace

TEST_CASE("prepared ancilla states use the colatitude convention", "[gate_metrics]") {
    const QubitState v = ancilla_state(kPi / 2.0, 0.0);
    CHECK(std::abs(v[0] - cd(std::sqrt(0.5), 0.0)) < 1e-15);
    CHECK(std::abs(v[1] - cd(std::sqrt(0.5), 0.0)) < 1e-15);

    for (double theta : {0.3, 1.0, 2.2})
        for (double phi : {0.0, 0.9, 4.0}) {
            const QubitState a = ancilla_state(theta, phi);
            const QubitState o = ancilla_orthogonal(theta, phi);
            CHECK(a.norm() == Catch::Approx(1.0).margin(1e-14));
            CHECK(std::abs(a.dot(o)) < 1e-14);
        }
}

TEST_CASE("ideal rotation matches the exchange-generated map", "[gate_metrics]") {
    SECTION("pi rotation about the in-phase equatorial axis") {
        const RotationTarget rt = ideal_rotation(kPi, kPi / 2.0);
        Eigen::Matrix2cd expected;
        expected << 0.0, cd(0.0, -1.0), cd(0.0, -1.0), 0.0;
        CHECK((rt.matrix - expected).cwiseAbs().maxCoeff() < 1e-14);
    }
    SECTION("prepared state maps to its reflection for any pulse angle") {
        for (double angle : {kPi / 4.0, kPi / 2.0, kPi})
            for (double phi : {0.3, kPi / 2.0}) {
                const RotationTarget rt = ideal_rotation(angle, phi);
                const QubitState v1 = ancilla_state(angle / 2.0, phi);
                QubitState v1p = v1;
                v1p[1] = -v1p[1];
                const QubitState mapped = rt.matrix * v1;
                // proportional up to a global phase
                CHECK(std::abs(std::abs(v1p.dot(mapped)) - 1.0) < 1e-12);
                CHECK(rt.matrix.isUnitary(1e-13));
            }
    }
}

TEST_CASE("a bare number state gives the maximal error", "[gate_metrics]") {
    const PulseSpec spec{kPi / 4.0, kPi / 2.0, 25, 108};
    const JcmBlocks b = blocks_for(spec);
    const RotationTarget rt = ideal_rotation(spec.rotation_angle(), spec.phi);
    const double eps = gate_error(number_state(25, 108), QubitState(1.0, 0.0), rt, b);
    CHECK(eps == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("designed states drive exact rotations on the prepared atom", "[gate_metrics]") {
    for (double angle : {kPi / 4.0, kPi / 2.0, kPi}) {
        const PulseSpec spec{angle / 2.0, kPi / 2.0, 25, 0};
        const JcmBlocks b = blocks_for(spec);
        const FieldState field = phi_theta(spec);
        const RotationTarget rt = ideal_rotation(angle, spec.phi);
        const QubitState v1 = ancilla_state(spec.theta, spec.phi);
        CHECK(gate_error(field, v1, rt, b) < 1e-10);
        CHECK(post_field_fidelity(field, v1, b) > 1.0 - 1e-10);
    }
}

TEST_CASE("coherent drive error follows the exact quarter-rotation law", "[gate_metrics]") {
    const double n_bar = 100.0;
    const PulseSpec spec{kPi / 4.0, kPi / 2.0, 100, 0};
    const JcmBlocks b = blocks_for(spec);
    const RotationTarget rt = ideal_rotation(kPi / 2.0, spec.phi);
    const double eps =
        gate_error(coherent_state(std::sqrt(n_bar), spec.effective_dim()),
                   QubitState(1.0, 0.0), rt, b);
    const double law = (kPi - 2.0) * (kPi - 2.0) / (64.0 * n_bar);
    CHECK(std::abs(eps / law - 1.0) < 0.01);
}

TEST_CASE("pure and density error paths agree", "[gate_metrics]") {
    const PulseSpec spec{kPi / 2.0, kPi / 2.0, 25, 0};
    const JcmBlocks b = blocks_for(spec);
    const RotationTarget rt = ideal_rotation(kPi, spec.phi);
    const FieldState field = coherent_state(5.0, spec.effective_dim());
    const QubitState atom = ancilla_state(0.8, 1.9);
    CHECK(std::abs(gate_error(field, atom, rt, b) -
                   gate_error(projector(field), atom, rt, b)) < 1e-12);
}

TEST_CASE("bloch ensemble is deterministic, normalized, unbiased", "[gate_metrics]") {
    const auto a = random_bloch_ensemble(512, 99);
    const auto b = random_bloch_ensemble(512, 99);
    REQUIRE(a.size() == 512);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).norm() == 0.0);

    double mean_cos = 0.0;
    for (const auto& q : a) {
        CHECK(q.norm() == Catch::Approx(1.0).margin(1e-14));
        mean_cos += 2.0 * std::norm(q[0]) - 1.0; // cos(colatitude)
    }
    mean_cos /= double(a.size());
    CHECK(std::abs(mean_cos) < 3.0 / std::sqrt(512.0));

    CHECK((random_bloch_ensemble(8, 1)[0] - random_bloch_ensemble(8, 2)[0]).norm() > 1e-3);
}

TEST_CASE("ensemble report statistics are order statistics", "[gate_metrics]") {
    const PulseSpec spec{kPi / 2.0, kPi / 2.0, 25, 0};
    const JcmBlocks b = blocks_for(spec);
    const RotationTarget rt = ideal_rotation(kPi, spec.phi);
    const FieldState field = phi_theta(spec);

    const auto one = random_bloch_ensemble(1, 5);
    const ErrorEnsembleReport single = ensemble_errors(field, rt, b, one, 5);
    REQUIRE(single.errors.size() == 1);
    for (double v : {single.min, single.max, single.mean, single.p10, single.p25, single.p75,
                     single.p90})
        CHECK(v == single.errors[0]);

    const auto ens = random_bloch_ensemble(64, 7);
    const ErrorEnsembleReport rep = ensemble_errors(field, rt, b, ens, 7);
    CHECK(rep.min <= rep.p10);
    CHECK(rep.p10 <= rep.p25);
    CHECK(rep.p25 <= rep.p75);
    CHECK(rep.p75 <= rep.p90);
    CHECK(rep.p90 <= rep.max);
    CHECK(rep.seed == 7);
}

TEST_CASE("ensemble mean error scales inversely with the photon number", "[gate_metrics]") {
    const auto ens = random_bloch_ensemble(2048, 31);
    double means[3];
    const int designs[3] = {25, 50, 100};
    for (int i = 0; i < 3; ++i) {
        const PulseSpec spec{kPi / 2.0, kPi / 2.0, designs[i], 0};
        const JcmBlocks b = blocks_for(spec);
        means[i] = ensemble_errors(phi_theta(spec), ideal_rotation(kPi, spec.phi), b, ens, 31)
                       .mean;
    }
    const double exponent = std::log(means[2] / means[0]) / std::log(100.0 / 25.0);
    CHECK(exponent == Catch::Approx(-1.0).margin(0.08));
}

TEST_CASE("sweep rows follow the grid and respect the worker count", "[gate_metrics]") {
    const PulseSpec spec{kPi / 2.0, kPi / 2.0, 25, 0};
    const JcmBlocks b = blocks_for(spec);
    const std::vector<double> grid{0.0, 0.1, 0.2, 0.3};
    const auto ens = random_bloch_ensemble(64, 4242);

    const auto serial = squeeze_sweep(25.0, kPi, kPi / 2.0, grid, ens, b,
                                      spec.effective_dim(), 4242, 1);
    const auto pooled = squeeze_sweep(25.0, kPi, kPi / 2.0, grid, ens, b,
                                      spec.effective_dim(), 4242, 3);
    REQUIRE(serial.size() == grid.size());
    REQUIRE(pooled.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(serial[i].r == grid[i]);
        CHECK(serial[i].report.mean == pooled[i].report.mean);
        CHECK(serial[i].ground_error == pooled[i].ground_error);
    }

    // ground-start column equals a direct evaluation
    const RotationTarget rt = ideal_rotation(kPi, kPi / 2.0);
    const double direct = gate_error(squeezed_state(5.0, grid[1], spec.effective_dim()),
                                     QubitState(1.0, 0.0), rt, b);
    CHECK(serial[1].ground_error == Catch::Approx(direct).margin(1e-14));
}

TEST_CASE("mixture error is the weight-average of component errors", "[gate_metrics]") {
    const PulseSpec spec{kPi / 2.0, kPi / 2.0, 50, 0};
    const JcmBlocks b = blocks_for(spec);
    const RotationTarget rt = ideal_rotation(kPi, spec.phi);
    const FieldState p1 = phi_theta(spec);
    const PhiTwoResult p2 = phi_two(spec, p1, b);
    const QubitState atom = ancilla_state(1.2, 0.4);

    const double lambda = 0.05;
    FieldDensity mix{(1.0 - lambda) * projector(p1).mat + lambda * projector(p2.state).mat};
    const double lhs = gate_error(mix, atom, rt, b);
    const double rhs = (1.0 - lambda) * gate_error(p1, atom, rt, b) +
                       lambda * gate_error(p2.state, atom, rt, b);
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("error budget combines the two component laws", "[gate_metrics]") {
    // (budget(l) - budget(0)) / (l * budget(0)) = (13/48)/(1/6) = 13/8
    const double b0 = mixed_error_budget(0.0, 100);
    const double bl = mixed_error_budget(0.05, 100);
    CHECK((bl - b0) / (0.05 * b0) == Catch::Approx(13.0 / 8.0).margin(1e-12));
    CHECK(b0 > 0.0);
}
