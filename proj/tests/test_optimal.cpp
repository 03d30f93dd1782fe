#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include <qpulse/fock.hpp>
#include <qpulse/jcm.hpp>
#include <qpulse/optimal.hpp>

using namespace qpulse;

namespace {
constexpr double kPi = std::numbers::pi;

PulseSpec half_pi_spec(int n, int dim = 0) { return PulseSpec{kPi / 2.0, kPi / 2.0, n, dim}; }

double skewness(const FieldState& s) {
    const StateMoments m = moments(s);
    double third = 0.0;
    for (int n = 0; n < s.dim(); ++n)
        third += std::pow(double(n) - m.mean_n, 3.0) * std::norm(s.amps[n]);
    return third / std::pow(m.var_n, 1.5);
}
} // namespace

TEST_CASE("pulse spec geometry", "[optimal]") {
    const PulseSpec spec = half_pi_spec(25);
    CHECK(spec.rotation_angle() == Catch::Approx(kPi).margin(1e-15));
    CHECK(spec.gT() == Catch::Approx(kPi / 2.0 / 5.0).margin(1e-15));
    CHECK(spec.support_end() == 99); // 4n - 1 at the half-pi colatitude
    CHECK(spec.default_dim() == 108);
    CHECK(half_pi_spec(25, 200).effective_dim() == 200);
    CHECK_THROWS_AS((PulseSpec{-0.1, 0.0, 25, 0}.validate()), DegenerateAncilla);
    CHECK_THROWS_AS((PulseSpec{kPi, 0.0, 25, 0}.validate()), DegenerateAncilla);
}

TEST_CASE("recursion peak sits flat at the design photon number", "[optimal]") {
    // at the half-pi colatitude the ratio C_25/C_24 has unit magnitude
    const FieldState s = phi_theta(half_pi_spec(25));
    CHECK(std::abs(s.amps[25]) == Catch::Approx(std::abs(s.amps[24])).margin(1e-12));
    CHECK(std::abs(s.amps[25]) > std::abs(s.amps[23]));
    CHECK(std::abs(s.amps[25]) > std::abs(s.amps[26]));
}

TEST_CASE("fixed-point state moments at the design point", "[optimal]") {
    const FieldState s = phi_theta(half_pi_spec(25));
    const StateMoments m = moments(s);
    CHECK(m.mean_n == Catch::Approx(24.659753634598).margin(1e-9));
    CHECK(std::abs(m.mean_n - 24.66) < 0.02);
    CHECK(mean_n_prediction(25) == Catch::Approx(24.628539816340).margin(1e-9));
    CHECK(std::abs(mean_n_prediction(25) - 24.63) < 0.005); // 4 significant figures

    const double width = std::sqrt(m.var_n);
    const double law = std::sqrt(2.0 * m.mean_n / kPi);
    CHECK(std::abs(width / law - 1.0) < 0.01);
}

TEST_CASE("mean prediction tightens with the design photon number", "[optimal]") {
    const double m100 = moments(phi_theta(half_pi_spec(100))).mean_n;
    CHECK(std::abs(m100 - mean_n_prediction(100)) < 0.12);
    // the deviation shrinks relative to the mean as the design number grows
    const double m25 = moments(phi_theta(half_pi_spec(25))).mean_n;
    const double rel100 = std::abs(m100 / mean_n_prediction(100) - 1.0);
    const double rel25 = std::abs(m25 / mean_n_prediction(25) - 1.0);
    CHECK(rel100 < rel25);
}

TEST_CASE("support is exact: zeros beyond, nonzero inside", "[optimal]") {
    const PulseSpec spec = half_pi_spec(25);
    const FieldState s = phi_theta(spec);
    for (int n = spec.support_end() + 1; n < s.dim(); ++n) CHECK(s.amps[n] == cd(0.0, 0.0));
    CHECK(std::abs(s.amps[spec.support_end()]) > 0.0);
    CHECK(s.norm() == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("amplitude phases follow the azimuth ladder", "[optimal]") {
    // at phi = pi/2 every amplitude is real nonnegative
    const FieldState s = phi_theta(half_pi_spec(25));
    for (int n = 0; n <= 99; ++n) {
        CHECK(s.amps[n].imag() == Catch::Approx(0.0).margin(1e-15));
        CHECK(s.amps[n].real() >= 0.0);
    }
    // a generic azimuth advances the phase by (phi - pi/2) per level
    const double phi = 0.7;
    const FieldState t = phi_theta(PulseSpec{kPi / 2.0, phi, 25, 0});
    const cd step = std::polar(1.0, phi - kPi / 2.0);
    for (int n = 0; n < 40; ++n)
        CHECK(std::abs(t.amps[n] - s.amps[n] * std::pow(step, n)) < 1e-12);
}

TEST_CASE("degenerate colatitude collapses to vacuum with a flag", "[optimal]") {
    bool degenerate = false;
    const FieldState s = phi_theta(PulseSpec{0.0, 0.0, 25, 0}, &degenerate);
    CHECK(degenerate);
    CHECK(std::abs(s.amps[0]) == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("dimension must hold the recursion support", "[optimal]") {
    CHECK_THROWS_AS(phi_theta(half_pi_spec(25, 99)), DimensionTooSmall);
    CHECK_NOTHROW(phi_theta(half_pi_spec(25, 100)));
}

TEST_CASE("gaussian surrogate tracks the exact state", "[optimal]") {
    const FieldState exact = phi_theta(half_pi_spec(25));
    const FieldState cubic = phi_theta_gaussian(half_pi_spec(25), true);
    const FieldState plain = phi_theta_gaussian(half_pi_spec(25), false);

    const double overlap_cubic = std::norm(exact.amps.dot(cubic.amps));
    const double overlap_plain = std::norm(exact.amps.dot(plain.amps));
    CHECK(overlap_cubic > 0.9999);
    CHECK(overlap_cubic > overlap_plain);

    CHECK(moments(cubic).mean_n == Catch::Approx(24.66).margin(0.05));
    // the tilt lives in the cubic term only; at n=100 the window truncation
    // is negligible and the plain surrogate is symmetric to machine precision
    CHECK(std::abs(skewness(phi_theta_gaussian(half_pi_spec(100), false))) < 1e-10);

    double prev = 1.0 - std::norm(phi_theta(half_pi_spec(25)).amps.dot(
                            phi_theta_gaussian(half_pi_spec(25), true).amps));
    for (int n : {50, 100}) {
        const double inf = 1.0 - std::norm(phi_theta(half_pi_spec(n)).amps.dot(
                                     phi_theta_gaussian(half_pi_spec(n), true).amps));
        CHECK(inf < prev);
        prev = inf;
    }
    CHECK(prev < 1e-5);
}

TEST_CASE("width law evaluates the asymptotic optimum", "[optimal]") {
    CHECK(width_prediction(kPi, 25.0) == Catch::Approx(std::sqrt(50.0 / kPi)).margin(1e-12));
    CHECK(width_prediction(kPi / 2.0, 25.0) ==
          Catch::Approx(std::sqrt(2.0 * 25.0 * std::sin(kPi / 4.0) / (kPi / 2.0))).margin(1e-12));
}

TEST_CASE("companion state is orthogonal with the predicted weight", "[optimal]") {
    const PulseSpec spec = half_pi_spec(100);
    const FieldState p1 = phi_theta(spec);
    const JcmBlocks b = build_blocks(spec.gT(), spec.effective_dim());
    const PhiTwoResult p2 = phi_two(spec, p1, b);

    CHECK(std::abs(p1.amps.dot(p2.state.amps)) < 1e-10);
    CHECK(p2.state.norm() == Catch::Approx(1.0).margin(1e-12));
    const double predicted = (kPi / 2.0) * std::sin(kPi / 2.0) / 100.0;
    CHECK(std::abs(p2.norm2_raw / predicted - 1.0) < 0.01);
}

TEST_CASE("squeezed surrogate hits the transitional width", "[optimal]") {
    const double theta_rot = kPi / 2.0;
    const double n_bar = 25.0;
    const FieldState s = transcoherent_surrogate(theta_rot, n_bar, 128);
    const StateMoments m = moments(s);
    CHECK(m.var_n ==
          Catch::Approx(n_bar * std::sin(theta_rot) / theta_rot).margin(1e-4));
    CHECK(m.mean_n == Catch::Approx(n_bar).margin(0.5));
    CHECK_THROWS_AS(transcoherent_surrogate(kPi, n_bar, 128), DegenerateAncilla);
}
