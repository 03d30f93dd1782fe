#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include <qpulse/fock.hpp>

using namespace qpulse;

TEST_CASE("number states are delta distributions", "[fock]") {
    const FieldState s = number_state(7, 16);
    REQUIRE(s.dim() == 16);
    REQUIRE(std::abs(s.amps[7] - cd(1.0, 0.0)) < 1e-15);
    REQUIRE(s.norm() == Catch::Approx(1.0).margin(1e-15));
    const StateMoments m = moments(s);
    CHECK(m.mean_n == Catch::Approx(7.0).margin(1e-12));
    CHECK(m.var_n == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("coherent states carry Poisson statistics", "[fock]") {
    const double alpha = 5.0;
    const FieldState s = coherent_state(alpha, 108);
    const StateMoments m = moments(s);
    CHECK(m.mean_n == Catch::Approx(alpha * alpha).margin(1e-8));
    CHECK(m.var_n == Catch::Approx(alpha * alpha).margin(1e-6));
    // p(1)/p(0) = |alpha|^2
    CHECK(std::norm(s.amps[1]) / std::norm(s.amps[0]) ==
          Catch::Approx(alpha * alpha).margin(1e-10));
}

TEST_CASE("truncation-boundary mass is rejected", "[fock]") {
    CHECK_THROWS_AS(coherent_state(5.0, 30), TruncationError);
    CHECK_NOTHROW(coherent_state(5.0, 108));
}

TEST_CASE("squeezing the number direction narrows var_n", "[fock]") {
    const double alpha = 5.0;
    const FieldState plain = squeezed_state(alpha, 0.0, 108);
    const FieldState c = coherent_state(alpha, 108);
    REQUIRE((plain.amps - c.amps).norm() < 1e-12);

    double prev = moments(plain).var_n;
    for (double r : {0.1, 0.2, 0.3, 0.4}) {
        const double v = moments(squeezed_state(alpha, r, 116)).var_n;
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("projector moments and purity agree with the pure state", "[fock]") {
    const FieldState s = coherent_state(3.0, 64);
    const FieldDensity rho = projector(s);
    const StateMoments mp = moments(s);
    const StateMoments mr = moments(rho);
    CHECK(mr.mean_n == Catch::Approx(mp.mean_n).margin(1e-10));
    CHECK(mr.var_n == Catch::Approx(mp.var_n).margin(1e-8));
    CHECK(mr.purity == Catch::Approx(1.0).margin(1e-12));
    CHECK(fidelity(s, rho) == Catch::Approx(1.0).margin(1e-12));
}

TEST_CASE("equal two-state mixture has purity one half", "[fock]") {
    const FieldState a = number_state(2, 16);
    const FieldState b = number_state(9, 16);
    FieldDensity mix{0.5 * projector(a).mat + 0.5 * projector(b).mat};
    CHECK(moments(mix).purity == Catch::Approx(0.5).margin(1e-12));
    CHECK(fidelity(a, mix) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("trace distance separates orthogonal states and vanishes on equals", "[fock]") {
    const FieldDensity a = projector(number_state(1, 8));
    const FieldDensity b = projector(number_state(5, 8));
    CHECK(trace_distance(a, b) == Catch::Approx(1.0).margin(1e-10));
    CHECK(trace_distance(a, a) == Catch::Approx(0.0).margin(1e-12));

    // triangle inequality on a random triple
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g;
    auto random_rho = [&] {
        Eigen::MatrixXcd m(8, 8);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j) m(i, j) = cd(g(rng), g(rng));
        Eigen::MatrixXcd r = m * m.adjoint();
        return FieldDensity{r / r.trace().real()};
    };
    const FieldDensity x = random_rho(), y = random_rho(), z = random_rho();
    CHECK(trace_distance(x, z) <= trace_distance(x, y) + trace_distance(y, z) + 1e-12);
}

TEST_CASE("top occupancy reads the boundary level", "[fock]") {
    const FieldState s = number_state(15, 16);
    CHECK(top_occupancy(s) == Catch::Approx(1.0).margin(1e-15));
    CHECK(top_occupancy(projector(number_state(0, 16))) == Catch::Approx(0.0).margin(1e-15));
}
