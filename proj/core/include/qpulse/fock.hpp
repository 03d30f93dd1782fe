#pragma once

#include <Eigen/Dense>
#include <complex>

#include "qpulse/errors.hpp"

namespace qpulse {

using cd = std::complex<double>;

// pure field state on the truncated Fock basis |0>..|D-1>; amps normalized to 1
struct FieldState {
    Eigen::VectorXcd amps;

    int dim() const { return static_cast<int>(amps.size()); }
    double norm() const { return amps.norm(); }
};

// mixed field state; Hermitian, unit trace, PSD (within numerical tolerance)
struct FieldDensity {
    Eigen::MatrixXcd mat;

    int dim() const { return static_cast<int>(mat.rows()); }
};

struct StateMoments {
    double mean_n;
    double var_n;
    double purity;
};

// default tolerance for probability mass allowed above the truncation boundary
inline constexpr double kTailTol = 1e-10;

FieldState normalized(Eigen::VectorXcd amps);
FieldState number_state(int n, int D);
FieldState coherent_state(cd alpha, int D, double tail_tol = kTailTol);

// displaced squeezed vacuum D(alpha)S(r)|0>; alpha real positive with r > 0
// squeezes the photon-number direction (var_n decreases with r)
FieldState squeezed_state(cd alpha, double r, int D, double tail_tol = kTailTol);

FieldDensity projector(const FieldState& s);

StateMoments moments(const FieldState& s);
StateMoments moments(const FieldDensity& rho);

// <psi| rho |psi> for a pure reference state
double fidelity(const FieldState& psi, const FieldDensity& rho);

// (1/2) * trace norm of (a - b)
double trace_distance(const FieldDensity& a, const FieldDensity& b);

// occupancy of the top Fock level (truncation-boundary mass)
double top_occupancy(const FieldState& s);
double top_occupancy(const FieldDensity& rho);

} // namespace qpulse
