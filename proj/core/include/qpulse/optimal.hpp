#pragma once

#include "qpulse/fock.hpp"
#include "qpulse/jcm.hpp"

namespace qpulse {

// design point of a rotation pulse: ancilla colatitude theta (rotation angle
// is 2*theta), azimuth phi, integer target photon number n_target setting the
// pulse area gT = theta / sqrt(n_target)
struct PulseSpec {
    double theta;
    double phi;
    int n_target;
    int dim = 0; // 0 -> default_dim()

    double rotation_angle() const { return 2.0 * theta; }
    double gT() const;
    // last index carrying amplitude; the recursion support is {0..support_end}
    int support_end() const;
    int default_dim() const;
    int effective_dim() const { return dim > 0 ? dim : default_dim(); }
    void validate() const; // throws DegenerateAncilla / std::invalid_argument
};

// exact fixed-point field state from the amplitude recursion
// C_{n+1} = -i e^{i phi} tan(theta/2) cot(gT sqrt(n+1)/2) C_n, C_0 > 0 real.
// Emits amplitudes that are exactly zero beyond the support.
// If theta == 0 the state degenerates to vacuum; returned with *degenerate_flag
// set instead of throwing.
FieldState phi_theta(const PulseSpec& spec, bool* degenerate_flag = nullptr);

// Gaussian surrogate: |C_n| ~ exp(-(n - n_t + 1/2)^2 T / (8 n_t sin(T/2)))
// with T = 2*theta, optionally times the cubic skew factor
// 1 + (n - n_t + 1/2)^3 * T (2 + T cot(T/2)) / (96 n_t^2 sin(T/2)),
// phases e^{i n (phi - pi/2)}, renormalized on the truncated grid.
FieldState phi_theta_gaussian(const PulseSpec& spec, bool with_cubic);

// closed-form mean photon number prediction for the half-pi ancilla case
double mean_n_prediction(int n_pi);

// predicted width of the fixed-point number distribution
double width_prediction(double rotation_angle, double n_bar);

struct PhiTwoResult {
    FieldState state;  // normalized companion state orthogonal to phi_one
    double norm2_raw;  // squared norm before normalization (~ theta sin(theta) / n)
};

// orthogonal companion built from the diagonal blocks only:
//   raw = (s/c)(1 + U_ee)|phi_one> - (c/s)(1 - U_gg)|phi_one>
PhiTwoResult phi_two(const PulseSpec& spec, const FieldState& phi_one, const JcmBlocks& b);

// width-matched squeezed stand-in for the exact-from-ground states of the
// external literature: mean n_bar, var_n = n_bar sin(T)/T solved by bisection.
// rotation_angle == pi is rejected (target width collapses).
FieldState transcoherent_surrogate(double rotation_angle, double n_bar, int D);

} // namespace qpulse
