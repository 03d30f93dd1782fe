#pragma once

#include <cstdint>
#include <vector>

#include "qpulse/fock.hpp"
#include "qpulse/jcm.hpp"

namespace qpulse {

using QubitState = Eigen::Vector2cd;

// |v1> = cos(theta/2)|g> + e^{i phi} sin(theta/2)|e>, and its Bloch antipode
QubitState ancilla_state(double theta, double phi);
QubitState ancilla_orthogonal(double theta, double phi);

// rotation by `angle` about an equatorial axis; the axis azimuth is resolved
// at construction against the required |v1> -> |v1'> mapping
struct RotationTarget {
    double angle = 0.0;
    double axis_azimuth = 0.0;
    Eigen::Matrix2cd matrix = Eigen::Matrix2cd::Identity();
};

RotationTarget ideal_rotation(double angle, double phi);

// 1 - <psi_ideal| rho_atom |psi_ideal> after one interaction at blocks' pulse area
double gate_error(const FieldState& field, const QubitState& atom,
                  const RotationTarget& target, const JcmBlocks& b);
double gate_error(const FieldDensity& field, const QubitState& atom,
                  const RotationTarget& target, const JcmBlocks& b);

// uniform Bloch sphere: cos(colatitude) ~ U[-1,1], azimuth ~ U[0,2pi),
// mt19937_64 with (x >> 11) * 2^-53 doubles for cross-platform determinism
std::vector<QubitState> random_bloch_ensemble(int count, std::uint64_t seed);

struct ErrorEnsembleReport {
    std::vector<double> errors; // per atom, input order
    double min = 0, max = 0, mean = 0;
    double p10 = 0, p25 = 0, p75 = 0, p90 = 0; // linear-interpolation percentiles
    std::uint64_t seed = 0;
};

ErrorEnsembleReport ensemble_errors(const FieldState& field, const RotationTarget& target,
                                    const JcmBlocks& b, const std::vector<QubitState>& ensemble,
                                    std::uint64_t seed = 0);
ErrorEnsembleReport ensemble_errors(const FieldDensity& field, const RotationTarget& target,
                                    const JcmBlocks& b, const std::vector<QubitState>& ensemble,
                                    std::uint64_t seed = 0);

struct SweepRow {
    double r;
    ErrorEnsembleReport report;
    double ground_error; // error when the atom starts in |g>
};

// one squeezed state per r (alpha = sqrt(n_bar)), shared ensemble, shared pulse
// area; rows ordered by the r grid regardless of the worker schedule
std::vector<SweepRow> squeeze_sweep(double n_bar, double rotation_angle, double phi,
                                    const std::vector<double>& r_grid,
                                    const std::vector<QubitState>& ensemble,
                                    const JcmBlocks& b, int D, std::uint64_t seed,
                                    int threads = 1);

// closed-form mixed-stream error budget for the half-pi ancilla case,
// pi/(6 n) + lambda * 13 pi/(48 n) with n the fixed-point state's mean photon number
double mixed_error_budget(double lambda, int n_pi);

} // namespace qpulse
