#pragma once

#include "qpulse/optimal.hpp"

namespace qpulse {

// perturbative-identity checks: every measured value comes from exact linear
// algebra, every predicted value from the closed form -- no shared code path.

struct MeasuredPredicted {
    double measured = 0.0;
    double predicted = 0.0;

    double abs_dev() const { return std::abs(measured - predicted); }
    double rel_dev() const { return std::abs(measured / predicted - 1.0); }
};

// amplitudes of the evolved sector states against the leading-order forms:
// survival -(1 - theta sin(theta)/(2n)), transition sqrt(theta sin(theta)/n)
struct SectorAmplitudeReport {
    MeasuredPredicted survival_first;    // <phi_1, v2'| U |phi_1, v2> (signed, real part)
    MeasuredPredicted transition_first;  // |<phi_2, v1'| U |phi_1, v2>|
    MeasuredPredicted survival_second;   // <phi_2, v1'| U |phi_2, v1> (signed, real part)
    MeasuredPredicted transition_second; // |<phi_1, v2'| U |phi_2, v1>|
    double four_probability_sum = 0.0;   // unitarity budget of the four amplitudes
    double norm2_second_raw = 0.0;       // companion-state raw norm^2 (measured)
    double norm2_second_predicted = 0.0; // theta sin(theta) / n
};

SectorAmplitudeReport verify_sector_amplitudes(const PulseSpec& spec);

// diagonal gap <phi_1|(U_gg - U_ee)|phi_1> vs theta sin(theta)/(2n);
// the overload with an explicit field measures the same gap on that state
MeasuredPredicted verify_diagonal_gap(const PulseSpec& spec);
MeasuredPredicted verify_diagonal_gap(const PulseSpec& spec, const FieldState& field);

// the two commutators with the diagonal part of the interaction, formed as
// explicit matrices, projected onto the sector states
struct CommutatorReport {
    MeasuredPredicted diagonal_projection; // vs -theta sin(theta)/(2n)
    MeasuredPredicted cross_projection;    // vs +sqrt(theta sin(theta)/n)
    double stripe_max = 0.0;               // largest |n+-1><n| element
    double off_stripe_max = 0.0;           // largest element off that stripe
};

CommutatorReport verify_commutator_projections(const PulseSpec& spec);

// squared norm of U|phi_2, v2> - |phi_2> (x) R|v2>, R the ideal rotation;
// decays like 1/n (state-level quantity, independent of any mixing weight)
double rotated_product_residual(const PulseSpec& spec);

} // namespace qpulse
