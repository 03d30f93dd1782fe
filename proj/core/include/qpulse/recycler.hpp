#pragma once

#include <vector>

#include "qpulse/fock.hpp"
#include "qpulse/jcm.hpp"
#include "qpulse/optimal.hpp"

namespace qpulse {

// ancilla prepared (mostly) along (theta, phi); lambda is the weight of the
// orthogonal-state preparation error, lambda in [0, 1/2)
struct AncillaSpec {
    double theta;
    double phi;
    double lambda = 0.0;

    void validate() const;
};

// one interaction: rho' = Tr_a[ U (rho (x) rho_a) U^dagger ], applied through
// the four Kraus-style stripe operators (no joint density is formed)
FieldDensity ancilla_channel(const FieldDensity& rho_f, const AncillaSpec& anc,
                             const JcmBlocks& b);

struct TraceRecord {
    int iteration;
    double fidelity;
    double mean_n;
    double purity;
    double step; // trace distance to the previous iterate
};

struct ConvergenceResult {
    FieldDensity rho;
    std::vector<TraceRecord> trace;
    bool converged = false;
    int iterations = 0;
    double last_step = 0.0;
};

// repeat ancilla_channel until the successive trace distance drops below tol
// or max_iters is hit (flagged, not thrown). fidelity is recorded against
// `target` when given, else against the recursion state matching (anc, blocks).
ConvergenceResult iterate(const FieldDensity& rho0, const AncillaSpec& anc,
                          const JcmBlocks& b, int max_iters = 2000, double tol = 1e-10,
                          const FieldState* target = nullptr);

// leading-order stationary density of the error-weighted ancilla stream:
// (1-lambda)|phi_1><phi_1| + lambda|phi_2><phi_2|
FieldDensity mixed_fixed_point(const AncillaSpec& anc, const PulseSpec& spec);

} // namespace qpulse
