#include "qpulse/recycler.hpp"

#include <cmath>
#include <numbers>

namespace qpulse {

namespace {

constexpr double kPi = std::numbers::pi;

// (a U_gg + b U_ge) M: row n picks up the stripe term from row n-1, where the
// shift operators carry the -i of the interaction picture
Eigen::MatrixXcd left_g(cd a, cd b, const JcmBlocks& blk, const Eigen::MatrixXcd& m) {
    const int D = blk.dim();
    Eigen::MatrixXcd out(D, m.cols());
    const cd mi(0.0, -1.0);
    out.row(0) = a * blk.u_gg[0] * m.row(0);
    for (int n = 1; n < D; ++n)
        out.row(n) = a * blk.u_gg[n] * m.row(n) + b * mi * blk.u_ge[n - 1] * m.row(n - 1);
    return out;
}

// (a U_eg + b U_ee) M: row n picks up the stripe term from row n+1
Eigen::MatrixXcd left_e(cd a, cd b, const JcmBlocks& blk, const Eigen::MatrixXcd& m) {
    const int D = blk.dim();
    Eigen::MatrixXcd out(D, m.cols());
    const cd mi(0.0, -1.0);
    for (int n = 0; n + 1 < D; ++n)
        out.row(n) = a * mi * blk.u_ge[n] * m.row(n + 1) + b * blk.u_ee[n] * m.row(n);
    out.row(D - 1) = b * blk.u_ee[D - 1] * m.row(D - 1);
    return out;
}

} // namespace

void AncillaSpec::validate() const {
    if (!(lambda >= 0.0) || lambda >= 0.5)
        throw std::invalid_argument("lambda must lie in [0, 1/2)");
    if (!(theta > 0.0) || theta >= kPi)
        throw DegenerateAncilla("ancilla theta must lie in (0, pi)");
    if (!std::isfinite(phi)) throw std::invalid_argument("phi must be finite");
}

FieldDensity ancilla_channel(const FieldDensity& rho_f, const AncillaSpec& anc,
                             const JcmBlocks& b) {
    anc.validate();
    const int D = rho_f.dim();
    if (b.dim() != D) throw std::invalid_argument("block/density dimension mismatch");
    const double c = std::cos(anc.theta / 2.0), s = std::sin(anc.theta / 2.0);
    const cd eip = std::exp(cd(0.0, anc.phi));

    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(D, D);
    struct Branch {
        cd wg, we;
        double weight;
    };
    const Branch branches[2] = {{c, s * eip, 1.0 - anc.lambda}, {s, -c * eip, anc.lambda}};
    for (const auto& br : branches) {
        if (br.weight == 0.0) continue;
        // K rho K^dag as left(left(rho)^dag)^dag for both Kraus operators
        Eigen::MatrixXcd half = left_g(br.wg, br.we, b, rho_f.mat);
        out += br.weight * left_g(br.wg, br.we, b, half.adjoint()).adjoint();
        half = left_e(br.wg, br.we, b, rho_f.mat);
        out += br.weight * left_e(br.wg, br.we, b, half.adjoint()).adjoint();
    }
    const double top = out(D - 1, D - 1).real();
    if (top >= 1e-8)
        throw TruncationError("ancilla_channel: top-level mass " + std::to_string(top) +
                              " after interaction; enlarge the field dimension");
    return FieldDensity{std::move(out)};
}

ConvergenceResult iterate(const FieldDensity& rho0, const AncillaSpec& anc,
                          const JcmBlocks& b, int max_iters, double tol,
                          const FieldState* target) {
    anc.validate();
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");
    FieldState fallback_target;
    if (!target) {
        // reconstruct the matching fixed-point state from the pulse area
        const int n_t = static_cast<int>(std::lround(std::pow(anc.theta / b.gt, 2.0)));
        PulseSpec spec{anc.theta, anc.phi, std::max(1, n_t), rho0.dim()};
        fallback_target = phi_theta(spec);
        target = &fallback_target;
    }

    ConvergenceResult res;
    res.rho = rho0;
    res.trace.reserve(std::min(max_iters, 256));
    for (int it = 1; it <= max_iters; ++it) {
        FieldDensity next = ancilla_channel(res.rho, anc, b);
        const double step = trace_distance(next, res.rho);
        const StateMoments mom = moments(next);
        res.rho = std::move(next);
        res.trace.push_back(TraceRecord{it, fidelity(*target, res.rho), mom.mean_n,
                                        mom.purity, step});
        res.iterations = it;
        res.last_step = step;
        if (step < tol) {
            res.converged = true;
            break;
        }
    }
    return res;
}

FieldDensity mixed_fixed_point(const AncillaSpec& anc, const PulseSpec& spec) {
    anc.validate();
    spec.validate();
    const FieldState phi1 = phi_theta(spec);
    if (anc.lambda == 0.0) return projector(phi1);
    const JcmBlocks b = build_blocks(spec.gT(), phi1.dim());
    const FieldState phi2 = phi_two(spec, phi1, b).state;
    return FieldDensity{(1.0 - anc.lambda) * (phi1.amps * phi1.amps.adjoint()) +
                        anc.lambda * (phi2.amps * phi2.amps.adjoint())};
}

} // namespace qpulse
