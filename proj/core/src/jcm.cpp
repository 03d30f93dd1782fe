#include "qpulse/jcm.hpp"

#include <cmath>
#include <stdexcept>

namespace qpulse {

JcmBlocks build_blocks(double g_t, int D) {
    if (D < 2) throw std::invalid_argument("field dimension must be >= 2");
    JcmBlocks b;
    b.gt = g_t;
    b.u_gg.resize(D);
    b.u_ee.resize(D);
    b.u_ge.resize(D);
    b.u_eg.resize(D);
    for (int n = 0; n < D; ++n) {
        const double rn = std::sqrt(double(n));
        const double rn1 = std::sqrt(double(n + 1));
        b.u_gg[n] = std::cos(g_t * rn);
        b.u_ee[n] = std::cos(g_t * rn1);
        b.u_ge[n] = std::sin(g_t * rn1);
        b.u_eg[n] = std::sin(g_t * rn);
    }
    return b;
}

double JointState::norm() const {
    return std::sqrt(g_block.squaredNorm() + e_block.squaredNorm());
}

JointState joint_product(const FieldState& field, const Eigen::Vector2cd& atom) {
    JointState js;
    js.g_block = atom[0] * field.amps;
    js.e_block = atom[1] * field.amps;
    return js;
}

JointState evolve_joint(const JcmBlocks& b, const JointState& in) {
    const int D = static_cast<int>(in.g_block.size());
    if (b.dim() != D) throw std::invalid_argument("block/state dimension mismatch");
    JointState out;
    out.g_block.resize(D);
    out.e_block.resize(D);
    const cd mi(0.0, -1.0);
    out.g_block[0] = b.u_gg[0] * in.g_block[0];
    for (int n = 1; n < D; ++n)
        out.g_block[n] = b.u_gg[n] * in.g_block[n] + mi * b.u_ge[n - 1] * in.e_block[n - 1];
    for (int n = 0; n + 1 < D; ++n)
        out.e_block[n] = b.u_ee[n] * in.e_block[n] + mi * b.u_ge[n] * in.g_block[n + 1];
    // the top excited level has no partner inside the truncation: the sine
    // coupling to |g, D> is dropped, the cosine survival term is kept
    out.e_block[D - 1] = b.u_ee[D - 1] * in.e_block[D - 1];
    return out;
}

Eigen::MatrixXcd joint_density(const FieldDensity& field, const Eigen::Matrix2cd& atom) {
    const int D = field.dim();
    Eigen::MatrixXcd full(2 * D, 2 * D);
    full.topLeftCorner(D, D) = atom(0, 0) * field.mat;
    full.topRightCorner(D, D) = atom(0, 1) * field.mat;
    full.bottomLeftCorner(D, D) = atom(1, 0) * field.mat;
    full.bottomRightCorner(D, D) = atom(1, 1) * field.mat;
    return full;
}

Eigen::MatrixXcd evolve_joint_density(const JcmBlocks& b, const Eigen::MatrixXcd& rho) {
    const int D = b.dim();
    if (rho.rows() != 2 * D || rho.cols() != 2 * D)
        throw std::invalid_argument("joint density must be 2D x 2D");
    // apply U column-block-wise, then again on the adjoint: U rho U^dag
    auto left_apply = [&](const Eigen::MatrixXcd& m) {
        Eigen::MatrixXcd out(2 * D, m.cols());
        const cd mi(0.0, -1.0);
        for (int c = 0; c < m.cols(); ++c) {
            out(0, c) = b.u_gg[0] * m(0, c);
            for (int n = 1; n < D; ++n)
                out(n, c) = b.u_gg[n] * m(n, c) + mi * b.u_ge[n - 1] * m(D + n - 1, c);
            for (int n = 0; n + 1 < D; ++n)
                out(D + n, c) = b.u_ee[n] * m(D + n, c) + mi * b.u_ge[n] * m(n + 1, c);
            out(2 * D - 1, c) = b.u_ee[D - 1] * m(2 * D - 1, c);
        }
        return out;
    };
    Eigen::MatrixXcd half = left_apply(rho);
    return left_apply(half.adjoint()).adjoint();
}

FieldDensity trace_out_atom(const Eigen::MatrixXcd& joint) {
    const int D = static_cast<int>(joint.rows()) / 2;
    return FieldDensity{joint.topLeftCorner(D, D) + joint.bottomRightCorner(D, D)};
}

Eigen::Matrix2cd trace_out_field(const Eigen::MatrixXcd& joint) {
    const int D = static_cast<int>(joint.rows()) / 2;
    Eigen::Matrix2cd at;
    at(0, 0) = joint.topLeftCorner(D, D).trace();
    at(0, 1) = joint.topRightCorner(D, D).trace();
    at(1, 0) = joint.bottomLeftCorner(D, D).trace();
    at(1, 1) = joint.bottomRightCorner(D, D).trace();
    return at;
}

} // namespace qpulse
