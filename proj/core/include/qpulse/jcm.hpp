#pragma once

#include <Eigen/Dense>

#include "qpulse/fock.hpp"

namespace qpulse {

// resonant atom-field evolution blocks at fixed pulse area gt, stored as
// the diagonal / single-stripe vectors they are:
//   u_gg[n] = cos(gt sqrt(n))      (diagonal, ground sector)
//   u_ee[n] = cos(gt sqrt(n+1))    (diagonal, excited sector)
//   u_ge[n] = sin(gt sqrt(n+1))    amplitude of |n> -> |n+1| (times -i)
//   u_eg[n] = sin(gt sqrt(n))      amplitude of |n> -> |n-1| (times -i), u_eg[0]=0
struct JcmBlocks {
    Eigen::VectorXd u_gg, u_ee, u_ge, u_eg;
    double gt = 0.0;

    int dim() const { return static_cast<int>(u_gg.size()); }
};

JcmBlocks build_blocks(double g_t, int D);

// joint pure state, block layout (g-block, e-block)
struct JointState {
    Eigen::VectorXcd g_block, e_block;

    int dim() const { return static_cast<int>(g_block.size()); }
    double norm() const;
};

JointState joint_product(const FieldState& field, const Eigen::Vector2cd& atom);
JointState evolve_joint(const JcmBlocks& b, const JointState& psi);

// 2D x 2D joint density in (g-block, e-block) layout; U rho U^dagger.
// O(D^2) via the stripe structure; exists chiefly as the channel's test oracle.
Eigen::MatrixXcd joint_density(const FieldDensity& rho_f, const Eigen::Matrix2cd& rho_a);
Eigen::MatrixXcd evolve_joint_density(const JcmBlocks& b, const Eigen::MatrixXcd& rho_joint);

FieldDensity trace_out_atom(const Eigen::MatrixXcd& rho_joint);
Eigen::Matrix2cd trace_out_field(const Eigen::MatrixXcd& rho_joint);

} // namespace qpulse
