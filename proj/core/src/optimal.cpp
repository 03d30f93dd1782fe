#include "qpulse/optimal.hpp"

#include <cmath>
#include <numbers>

namespace qpulse {

namespace {
constexpr double kPi = std::numbers::pi;
}

double PulseSpec::gT() const { return theta / std::sqrt(double(n_target)); }

int PulseSpec::support_end() const {
    // the recursion factor cot(gT sqrt(n+1)/2) first vanishes when
    // gT sqrt(n+1) = pi, so the last populated level is ceil((pi/gT)^2) - 1
    const double k = kPi / gT();
    return static_cast<int>(std::ceil(k * k - 1e-9)) - 1;
}

int PulseSpec::default_dim() const {
    if (theta == 0.0) return n_target + 2; // degenerate: support is the vacuum alone
    if (std::abs(theta - kPi / 2.0) < 1e-12) return 4 * n_target + 8;
    return support_end() + 3;
}

void PulseSpec::validate() const {
    if (n_target < 1) throw std::invalid_argument("n_target must be >= 1");
    // theta = 0 is tolerated here; phi_theta reports it through the degenerate flag
    if (!(theta >= 0.0) || theta >= kPi)
        throw DegenerateAncilla("theta must lie in [0, pi)");
    if (!std::isfinite(phi)) throw std::invalid_argument("phi must be finite");
    if (dim != 0 && dim < 2) throw std::invalid_argument("dim must be 0 (auto) or >= 2");
}

FieldState phi_theta(const PulseSpec& spec, bool* degenerate_flag) {
    spec.validate();
    if (degenerate_flag) *degenerate_flag = false;
    const int D = spec.effective_dim();
    if (spec.theta == 0.0) {
        // pulse does nothing; every field state is a fixed point and the
        // recursion collapses to the vacuum
        if (degenerate_flag) *degenerate_flag = true;
        return number_state(0, D);
    }
    const int n_max = spec.support_end();
    if (D <= n_max)
        throw DimensionTooSmall("dim " + std::to_string(D) + " cannot hold support 0.." +
                                std::to_string(n_max) + " (need at least " +
                                std::to_string(n_max + 1) + ")");
    const double gT = spec.gT();
    const double t = std::tan(spec.theta / 2.0);
    // accumulate log-magnitudes; every cot factor is positive on the support
    Eigen::VectorXd logmag(n_max + 1);
    logmag[0] = 0.0;
    for (int n = 0; n < n_max; ++n) {
        const double half = 0.5 * gT * std::sqrt(double(n + 1));
        logmag[n + 1] = logmag[n] + std::log(t) + std::log(std::cos(half) / std::sin(half));
    }
    const double peak = logmag.maxCoeff();
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(D);
    const double arg = spec.phi - kPi / 2.0; // each -i e^{i phi} contributes this phase
    for (int n = 0; n <= n_max; ++n)
        amps[n] = std::exp(logmag[n] - peak) * std::exp(cd(0.0, arg * n));
    return normalized(std::move(amps));
}

FieldState phi_theta_gaussian(const PulseSpec& spec, bool with_cubic) {
    spec.validate();
    if (spec.theta == 0.0) throw DegenerateAncilla("gaussian surrogate undefined at theta = 0");
    const int D = spec.effective_dim();
    const double T = spec.rotation_angle();
    const double nt = double(spec.n_target);
    const double s_half = std::sin(T / 2.0);
    const double inv_width = T / (8.0 * nt * s_half);
    const double kappa = T * (2.0 + T / std::tan(T / 2.0)) / (96.0 * nt * nt * s_half);
    Eigen::VectorXcd amps(D);
    const double arg = spec.phi - kPi / 2.0;
    for (int n = 0; n < D; ++n) {
        const double x = n - nt + 0.5;
        double mag = std::exp(-x * x * inv_width);
        if (with_cubic) mag *= 1.0 + kappa * x * x * x;
        amps[n] = mag * std::exp(cd(0.0, arg * n));
    }
    return normalized(std::move(amps));
}

double mean_n_prediction(int n_pi) {
    const double n = double(n_pi);
    return n - 0.5 + (2.0 + kPi) / (8.0 * std::sqrt(n));
}

double width_prediction(double rotation_angle, double n_bar) {
    return std::sqrt(2.0 * n_bar * std::sin(rotation_angle / 2.0) / rotation_angle);
}

PhiTwoResult phi_two(const PulseSpec& spec, const FieldState& phi_one, const JcmBlocks& b) {
    spec.validate();
    if (spec.theta == 0.0)
        throw DegenerateAncilla("companion state needs theta strictly inside (0, pi)");
    const int D = phi_one.dim();
    if (b.dim() != D) throw std::invalid_argument("block/state dimension mismatch");
    const double s = std::sin(spec.theta / 2.0), c = std::cos(spec.theta / 2.0);
    Eigen::VectorXcd raw(D);
    for (int n = 0; n < D; ++n)
        raw[n] = ((s / c) * (1.0 + b.u_ee[n]) - (c / s) * (1.0 - b.u_gg[n])) * phi_one.amps[n];
    const double norm2 = raw.squaredNorm();
    return PhiTwoResult{normalized(std::move(raw)), norm2};
}

FieldState transcoherent_surrogate(double rotation_angle, double n_bar, int D) {
    if (!(n_bar > 0.0)) throw std::invalid_argument("n_bar must be positive");
    if (std::abs(rotation_angle - kPi) < 1e-12)
        throw DegenerateAncilla("target width collapses at rotation angle pi");
    if (!(rotation_angle > 0.0) || rotation_angle > kPi)
        throw DegenerateAncilla("rotation angle must lie in (0, pi]");
    const double target_var = n_bar * std::sin(rotation_angle) / rotation_angle;

    auto var_at = [&](double r) {
        // alpha(r) keeps the mean photon number exact: alpha^2 + sinh^2 r = n_bar
        const double sh2 = std::sinh(r) * std::sinh(r);
        if (sh2 >= n_bar) return -1.0; // unreachable for the bracketing below
        const double alpha = std::sqrt(n_bar - sh2);
        return moments(squeezed_state(alpha, r, D, 1e-6)).var_n;
    };

    // var(0) = n_bar > target_var; var decreases with r until sinh^2 r -> n_bar
    double lo = 0.0, hi = 0.25;
    while (var_at(hi) > target_var) {
        lo = hi;
        hi *= 2.0;
        if (std::sinh(hi) * std::sinh(hi) >= n_bar)
            throw DegenerateAncilla("cannot reach target width at this n_bar");
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double v = var_at(mid);
        if (std::abs(v - target_var) < 1e-6 * target_var) {
            lo = hi = mid;
            break;
        }
        (v > target_var ? lo : hi) = mid;
    }
    const double r = 0.5 * (lo + hi);
    const double alpha = std::sqrt(n_bar - std::sinh(r) * std::sinh(r));
    return squeezed_state(alpha, r, D);
}

} // namespace qpulse
