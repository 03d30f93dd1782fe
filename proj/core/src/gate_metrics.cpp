#include "qpulse/gate_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "qpulse/optimal.hpp"

namespace qpulse {

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::Matrix2cd equatorial_rotation(double angle, double azimuth) {
    const double ch = std::cos(angle / 2.0), sh = std::sin(angle / 2.0);
    const cd mi(0.0, -1.0);
    Eigen::Matrix2cd r;
    r(0, 0) = ch;
    r(0, 1) = mi * sh * std::exp(cd(0.0, -azimuth));
    r(1, 0) = mi * sh * std::exp(cd(0.0, azimuth));
    r(1, 1) = ch;
    return r;
}

bool maps_up_to_phase(const Eigen::Matrix2cd& r, const QubitState& in, const QubitState& out,
                      double tol) {
    const QubitState w = r * in;
    const cd overlap = out.dot(w); // <out|w|; |overlap| = 1 iff aligned
    return (w - overlap * out).norm() < tol && std::abs(std::abs(overlap) - 1.0) < tol;
}

double percentile(const std::vector<double>& sorted, double q) {
    const int n = static_cast<int>(sorted.size());
    if (n == 1) return sorted[0];
    const double idx = q * (n - 1);
    const int lo = static_cast<int>(std::floor(idx));
    const int hi = std::min(lo + 1, n - 1);
    const double f = idx - lo;
    return sorted[lo] * (1.0 - f) + sorted[hi] * f;
}

ErrorEnsembleReport summarize(std::vector<double> errors, std::uint64_t seed) {
    ErrorEnsembleReport rep;
    rep.seed = seed;
    if (errors.empty()) throw std::invalid_argument("ensemble must not be empty");
    std::vector<double> sorted = errors;
    std::sort(sorted.begin(), sorted.end());
    rep.min = sorted.front();
    rep.max = sorted.back();
    double acc = 0.0;
    for (double e : sorted) acc += e;
    rep.mean = acc / sorted.size();
    rep.p10 = percentile(sorted, 0.10);
    rep.p25 = percentile(sorted, 0.25);
    rep.p75 = percentile(sorted, 0.75);
    rep.p90 = percentile(sorted, 0.90);
    rep.errors = std::move(errors);
    return rep;
}

} // namespace

QubitState ancilla_state(double theta, double phi) {
    return QubitState(std::cos(theta / 2.0), std::sin(theta / 2.0) * std::exp(cd(0.0, phi)));
}

QubitState ancilla_orthogonal(double theta, double phi) {
    return QubitState(std::sin(theta / 2.0), -std::cos(theta / 2.0) * std::exp(cd(0.0, phi)));
}

RotationTarget ideal_rotation(double angle, double phi) {
    RotationTarget t;
    t.angle = angle;
    // the rotation must take the ancilla |v1> to its mirror |v1'> (second
    // component sign-flipped); the axis azimuth candidate is phi - pi/2 with
    // the opposite-handed fallback phi + pi/2
    const QubitState v1 = ancilla_state(angle / 2.0, phi);
    QubitState v1p = v1;
    v1p[1] = -v1p[1];
    for (double azimuth : {phi - kPi / 2.0, phi + kPi / 2.0}) {
        const Eigen::Matrix2cd r = equatorial_rotation(angle, azimuth);
        if (maps_up_to_phase(r, v1, v1p, 1e-12)) {
            t.axis_azimuth = azimuth;
            t.matrix = r;
            return t;
        }
    }
    throw std::logic_error("no equatorial axis reproduces the required ancilla mapping");
}

double gate_error(const FieldState& field, const QubitState& atom, const RotationTarget& target,
                  const JcmBlocks& b) {
    const JointState evolved = evolve_joint(b, joint_product(field, atom));
    Eigen::Matrix2cd rho_at;
    rho_at(0, 0) = evolved.g_block.squaredNorm();
    rho_at(1, 1) = evolved.e_block.squaredNorm();
    rho_at(0, 1) = evolved.e_block.dot(evolved.g_block);
    rho_at(1, 0) = std::conj(rho_at(0, 1));
    const QubitState ideal = target.matrix * atom;
    const double overlap = (ideal.adjoint() * rho_at * ideal)(0, 0).real();
    return 1.0 - overlap;
}

double gate_error(const FieldDensity& field, const QubitState& atom, const RotationTarget& target,
                  const JcmBlocks& b) {
    const int D = field.dim();
    if (b.dim() != D) throw std::invalid_argument("block/density dimension mismatch");
    const cd mi(0.0, -1.0);
    // row-sparse forms of M_a = sum_s atom[s] U_{a s}; each row has <= 2 entries:
    //   M_g[n, n] = atom_g u_gg[n],   M_g[n, n-1] = atom_e (-i) u_ge[n-1]
    //   M_e[n, n] = atom_e u_ee[n],   M_e[n, n+1] = atom_g (-i) u_ge[n]
    struct Entry {
        int col;
        cd val;
    };
    auto row_of = [&](int a, int n, Entry out[2]) -> int {
        int cnt = 0;
        if (a == 0) {
            out[cnt++] = {n, atom[0] * b.u_gg[n]};
            if (n >= 1) out[cnt++] = {n - 1, atom[1] * mi * b.u_ge[n - 1]};
        } else {
            out[cnt++] = {n, atom[1] * b.u_ee[n]};
            if (n + 1 < D) out[cnt++] = {n + 1, atom[0] * mi * b.u_ge[n]};
        }
        return cnt;
    };
    Eigen::Matrix2cd rho_at = Eigen::Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a)
        for (int bb = 0; bb < 2; ++bb) {
            cd acc = 0.0;
            Entry ra[2], rb[2];
            for (int n = 0; n < D; ++n) {
                const int ca = row_of(a, n, ra);
                const int cb = row_of(bb, n, rb);
                for (int i = 0; i < ca; ++i)
                    for (int j = 0; j < cb; ++j)
                        acc += ra[i].val * field.mat(ra[i].col, rb[j].col) * std::conj(rb[j].val);
            }
            rho_at(a, bb) = acc;
        }
    const QubitState ideal = target.matrix * atom;
    const double overlap = (ideal.adjoint() * rho_at * ideal)(0, 0).real();
    return 1.0 - overlap;
}

std::vector<QubitState> random_bloch_ensemble(int count, std::uint64_t seed) {
    if (count < 1) throw std::invalid_argument("ensemble count must be >= 1");
    std::mt19937_64 eng(seed);
    auto unit = [&eng]() { return (eng() >> 11) * 0x1.0p-53; };
    std::vector<QubitState> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double ct = 2.0 * unit() - 1.0;
        const double ph = 2.0 * kPi * unit();
        const double t = std::acos(ct);
        out.emplace_back(std::cos(t / 2.0), std::sin(t / 2.0) * std::exp(cd(0.0, ph)));
    }
    return out;
}

ErrorEnsembleReport ensemble_errors(const FieldState& field, const RotationTarget& target,
                                    const JcmBlocks& b, const std::vector<QubitState>& ensemble,
                                    std::uint64_t seed) {
    std::vector<double> errors(ensemble.size());
    for (std::size_t i = 0; i < ensemble.size(); ++i)
        errors[i] = gate_error(field, ensemble[i], target, b);
    return summarize(std::move(errors), seed);
}

ErrorEnsembleReport ensemble_errors(const FieldDensity& field, const RotationTarget& target,
                                    const JcmBlocks& b, const std::vector<QubitState>& ensemble,
                                    std::uint64_t seed) {
    std::vector<double> errors(ensemble.size());
    for (std::size_t i = 0; i < ensemble.size(); ++i)
        errors[i] = gate_error(field, ensemble[i], target, b);
    return summarize(std::move(errors), seed);
}

std::vector<SweepRow> squeeze_sweep(double n_bar, double rotation_angle, double phi,
                                    const std::vector<double>& r_grid,
                                    const std::vector<QubitState>& ensemble, const JcmBlocks& b,
                                    int D, std::uint64_t seed, int threads) {
    if (r_grid.empty()) throw std::invalid_argument("r grid must not be empty");
    const RotationTarget target = ideal_rotation(rotation_angle, phi);
    const QubitState ground(1.0, 0.0);
    std::vector<SweepRow> rows(r_grid.size());

    auto run_point = [&](std::size_t i) {
        const FieldState fr = squeezed_state(std::sqrt(n_bar), r_grid[i], D);
        rows[i].r = r_grid[i];
        rows[i].report = ensemble_errors(fr, target, b, ensemble, seed);
        rows[i].ground_error = gate_error(fr, ground, target, b);
    };

    const int nthreads = std::max(1, std::min<int>(threads, static_cast<int>(r_grid.size())));
    if (nthreads == 1) {
        for (std::size_t i = 0; i < r_grid.size(); ++i) run_point(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int w = 0; w < nthreads; ++w)
            pool.emplace_back([&, w]() {
                for (std::size_t i = w; i < r_grid.size(); i += nthreads) run_point(i);
            });
        for (auto& th : pool) th.join();
    }
    return rows;
}

double mixed_error_budget(double lambda, int n_pi) {
    const PulseSpec spec{kPi / 2.0, kPi / 2.0, n_pi, 0};
    const double n_bar = moments(phi_theta(spec)).mean_n;
    return kPi / (6.0 * n_bar) + lambda * 13.0 * kPi / (48.0 * n_bar);
}

} // namespace qpulse
