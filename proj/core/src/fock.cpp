#include "qpulse/fock.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace qpulse {

namespace {

void check_tail(const Eigen::VectorXcd& amps, double tail_tol, const char* what) {
    const int D = static_cast<int>(amps.size());
    const double top = std::norm(amps[D - 1]);
    if (top >= tail_tol)
        throw TruncationError(std::string(what) + ": top-level mass " + std::to_string(top) +
                              " exceeds tolerance " + std::to_string(tail_tol));
}

} // namespace

FieldState normalized(Eigen::VectorXcd amps) {
    if (amps.size() < 2) throw std::invalid_argument("field dimension must be >= 2");
    const double n = amps.norm();
    if (!(n > 0.0)) throw std::invalid_argument("cannot normalize a zero field vector");
    amps /= n;
    return FieldState{std::move(amps)};
}

FieldState number_state(int n, int D) {
    if (D < 2) throw std::invalid_argument("field dimension must be >= 2");
    if (n < 0 || n >= D) throw std::out_of_range("number_state index outside [0, D)");
    Eigen::VectorXcd a = Eigen::VectorXcd::Zero(D);
    a[n] = 1.0;
    return FieldState{std::move(a)};
}

FieldState coherent_state(cd alpha, int D, double tail_tol) {
    if (D < 2) throw std::invalid_argument("field dimension must be >= 2");
    Eigen::VectorXcd a(D);
    a[0] = 1.0;
    for (int n = 0; n + 1 < D; ++n) a[n + 1] = a[n] * alpha / std::sqrt(double(n + 1));
    a /= a.norm();
    check_tail(a, tail_tol, "coherent_state");
    return FieldState{std::move(a)};
}

FieldState squeezed_state(cd alpha, double r, int D, double tail_tol) {
    if (D < 2) throw std::invalid_argument("field dimension must be >= 2");
    // amplitudes of D(alpha)S(r)|0>:  mu sqrt(n+1) c_{n+1} + nu sqrt(n) c_{n-1} = gamma c_n
    // with mu = cosh r, nu = sinh r, gamma = mu alpha + nu conj(alpha)
    const double mu = std::cosh(r), nu = std::sinh(r);
    const cd gamma = mu * alpha + nu * std::conj(alpha);
    Eigen::VectorXcd c(D);
    c[0] = 1.0;
    c[1] = gamma / mu;
    for (int n = 1; n + 1 < D; ++n)
        c[n + 1] = (gamma * c[n] - nu * std::sqrt(double(n)) * c[n - 1]) / (mu * std::sqrt(double(n + 1)));
    c /= c.norm();
    check_tail(c, tail_tol, "squeezed_state");
    return FieldState{std::move(c)};
}

FieldDensity projector(const FieldState& s) {
    return FieldDensity{s.amps * s.amps.adjoint()};
}

StateMoments moments(const FieldState& s) {
    const int D = s.dim();
    double m1 = 0, m2 = 0;
    for (int n = 0; n < D; ++n) {
        const double p = std::norm(s.amps[n]);
        m1 += n * p;
        m2 += double(n) * n * p;
    }
    return StateMoments{m1, m2 - m1 * m1, 1.0};
}

StateMoments moments(const FieldDensity& rho) {
    const int D = rho.dim();
    double m1 = 0, m2 = 0;
    for (int n = 0; n < D; ++n) {
        const double p = rho.mat(n, n).real();
        m1 += n * p;
        m2 += double(n) * n * p;
    }
    // Tr rho^2 equals the squared Frobenius norm for Hermitian rho
    const double purity = rho.mat.squaredNorm();
    return StateMoments{m1, m2 - m1 * m1, purity};
}

double fidelity(const FieldState& psi, const FieldDensity& rho) {
    const cd v = psi.amps.adjoint() * rho.mat * psi.amps;
    return v.real();
}

double trace_distance(const FieldDensity& a, const FieldDensity& b) {
    Eigen::MatrixXcd d = a.mat - b.mat;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double top_occupancy(const FieldState& s) { return std::norm(s.amps[s.dim() - 1]); }

double top_occupancy(const FieldDensity& rho) {
    return rho.mat(rho.dim() - 1, rho.dim() - 1).real();
}

} // namespace qpulse
