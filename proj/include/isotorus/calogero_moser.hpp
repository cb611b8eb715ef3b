#ifndef ISOTORUS_CALOGERO_MOSER_HPP
#define ISOTORUS_CALOGERO_MOSER_HPP

// Elliptic Calogero-Moser system as an isomonodromic deformation on the torus.
//
// Quasi-periodic gauge:
//
//   L~(z) = P + i g sum_{j != k} x(q_j - q_k, z) E_jk
//   A~(z) = D + i g sum_{j != k} y(q_j - q_k, z) E_jk,
//   D     = i g diag( sum_{k != j} wp(q_j - q_k) )
//
// Periodic gauge, G = diag(x(q_j, z)):
//
//   L = G^-1 L~ G - G^-1 dG/dz
//   A = G^-1 A~ G + 2 pi i G^-1 dG/dtau   (total tau-derivative along the flow)
//
// Both satisfy 2 pi i dL/dtau + dA/dz = [L, A] along
//
//   2 pi i dq_j/dtau = p_j,  2 pi i dp_j/dtau = -g^2 sum_{k != j} wp'(q_j - q_k),
//
// the Hamiltonian flow of H = 1/2 sum p_j^2 + g^2/2 sum_{j != k} wp(q_j - q_k).

#include <isotorus/elliptic.hpp>
#include <isotorus/errors.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace isotorus
{

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

struct CMConfig
{
    int n = 2;
    cplx g{1.0, 0.0};
    TorusModulus tm{};
    TruncationConfig trunc{};
    // |x(q_j, z)| below this makes the periodic gauge singular.
    double gauge_tol = 1e-10;

    void validate() const
    {
        if (n < 1)
            throw std::invalid_argument("CMConfig: n must be >= 1");
        trunc.validate();
    }

    EllipticKernel kernel() const { return EllipticKernel(tm, trunc); }

    CMConfig with_tau(cplx tau) const
    {
        CMConfig c = *this;
        c.tm = TorusModulus(tau);
        return c;
    }
};

struct PhasePoint
{
    Vector q;
    Vector p;

    PhasePoint() = default;
    PhasePoint(Vector q_, Vector p_) : q(std::move(q_)), p(std::move(p_))
    {
        if (q.size() != p.size())
            throw std::invalid_argument("PhasePoint: q and p must have equal length");
    }

    // su(n) setting: centre-of-mass coordinates with sum q = sum p = 0.
    static PhasePoint traceless(Vector q_, Vector p_)
    {
        PhasePoint ph(std::move(q_), std::move(p_));
        if (ph.size() > 0) {
            ph.q.array() -= ph.q.mean();
            ph.p.array() -= ph.p.mean();
        }
        return ph;
    }

    int size() const { return static_cast<int>(q.size()); }
};

enum class Gauge
{
    quasi_periodic,
    periodic
};

struct LaxMatrices
{
    Matrix L;
    Matrix A;
    cplx z;
    Gauge gauge;
};

struct LocalExpansion
{
    Matrix residue;  // coefficient of 1/z
    Matrix constant; // coefficient of z^0
};

struct EquationsOfMotion
{
    Vector dq;
    Vector dp;
};

namespace detail
{

inline void check_size(const CMConfig &cfg, const PhasePoint &ph)
{
    cfg.validate();
    if (ph.size() != cfg.n)
        throw std::invalid_argument("phase point size does not match CMConfig::n");
}

inline std::string pair_name(int j, int k)
{
    return "q[" + std::to_string(j) + "]-q[" + std::to_string(k) + "]";
}

inline cplx separation(const EllipticKernel &k, const PhasePoint &ph, int j, int l)
{
    const cplx u = ph.q[j] - ph.q[l];
    const double d = k.lattice_distance(u);
    if (d < k.config().pole_radius)
        throw pole_proximity_error(pair_name(j, l), d);
    return u;
}

inline void check_spectral(const EllipticKernel &k, cplx z)
{
    const double d = k.lattice_distance(z);
    if (d < k.config().pole_radius)
        throw pole_proximity_error("z", d);
}

struct GaugeData
{
    Vector x;      // x(q_j, z)
    Vector log_dz; // d/dz log x(q_j, z)
    std::vector<LameJet> jets;
};

inline GaugeData gauge_data(const CMConfig &cfg, const EllipticKernel &k, const PhasePoint &ph,
                            cplx z)
{
    check_spectral(k, z);
    GaugeData out;
    out.x.resize(cfg.n);
    out.log_dz.resize(cfg.n);
    for (int j = 0; j < cfg.n; ++j) {
        const double d = k.lattice_distance(ph.q[j]);
        if (d < k.config().pole_radius)
            throw pole_proximity_error("q[" + std::to_string(j) + "]", d);
        // x(q_j, z) vanishes at z = q_j
        const cplx xj = k.lame_x(ph.q[j], z);
        if (!(std::abs(xj) > cfg.gauge_tol) || k.lattice_distance(z - ph.q[j]) < k.config().pole_radius)
            throw gauge_singularity_error(j, std::abs(xj));
        LameJet jet = k.lame(ph.q[j], z);
        out.x[j] = jet.x;
        out.log_dz[j] = jet.dx_dz / jet.x;
        out.jets.push_back(jet);
    }
    return out;
}

} // namespace detail

inline Matrix lax_L_quasi(const CMConfig &cfg, const PhasePoint &ph, cplx z)
{
    detail::check_size(cfg, ph);
    const EllipticKernel k = cfg.kernel();
    detail::check_spectral(k, z);
    const cplx ig = imag_unit * cfg.g;
    Matrix L = ph.p.asDiagonal();
    for (int j = 0; j < cfg.n; ++j)
        for (int l = 0; l < cfg.n; ++l)
            if (j != l)
                L(j, l) = ig * k.lame_x(detail::separation(k, ph, j, l), z);
    return L;
}

inline Vector cm_diagonal_potential(const CMConfig &cfg, const EllipticKernel &k,
                                    const PhasePoint &ph)
{
    Vector d = Vector::Zero(cfg.n);
    for (int j = 0; j < cfg.n; ++j)
        for (int l = 0; l < cfg.n; ++l)
            if (j != l)
                d[j] += k.wp(detail::separation(k, ph, j, l));
    return d;
}

inline Matrix lax_A_quasi(const CMConfig &cfg, const PhasePoint &ph, cplx z)
{
    detail::check_size(cfg, ph);
    const EllipticKernel k = cfg.kernel();
    detail::check_spectral(k, z);
    const cplx ig = imag_unit * cfg.g;
    Matrix A = (ig * cm_diagonal_potential(cfg, k, ph)).asDiagonal();
    for (int j = 0; j < cfg.n; ++j)
        for (int l = 0; l < cfg.n; ++l)
            if (j != l)
                A(j, l) = ig * k.lame(detail::separation(k, ph, j, l), z).dx_du;
    return A;
}

inline Matrix gauge_lame(const CMConfig &cfg, const PhasePoint &ph, cplx z)
{
    detail::check_size(cfg, ph);
    const EllipticKernel k = cfg.kernel();
    return detail::gauge_data(cfg, k, ph, z).x.asDiagonal();
}

inline Matrix lax_L_periodic(const CMConfig &cfg, const PhasePoint &ph, cplx z)
{
    detail::check_size(cfg, ph);
    const EllipticKernel k = cfg.kernel();
    const detail::GaugeData G = detail::gauge_data(cfg, k, ph, z);
    const cplx ig = imag_unit * cfg.g;
    Matrix L(cfg.n, cfg.n);
    for (int j = 0; j < cfg.n; ++j)
        for (int l = 0; l < cfg.n; ++l)
            L(j, l) = (j == l) ? ph.p[j] - G.log_dz[j]
                               : ig * k.lame_x(detail::separation(k, ph, j, l), z) * G.x[l] / G.x[j];
    return L;
}

inline Matrix lax_A_periodic(const CMConfig &cfg, const PhasePoint &ph, cplx z)
{
    detail::check_size(cfg, ph);
    const EllipticKernel k = cfg.kernel();
    const detail::GaugeData G = detail::gauge_data(cfg, k, ph, z);
    const cplx ig = imag_unit * cfg.g;
    const Vector D = ig * cm_diagonal_potential(cfg, k, ph);
    Matrix A(cfg.n, cfg.n);
    for (int j = 0; j < cfg.n; ++j)
        for (int l = 0; l < cfg.n; ++l) {
            if (j == l) {
                const LameJet &jet = G.jets[j];
                A(j, j) = D[j] + two_pi_i * jet.dx_dtau / jet.x + ph.p[j] * jet.dx_du / jet.x;
            } else {
                A(j, l) = ig * k.lame(detail::separation(k, ph, j, l), z).dx_du * G.x[l] / G.x[j];
            }
        }
    return A;
}

inline LaxMatrices lax_pair(const CMConfig &cfg, const PhasePoint &ph, cplx z, Gauge gauge)
{
    if (gauge == Gauge::quasi_periodic)
        return {lax_L_quasi(cfg, ph, z), lax_A_quasi(cfg, ph, z), z, gauge};
    return {lax_L_periodic(cfg, ph, z), lax_A_periodic(cfg, ph, z), z, gauge};
}

// Max-entry residuals, each divided by max(1, max-entry of the expected matrix).
struct QuasiPeriodicityReport
{
    double L_a_cycle = 0.0; // L~(z+1) - L~(z)
    double L_b_cycle = 0.0; // L~(z+tau) - e^{2 pi i Q} L~(z) e^{-2 pi i Q}
    double A_a_cycle = 0.0; // A~(z+1) - A~(z)
    double A_b_cycle = 0.0; // A~(z+tau) - [e^{2 pi i Q}(A~ + 2 pi i L~)e^{-2 pi i Q} - 2 pi i P]

    double max() const { return std::max({L_a_cycle, L_b_cycle, A_a_cycle, A_b_cycle}); }
};

inline QuasiPeriodicityReport quasi_periodicity_check(const CMConfig &cfg, const PhasePoint &ph,
                                                      cplx z)
{
    const cplx tau = cfg.tm.tau();
    const Matrix L = lax_L_quasi(cfg, ph, z);
    const Matrix A = lax_A_quasi(cfg, ph, z);
    const Matrix twist = (two_pi_i * ph.q).array().exp().matrix().asDiagonal();
    const Matrix untwist = (-two_pi_i * ph.q).array().exp().matrix().asDiagonal();
    const Matrix P = ph.p.asDiagonal();

    auto rel = [](const Matrix &got, const Matrix &expected) {
        return (got - expected).cwiseAbs().maxCoeff()
               / std::max(1.0, expected.cwiseAbs().maxCoeff());
    };
    QuasiPeriodicityReport r;
    r.L_a_cycle = rel(lax_L_quasi(cfg, ph, z + 1.0), L);
    r.L_b_cycle = rel(lax_L_quasi(cfg, ph, z + tau), twist * L * untwist);
    r.A_a_cycle = rel(lax_A_quasi(cfg, ph, z + 1.0), A);
    r.A_b_cycle = rel(lax_A_quasi(cfg, ph, z + tau), twist * (A + two_pi_i * L) * untwist - two_pi_i * P);
    return r;
}

inline LocalExpansion local_expansion(const CMConfig &cfg, const PhasePoint &ph)
{
    detail::check_size(cfg, ph);
    const EllipticKernel k = cfg.kernel();
    const cplx ig = imag_unit * cfg.g;
    LocalExpansion out;
    out.residue = -ig * (Matrix::Ones(cfg.n, cfg.n) - Matrix::Identity(cfg.n, cfg.n));
    out.constant = ph.p.asDiagonal();
    for (int j = 0; j < cfg.n; ++j)
        for (int l = 0; l < cfg.n; ++l)
            if (j != l)
                out.constant(j, l) = ig * k.rho(detail::separation(k, ph, j, l));
    return out;
}

struct ResidueEigen
{
    Matrix J;        // eigenvectors of sum_{j != k} E_jk as columns
    Eigen::VectorXd V; // matching eigenvalues (-1, ..., -1, n - 1)
};

inline ResidueEigen residue_eigen(int n)
{
    if (n < 2)
        throw std::invalid_argument("residue_eigen: n must be >= 2");
    ResidueEigen out;
    out.J = Matrix::Zero(n, n);
    out.V = Eigen::VectorXd::Constant(n, -1.0);
    for (int c = 0; c + 1 < n; ++c) {
        out.J(0, c) = -1.0;
        out.J(n - 1 - c, c) = 1.0;
    }
    out.J.col(n - 1).setOnes();
    out.V[n - 1] = n - 1.0;
    return out;
}

inline ResidueEigen residue_eigen(const CMConfig &cfg) { return residue_eigen(cfg.n); }

inline cplx hamiltonian_cm(const CMConfig &cfg, const PhasePoint &ph)
{
    detail::check_size(cfg, ph);
    const EllipticKernel k = cfg.kernel();
    cplx h{};
    for (int j = 0; j < cfg.n; ++j)
        h += ph.p[j] * ph.p[j] / 2.0;
    cplx pot{};
    for (int j = 0; j < cfg.n; ++j)
        for (int l = 0; l < cfg.n; ++l)
            if (j != l)
                pot += k.wp(detail::separation(k, ph, l, j));
    return h + cfg.g * cfg.g / 2.0 * pot;
}

// sum p_j^2 / 2 - m^2 sum_{roots a of A_{n-1}} wp(a . q); the roots are
// q_i - q_j for i != j. m^2 = -g^2/2 recovers hamiltonian_cm.
inline cplx hamiltonian_root_system(const CMConfig &cfg, const PhasePoint &ph, cplx mass_sq)
{
    detail::check_size(cfg, ph);
    const EllipticKernel k = cfg.kernel();
    cplx kinetic{};
    for (int j = 0; j < cfg.n; ++j)
        kinetic += ph.p[j] * ph.p[j] / 2.0;
    cplx pot{};
    for (int i = 0; i < cfg.n; ++i)
        for (int j = 0; j < cfg.n; ++j)
            if (i != j)
                pot += k.wp(detail::separation(k, ph, i, j));
    return kinetic - mass_sq * pot;
}

// Right-hand sides of 2 pi i dq/dtau and 2 pi i dp/dtau (equivalently d/dt in
// the isospectral picture): dq_j = p_j, dp_j = -dH/dq_j.
inline EquationsOfMotion eom(const CMConfig &cfg, const PhasePoint &ph)
{
    detail::check_size(cfg, ph);
    const EllipticKernel k = cfg.kernel();
    EquationsOfMotion out{ph.p, Vector::Zero(cfg.n)};
    const cplx g2 = cfg.g * cfg.g;
    for (int j = 0; j < cfg.n; ++j)
        for (int l = j + 1; l < cfg.n; ++l) {
            const cplx f = g2 * k.wp_dz(detail::separation(k, ph, j, l));
            out.dp[j] -= f;
            out.dp[l] += f;
        }
    return out;
}

// Smallest lattice distance among the pairwise separations.
inline double min_separation(const CMConfig &cfg, const PhasePoint &ph)
{
    const EllipticKernel k = cfg.kernel();
    double best = std::numeric_limits<double>::infinity();
    for (int j = 0; j < ph.size(); ++j)
        for (int l = j + 1; l < ph.size(); ++l)
            best = std::min(best, k.lattice_distance(ph.q[j] - ph.q[l]));
    return best;
}

struct ZeroCurvatureReport
{
    double residual = 0.0; // max |2 pi i dL/dtau + dA/dz - [L, A]|
    double fd_error = 0.0; // estimated error of the dL/dtau difference quotient
    double scale = 0.0;    // max |[L, A]|

    double relative() const { return residual / std::max(1.0, scale); }
};

namespace detail
{

// dA/dz in either gauge, analytic.
inline Matrix lax_A_dz(const CMConfig &cfg, const PhasePoint &ph, cplx z, Gauge gauge)
{
    const EllipticKernel k = cfg.kernel();
    const cplx ig = imag_unit * cfg.g;
    Matrix dA = Matrix::Zero(cfg.n, cfg.n);
    if (gauge == Gauge::quasi_periodic) {
        for (int j = 0; j < cfg.n; ++j)
            for (int l = 0; l < cfg.n; ++l)
                if (j != l)
                    dA(j, l) = ig * k.lame(separation(k, ph, j, l), z).d2x_dudz;
        return dA;
    }
    const GaugeData G = gauge_data(cfg, k, ph, z);
    for (int j = 0; j < cfg.n; ++j)
        for (int l = 0; l < cfg.n; ++l) {
            if (j == l) {
                const LameJet &jet = G.jets[j];
                // d/dz (y / x) = -rho'(z - q_j)
                dA(j, j) = two_pi_i * jet.dz_log_dtau - ph.p[j] * k.rho_dz(z - ph.q[j]);
            } else {
                const LameJet jet = k.lame(separation(k, ph, j, l), z);
                const cplx ratio = G.x[l] / G.x[j];
                dA(j, l) = ig * ratio * (jet.d2x_dudz + jet.dx_du * (G.log_dz[l] - G.log_dz[j]));
            }
        }
    return dA;
}

} // namespace detail

// dL/dtau is the total derivative along the isomonodromic flow, taken as a
// central difference of s -> L(q + s dq/dtau, p + s dp/dtau, tau + s) with
// steps fd_step and fd_step/2 combined by Richardson extrapolation.
inline ZeroCurvatureReport zero_curvature_residual(const CMConfig &cfg, const PhasePoint &ph,
                                                   cplx z, double fd_step = 1e-5,
                                                   Gauge gauge = Gauge::quasi_periodic)
{
    detail::check_size(cfg, ph);
    if (!(fd_step >= 1e-8 && fd_step <= 1e-2))
        throw std::invalid_argument("zero_curvature_residual: fd_step must lie in [1e-8, 1e-2]");
    const EquationsOfMotion rhs = eom(cfg, ph);
    const Vector qdot = rhs.dq / two_pi_i;
    const Vector pdot = rhs.dp / two_pi_i;
    const cplx tau = cfg.tm.tau();

    auto L_at = [&](double s) {
        const PhasePoint moved(ph.q + s * qdot, ph.p + s * pdot);
        const CMConfig c = cfg.with_tau(tau + s);
        return gauge == Gauge::quasi_periodic ? lax_L_quasi(c, moved, z)
                                              : lax_L_periodic(c, moved, z);
    };
    auto central = [&](double h) -> Matrix { return (L_at(h) - L_at(-h)) / (2.0 * h); };
    const Matrix coarse = central(fd_step);
    const Matrix fine = central(fd_step / 2.0);
    const Matrix dL = (4.0 * fine - coarse) / 3.0;

    const LaxMatrices lax = lax_pair(cfg, ph, z, gauge);
    const Matrix comm = lax.L * lax.A - lax.A * lax.L;
    const Matrix dA = detail::lax_A_dz(cfg, ph, z, gauge);

    ZeroCurvatureReport r;
    r.residual = (two_pi_i * dL + dA - comm).cwiseAbs().maxCoeff();
    r.fd_error = 2.0 * pi * (dL - fine).cwiseAbs().maxCoeff();
    r.scale = comm.cwiseAbs().maxCoeff();
    return r;
}

} // namespace isotorus

#endif // ISOTORUS_CALOGERO_MOSER_HPP
