#ifndef ISOTORUS_MONODROMY_HPP
#define ISOTORUS_MONODROMY_HPP

// Monodromy of dPsi/dz = L~(z) Psi in the quasi-periodic gauge, with the frame
// normalized by Psi(base) = I and monodromies acting on the right:
//
//   Psi(z + 1)   = Psi(z) M_1
//   Psi(z + tau) = e^{2 pi i Q} Psi(z) M_tau
//
// M_0 is the monodromy of the counterclockwise loop around the lattice point
// enclosed by the cell {base + s + t tau : 0 < s, t < 1}, joined to base by a
// straight segment. With these conventions
//
//   M_0 = M_tau^-1 M_1^-1 M_tau M_1.

#include <isotorus/calogero_moser.hpp>
#include <isotorus/elliptic.hpp>
#include <isotorus/errors.hpp>
#include <isotorus/flow.hpp>
#include <isotorus/integrator.hpp>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace isotorus
{

struct PathSpec
{
    std::vector<cplx> waypoints;
    double pole_clearance = 1e-3;
};

struct MonodromyData
{
    Matrix M0;
    Matrix M1;
    Matrix Mtau;
    cplx base;
    Matrix Q; // diag(q), enters M_tau through e^{-2 pi i Q}
};

// Lattice coordinates (x, y) with z = x + y tau.
inline std::array<double, 2> lattice_coordinates(cplx z, cplx tau)
{
    const double y = std::imag(z) / std::imag(tau);
    return {std::real(z) - y * std::real(tau), y};
}

inline double segment_lattice_distance(cplx a, cplx b, cplx tau)
{
    const auto ca = lattice_coordinates(a, tau);
    const auto cb = lattice_coordinates(b, tau);
    const long m0 = static_cast<long>(std::floor(std::min(ca[0], cb[0]))) - 2;
    const long m1 = static_cast<long>(std::ceil(std::max(ca[0], cb[0]))) + 2;
    const long n0 = static_cast<long>(std::floor(std::min(ca[1], cb[1]))) - 2;
    const long n1 = static_cast<long>(std::ceil(std::max(ca[1], cb[1]))) + 2;
    const cplx d = b - a;
    const double len2 = std::norm(d);
    double best = std::numeric_limits<double>::infinity();
    for (long m = m0; m <= m1; ++m)
        for (long n = n0; n <= n1; ++n) {
            const cplx lam = static_cast<double>(m) + static_cast<double>(n) * tau;
            double s = len2 > 0.0 ? std::real((lam - a) * std::conj(d)) / len2 : 0.0;
            s = std::clamp(s, 0.0, 1.0);
            best = std::min(best, std::abs(a + s * d - lam));
        }
    return best;
}

inline void validate_path(const PathSpec &path, cplx tau)
{
    if (path.waypoints.size() < 2)
        throw integration_error("path needs at least two waypoints");
    for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
        const cplx a = path.waypoints[i - 1];
        const cplx b = path.waypoints[i];
        if (a == b)
            throw integration_error("path has repeated consecutive waypoints");
        if (segment_lattice_distance(a, b, tau) < path.pole_clearance)
            throw integration_error("path passes within pole_clearance of a lattice point");
    }
}

// Psi at the last waypoint, starting from Psi = I at the first.
inline Matrix transport(const CMConfig &cfg, const PhasePoint &ph, const PathSpec &path,
                        const IntegratorConfig &icfg)
{
    detail::check_size(cfg, ph);
    validate_path(path, cfg.tm.tau());
    const int n = cfg.n;
    auto rhs = [&](cplx z, const State &y) -> State {
        const Matrix L = lax_L_quasi(cfg, ph, z);
        State out(n * n);
        Eigen::Map<Matrix>(out.data(), n, n) = L * Eigen::Map<const Matrix>(y.data(), n, n);
        return out;
    };
    State psi(n * n);
    Eigen::Map<Matrix>(psi.data(), n, n) = Matrix::Identity(n, n);
    SegmentOptions opt;
    opt.samples = 1;
    for (std::size_t i = 1; i < path.waypoints.size(); ++i) {
        const SegmentResult r
            = integrate_segment(rhs, psi, path.waypoints[i - 1], path.waypoints[i], icfg, opt);
        if (r.failed)
            throw integration_error("transport: " + r.message);
        psi = r.states.back();
    }
    return Eigen::Map<const Matrix>(psi.data(), n, n);
}

inline cplx default_base(cplx tau) { return (1.0 + tau) / 4.0; }

inline Matrix monodromy_A(const CMConfig &cfg, const PhasePoint &ph, cplx base,
                          const IntegratorConfig &icfg, double clearance = 1e-3)
{
    return transport(cfg, ph, PathSpec{{base, base + 1.0}, clearance}, icfg);
}

inline Matrix twist_matrix(const PhasePoint &ph, double sign)
{
    return (sign * two_pi_i * ph.q).array().exp().matrix().asDiagonal();
}

inline Matrix monodromy_B(const CMConfig &cfg, const PhasePoint &ph, cplx base,
                          const IntegratorConfig &icfg, double clearance = 1e-3)
{
    const Matrix psi = transport(cfg, ph, PathSpec{{base, base + cfg.tm.tau()}, clearance}, icfg);
    return twist_matrix(ph, -1.0) * psi;
}

// The lattice point inside the cell {base + s + t tau : 0 < s, t < 1}.
inline cplx enclosed_lattice_point(cplx base, cplx tau)
{
    const auto c = lattice_coordinates(base, tau);
    return std::ceil(c[0]) + std::ceil(c[1]) * tau;
}

// Counterclockwise loop of `radius` around the lattice point enclosed by the
// cell at base, reached along the straight segment from base.
inline PathSpec pole_loop(cplx base, cplx tau, double radius, int sides = 32)
{
    const cplx center = enclosed_lattice_point(base, tau);
    const cplx dir = (base - center) / std::abs(base - center);
    PathSpec path;
    path.pole_clearance = radius * std::cos(pi / sides) * 0.999;
    path.waypoints.push_back(base);
    for (int k = 0; k <= sides; ++k)
        path.waypoints.push_back(center + radius * dir * std::exp(two_pi_i * (double(k) / sides)));
    path.waypoints.push_back(base);
    return path;
}

inline Matrix monodromy_pole(const CMConfig &cfg, const PhasePoint &ph, double radius,
                             const IntegratorConfig &icfg, cplx base, int sides = 32)
{
    if (!(radius > 1e-3 && radius < 0.3))
        throw std::invalid_argument("monodromy_pole: radius must lie in (1e-3, 0.3)");
    if (sides < 16)
        throw std::invalid_argument("monodromy_pole: at least 16 polygon sides are required");
    const cplx tau = cfg.tm.tau();
    const cplx center = enclosed_lattice_point(base, tau);
    if (std::abs(base - center) <= radius)
        throw std::invalid_argument("monodromy_pole: base lies inside the loop");
    return transport(cfg, ph, pole_loop(base, tau, radius, sides), icfg);
}

inline Matrix monodromy_pole(const CMConfig &cfg, const PhasePoint &ph, double radius,
                             const IntegratorConfig &icfg)
{
    return monodromy_pole(cfg, ph, radius, icfg, default_base(cfg.tm.tau()));
}

inline MonodromyData compute_monodromy(const CMConfig &cfg, const PhasePoint &ph,
                                       const IntegratorConfig &icfg, cplx base,
                                       double radius = 0.1)
{
    MonodromyData md;
    md.base = base;
    md.Q = ph.q.asDiagonal();
    md.M1 = monodromy_A(cfg, ph, base, icfg);
    md.Mtau = monodromy_B(cfg, ph, base, icfg);
    md.M0 = monodromy_pole(cfg, ph, radius, icfg, base);
    return md;
}

inline MonodromyData compute_monodromy(const CMConfig &cfg, const PhasePoint &ph,
                                       const IntegratorConfig &icfg)
{
    return compute_monodromy(cfg, ph, icfg, default_base(cfg.tm.tau()));
}

namespace detail
{

inline Matrix checked_inverse(const Matrix &M, const char *name)
{
    Eigen::FullPivLU<Matrix> lu(M);
    if (!lu.isInvertible())
        throw std::domain_error(std::string("singular monodromy matrix ") + name);
    return lu.inverse();
}

} // namespace detail

// M_tau^-1 M_1^-1 M_tau M_1, the monodromy of the counterclockwise
// parallelogram base -> base+1 -> base+1+tau -> base+tau -> base.
inline Matrix cubic_relation_product(const MonodromyData &md)
{
    const Matrix M1i = detail::checked_inverse(md.M1, "M1");
    const Matrix Mti = detail::checked_inverse(md.Mtau, "Mtau");
    return Mti * M1i * md.Mtau * md.M1;
}

inline double cubic_relation_residual(const MonodromyData &md)
{
    return (cubic_relation_product(md) - md.M0).cwiseAbs().maxCoeff();
}

inline Vector spectrum(const Matrix &M)
{
    Eigen::ComplexEigenSolver<Matrix> es(M, false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigenvalue computation failed");
    return es.eigenvalues();
}

// min over matchings of the max distance between matched eigenvalues.
inline double spectral_distance(const Vector &a, const Vector &b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("spectral_distance: size mismatch");
    std::vector<int> perm(static_cast<std::size_t>(a.size()));
    std::iota(perm.begin(), perm.end(), 0);
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            worst = std::max(worst, std::abs(a[Eigen::Index(i)] - b[perm[i]]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline double spectral_distance(const Matrix &A, const Matrix &B)
{
    return spectral_distance(spectrum(A), spectrum(B));
}

inline double monodromy_spectral_distance(const MonodromyData &a, const MonodromyData &b)
{
    return std::max({spectral_distance(a.M0, b.M0), spectral_distance(a.M1, b.M1),
                     spectral_distance(a.Mtau, b.Mtau)});
}

struct DriftReport
{
    double drift = 0.0;
    MonodromyData start;
    MonodromyData end;
    PhasePoint end_point;
};

// Spectral drift of (M_0, M_1, M_tau) between tau0 = cfg.tm.tau() and
// tau0 + dtau along the isomonodromic flow.
inline DriftReport isomonodromy_drift(const CMConfig &cfg, const PhasePoint &ph0, cplx dtau,
                                      const IntegratorConfig &flow_cfg,
                                      const IntegratorConfig &transport_cfg)
{
    const cplx tau1 = cfg.tm.tau() + dtau;
    const Trajectory t = integrate_isomonodromic(cfg, ph0, tau1, flow_cfg);
    if (t.diagnostics.truncated)
        throw integration_error("isomonodromy_drift: flow failed: " + t.diagnostics.message);
    DriftReport r;
    r.start = compute_monodromy(cfg, ph0, transport_cfg);
    r.end_point = t.back().state;
    r.end = compute_monodromy(cfg.with_tau(tau1), r.end_point, transport_cfg);
    r.drift = monodromy_spectral_distance(r.start, r.end);
    return r;
}

struct ModuliDimensions
{
    long moduli;    // s n^2 + s n + s + 1
    long character; // n (s n + 1)
    long single;    // n^2 + n + 1
};

inline ModuliDimensions moduli_dimensions(long n, long s)
{
    if (n < 1 || s < 1)
        throw std::invalid_argument("moduli_dimensions: n and s must be >= 1");
    return {s * n * n + s * n + s + 1, n * (s * n + 1), n * n + n + 1};
}

} // namespace isotorus

#endif // ISOTORUS_MONODROMY_HPP
