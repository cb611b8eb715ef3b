#ifndef ISOTORUS_ELLIPTIC_HPP
#define ISOTORUS_ELLIPTIC_HPP

// Elliptic kernels on the torus C/(Z + tau Z).
//
// theta1 follows the normalization
//
//   theta1(z) = - sum_n nu^{(n+1/2)^2} eta^{2(n+1/2)},
//   nu = exp(i pi tau),  eta = exp(i pi (z + 1/2)),
//
// which coincides with the classical theta_1(pi z | tau). Everything else is
// built from its z-jet (theta, theta', theta'', theta''') at an argument that has
// first been reduced into the fundamental cell:
//
//   rho(z)    = theta1'(z) / theta1(z)
//   wp(z)     = -rho'(z) + theta1'''(0) / (3 theta1'(0))
//   wp'(z)    = -rho''(z)
//   x(u, z)   = theta1(z - u) theta1'(0) / (theta1(z) theta1(u))
//   y(u, z)   = d/du x(u, z) = -x(u, z) (rho(u) + rho(z - u))
//
// The brute-force lattice sum for wp is kept as wp_lattice_oracle; it is only
// meant for cross-validation.

#include <isotorus/errors.hpp>

#include <array>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace isotorus
{

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx imag_unit{0.0, 1.0};
inline constexpr cplx two_pi_i{0.0, 2.0 * std::numbers::pi};

struct TruncationConfig
{
    // A series stops once two consecutive terms are below rel_tol times the
    // accumulated absolute sum of its terms.
    double rel_tol = 1e-17;
    int max_terms = 64;
    // Smallest half-width of the brute-force lattice sum; the oracle
    // extrapolates over radii lattice_radius * {1, 2, 4, 8, 16}.
    int lattice_radius = 32;
    // Arguments closer than this to a lattice point are rejected.
    double pole_radius = 1e-6;

    void validate() const
    {
        if (!(rel_tol > 0.0))
            throw std::invalid_argument("TruncationConfig: rel_tol must be > 0");
        if (max_terms < 8)
            throw std::invalid_argument("TruncationConfig: max_terms must be >= 8");
        if (lattice_radius < 2)
            throw std::invalid_argument("TruncationConfig: lattice_radius must be >= 2");
        if (!(pole_radius >= 0.0))
            throw std::invalid_argument("TruncationConfig: pole_radius must be >= 0");
    }
};

class TorusModulus
{
public:
    explicit TorusModulus(cplx tau = {0.0, 1.0}) : tau_(tau)
    {
        if (!(tau.imag() > 0.0) || !std::isfinite(tau.real()))
            throw std::invalid_argument("TorusModulus: tau must lie in the upper half-plane");
        nome_ = std::exp(imag_unit * pi * tau);
    }

    cplx tau() const noexcept { return tau_; }
    cplx nome() const noexcept { return nome_; }

private:
    cplx tau_;
    cplx nome_;
};

// Lattice omega1 Z + omega2 Z with arbitrary generators.
struct GeneralLattice
{
    cplx omega1{1.0, 0.0};
    cplx omega2{0.0, 1.0};

    // Flips omega2 if needed so that Im(omega2 / omega1) > 0. The lattice is
    // unchanged.
    GeneralLattice normalized() const
    {
        if (omega1 == cplx{})
            throw degenerate_lattice_error("GeneralLattice: omega1 is zero");
        const cplx ratio = omega2 / omega1;
        const double scale = std::max(1.0, std::abs(ratio));
        if (!(std::abs(ratio.imag()) > 1e-14 * scale))
            throw degenerate_lattice_error("GeneralLattice: Im(omega2/omega1) = 0");
        return ratio.imag() > 0.0 ? *this : GeneralLattice{omega1, -omega2};
    }

    cplx modulus() const { return normalized().omega2 / omega1; }

    GeneralLattice scaled(cplx j) const { return {j * omega1, j * omega2}; }
};

// z = reduced + m + n tau with |Im reduced| <= Im(tau)/2 and |Re reduced| <= 1/2
// (up to rounding).
struct ReducedArgument
{
    cplx reduced;
    long m = 0;
    long n = 0;
    // distance from z to the nearest lattice point
    double lattice_distance = 0.0;
};

inline ReducedArgument reduce_argument(cplx z, const TorusModulus &tm)
{
    const cplx tau = tm.tau();
    ReducedArgument r;
    r.n = std::lround(z.imag() / tau.imag());
    cplx w = z - static_cast<double>(r.n) * tau;
    r.m = std::lround(w.real());
    r.reduced = w - static_cast<double>(r.m);

    double best = std::numeric_limits<double>::infinity();
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b)
            best = std::min(best, std::abs(r.reduced - (static_cast<double>(a)
                                                        + static_cast<double>(b) * tau)));
    r.lattice_distance = best;
    return r;
}

// theta1 and its first three z-derivatives from the defining series, summed in
// pairs n, -n-1. No argument reduction is applied here.
struct ThetaJet
{
    std::array<cplx, 4> d{};
    std::array<double, 4> abs_sum{};
    int terms = 0;
};

inline ThetaJet theta1_series(cplx z, cplx tau, const TruncationConfig &cfg)
{
    ThetaJet jet;
    const cplx w = z + 0.5;
    int quiet = 0;
    for (int j = 0; j < cfg.max_terms; ++j) {
        const double k = j + 0.5;
        const cplx base = imag_unit * pi * tau * (k * k);
        const cplx phase = two_pi_i * k * w;
        const cplx plus = -std::exp(base + phase);
        const cplx minus = -std::exp(base - phase);
        const cplx a = two_pi_i * k;
        const double amag = 2.0 * pi * k;

        cplx apow{1.0, 0.0};
        double mpow = 1.0;
        bool small = true;
        for (int r = 0; r < 4; ++r) {
            const cplx sgn = (r % 2 == 0) ? cplx{1.0} : cplx{-1.0};
            jet.d[r] += apow * (plus + sgn * minus);
            const double mag = mpow * (std::abs(plus) + std::abs(minus));
            jet.abs_sum[r] += mag;
            if (!(mag <= cfg.rel_tol * jet.abs_sum[r]))
                small = false;
            apow *= a;
            mpow *= amag;
        }
        jet.terms = j + 1;
        quiet = small ? quiet + 1 : 0;
        if (quiet >= 2)
            return jet;
    }
    throw truncation_error("theta1 series did not stagnate within max_terms", jet.d[0]);
}

// Jet of rho = theta1'/theta1 at the unreduced argument.
struct RhoJet
{
    cplx rho;  // rho(z)
    cplx rho1; // rho'(z)
    cplx rho2; // rho''(z)
};

// theta1''(z)/theta1(z) = rho' + rho^2 and its z-derivative.
inline cplx theta_ratio2(const RhoJet &r) { return r.rho1 + r.rho * r.rho; }
inline cplx theta_ratio2_dz(const RhoJet &r) { return r.rho2 + 2.0 * r.rho * r.rho1; }

// Lame function x(u, z) together with the partial derivatives needed by the
// Lax pair in both gauges.
struct LameJet
{
    cplx x;
    cplx dx_du;         // y(u, z)
    cplx dx_dz;
    cplx dx_dtau;       // analytic, from the heat equation of theta1
    cplx d2x_dudz;      // d/dz y(u, z)
    cplx dz_log_dtau;   // d/dz (dx_dtau / x)
};

class EllipticKernel
{
public:
    explicit EllipticKernel(const TorusModulus &tm, const TruncationConfig &cfg = {})
        : tm_(tm), cfg_(cfg)
    {
        cfg_.validate();
        const ThetaJet origin = theta1_series(cplx{}, tm_.tau(), cfg_);
        dtheta0_ = origin.d[1];
        d3theta0_ = origin.d[3];
    }

    const TorusModulus &modulus() const noexcept { return tm_; }
    const TruncationConfig &config() const noexcept { return cfg_; }
    cplx tau() const noexcept { return tm_.tau(); }

    cplx theta1_dz_at_0() const noexcept { return dtheta0_; }
    cplx theta1_d3z_at_0() const noexcept { return d3theta0_; }
    // The constant that removes the z^0 term of -rho'(z) at the origin.
    cplx wp_constant() const noexcept { return d3theta0_ / (3.0 * dtheta0_); }

    cplx theta1(cplx z) const
    {
        const Point p = at(z);
        return std::exp(p.log_prefactor) * p.jet.d[0];
    }

    cplx theta1_dz(cplx z) const
    {
        const Point p = at(z);
        const cplx shift = -two_pi_i * static_cast<double>(p.arg.n);
        return std::exp(p.log_prefactor) * (p.jet.d[1] + shift * p.jet.d[0]);
    }

    // Infinite product form, independent of the series.
    cplx theta1_product(cplx z) const
    {
        const Point p = at_reduced_only(z);
        const cplx nu = tm_.nome();
        const cplx zr = p.arg.reduced;
        const cplx c = std::cos(2.0 * pi * (zr + 0.5));
        cplx prod = -2.0 * std::exp(imag_unit * pi * tm_.tau() / 4.0) * std::cos(pi * (zr + 0.5));
        cplx nu2m{1.0};
        int quiet = 0;
        for (int m = 1; m <= cfg_.max_terms; ++m) {
            nu2m *= nu * nu;
            const cplx factor = (1.0 - nu2m) * (1.0 + 2.0 * c * nu2m + nu2m * nu2m);
            prod *= factor;
            quiet = (std::abs(factor - 1.0) <= cfg_.rel_tol) ? quiet + 1 : 0;
            if (quiet >= 2)
                return std::exp(p.log_prefactor) * prod;
        }
        throw truncation_error("theta1 product did not stagnate within max_terms", prod);
    }

    RhoJet rho_jet(cplx z, const char *name = "z") const
    {
        const Point p = at(z);
        check_pole(p, name);
        return rho_from(p);
    }

    cplx rho(cplx z) const { return rho_jet(z).rho; }
    cplx rho_dz(cplx z) const { return rho_jet(z).rho1; }
    cplx wp(cplx z) const { return -rho_jet(z).rho1 + wp_constant(); }
    cplx wp_dz(cplx z) const { return -rho_jet(z).rho2; }

    cplx lame_x(cplx u, cplx z) const
    {
        const Point pu = at(u);
        check_pole(pu, "u");
        const Point pz = at(z);
        check_pole(pz, "z");
        const Point pw = at(z - u);
        return lame_value(pw, pz, pu);
    }

    cplx lame_y(cplx u, cplx z) const { return lame(u, z).dx_du; }

    LameJet lame(cplx u, cplx z) const
    {
        const Point pu = at(u);
        check_pole(pu, "u");
        const Point pz = at(z);
        check_pole(pz, "z");
        const Point pw = at(z - u);
        check_pole(pw, "z-u");

        const RhoJet ru = rho_from(pu);
        const RhoJet rz = rho_from(pz);
        const RhoJet rw = rho_from(pw);

        LameJet out;
        out.x = lame_value(pw, pz, pu);
        const cplx sum_rho = ru.rho + rw.rho;
        out.dx_du = -out.x * sum_rho;
        out.dx_dz = out.x * (rw.rho - rz.rho);
        // d/dtau log theta1(w) = theta1''(w) / (4 pi i theta1(w)) by the heat
        // equation; theta1'(0) contributes theta1'''(0)/theta1'(0).
        const cplx four_pi_i = 2.0 * two_pi_i;
        const cplx dtau_log = (theta_ratio2(rw) + d3theta0_ / dtheta0_ - theta_ratio2(rz)
                               - theta_ratio2(ru)) / four_pi_i;
        out.dx_dtau = out.x * dtau_log;
        out.d2x_dudz = -out.dx_dz * sum_rho - out.x * rw.rho1;
        out.dz_log_dtau = (theta_ratio2_dz(rw) - theta_ratio2_dz(rz)) / four_pi_i;
        return out;
    }

    // Distance from z to the nearest lattice point.
    double lattice_distance(cplx z) const { return reduce_argument(z, tm_).lattice_distance; }

private:
    struct Point
    {
        ReducedArgument arg;
        ThetaJet jet;
        cplx log_prefactor;
    };

    // theta1(z) = (-1)^{m+n} exp(-i pi n^2 tau - 2 pi i n z_r) theta1(z_r)
    Point at_reduced_only(cplx z) const
    {
        Point p;
        p.arg = reduce_argument(z, tm_);
        const double n = static_cast<double>(p.arg.n);
        const long parity = (p.arg.m + p.arg.n) % 2;
        p.log_prefactor = imag_unit * pi * static_cast<double>(parity != 0 ? 1 : 0)
                          - imag_unit * pi * (n * n) * tm_.tau()
                          - two_pi_i * n * p.arg.reduced;
        return p;
    }

    Point at(cplx z) const
    {
        Point p = at_reduced_only(z);
        p.jet = theta1_series(p.arg.reduced, tm_.tau(), cfg_);
        return p;
    }

    void check_pole(const Point &p, const char *name) const
    {
        if (p.arg.lattice_distance < cfg_.pole_radius)
            throw pole_proximity_error(name, p.arg.lattice_distance);
    }

    RhoJet rho_from(const Point &p) const
    {
        const auto &d = p.jet.d;
        const cplx r1 = d[1] / d[0];
        const cplx r2 = d[2] / d[0];
        const cplx r3 = d[3] / d[0];
        RhoJet out;
        out.rho = r1 - two_pi_i * static_cast<double>(p.arg.n);
        out.rho1 = r2 - r1 * r1;
        out.rho2 = r3 - 3.0 * r2 * r1 + 2.0 * r1 * r1 * r1;
        return out;
    }

    cplx lame_value(const Point &pw, const Point &pz, const Point &pu) const
    {
        return std::exp(pw.log_prefactor - pz.log_prefactor - pu.log_prefactor) * pw.jet.d[0]
               * dtheta0_ / (pz.jet.d[0] * pu.jet.d[0]);
    }

    TorusModulus tm_;
    TruncationConfig cfg_;
    cplx dtheta0_;
    cplx d3theta0_;
};

// Free-function surface; each call builds a kernel for (tau, cfg).

inline cplx theta1(cplx z, const TorusModulus &tm, const TruncationConfig &cfg = {})
{
    return EllipticKernel(tm, cfg).theta1(z);
}

inline cplx theta1_product(cplx z, const TorusModulus &tm, const TruncationConfig &cfg = {})
{
    return EllipticKernel(tm, cfg).theta1_product(z);
}

inline cplx theta1_dz(cplx z, const TorusModulus &tm, const TruncationConfig &cfg = {})
{
    return EllipticKernel(tm, cfg).theta1_dz(z);
}

inline cplx theta1_d3z_at_0(const TorusModulus &tm, const TruncationConfig &cfg = {})
{
    return EllipticKernel(tm, cfg).theta1_d3z_at_0();
}

inline cplx rho(cplx z, const TorusModulus &tm, const TruncationConfig &cfg = {})
{
    return EllipticKernel(tm, cfg).rho(z);
}

inline cplx wp(cplx z, const TorusModulus &tm, const TruncationConfig &cfg = {})
{
    return EllipticKernel(tm, cfg).wp(z);
}

inline cplx wp_dz(cplx z, const TorusModulus &tm, const TruncationConfig &cfg = {})
{
    return EllipticKernel(tm, cfg).wp_dz(z);
}

inline cplx lame_x(cplx u, cplx z, const TorusModulus &tm, const TruncationConfig &cfg = {})
{
    return EllipticKernel(tm, cfg).lame_x(u, z);
}

inline cplx lame_y(cplx u, cplx z, const TorusModulus &tm, const TruncationConfig &cfg = {})
{
    return EllipticKernel(tm, cfg).lame_y(u, z);
}

// wp(z; omega1 Z + omega2 Z) = omega1^{-2} wp(z/omega1; 1, omega2/omega1)
inline cplx wp_general(cplx z, const GeneralLattice &lat, const TruncationConfig &cfg = {})
{
    const GeneralLattice l = lat.normalized();
    const EllipticKernel k(TorusModulus(l.omega2 / l.omega1), cfg);
    return k.wp(z / l.omega1) / (l.omega1 * l.omega1);
}

inline cplx wp_dz_general(cplx z, const GeneralLattice &lat, const TruncationConfig &cfg = {})
{
    const GeneralLattice l = lat.normalized();
    const EllipticKernel k(TorusModulus(l.omega2 / l.omega1), cfg);
    return k.wp_dz(z / l.omega1) / (l.omega1 * l.omega1 * l.omega1);
}

// Centered square partial sums of
//
//   1/z^2 + sum_{(m,n) != 0} ( 1/(z + m + n tau)^2 - 1/(m + n tau)^2 )
//
// at radii N, 2N, 4N, 8N, 16N, followed by Richardson elimination of the
// N^-2 ... N^-5 error terms. Slow; used as a test oracle only.
inline cplx wp_lattice_oracle(cplx z, const TorusModulus &tm, const TruncationConfig &cfg = {})
{
    cfg.validate();
    const ReducedArgument r = reduce_argument(z, tm);
    if (r.lattice_distance < cfg.pole_radius)
        throw pole_proximity_error("z", r.lattice_distance);

    constexpr int levels = 5;
    const cplx tau = tm.tau();
    const long radius0 = cfg.lattice_radius;
    const long radius_max = radius0 << (levels - 1);

    auto term = [&](long m, long n) {
        const cplx lam = static_cast<double>(m) + static_cast<double>(n) * tau;
        const cplx zl = z + lam;
        return -z * (2.0 * lam + z) / (lam * lam * zl * zl);
    };

    std::array<cplx, levels> partial{};
    cplx sum = 1.0 / (z * z);
    int level = 0;
    for (long s = 1; s <= radius_max; ++s) {
        cplx shell{};
        for (long m = -s; m <= s; ++m)
            shell += term(m, s) + term(m, -s);
        for (long n = -s + 1; n <= s - 1; ++n)
            shell += term(s, n) + term(-s, n);
        sum += shell;
        if (s == (radius0 << level))
            partial[level++] = sum;
    }

    // tableau[k] holds the extrapolation from radii 2^(k-j) N ... 2^k N
    std::array<cplx, levels> tableau = partial;
    for (int j = 1; j < levels; ++j) {
        const double f = std::ldexp(1.0, j + 1); // eliminates N^-(j+1)
        for (int k = levels - 1; k >= j; --k)
            tableau[k] = (f * tableau[k] - tableau[k - 1]) / (f - 1.0);
    }
    return tableau[levels - 1];
}

} // namespace isotorus

#endif // ISOTORUS_ELLIPTIC_HPP
