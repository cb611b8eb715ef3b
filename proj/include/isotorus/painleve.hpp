#ifndef ISOTORUS_PAINLEVE_HPP
#define ISOTORUS_PAINLEVE_HPP

// Elliptic Painleve VI
//
//   (2 pi i)^2 d^2q/dtau^2 = sum_a alpha_a wp'(q + omega_a, tau)
//
// as the Hamiltonian system 2 pi i dq/dtau = dH/dp, 2 pi i dp/dtau = -dH/dq with
// H = p^2/2 - sum_a alpha_a wp(q + omega_a, tau), its link to the rational
// equation, and its symmetries.
//
// Half-periods are indexed so that omega_a is sent to the a-th pole of the
// rational equation by elliptic_to_rational:
//
//   omega_0 = 0 -> y = inf,  omega_1 = 1/2 -> y = 0,
//   omega_2 = tau/2 -> y = 1,  omega_3 = (1 + tau)/2 -> y = t.

#include <isotorus/elliptic.hpp>
#include <isotorus/errors.hpp>

#include <array>
#include <complex>
#include <stdexcept>

namespace isotorus
{

struct PainleveParams
{
    std::array<cplx, 4> alpha{};

    bool operator==(const PainleveParams &) const = default;
};

// Parameters of the rational equation, linked by
// (alpha, -beta, gamma, 1/2 - delta) = (alpha_0, alpha_1, alpha_2, alpha_3).
struct ClassicalParams
{
    cplx alpha{};
    cplx beta{};
    cplx gamma{};
    cplx delta{};

    bool operator==(const ClassicalParams &) const = default;
};

inline ClassicalParams to_classical(const PainleveParams &p)
{
    return {p.alpha[0], -p.alpha[1], p.alpha[2], 0.5 - p.alpha[3]};
}

inline PainleveParams from_classical(const ClassicalParams &c)
{
    return {{c.alpha, -c.beta, c.gamma, 0.5 - c.delta}};
}

// State of the scalar system on the lattice period Z + tau Z. `period` is 1
// except for states produced by scaling_symmetry.
struct EllipticState
{
    cplx q{};
    cplx p{};
    cplx tau{0.0, 1.0};
    cplx period{1.0, 0.0};

    GeneralLattice lattice() const { return GeneralLattice{period, tau}; }
};

inline std::array<cplx, 4> half_periods(cplx tau, cplx period = 1.0)
{
    if (!(std::imag(tau / period) > 0.0))
        throw std::domain_error("half_periods: tau must lie in the upper half-plane");
    return {cplx{}, period / 2.0, tau / 2.0, (period + tau) / 2.0};
}

namespace detail
{

inline bool is_unit_period(cplx period) { return period == cplx{1.0, 0.0}; }

template <class F>
cplx sum_over_half_periods(const EllipticState &s, const PainleveParams &params, F &&term)
{
    const auto omega = half_periods(s.tau, s.period);
    cplx total{};
    for (int a = 0; a < 4; ++a)
        if (params.alpha[a] != cplx{})
            total += params.alpha[a] * term(s.q + omega[a]);
    return total;
}

} // namespace detail

// sum_a alpha_a wp'(q + omega_a); terms with alpha_a = 0 are skipped.
inline cplx elliptic_p6_rhs(const EllipticState &s, const PainleveParams &params,
                            const TruncationConfig &cfg = {})
{
    if (detail::is_unit_period(s.period)) {
        const EllipticKernel k(TorusModulus(s.tau), cfg);
        return detail::sum_over_half_periods(s, params, [&](cplx z) { return k.wp_dz(z); });
    }
    const GeneralLattice lat = s.lattice();
    return detail::sum_over_half_periods(s, params,
                                         [&](cplx z) { return wp_dz_general(z, lat, cfg); });
}

inline cplx elliptic_p6_rhs(cplx q, cplx tau, const PainleveParams &params,
                            const TruncationConfig &cfg = {})
{
    return elliptic_p6_rhs(EllipticState{q, 0.0, tau}, params, cfg);
}

inline cplx hamiltonian_manin(const EllipticState &s, const PainleveParams &params,
                              const TruncationConfig &cfg = {})
{
    cplx potential;
    if (detail::is_unit_period(s.period)) {
        const EllipticKernel k(TorusModulus(s.tau), cfg);
        potential = detail::sum_over_half_periods(s, params, [&](cplx z) { return k.wp(z); });
    } else {
        const GeneralLattice lat = s.lattice();
        potential = detail::sum_over_half_periods(s, params,
                                                  [&](cplx z) { return wp_general(z, lat, cfg); });
    }
    return s.p * s.p / 2.0 - potential;
}

// (dq/dtau, dp/dtau)
inline std::array<cplx, 2> painleve_vector_field(const EllipticState &s,
                                                 const PainleveParams &params,
                                                 const TruncationConfig &cfg = {})
{
    return {s.p / two_pi_i, elliptic_p6_rhs(s, params, cfg) / two_pi_i};
}

struct RationalPoint
{
    cplx y;
    cplx t;
};

inline RationalPoint elliptic_to_rational(cplx q, cplx tau, const TruncationConfig &cfg = {})
{
    const EllipticKernel k(TorusModulus(tau), cfg);
    const cplx e1 = k.wp(0.5);
    const cplx e2 = k.wp(tau / 2.0);
    const cplx e3 = k.wp((1.0 + tau) / 2.0);
    const cplx den = e2 - e1;
    if (std::abs(den) <= 1e-12 * (std::abs(e1) + std::abs(e2)))
        throw degenerate_lattice_error("elliptic_to_rational: wp(tau/2) = wp(1/2)");
    return {(k.wp(q) - e1) / den, (e3 - e1) / den};
}

// Rational P_VI:
//
//   y'' = 1/2 (1/y + 1/(y-1) + 1/(y-t)) y'^2 - (1/t + 1/(t-1) + 1/(y-t)) y'
//         + y(y-1)(y-t) / (t^2 (t-1)^2)
//           (alpha + beta t / y^2 + gamma (t-1) / (y-1)^2 + delta t (t-1) / (y-t)^2)
inline cplx rational_p6_rhs(cplx y, cplx y1, cplx t, const ClassicalParams &c,
                            double singular_tol = 1e-12)
{
    auto near = [&](cplx a, cplx b) { return std::abs(a - b) <= singular_tol; };
    if (near(t, 0.0) || near(t, 1.0))
        throw singular_configuration_error("rational P_VI: t is 0 or 1");
    if (near(y, 0.0) || near(y, 1.0) || near(y, t))
        throw singular_configuration_error("rational P_VI: y is 0, 1 or t");
    const cplx ym1 = y - 1.0;
    const cplx ymt = y - t;
    const cplx tm1 = t - 1.0;
    const cplx first = 0.5 * (1.0 / y + 1.0 / ym1 + 1.0 / ymt) * y1 * y1;
    const cplx second = -(1.0 / t + 1.0 / tm1 + 1.0 / ymt) * y1;
    const cplx bracket = c.alpha + c.beta * t / (y * y) + c.gamma * tm1 / (ym1 * ym1)
                         + c.delta * t * tm1 / (ymt * ymt);
    return first + second + y * ym1 * ymt / (t * t * tm1 * tm1) * bracket;
}

inline cplx rational_p6_residual(cplx y, cplx y1, cplx y2, cplx t, const PainleveParams &params,
                                 double singular_tol = 1e-12)
{
    return y2 - rational_p6_rhs(y, y1, t, to_classical(params), singular_tol);
}

struct LandinResult
{
    PainleveParams params;
    // When true, q(tau) solving with the input parameters gives a solution
    // Q(sigma) = q(2 sigma) for the returned ones.
    bool applicable = false;
};

inline LandinResult landin_transform(const PainleveParams &in)
{
    const auto &a = in.alpha;
    if (a[0] != a[2] || a[1] != a[3])
        return {in, false};
    return {{{4.0 * a[0], 4.0 * a[1], cplx{}, cplx{}}}, true};
}

struct ScaledSystem
{
    EllipticState state;
    PainleveParams params;
};

// Q(T) = j q(T / j) on the lattice j (period Z + tau Z) solves the equation
// with parameters j^2 alpha; the momentum 2 pi i dQ/dT equals p.
inline ScaledSystem scaling_symmetry(const EllipticState &s, const PainleveParams &params, cplx j)
{
    if (j == cplx{})
        throw std::invalid_argument("scaling_symmetry: j must be nonzero");
    ScaledSystem out;
    out.state = {j * s.q, s.p, j * s.tau, j * s.period};
    for (int a = 0; a < 4; ++a)
        out.params.alpha[a] = j * j * params.alpha[a];
    return out;
}

inline cplx s4_shift(cplx q, cplx tau, int a)
{
    if (a < 0 || a > 3)
        throw std::out_of_range("s4_shift: half-period index must be in 0..3");
    return q + half_periods(tau)[a];
}

// alpha_0 = -2 reduces the equation to d^2q/dtau^2 = wp'(q) / (2 pi^2).
inline PainleveParams hitchin_params() { return {{cplx{-2.0, 0.0}, cplx{}, cplx{}, cplx{}}}; }

} // namespace isotorus

#endif // ISOTORUS_PAINLEVE_HPP
