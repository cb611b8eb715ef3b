#ifndef ISOTORUS_TESTS_SUPPORT_HPP
#define ISOTORUS_TESTS_SUPPORT_HPP

// Library-driven measurements shared by the unit tests and the acceptance run.

#include "oracles.hpp"

#include <isotorus/flow.hpp>
#include <isotorus/painleve.hpp>

#include <cmath>

namespace support
{

using namespace isotorus;

// Integrates the elliptic equation from s0 over dtau = 0.04i sampled at step h,
// maps the middle three samples to (y, t) and returns the rational residual of
// the second-order difference quotients dy/dt, d^2y/dt^2, evaluated with
// `check` as the parameters of the rational equation.
inline double rational_bridge_residual(const EllipticState &s0, const PainleveParams &params,
                                       const PainleveParams &check, double h)
{
    const double span = 0.04;
    const int samples = static_cast<int>(std::lround(span / h));
    IntegratorConfig ic;
    ic.abs_tol = ic.rel_tol = 1e-13;
    FlowOptions opt;
    opt.segment.samples = samples;
    const Trajectory t = integrate_scalar_painleve(s0, params, s0.tau + cplx(0.0, span), ic, opt);
    if (t.diagnostics.truncated)
        throw integration_error("rational_bridge_residual: " + t.diagnostics.message);
    const int m = samples / 2;
    auto Y = [&](int i) { return elliptic_to_rational(t.samples[i].state.q[0], t.samples[i].tau); };
    const RationalPoint a = Y(m - 1), b = Y(m), c = Y(m + 1);
    const cplx d = t.samples[m + 1].tau - t.samples[m].tau;
    const cplx yt = (c.y - a.y) / (2.0 * d), ytt = (c.y - 2.0 * b.y + a.y) / (d * d);
    const cplx tt = (c.t - a.t) / (2.0 * d), ttt = (c.t - 2.0 * b.t + a.t) / (d * d);
    const cplx y1 = yt / tt;
    const cplx y2 = (ytt - y1 * ttt) / (tt * tt);
    return std::abs(rational_p6_residual(b.y, y1, y2, b.t, check));
}

// alpha_2 and alpha_3 exchanged: the rational equation that corresponds to the
// half-period list (0, 1/2, (1+tau)/2, tau/2).
inline PainleveParams swap_last_two(PainleveParams p)
{
    std::swap(p.alpha[2], p.alpha[3]);
    return p;
}

struct ReductionReport
{
    double sign;     // best global s in Q'' = s g^2 wp'(2Q)
    double residual; // max |Q'' - s g^2 wp'(2Q)| over the probe points
};

// N = 2 isospectral flow: Q = (q_0 - q_1)/2, Q'' from an 8th-order stencil
// on 100 samples spaced h apart.
inline ReductionReport two_body_reduction(cplx g, cplx tau, const PhasePoint &ph0, double h = 1e-2)
{
    CMConfig cfg;
    cfg.n = 2;
    cfg.g = g;
    cfg.tm = TorusModulus(tau);
    const int samples = 100;
    IntegratorConfig ic;
    ic.abs_tol = ic.rel_tol = 1e-14;
    FlowOptions opt;
    opt.segment.samples = samples;
    const Trajectory t = integrate_isospectral(cfg, ph0, 0.0, h * samples, ic, opt);
    if (t.diagnostics.truncated)
        throw integration_error("two_body_reduction: " + t.diagnostics.message);
    const EllipticKernel k(cfg.tm);
    auto Q = [&](int i) { return (t.samples[i].state.q[0] - t.samples[i].state.q[1]) / 2.0; };

    cplx num{}, den{};
    std::vector<std::pair<cplx, cplx>> probes;
    for (int c = 10; c <= 90; c += 10) {
        const cplx qdd = oracle::second_derivative_8([&](int k2) { return Q(c + k2); }, h);
        const cplx force = g * g * k.wp_dz(2.0 * Q(c));
        probes.emplace_back(qdd, force);
        num += std::conj(force) * qdd;
        den += std::norm(force);
    }
    const double s = std::real(num / den) >= 0.0 ? 1.0 : -1.0;
    double worst = 0.0;
    for (const auto &[qdd, force] : probes)
        worst = std::max(worst, std::abs(qdd - s * force));
    return {s, worst};
}

} // namespace support

#endif // ISOTORUS_TESTS_SUPPORT_HPP
