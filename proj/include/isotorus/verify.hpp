#ifndef ISOTORUS_VERIFY_HPP
#define ISOTORUS_VERIFY_HPP

// Seeded property suites. Each check is a residual compared with a fixed
// tolerance; a suite passes when every residual is below its tolerance.

#include <isotorus/calogero_moser.hpp>
#include <isotorus/elliptic.hpp>
#include <isotorus/flow.hpp>
#include <isotorus/monodromy.hpp>
#include <isotorus/painleve.hpp>
#include <isotorus/random.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace isotorus::verify
{

struct CheckResult
{
    std::string name;
    double residual;
    double tolerance;

    bool passed() const { return residual < tolerance; }
};

struct SuiteReport
{
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const
    {
        return std::all_of(checks.begin(), checks.end(),
                           [](const CheckResult &c) { return c.passed(); });
    }
};

struct VerifyOptions
{
    std::uint64_t seed = 7;
    int count = 0; // 0 selects the suite default
    int n = 0;     // 0 selects the suite default set of sizes
};

inline const std::vector<std::string> &suite_names()
{
    static const std::vector<std::string> names
        = {"lame-identities", "theta-heat",     "quasi-periodicity",   "zero-curvature",
           "hamilton-consistency", "symmetry-maps", "symplectic-jacobian", "monodromy"};
    return names;
}

// Random data generators shared with the tests.

inline cplx random_tau(SplitMix64 &rng) { return rng.complex_in(-0.5, 0.5, 0.7, 1.6); }

inline cplx random_cell_point(SplitMix64 &rng, cplx tau, double margin = 0.1)
{
    return rng.uniform(margin, 1.0 - margin) + rng.uniform(margin, 1.0 - margin) * tau;
}

inline PhasePoint random_phase_point(SplitMix64 &rng, int n, cplx tau, double min_sep = 0.15)
{
    const EllipticKernel k{TorusModulus(tau)};
    for (;;) {
        Vector q(n), p(n);
        for (int j = 0; j < n; ++j) {
            q[j] = random_cell_point(rng, tau, 0.05);
            p[j] = rng.complex_in(-0.5, 0.5, -0.5, 0.5);
        }
        bool ok = true;
        for (int j = 0; j < n && ok; ++j) {
            ok = k.lattice_distance(q[j]) >= min_sep;
            for (int l = j + 1; l < n && ok; ++l)
                ok = k.lattice_distance(q[j] - q[l]) >= min_sep;
        }
        if (ok)
            return PhasePoint(q, p);
    }
}

// Spectral parameter away from every pole of L, A in both gauges and from the
// zeros of the gauge entries x(q_j, z).
inline cplx random_spectral_point(SplitMix64 &rng, const PhasePoint &ph, cplx tau,
                                  double min_dist = 0.1)
{
    const EllipticKernel k{TorusModulus(tau)};
    for (;;) {
        const cplx z = random_cell_point(rng, tau, 0.05);
        bool ok = k.lattice_distance(z) >= min_dist;
        for (int j = 0; j < ph.size() && ok; ++j) {
            ok = k.lattice_distance(z - ph.q[j]) >= min_dist;
            for (int l = 0; l < ph.size() && ok; ++l)
                if (l != j)
                    ok = k.lattice_distance(z - (ph.q[j] - ph.q[l])) >= min_dist;
        }
        if (ok)
            return z;
    }
}

namespace detail
{

// Central difference at h and h/2 with Richardson extrapolation.
template <class F>
auto richardson_derivative(F &&f, double h)
{
    auto central = [&](double s) { return (f(s) - f(-s)) / (2.0 * s); };
    return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

inline double rel(cplx diff, double scale) { return std::abs(diff) / std::max(scale, 1e-300); }

inline int count_or(const VerifyOptions &o, int fallback) { return o.count > 0 ? o.count : fallback; }

inline std::vector<int> sizes_or(const VerifyOptions &o, std::vector<int> fallback)
{
    return o.n > 0 ? std::vector<int>{o.n} : fallback;
}

inline std::string tag(const std::string &base, int i) { return base + "#" + std::to_string(i); }

} // namespace detail

struct LamePoint
{
    cplx tau, u, v, z;
};

inline LamePoint random_lame_point(SplitMix64 &rng, double min_dist = 0.05)
{
    for (;;) {
        LamePoint pt;
        pt.tau = random_tau(rng);
        pt.u = random_cell_point(rng, pt.tau, 0.05);
        pt.v = random_cell_point(rng, pt.tau, 0.05);
        pt.z = random_cell_point(rng, pt.tau, 0.05);
        const EllipticKernel k{TorusModulus(pt.tau)};
        bool ok = true;
        for (cplx w : {pt.u, pt.v, pt.u + pt.v, pt.u - pt.v, pt.z, pt.z - pt.u, pt.z - pt.v,
                       pt.z + pt.u, pt.z - pt.u - pt.v})
            ok = ok && k.lattice_distance(w) >= min_dist;
        if (ok)
            return pt;
    }
}

// Relative residuals of
//   (a) x(u)y(v) - y(u)x(v) = x(u+v)(wp(u) - wp(v))
//   (b) x(u)y(-u) - y(u)x(-u) = wp'(u)
//   (c) x(u)x(-u) = wp(z) - wp(u)
// each divided by the sum of the magnitudes of its terms.
inline std::array<double, 3> lame_identity_residuals(const LamePoint &pt)
{
    const EllipticKernel k{TorusModulus(pt.tau)};
    const LameJet xu = k.lame(pt.u, pt.z), xv = k.lame(pt.v, pt.z), xm = k.lame(-pt.u, pt.z);
    const cplx xuv = k.lame_x(pt.u + pt.v, pt.z);
    const cplx wu = k.wp(pt.u), wv = k.wp(pt.v), wz = k.wp(pt.z), dwu = k.wp_dz(pt.u);

    const cplx a1 = xu.x * xv.dx_du, a2 = xu.dx_du * xv.x, a3 = xuv * (wu - wv);
    const cplx b1 = xu.x * xm.dx_du, b2 = xu.dx_du * xm.x;
    const cplx c1 = xu.x * xm.x;
    return {detail::rel(a1 - a2 - a3, std::abs(a1) + std::abs(a2) + std::abs(xuv) * (std::abs(wu) + std::abs(wv))),
            detail::rel(b1 - b2 - dwu, std::abs(b1) + std::abs(b2) + std::abs(dwu)),
            detail::rel(c1 - (wz - wu), std::abs(c1) + std::abs(wz) + std::abs(wu))};
}

inline SuiteReport lame_identities(const VerifyOptions &o)
{
    SplitMix64 rng(o.seed);
    SuiteReport r{"lame-identities", {}};
    const int count = detail::count_or(o, 100);
    for (int i = 0; i < count; ++i) {
        const auto res = lame_identity_residuals(random_lame_point(rng));
        r.checks.push_back({detail::tag("addition", i), res[0], 1e-9});
        r.checks.push_back({detail::tag("wp-prime", i), res[1], 1e-9});
        r.checks.push_back({detail::tag("product", i), res[2], 1e-9});
    }
    return r;
}

// |4 pi i dtheta/dtau - d^2theta/dz^2| / max(1, |d^2theta/dz^2|), by central
// differences of step h in tau and z.
inline double theta_heat_residual(cplx z, cplx tau, double h = 1e-4)
{
    const EllipticKernel k{TorusModulus(tau)};
    const EllipticKernel kp{TorusModulus(tau + h)}, km{TorusModulus(tau - h)};
    const cplx dtau = (kp.theta1(z) - km.theta1(z)) / (2.0 * h);
    const cplx dzz = (k.theta1(z + h) - 2.0 * k.theta1(z) + k.theta1(z - h)) / (h * h);
    return std::abs(2.0 * two_pi_i * dtau - dzz) / std::max(1.0, std::abs(dzz));
}

// |2 pi i dx/dtau + d^2x/dudz| / max(1, |d^2x/dudz|), same difference scheme.
inline double lame_heat_residual(cplx u, cplx z, cplx tau, double h = 1e-4)
{
    const EllipticKernel k{TorusModulus(tau)};
    const EllipticKernel kp{TorusModulus(tau + h)}, km{TorusModulus(tau - h)};
    const cplx dtau = (kp.lame_x(u, z) - km.lame_x(u, z)) / (2.0 * h);
    const cplx duz = (k.lame_x(u + h, z + h) - k.lame_x(u + h, z - h) - k.lame_x(u - h, z + h)
                      + k.lame_x(u - h, z - h))
                     / (4.0 * h * h);
    return std::abs(two_pi_i * dtau + duz) / std::max(1.0, std::abs(duz));
}

inline SuiteReport theta_heat(const VerifyOptions &o)
{
    SplitMix64 rng(o.seed);
    SuiteReport r{"theta-heat", {}};
    const int count = detail::count_or(o, 50);
    for (int i = 0; i < count; ++i) {
        const cplx tau = random_tau(rng);
        const cplx z = random_cell_point(rng, tau);
        r.checks.push_back({detail::tag("theta1", i), theta_heat_residual(z, tau), 1e-5});
    }
    for (int i = 0; i < count; ++i) {
        const LamePoint pt = random_lame_point(rng);
        r.checks.push_back({detail::tag("lame-x", i), lame_heat_residual(pt.u, pt.z, pt.tau), 1e-5});
    }
    return r;
}

inline SuiteReport quasi_periodicity(const VerifyOptions &o)
{
    SplitMix64 rng(o.seed);
    SuiteReport r{"quasi-periodicity", {}};
    const int count = detail::count_or(o, 50);
    for (int i = 0; i < count; ++i) {
        const LamePoint pt = random_lame_point(rng);
        const EllipticKernel k{TorusModulus(pt.tau)};
        const cplx th = k.theta1(pt.z);
        const cplx th_b = -std::exp(-imag_unit * pi * (pt.tau + 2.0 * pt.z)) * th;
        r.checks.push_back({detail::tag("theta1-b-cycle", i),
                            detail::rel(k.theta1(pt.z + pt.tau) - th_b, std::abs(th_b)), 1e-10});
        const cplx x = k.lame_x(pt.u, pt.z);
        r.checks.push_back({detail::tag("x-u-a-cycle", i),
                            detail::rel(k.lame_x(pt.u + 1.0, pt.z) - x, std::abs(x)), 1e-10});
        const cplx xb = std::exp(two_pi_i * pt.z) * x;
        r.checks.push_back({detail::tag("x-u-b-cycle", i),
                            detail::rel(k.lame_x(pt.u + pt.tau, pt.z) - xb, std::abs(xb)), 1e-10});
    }
    for (int n : detail::sizes_or(o, {2, 3, 4}))
        for (int i = 0; i < count; ++i) {
            CMConfig cfg;
            cfg.n = n;
            cfg.g = rng.complex_in(0.2, 1.2, -0.3, 0.3);
            cfg.tm = TorusModulus(random_tau(rng));
            const PhasePoint ph = random_phase_point(rng, n, cfg.tm.tau());
            const cplx z = random_spectral_point(rng, ph, cfg.tm.tau());
            const QuasiPeriodicityReport q = quasi_periodicity_check(cfg, ph, z);
            r.checks.push_back({detail::tag("lax-n" + std::to_string(n), i), q.max(), 1e-8});
        }
    return r;
}

inline SuiteReport zero_curvature(const VerifyOptions &o)
{
    SplitMix64 rng(o.seed);
    SuiteReport r{"zero-curvature", {}};
    const int count = detail::count_or(o, 20);
    for (int n : detail::sizes_or(o, {2, 3}))
        for (int i = 0; i < count; ++i) {
            CMConfig cfg;
            cfg.n = n;
            cfg.g = rng.complex_in(0.2, 1.2, -0.3, 0.3);
            cfg.tm = TorusModulus(random_tau(rng));
            const PhasePoint ph = random_phase_point(rng, n, cfg.tm.tau());
            const cplx z = random_spectral_point(rng, ph, cfg.tm.tau());
            const std::string base = "n" + std::to_string(n);
            r.checks.push_back({detail::tag(base + "-quasi", i),
                                zero_curvature_residual(cfg, ph, z, 1e-5).relative(), 1e-6});
            r.checks.push_back(
                {detail::tag(base + "-periodic", i),
                 zero_curvature_residual(cfg, ph, z, 1e-5, Gauge::periodic).relative(), 1e-6});
        }
    return r;
}

// max_j |dH/dq_j + dp_j| and max_j |dH/dp_j - dq_j| with dH by differences.
inline std::array<double, 2> cm_gradient_residuals(const CMConfig &cfg, const PhasePoint &ph,
                                                   double h = 1e-5)
{
    const EquationsOfMotion e = eom(cfg, ph);
    double rq = 0.0, rp = 0.0;
    for (int j = 0; j < cfg.n; ++j) {
        const cplx dHdq = detail::richardson_derivative(
            [&](double s) {
                PhasePoint m = ph;
                m.q[j] += s;
                return hamiltonian_cm(cfg, m);
            },
            h);
        const cplx dHdp = detail::richardson_derivative(
            [&](double s) {
                PhasePoint m = ph;
                m.p[j] += s;
                return hamiltonian_cm(cfg, m);
            },
            h);
        rq = std::max(rq, std::abs(dHdq + e.dp[j]));
        rp = std::max(rp, std::abs(dHdp - e.dq[j]));
    }
    return {rq, rp};
}

inline PainleveParams random_painleve_params(SplitMix64 &rng)
{
    PainleveParams p;
    for (auto &a : p.alpha)
        a = rng.complex_in(-0.5, 0.5, -0.5, 0.5);
    return p;
}

inline SuiteReport hamilton_consistency(const VerifyOptions &o)
{
    SplitMix64 rng(o.seed);
    SuiteReport r{"hamilton-consistency", {}};
    const int count = detail::count_or(o, 10);
    for (int n : detail::sizes_or(o, {2, 3}))
        for (int i = 0; i < count; ++i) {
            CMConfig cfg;
            cfg.n = n;
            cfg.g = rng.complex_in(0.2, 1.2, -0.3, 0.3);
            cfg.tm = TorusModulus(random_tau(rng));
            const PhasePoint ph = random_phase_point(rng, n, cfg.tm.tau());
            const auto res = cm_gradient_residuals(cfg, ph);
            const std::string base = "cm-n" + std::to_string(n);
            r.checks.push_back({detail::tag(base + "-dq", i), res[0], 1e-6});
            r.checks.push_back({detail::tag(base + "-dp", i), res[1], 1e-8});
        }
    for (int i = 0; i < count; ++i) {
        const cplx tau = random_tau(rng);
        const PainleveParams params = random_painleve_params(rng);
        EllipticState s{0.0, rng.complex_in(-0.5, 0.5, -0.5, 0.5), tau};
        const EllipticKernel k{TorusModulus(tau)};
        for (;;) {
            s.q = random_cell_point(rng, tau, 0.05);
            const auto w = half_periods(tau);
            bool ok = true;
            for (cplx om : w)
                ok = ok && k.lattice_distance(s.q + om) > 0.1;
            if (ok)
                break;
        }
        const cplx dHdq = detail::richardson_derivative(
            [&](double h) {
                EllipticState m = s;
                m.q += h;
                return hamiltonian_manin(m, params);
            },
            1e-5);
        const cplx dHdp = detail::richardson_derivative(
            [&](double h) {
                EllipticState m = s;
                m.p += h;
                return hamiltonian_manin(m, params);
            },
            1e-5);
        const cplx rhs = elliptic_p6_rhs(s, params);
        r.checks.push_back({detail::tag("manin-dq", i), std::abs(-dHdq - rhs), 1e-6});
        r.checks.push_back({detail::tag("manin-dp", i), std::abs(dHdp - s.p), 1e-8});
    }
    return r;
}

struct TwoTrajectoryCheck
{
    double difference;
    double negative_control; // NaN when not applicable
};

// Landin: with (a, b, a, b), Q(sigma) = q(2 sigma) solves the (4a, 4b, 0, 0)
// equation. Returns |Q((tau0 + dtau)/2) - q(tau0 + dtau)|.
inline double landin_two_trajectory(const EllipticState &s0, cplx a, cplx b, cplx dtau,
                                    const IntegratorConfig &icfg)
{
    const PainleveParams params{{a, b, a, b}};
    const LandinResult L = landin_transform(params);
    const Trajectory direct = integrate_scalar_painleve(s0, params, s0.tau + dtau, icfg);
    const EllipticState S{s0.q, 2.0 * s0.p, s0.tau / 2.0};
    const Trajectory mapped = integrate_scalar_painleve(S, L.params, (s0.tau + dtau) / 2.0, icfg);
    if (direct.diagnostics.truncated || mapped.diagnostics.truncated)
        throw integration_error("landin_two_trajectory: integration failed");
    return std::abs(mapped.back().state.q[0] - direct.back().state.q[0]);
}

// Scaling: compares Q(j (tau0 + dtau)) with j q(tau0 + dtau). The negative
// control replaces the j^2 parameter map by alpha / j^3.
inline TwoTrajectoryCheck scaling_two_trajectory(const EllipticState &s0,
                                                 const PainleveParams &params, cplx j, cplx dtau,
                                                 const IntegratorConfig &icfg)
{
    const cplx tau1 = s0.tau + dtau;
    const Trajectory direct = integrate_scalar_painleve(s0, params, tau1, icfg);
    const ScaledSystem sc = scaling_symmetry(s0, params, j);
    const Trajectory mapped = integrate_scalar_painleve(sc.state, sc.params, j * tau1, icfg);
    PainleveParams wrong = params;
    for (auto &a : wrong.alpha)
        a /= j * j * j;
    const Trajectory control = integrate_scalar_painleve(sc.state, wrong, j * tau1, icfg);
    if (direct.diagnostics.truncated || mapped.diagnostics.truncated
        || control.diagnostics.truncated)
        throw integration_error("scaling_two_trajectory: integration failed");
    const cplx expected = j * direct.back().state.q[0];
    return {std::abs(mapped.back().state.q[0] - expected),
            std::abs(control.back().state.q[0] - expected)};
}

inline SuiteReport symmetry_maps(const VerifyOptions &o)
{
    SplitMix64 rng(o.seed);
    SuiteReport r{"symmetry-maps", {}};
    const int count = detail::count_or(o, 50);
    for (int i = 0; i < count; ++i) {
        const cplx tau = rng.complex_in(-0.5, 0.5, 1.0, 2.0);
        const cplx z = random_cell_point(rng, tau / 2.0, 0.1);
        const EllipticKernel k{TorusModulus(tau)}, kh{TorusModulus(tau / 2.0)};
        const cplx lhs = kh.wp_dz(z);
        const cplx rhs1 = k.wp_dz(z), rhs2 = k.wp_dz(z + tau / 2.0);
        r.checks.push_back({detail::tag("landin-wp-prime", i),
                            detail::rel(lhs - rhs1 - rhs2, std::abs(lhs) + std::abs(rhs1) + std::abs(rhs2)),
                            1e-9});

        const double mod = rng.uniform(0.5, 2.0);
        const cplx j = std::polar(mod, rng.uniform(-pi, pi));
        const GeneralLattice lat{1.0, tau};
        const GeneralLattice scaled{j, j * tau};
        const cplx w = wp_general(z, lat), ws = wp_general(j * z, scaled);
        const cplx dw = wp_dz_general(z, lat), dws = wp_dz_general(j * z, scaled);
        r.checks.push_back({detail::tag("homogeneity-wp", i),
                            detail::rel(w - j * j * ws, std::abs(w)), 1e-9});
        r.checks.push_back({detail::tag("homogeneity-wp-prime", i),
                            detail::rel(dw - j * j * j * dws, std::abs(dw)), 1e-9});

        const PainleveParams params = random_painleve_params(rng);
        const cplx q = random_cell_point(rng, tau, 0.15);
        const cplx f = elliptic_p6_rhs(q, tau, params);
        const cplx shifted = elliptic_p6_rhs(q + 1.0 + tau, tau, params);
        r.checks.push_back({detail::tag("lattice-shift", i), detail::rel(shifted - f, std::abs(f)), 1e-10});
    }

    IntegratorConfig icfg;
    icfg.abs_tol = icfg.rel_tol = 1e-12;
    const EllipticState s0{cplx(0.23, 0.17), cplx(0.4, -0.3), cplx(0.1, 1.0)};
    r.checks.push_back({"landin-trajectory",
                        landin_two_trajectory(s0, cplx(0.3, 0.1), cplx(-0.2, 0.05), cplx(0.0, 0.05), icfg),
                        1e-6});
    const PainleveParams params{{cplx(0.3, 0.1), cplx(-0.2, 0.05), cplx(0.15, 0.0), cplx(0.1, -0.2)}};
    const TwoTrajectoryCheck sc = scaling_two_trajectory(s0, params, cplx(1.3, 0.2), cplx(0.0, 0.05), icfg);
    r.checks.push_back({"scaling-trajectory", sc.difference, 1e-6});
    return r;
}

inline SuiteReport symplectic_jacobian(const VerifyOptions &o)
{
    SplitMix64 rng(o.seed);
    SuiteReport r{"symplectic-jacobian", {}};
    const int count = detail::count_or(o, 3);
    IntegratorConfig icfg;
    icfg.abs_tol = icfg.rel_tol = 1e-11;
    for (int n : detail::sizes_or(o, {2}))
        for (int i = 0; i < count; ++i) {
            CMConfig cfg;
            cfg.n = n;
            cfg.g = rng.complex_in(0.3, 1.0, -0.2, 0.2);
            cfg.tm = TorusModulus(cplx(0.0, 1.0));
            const PhasePoint ph = random_phase_point(rng, n, cfg.tm.tau(), 0.2);
            const double res
                = symplectic_jacobian_check(cfg, ph, cfg.tm.tau() + 0.05, icfg, 1e-6).residual;
            r.checks.push_back({detail::tag("n" + std::to_string(n), i), res, 1e-5});
        }
    return r;
}

inline SuiteReport monodromy(const VerifyOptions &o)
{
    SplitMix64 rng(o.seed);
    SuiteReport r{"monodromy", {}};
    const int count = detail::count_or(o, 1);
    IntegratorConfig icfg;
    icfg.abs_tol = icfg.rel_tol = 1e-12;
    for (int n : detail::sizes_or(o, {2, 3}))
        for (int i = 0; i < count; ++i) {
            CMConfig cfg;
            cfg.n = n;
            cfg.g = rng.complex_in(0.2, 0.4, 0.0, 0.0);
            cfg.tm = TorusModulus(rng.complex_in(-0.2, 0.2, 0.9, 1.2));
            const PhasePoint ph = random_phase_point(rng, n, cfg.tm.tau(), 0.2);
            const std::string base = "n" + std::to_string(n);
            const MonodromyData md = compute_monodromy(cfg, ph, icfg);
            r.checks.push_back({detail::tag(base + "-cubic", i), cubic_relation_residual(md), 1e-5});

            const DriftReport d = isomonodromy_drift(cfg, ph, cplx(0.0, 1e-2), icfg, icfg);
            r.checks.push_back({detail::tag(base + "-drift", i), d.drift, 1e-5});
            PhasePoint perturbed = ph;
            perturbed.p[0] += 1e-2;
            const double control
                = monodromy_spectral_distance(md, compute_monodromy(cfg, perturbed, icfg));
            // passes when the control exceeds ten times the drift
            r.checks.push_back({detail::tag(base + "-control-ratio", i),
                                10.0 * d.drift / std::max(control, 1e-300), 1.0});

            CMConfig free = cfg;
            free.g = 0.0;
            const MonodromyData m0 = compute_monodromy(free, ph, icfg);
            const Matrix M1 = ph.p.array().exp().matrix().asDiagonal();
            const Matrix Mtau = twist_matrix(ph, -1.0)
                                * Matrix((ph.p * cfg.tm.tau()).array().exp().matrix().asDiagonal());
            const double closed = std::max({(m0.M1 - M1).cwiseAbs().maxCoeff(),
                                            (m0.Mtau - Mtau).cwiseAbs().maxCoeff(),
                                            (m0.M0 - Matrix::Identity(n, n)).cwiseAbs().maxCoeff()});
            r.checks.push_back({detail::tag(base + "-free-closed-form", i), closed, 1e-9});
        }
    return r;
}

inline SuiteReport run_suite(const std::string &name, const VerifyOptions &o)
{
    static const std::map<std::string, std::function<SuiteReport(const VerifyOptions &)>> table
        = {{"lame-identities", lame_identities},
           {"theta-heat", theta_heat},
           {"quasi-periodicity", quasi_periodicity},
           {"zero-curvature", zero_curvature},
           {"hamilton-consistency", hamilton_consistency},
           {"symmetry-maps", symmetry_maps},
           {"symplectic-jacobian", symplectic_jacobian},
           {"monodromy", monodromy}};
    const auto it = table.find(name);
    if (it == table.end())
        throw std::invalid_argument("unknown suite '" + name + "'");
    return it->second(o);
}

} // namespace isotorus::verify

#endif // ISOTORUS_VERIFY_HPP
