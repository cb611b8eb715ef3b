#ifndef ISOTORUS_FLOW_HPP
#define ISOTORUS_FLOW_HPP

// Hamiltonian flows of the Calogero-Moser and Painleve systems.
//
//   isospectral:    dq/dt = p, dp/dt = -dH/dq            (tau frozen)
//   isomonodromic:  2 pi i dq/dtau = p, 2 pi i dp/dtau = -dH/dq
//
// and the extended 2-form on (q, p, tau)
//
//   Omega(u, v) = sum_j (dq_j ^ dp_j)(u, v) + (2 pi i)^-1 (dH ^ dtau)(u, v),
//
// whose kernel is spanned by X_H = (dH/dp, -dH/dq, 2 pi i).

#include <isotorus/calogero_moser.hpp>
#include <isotorus/elliptic.hpp>
#include <isotorus/errors.hpp>
#include <isotorus/integrator.hpp>
#include <isotorus/painleve.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

namespace isotorus
{

enum class TrajectoryKind
{
    isospectral_t,
    isomonodromic_tau,
    painleve_scalar
};

inline const char *to_string(TrajectoryKind k)
{
    switch (k) {
    case TrajectoryKind::isospectral_t:
        return "isospectral";
    case TrajectoryKind::isomonodromic_tau:
        return "isomonodromic";
    case TrajectoryKind::painleve_scalar:
        return "painleve-scalar";
    }
    return "unknown";
}

struct Sample
{
    cplx time;
    cplx tau;
    PhasePoint state;
    cplx H;
};

struct FlowDiagnostics
{
    long accepted = 0;
    long rejected = 0;
    double max_error = 0.0;
    bool truncated = false;
    std::string message;
};

struct Trajectory
{
    TrajectoryKind kind = TrajectoryKind::isospectral_t;
    int n = 0;
    cplx g{};
    std::vector<Sample> samples;
    std::vector<double> mesh; // arc-length positions of accepted steps
    FlowDiagnostics diagnostics;

    const Sample &back() const { return samples.back(); }
};

// Separations below reject_below make the integrator retry with a smaller
// step; below truncate_below the trajectory is cut off.
struct CollisionGuard
{
    double reject_below = 1e-4;
    double truncate_below = 1e-6;
};

struct FlowOptions
{
    SegmentOptions segment{};
    CollisionGuard collision{};
};

namespace detail
{

inline State pack(const PhasePoint &ph)
{
    State y(2 * ph.size());
    y << ph.q, ph.p;
    return y;
}

inline PhasePoint unpack(const State &y)
{
    const Eigen::Index n = y.size() / 2;
    return PhasePoint(y.head(n), y.tail(n));
}

inline State pack(const EquationsOfMotion &e)
{
    State y(e.dq.size() + e.dp.size());
    y << e.dq, e.dp;
    return y;
}

inline void validate_tau_path(cplx tau0, cplx tau1, cplx period = 1.0)
{
    if (!(std::imag(tau0 / period) > 0.0) || !(std::imag(tau1 / period) > 0.0))
        throw integration_error("tau path leaves the upper half-plane");
}

inline StepVerdict collision_verdict(const CMConfig &cfg, const PhasePoint &ph,
                                     const CollisionGuard &guard)
{
    const double d = min_separation(cfg, ph);
    if (d < guard.truncate_below)
        return StepVerdict::fail;
    if (d < guard.reject_below)
        return StepVerdict::reject;
    return StepVerdict::accept;
}

inline void copy_diagnostics(Trajectory &t, const SegmentResult &r)
{
    t.mesh = r.mesh;
    t.diagnostics.accepted = r.accepted;
    t.diagnostics.rejected = r.rejected;
    t.diagnostics.max_error = r.max_error;
    t.diagnostics.truncated = r.failed;
    t.diagnostics.message = r.message;
}

} // namespace detail

inline Trajectory integrate_isospectral(const CMConfig &cfg, const PhasePoint &ph0, double t0,
                                        double t1, const IntegratorConfig &icfg,
                                        const FlowOptions &opt = {})
{
    detail::check_size(cfg, ph0);
    auto rhs = [&](cplx, const State &y) { return detail::pack(eom(cfg, detail::unpack(y))); };
    auto guard = [&](cplx, const State &y) {
        return detail::collision_verdict(cfg, detail::unpack(y), opt.collision);
    };
    const SegmentResult r
        = integrate_segment(rhs, detail::pack(ph0), t0, t1, icfg, opt.segment, guard);

    Trajectory traj{TrajectoryKind::isospectral_t, cfg.n, cfg.g, {}, {}, {}};
    for (std::size_t i = 0; i < r.states.size(); ++i) {
        PhasePoint ph = detail::unpack(r.states[i]);
        const cplx H = hamiltonian_cm(cfg, ph);
        traj.samples.push_back({r.times[i], cfg.tm.tau(), std::move(ph), H});
    }
    detail::copy_diagnostics(traj, r);
    return traj;
}

inline Trajectory integrate_isomonodromic(const CMConfig &cfg, const PhasePoint &ph0, cplx tau1,
                                          const IntegratorConfig &icfg,
                                          const FlowOptions &opt = {})
{
    detail::check_size(cfg, ph0);
    const cplx tau0 = cfg.tm.tau();
    detail::validate_tau_path(tau0, tau1);
    auto rhs = [&](cplx tau, const State &y) -> State {
        return detail::pack(eom(cfg.with_tau(tau), detail::unpack(y))) / two_pi_i;
    };
    auto guard = [&](cplx tau, const State &y) {
        return detail::collision_verdict(cfg.with_tau(tau), detail::unpack(y), opt.collision);
    };
    const SegmentResult r
        = integrate_segment(rhs, detail::pack(ph0), tau0, tau1, icfg, opt.segment, guard);

    Trajectory traj{TrajectoryKind::isomonodromic_tau, cfg.n, cfg.g, {}, {}, {}};
    for (std::size_t i = 0; i < r.states.size(); ++i) {
        PhasePoint ph = detail::unpack(r.states[i]);
        const cplx H = hamiltonian_cm(cfg.with_tau(r.times[i]), ph);
        traj.samples.push_back({r.times[i], r.times[i], std::move(ph), H});
    }
    detail::copy_diagnostics(traj, r);
    return traj;
}

inline EllipticState to_elliptic_state(const Sample &s, cplx period = 1.0)
{
    return {s.state.q[0], s.state.p[0], s.tau, period};
}

// Scalar system on the lattice state0.period Z + tau Z, integrated from
// state0.tau to tau1.
inline Trajectory integrate_scalar_painleve(const EllipticState &state0,
                                            const PainleveParams &params, cplx tau1,
                                            const IntegratorConfig &icfg,
                                            const FlowOptions &opt = {},
                                            const TruncationConfig &trunc = {})
{
    detail::validate_tau_path(state0.tau, tau1, state0.period);
    const cplx period = state0.period;
    auto rhs = [&](cplx tau, const State &y) -> State {
        const auto v = painleve_vector_field({y[0], y[1], tau, period}, params, trunc);
        State out(2);
        out << v[0], v[1];
        return out;
    };
    State y0(2);
    y0 << state0.q, state0.p;
    const SegmentResult r = integrate_segment(rhs, y0, state0.tau, tau1, icfg, opt.segment);

    Trajectory traj{TrajectoryKind::painleve_scalar, 1, cplx{}, {}, {}, {}};
    for (std::size_t i = 0; i < r.states.size(); ++i) {
        const EllipticState s{r.states[i][0], r.states[i][1], r.times[i], period};
        PhasePoint ph(r.states[i].head(1), r.states[i].tail(1));
        traj.samples.push_back({r.times[i], r.times[i], std::move(ph),
                                hamiltonian_manin(s, params, trunc)});
    }
    detail::copy_diagnostics(traj, r);
    return traj;
}

struct ExtendedTangent
{
    Vector dq;
    Vector dp;
    cplx dtau{};
};

struct HamiltonianDifferential
{
    Vector dH_dq;
    Vector dH_dp;
    cplx dH_dtau{};
};

// dH/dtau at fixed (q, p) by central differences at steps h and h/2 combined
// by Richardson extrapolation.
inline cplx hamiltonian_dtau(const CMConfig &cfg, const PhasePoint &ph, double h = 1e-6)
{
    const cplx tau = cfg.tm.tau();
    auto central = [&](double s) {
        return (hamiltonian_cm(cfg.with_tau(tau + s), ph) - hamiltonian_cm(cfg.with_tau(tau - s), ph))
               / (2.0 * s);
    };
    return (4.0 * central(h / 2.0) - central(h)) / 3.0;
}

inline HamiltonianDifferential hamiltonian_differential(const CMConfig &cfg, const PhasePoint &ph,
                                                        double tau_step = 1e-6)
{
    const EquationsOfMotion e = eom(cfg, ph);
    return {-e.dp, ph.p, hamiltonian_dtau(cfg, ph, tau_step)};
}

inline ExtendedTangent hamiltonian_vector_field(const CMConfig &cfg, const PhasePoint &ph)
{
    const EquationsOfMotion e = eom(cfg, ph);
    return {e.dq, e.dp, two_pi_i};
}

inline cplx extended_two_form(const CMConfig &cfg, const PhasePoint &ph, const ExtendedTangent &u,
                              const ExtendedTangent &v, double tau_step = 1e-6)
{
    detail::check_size(cfg, ph);
    const HamiltonianDifferential dH = hamiltonian_differential(cfg, ph, tau_step);
    auto apply = [&](const ExtendedTangent &w) {
        return (dH.dH_dq.array() * w.dq.array()).sum() + (dH.dH_dp.array() * w.dp.array()).sum()
               + dH.dH_dtau * w.dtau;
    };
    cplx canonical{};
    for (int j = 0; j < cfg.n; ++j)
        canonical += u.dq[j] * v.dp[j] - u.dp[j] * v.dq[j];
    return canonical + (apply(u) * v.dtau - apply(v) * u.dtau) / two_pi_i;
}

struct SymplecticReport
{
    double residual = 0.0; // max |M^T J M - J|
    Matrix jacobian;       // d(q(tau1), p(tau1)) / d(q0, p0)
};

// Jacobian of the fibre map (q0, p0) -> (q(tau1), p(tau1)) by central
// differences. Perturbed runs replay the accepted steps of the unperturbed one
// so that the difference quotient sees one fixed discrete map.
inline SymplecticReport symplectic_jacobian_check(const CMConfig &cfg, const PhasePoint &ph0,
                                                  cplx tau1, const IntegratorConfig &icfg,
                                                  double fd_step = 1e-6)
{
    if (!(fd_step > 0.0))
        throw std::invalid_argument("symplectic_jacobian_check: fd_step must be > 0");
    const Trajectory base = integrate_isomonodromic(cfg, ph0, tau1, icfg);
    if (base.diagnostics.truncated)
        throw integration_error("symplectic_jacobian_check: base run failed: "
                                + base.diagnostics.message);
    FlowOptions replay;
    replay.segment.replay_mesh = &base.mesh;

    const int n = cfg.n;
    const State y0 = detail::pack(ph0);
    auto endpoint = [&](const State &y) {
        const Trajectory t = integrate_isomonodromic(cfg, detail::unpack(y), tau1, icfg, replay);
        if (t.diagnostics.truncated)
            throw integration_error("symplectic_jacobian_check: perturbed run collided: "
                                    + t.diagnostics.message);
        return detail::pack(t.back().state);
    };

    SymplecticReport out;
    out.jacobian.resize(2 * n, 2 * n);
    for (int c = 0; c < 2 * n; ++c) {
        State plus = y0, minus = y0;
        plus[c] += fd_step;
        minus[c] -= fd_step;
        out.jacobian.col(c) = (endpoint(plus) - endpoint(minus)) / (2.0 * fd_step);
    }
    Matrix J = Matrix::Zero(2 * n, 2 * n);
    J.topRightCorner(n, n) = Matrix::Identity(n, n);
    J.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
    out.residual = (out.jacobian.transpose() * J * out.jacobian - J).cwiseAbs().maxCoeff();
    return out;
}

} // namespace isotorus

#endif // ISOTORUS_FLOW_HPP
