#ifndef ISOTORUS_INTEGRATOR_HPP
#define ISOTORUS_INTEGRATOR_HPP

// Explicit Runge-Kutta integration of holomorphic systems dy/ds = f(s, y)
// along a straight segment s0 -> s1 of the complex plane. The segment is
// parametrized by arc length lambda in [0, |s1 - s0|], so step control works
// with a real step size while the state and the time stay complex.

#include <isotorus/elliptic.hpp>
#include <isotorus/errors.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace isotorus
{

using State = Eigen::VectorXcd;

enum class Method
{
    rk4_fixed,
    rk45_adaptive
};

struct IntegratorConfig
{
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    // First trial step for rk45_adaptive, the step for rk4_fixed (arc length).
    double initial_step = 1e-2;
    long max_steps = 200000;
    Method method = Method::rk45_adaptive;

    void validate() const
    {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw std::invalid_argument("IntegratorConfig: tolerances must be > 0");
        if (!(initial_step > 0.0))
            throw std::invalid_argument("IntegratorConfig: initial_step must be > 0");
        if (max_steps < 1)
            throw std::invalid_argument("IntegratorConfig: max_steps must be >= 1");
    }
};

enum class StepVerdict
{
    accept,
    reject,
    fail
};

struct SegmentOptions
{
    // 0 records every accepted step; otherwise the integrator lands exactly on
    // `samples` equal subdivisions of the segment and records only those.
    int samples = 0;
    // When set, rk45 takes exactly these steps (arc-length positions, starting
    // at 0) without error control. Used to differentiate the discrete flow map
    // with respect to initial data.
    const std::vector<double> *replay_mesh = nullptr;
};

struct SegmentResult
{
    std::vector<cplx> times;
    std::vector<State> states;
    std::vector<double> mesh; // arc-length positions of accepted steps, from 0
    long accepted = 0;
    long rejected = 0;
    double max_error = 0.0; // largest scaled error norm of an accepted step
    bool failed = false;
    std::string message;
};

namespace detail
{

struct AlwaysAccept
{
    StepVerdict operator()(cplx, const State &) const { return StepVerdict::accept; }
};

// Dormand-Prince 5(4) tableau.
struct DormandPrince
{
    static constexpr double c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
    static constexpr double a[7][6] = {
        {},
        {1.0 / 5},
        {3.0 / 40, 9.0 / 40},
        {44.0 / 45, -56.0 / 15, 32.0 / 9},
        {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
        {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
        {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
    };
    // b5 - b4
    static constexpr double e[7] = {71.0 / 57600,    0.0,          -71.0 / 16695, 71.0 / 1920,
                                     -17253.0 / 339200, 22.0 / 525, -1.0 / 40};
};

} // namespace detail

template <class Rhs, class Guard = detail::AlwaysAccept>
SegmentResult integrate_segment(Rhs &&rhs, const State &y0, cplx s0, cplx s1,
                                const IntegratorConfig &cfg, const SegmentOptions &opt = {},
                                Guard &&guard = Guard{})
{
    cfg.validate();
    SegmentResult out;
    out.times.push_back(s0);
    out.states.push_back(y0);
    out.mesh.push_back(0.0);

    const double length = std::abs(s1 - s0);
    if (length == 0.0)
        return out;
    const cplx dir = (s1 - s0) / length;
    auto time_at = [&](double lam) { return lam >= length ? s1 : s0 + lam * dir; };
    auto f = [&](double lam, const State &y) -> State { return dir * rhs(time_at(lam), y); };

    std::vector<double> grid;
    if (opt.samples > 0)
        for (int k = 1; k <= opt.samples; ++k)
            grid.push_back(length * k / opt.samples);
    else
        grid.push_back(length);

    State y = y0;
    double lam = 0.0;

    if (cfg.method == Method::rk4_fixed) {
        long steps = static_cast<long>(std::ceil(length / cfg.initial_step - 1e-12));
        steps = std::max(steps, 1L);
        if (opt.samples > 0)
            steps = opt.samples * ((steps + opt.samples - 1) / opt.samples);
        if (steps > cfg.max_steps) {
            out.failed = true;
            out.message = "rk4_fixed: step count exceeds max_steps";
            return out;
        }
        const long per_sample = opt.samples > 0 ? steps / opt.samples : 1;
        const double h = length / static_cast<double>(steps);
        for (long i = 0; i < steps; ++i) {
            try {
                const State k1 = f(lam, y);
                const State k2 = f(lam + h / 2, y + (h / 2) * k1);
                const State k3 = f(lam + h / 2, y + (h / 2) * k2);
                const State k4 = f(lam + h, y + h * k3);
                y += (h / 6) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            } catch (const std::domain_error &err) {
                out.failed = true;
                out.message = err.what();
                return out;
            }
            lam = (i + 1 == steps) ? length : h * static_cast<double>(i + 1);
            if (guard(time_at(lam), y) == StepVerdict::fail) {
                out.failed = true;
                out.message = "step guard failed";
                return out;
            }
            ++out.accepted;
            out.mesh.push_back(lam);
            if ((i + 1) % per_sample == 0) {
                out.times.push_back(time_at(lam));
                out.states.push_back(y);
            }
        }
        return out;
    }

    using DP = detail::DormandPrince;
    State k[7];

    auto dp_step = [&](double at, const State &yy, double h, bool want_error, double &err) -> State {
        k[0] = f(at, yy);
        for (int s = 1; s < 7; ++s) {
            State acc = yy;
            for (int j = 0; j < s; ++j)
                if (DP::a[s][j] != 0.0)
                    acc += (h * DP::a[s][j]) * k[j];
            k[s] = f(at + DP::c[s] * h, acc);
        }
        State next = yy;
        for (int j = 0; j < 6; ++j)
            if (DP::a[6][j] != 0.0)
                next += (h * DP::a[6][j]) * k[j];
        err = 0.0;
        if (want_error) {
            for (Eigen::Index i = 0; i < yy.size(); ++i) {
                cplx e{};
                for (int j = 0; j < 7; ++j)
                    e += DP::e[j] * k[j][i];
                const double scale
                    = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(yy[i]), std::abs(next[i]));
                err = std::max(err, std::abs(h * e) / scale);
            }
        }
        return next;
    };

    if (opt.replay_mesh != nullptr) {
        const auto &mesh = *opt.replay_mesh;
        for (std::size_t i = 1; i < mesh.size(); ++i) {
            const double h = mesh[i] - mesh[i - 1];
            double err = 0.0;
            try {
                y = dp_step(mesh[i - 1], y, h, false, err);
            } catch (const std::domain_error &ex) {
                out.failed = true;
                out.message = ex.what();
                return out;
            }
            ++out.accepted;
            out.mesh.push_back(mesh[i]);
            out.times.push_back(time_at(mesh[i]));
            out.states.push_back(y);
        }
        return out;
    }

    const double min_step = 1e-13 * std::max(length, 1.0);
    double h = std::min(cfg.initial_step, length);
    std::size_t target = 0;
    long attempts = 0;
    while (target < grid.size()) {
        if (++attempts > cfg.max_steps) {
            out.failed = true;
            out.message = "rk45: exceeded max_steps";
            return out;
        }
        const double stop = grid[target];
        const bool clipped = h >= stop - lam;
        const double hh = clipped ? stop - lam : h;

        double err = 0.0;
        State next;
        bool evaluated = true;
        try {
            next = dp_step(lam, y, hh, true, err);
        } catch (const std::domain_error &) {
            evaluated = false;
        }
        if (!evaluated || !std::isfinite(err)) {
            ++out.rejected;
            h = hh * 0.25;
            if (h < min_step) {
                out.failed = true;
                out.message = "rk45: step size underflow near a singularity";
                return out;
            }
            continue;
        }

        if (err <= 1.0) {
            const double at = clipped ? stop : lam + hh;
            const StepVerdict verdict = guard(time_at(at), next);
            if (verdict == StepVerdict::fail) {
                out.failed = true;
                out.message = "step guard failed";
                return out;
            }
            if (verdict == StepVerdict::reject) {
                ++out.rejected;
                h = hh * 0.5;
                if (h < min_step) {
                    out.failed = true;
                    out.message = "rk45: step size underflow in guarded region";
                    return out;
                }
                continue;
            }
            lam = at;
            y = next;
            ++out.accepted;
            out.max_error = std::max(out.max_error, err);
            out.mesh.push_back(lam);
            if (opt.samples == 0 || clipped) {
                out.times.push_back(time_at(lam));
                out.states.push_back(y);
            }
            if (clipped)
                ++target;
            const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-12), -0.2), 0.2, 5.0);
            h = clipped ? std::max(h, hh * fac) : hh * fac;
        } else {
            ++out.rejected;
            h = hh * std::max(0.2, 0.9 * std::pow(err, -0.2));
            if (h < min_step) {
                out.failed = true;
                out.message = "rk45: step size underflow";
                return out;
            }
        }
    }
    return out;
}

} // namespace isotorus

#endif // ISOTORUS_INTEGRATOR_HPP
