// isotorus command-line interface.
//
// Exit codes: 0 success, 1 usage error, 2 evaluation or pole error,
// 3 integration or validation error.

#include <isotorus/isotorus.hpp>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

using namespace isotorus;
using nlohmann::json;

namespace
{

enum ExitCode
{
    exit_ok = 0,
    exit_usage = 1,
    exit_evaluation = 2,
    exit_integration = 3
};

struct usage_error : std::invalid_argument
{
    using std::invalid_argument::invalid_argument;
};

struct GlobalOptions
{
    std::string config;
    std::uint64_t seed = 7;
    std::string out;
    std::string format = "csv";
};

void emit(const GlobalOptions &g, const std::string &text)
{
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f)
        throw usage_error("cannot open output file '" + g.out + "'");
    f << text;
}

cplx parse_cplx(const std::string &name, const std::string &text)
{
    try {
        return io::parse_complex(text);
    } catch (const io::parse_error &e) {
        throw usage_error("--" + name + ": " + e.what());
    }
}

std::vector<cplx> parse_list(const std::string &name, const std::string &text)
{
    try {
        return io::parse_complex_list(text);
    } catch (const io::parse_error &e) {
        throw usage_error("--" + name + ": " + e.what());
    }
}

// Values from --config fill every option of `sub` not given on the command line.
void apply_config(CLI::App *sub, const std::string &path)
{
    if (path.empty())
        return;
    std::set<std::string> allowed;
    for (CLI::Option *o : sub->get_options())
        if (!o->get_lnames().empty() && o->get_lnames()[0] != "help")
            allowed.insert(o->get_lnames()[0]);
    std::map<std::string, std::string> kv;
    try {
        kv = io::read_config_file(path, allowed);
    } catch (const io::parse_error &e) {
        throw usage_error(e.what());
    }
    for (const auto &[key, value] : kv) {
        CLI::Option *o = sub->get_option("--" + key);
        if (o->count() == 0) {
            o->add_result(value);
            o->run_callback();
        }
    }
}

// Shared Calogero-Moser options.
struct CMOptions
{
    int n = 2;
    std::string g = "1";
    std::string tau = "1i";
    std::string q;
    std::string p;
    double tol = 1e-10;
    std::string method = "rk45";
    double step = 1e-2;

    void add(CLI::App *app)
    {
        app->add_option("--n", n, "number of particles")->check(CLI::Range(1, 64));
        app->add_option("--g", g, "coupling constant");
        app->add_option("--tau", tau, "modulus tau (Im tau > 0)");
        app->add_option("--q", q, "positions, separated by ';' or spaces");
        app->add_option("--p", p, "momenta, separated by ';' or spaces");
        app->add_option("--tol", tol, "integrator absolute and relative tolerance")
            ->check(CLI::PositiveNumber);
        app->add_option("--method", method, "rk45 or rk4")->check(CLI::IsMember({"rk45", "rk4"}));
        app->add_option("--step", step, "initial step (rk45) or fixed step (rk4)")
            ->check(CLI::PositiveNumber);
    }

    CMConfig config() const
    {
        CMConfig c;
        c.n = n;
        c.g = parse_cplx("g", g);
        const cplx t = parse_cplx("tau", tau);
        if (!(t.imag() > 0.0))
            throw usage_error("--tau: Im tau must be positive");
        c.tm = TorusModulus(t);
        return c;
    }

    PhasePoint phase_point() const
    {
        Vector qv(n), pv = Vector::Zero(n);
        for (int j = 0; j < n; ++j)
            qv[j] = cplx((2.0 * j + 1.0) / (2.0 * n), 0.1 * j);
        if (!q.empty()) {
            const auto v = parse_list("q", q);
            if (static_cast<int>(v.size()) != n)
                throw usage_error("--q: expected " + std::to_string(n) + " values");
            qv = io::to_vector(v);
        }
        if (!p.empty()) {
            const auto v = parse_list("p", p);
            if (static_cast<int>(v.size()) != n)
                throw usage_error("--p: expected " + std::to_string(n) + " values");
            pv = io::to_vector(v);
        }
        return PhasePoint(qv, pv);
    }

    IntegratorConfig integrator() const
    {
        IntegratorConfig ic;
        ic.abs_tol = ic.rel_tol = tol;
        ic.initial_step = step;
        ic.method = method == "rk4" ? Method::rk4_fixed : Method::rk45_adaptive;
        return ic;
    }
};

PainleveParams parse_alpha(const std::string &text)
{
    const auto v = parse_list("alpha", text);
    if (v.size() != 4)
        throw usage_error("--alpha: expected 4 values");
    return {{v[0], v[1], v[2], v[3]}};
}

json params_json(const PainleveParams &p)
{
    json a = json::array();
    for (cplx x : p.alpha)
        a.push_back(io::to_json(x));
    return a;
}

// ---- eval ----------------------------------------------------------------

// k-th derivative of f at z by the trapezoidal rule on the circle |w - z| = r.
template <class F>
cplx cauchy_derivative(F &&f, cplx z, double r, int order, int points = 32)
{
    cplx sum{};
    for (int m = 0; m < points; ++m) {
        const cplx w = std::exp(two_pi_i * (double(m) / points));
        sum += f(z + r * w) / std::pow(w, order);
    }
    double fact = 1.0;
    for (int k = 2; k <= order; ++k)
        fact *= k;
    return fact * sum / (points * std::pow(r, order));
}

struct EvalOptions
{
    std::string fn;
    std::string z = "0";
    std::string u = "0";
    std::string tau = "1i";
    std::string omega1 = "1";
    std::string omega2 = "1i";
};

struct EvalRow
{
    cplx value;
    double error;
};

// Each value comes with |value - independent evaluation|: the product form for
// theta1, contour-integral derivatives of the product form for the z-jet, the
// lattice sum for wp, and the theta-series wp for the lattice sum.
EvalRow evaluate(const EvalOptions &o)
{
    const cplx z = parse_cplx("z", o.z);
    const cplx u = parse_cplx("u", o.u);
    const cplx tau = parse_cplx("tau", o.tau);
    if (!(tau.imag() > 0.0))
        throw usage_error("--tau: Im tau must be positive");
    const TorusModulus tm(tau);
    const EllipticKernel k(tm);
    auto prod = [&](cplx w) { return k.theta1_product(w); };
    auto radius = [&](cplx w) { return std::min(0.1, 0.5 * k.lattice_distance(w)); };
    auto err = [](cplx a, cplx b) {
        return std::max(std::abs(a - b), std::numeric_limits<double>::epsilon() * std::abs(a));
    };
    const cplx dtheta0 = cauchy_derivative(prod, 0.0, 0.1, 1);

    if (o.fn == "theta1") {
        const cplx v = k.theta1(z);
        return {v, err(v, prod(z))};
    }
    if (o.fn == "theta1_product") {
        const cplx v = k.theta1_product(z);
        return {v, err(v, k.theta1(z))};
    }
    if (o.fn == "theta1_dz") {
        const cplx v = k.theta1_dz(z);
        return {v, err(v, cauchy_derivative(prod, z, 0.1, 1))};
    }
    if (o.fn == "theta1_d3z_at_0") {
        const cplx v = k.theta1_d3z_at_0();
        return {v, err(v, cauchy_derivative(prod, 0.0, 0.1, 3))};
    }
    if (o.fn == "rho") {
        const cplx v = k.rho(z);
        return {v, err(v, cauchy_derivative(prod, z, radius(z), 1) / prod(z))};
    }
    if (o.fn == "wp") {
        const cplx v = k.wp(z);
        return {v, err(v, wp_lattice_oracle(z, tm))};
    }
    if (o.fn == "wp_lattice_oracle") {
        const cplx v = wp_lattice_oracle(z, tm);
        return {v, err(v, k.wp(z))};
    }
    if (o.fn == "wp_dz") {
        const cplx v = k.wp_dz(z);
        const cplx ref = cauchy_derivative([&](cplx w) { return k.wp(w); }, z, radius(z), 1);
        return {v, err(v, ref)};
    }
    if (o.fn == "lame_x") {
        const cplx v = k.lame_x(u, z);
        return {v, err(v, prod(z - u) * dtheta0 / (prod(z) * prod(u)))};
    }
    if (o.fn == "lame_y") {
        const cplx v = k.lame_y(u, z);
        const double r = std::min({radius(u), radius(z - u)});
        const cplx ref = cauchy_derivative(
            [&](cplx w) { return prod(z - w) * dtheta0 / (prod(z) * prod(w)); }, u, r, 1);
        return {v, err(v, ref)};
    }
    if (o.fn == "wp_general" || o.fn == "wp_dz_general") {
        const GeneralLattice lat{parse_cplx("omega1", o.omega1), parse_cplx("omega2", o.omega2)};
        const GeneralLattice nl = lat.normalized();
        const TorusModulus ntm(nl.omega2 / nl.omega1);
        const cplx w = z / nl.omega1;
        if (o.fn == "wp_general") {
            const cplx v = wp_general(z, lat);
            return {v, err(v, wp_lattice_oracle(w, ntm) / (nl.omega1 * nl.omega1))};
        }
        const cplx v = wp_dz_general(z, lat);
        const EllipticKernel nk(ntm);
        const cplx ref = cauchy_derivative([&](cplx s) { return nk.wp(s); }, w,
                                           std::min(0.1, 0.5 * nk.lattice_distance(w)), 1);
        return {v, err(v, ref / (nl.omega1 * nl.omega1 * nl.omega1))};
    }
    throw usage_error("unknown function '" + o.fn + "'");
}

int cmd_eval(const GlobalOptions &g, const EvalOptions &o)
{
    const EvalRow r = evaluate(o);
    const cplx z = parse_cplx("z", o.z), u = parse_cplx("u", o.u), tau = parse_cplx("tau", o.tau);
    std::ostringstream s;
    if (g.format == "json") {
        json j{{"function", o.fn},       {"z", io::to_json(z)},
               {"u", io::to_json(u)},    {"tau", io::to_json(tau)},
               {"value", io::to_json(r.value)}, {"error_estimate", r.error}};
        s << j.dump(2) << '\n';
    } else {
        using io::format_double;
        s << "schema,function,z_re,z_im,u_re,u_im,tau_re,tau_im,value_re,value_im,error_estimate\n";
        s << 1 << ',' << o.fn << ',' << format_double(z.real()) << ',' << format_double(z.imag())
          << ',' << format_double(u.real()) << ',' << format_double(u.imag()) << ','
          << format_double(tau.real()) << ',' << format_double(tau.imag()) << ','
          << format_double(r.value.real()) << ',' << format_double(r.value.imag()) << ','
          << format_double(r.error) << '\n';
    }
    emit(g, s.str());
    return exit_ok;
}

// ---- verify --------------------------------------------------------------

struct VerifyCmd
{
    std::string suite;
    int count = 0;
    int n = 0;
};

int cmd_verify(const GlobalOptions &g, const VerifyCmd &v)
{
    verify::VerifyOptions o;
    o.seed = g.seed;
    o.count = v.count;
    o.n = v.n;
    const verify::SuiteReport r = verify::run_suite(v.suite, o);
    std::ostringstream s;
    if (g.format == "json") {
        json j{{"suite", r.suite}, {"seed", g.seed}, {"passed", r.passed()}};
        j["checks"] = json::array();
        for (const auto &c : r.checks)
            j["checks"].push_back({{"name", c.name},
                                   {"residual", c.residual},
                                   {"tolerance", c.tolerance},
                                   {"passed", c.passed()}});
        s << j.dump(2) << '\n';
    } else {
        s << "schema,suite,check,residual,tolerance,passed\n";
        for (const auto &c : r.checks)
            s << 1 << ',' << r.suite << ',' << c.name << ',' << io::format_double(c.residual) << ','
              << io::format_double(c.tolerance) << ',' << (c.passed() ? 1 : 0) << '\n';
    }
    emit(g, s.str());
    long failed = 0;
    for (const auto &c : r.checks)
        failed += c.passed() ? 0 : 1;
    std::cerr << r.suite << ": " << r.checks.size() - failed << "/" << r.checks.size()
              << " checks passed\n";
    return failed == 0 ? exit_ok : exit_integration;
}

// ---- flow ----------------------------------------------------------------

struct FlowCmd
{
    std::string kind;
    CMOptions cm;
    double t_start = 0.0;
    double t_end = 1.0;
    std::string tau_end;
    std::string alpha = "0;0;0;0";
    int samples = 100;
};

int cmd_flow(const GlobalOptions &g, const FlowCmd &f)
{
    const IntegratorConfig ic = f.cm.integrator();
    FlowOptions opt;
    opt.segment.samples = f.samples;
    Trajectory t;
    if (f.kind == "isospectral") {
        const CMConfig cfg = f.cm.config();
        t = integrate_isospectral(cfg, f.cm.phase_point(), f.t_start, f.t_end, ic, opt);
    } else {
        if (f.tau_end.empty())
            throw usage_error("--tau-end is required for " + f.kind);
        const cplx tau1 = parse_cplx("tau-end", f.tau_end);
        if (f.kind == "isomonodromic") {
            const CMConfig cfg = f.cm.config();
            t = integrate_isomonodromic(cfg, f.cm.phase_point(), tau1, ic, opt);
        } else {
            if (f.cm.n != 1)
                throw usage_error("painleve-scalar requires --n 1");
            const PhasePoint ph = f.cm.phase_point();
            const EllipticState s0{ph.q[0], ph.p[0], f.cm.config().tm.tau()};
            t = integrate_scalar_painleve(s0, parse_alpha(f.alpha), tau1, ic, opt);
        }
    }
    std::ostringstream s;
    if (g.format == "json")
        s << io::trajectory_json(t).dump(2) << '\n';
    else
        io::write_trajectory_csv(s, t);
    emit(g, s.str());
    if (t.diagnostics.truncated) {
        std::cerr << "integration stopped: " << t.diagnostics.message << '\n';
        return exit_integration;
    }
    return exit_ok;
}

// ---- monodromy -----------------------------------------------------------

struct MonodromyCmd
{
    CMOptions cm;
    std::string base;
    double radius = 0.1;
    std::string drift;
};

int cmd_monodromy(const GlobalOptions &g, MonodromyCmd m)
{
    if (g.format != "json" && g.format != "csv")
        throw usage_error("--format must be csv or json");
    const CMConfig cfg = m.cm.config();
    const PhasePoint ph = m.cm.phase_point();
    const IntegratorConfig ic = m.cm.integrator();
    const cplx base = m.base.empty() ? default_base(cfg.tm.tau()) : parse_cplx("base", m.base);
    const MonodromyData md = compute_monodromy(cfg, ph, ic, base, m.radius);
    json j = io::monodromy_json(md);
    j["n"] = cfg.n;
    j["g"] = io::to_json(cfg.g);
    j["tau"] = io::to_json(cfg.tm.tau());
    if (!m.drift.empty()) {
        const cplx dtau = parse_cplx("drift", m.drift);
        const DriftReport d = isomonodromy_drift(cfg, ph, dtau, ic, ic);
        j["drift"] = {{"dtau", io::to_json(dtau)},
                      {"drift", d.drift},
                      {"end_tau", io::to_json(cfg.tm.tau() + dtau)},
                      {"end_q", io::to_json(d.end_point.q)},
                      {"end_p", io::to_json(d.end_point.p)}};
    }
    emit(g, j.dump(2) + "\n");
    return exit_ok;
}

// ---- symmetry and map ----------------------------------------------------

struct SymmetryCmd
{
    std::string kind;
    std::string alpha = "0.3;-0.2;0.3;-0.2";
    std::string q = "0.23+0.17i";
    std::string p = "0.4-0.3i";
    std::string tau = "0.1+1i";
    std::string dtau = "0.05i";
    std::string j = "1.3+0.2i";
    int a = 0;
    double tol = 1e-12;
};

int cmd_symmetry(const GlobalOptions &g, const SymmetryCmd &s)
{
    const cplx q = parse_cplx("q", s.q), p = parse_cplx("p", s.p);
    const cplx tau = parse_cplx("tau", s.tau), dtau = parse_cplx("dtau", s.dtau);
    if (!(tau.imag() > 0.0))
        throw usage_error("--tau: Im tau must be positive");
    IntegratorConfig ic;
    ic.abs_tol = ic.rel_tol = s.tol;
    const EllipticState s0{q, p, tau};
    json out{{"kind", s.kind}};
    if (s.kind == "landin") {
        const PainleveParams params = parse_alpha(s.alpha);
        const LandinResult L = landin_transform(params);
        out["applicable"] = L.applicable;
        out["alpha"] = params_json(L.params);
        if (L.applicable)
            out["trajectory_difference"]
                = verify::landin_two_trajectory(s0, params.alpha[0], params.alpha[1], dtau, ic);
    } else if (s.kind == "scaling") {
        const PainleveParams params = parse_alpha(s.alpha);
        const cplx j = parse_cplx("j", s.j);
        const ScaledSystem sc = scaling_symmetry(s0, params, j);
        out["alpha"] = params_json(sc.params);
        out["state"] = {{"q", io::to_json(sc.state.q)},
                        {"p", io::to_json(sc.state.p)},
                        {"tau", io::to_json(sc.state.tau)},
                        {"period", io::to_json(sc.state.period)}};
        const verify::TwoTrajectoryCheck c = verify::scaling_two_trajectory(s0, params, j, dtau, ic);
        out["trajectory_difference"] = c.difference;
        out["control_difference"] = c.negative_control;
    } else if (s.kind == "shift") {
        out["q"] = io::to_json(s4_shift(q, tau, s.a));
    } else {
        out["alpha"] = params_json(hitchin_params());
    }
    emit(g, out.dump(2) + "\n");
    return exit_ok;
}

struct MapCmd
{
    std::string q = "0.23+0.17i";
    std::string tau = "1i";
    std::string alpha;
};

int cmd_map(const GlobalOptions &g, const MapCmd &m)
{
    const cplx tau = parse_cplx("tau", m.tau);
    if (!(tau.imag() > 0.0))
        throw usage_error("--tau: Im tau must be positive");
    const RationalPoint r = elliptic_to_rational(parse_cplx("q", m.q), tau);
    json out{{"y", io::to_json(r.y)}, {"t", io::to_json(r.t)}};
    const auto w = half_periods(tau);
    out["half_periods"] = json::array();
    for (cplx x : w)
        out["half_periods"].push_back(io::to_json(x));
    if (!m.alpha.empty()) {
        const ClassicalParams c = to_classical(parse_alpha(m.alpha));
        out["classical"] = {{"alpha", io::to_json(c.alpha)},
                            {"beta", io::to_json(c.beta)},
                            {"gamma", io::to_json(c.gamma)},
                            {"delta", io::to_json(c.delta)}};
    }
    emit(g, out.dump(2) + "\n");
    return exit_ok;
}

void report(const std::string &kind, const std::string &message, json extra = json::object())
{
    extra["error"] = kind;
    extra["message"] = message;
    std::cerr << extra.dump() << '\n';
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Elliptic kernels, Calogero-Moser and Painleve flows, monodromy on the torus"};
    app.require_subcommand(1);
    app.fallthrough();
    GlobalOptions g;
    app.add_option("--config", g.config, "flat key = value file for the subcommand options")
        ->check(CLI::ExistingFile);
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--out", g.out, "output file (default: stdout)");
    app.add_option("--format", g.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    EvalOptions eval;
    CLI::App *eval_cmd = app.add_subcommand("eval", "evaluate a kernel at one point");
    eval_cmd
        ->add_option("function", eval.fn,
                     "theta1, theta1_product, theta1_dz, theta1_d3z_at_0, rho, wp, wp_dz, "
                     "wp_lattice_oracle, wp_general, wp_dz_general, lame_x, lame_y")
        ->required();
    eval_cmd->add_option("--z", eval.z, "argument z");
    eval_cmd->add_option("--u", eval.u, "first argument of lame_x, lame_y");
    eval_cmd->add_option("--tau", eval.tau, "modulus tau");
    eval_cmd->add_option("--omega1", eval.omega1, "first lattice generator");
    eval_cmd->add_option("--omega2", eval.omega2, "second lattice generator");

    VerifyCmd ver;
    CLI::App *verify_cmd = app.add_subcommand("verify", "run a seeded property suite");
    verify_cmd->add_option("suite", ver.suite)->required()->check(CLI::IsMember(verify::suite_names()));
    verify_cmd->add_option("--count", ver.count, "points per check family (0: suite default)")
        ->check(CLI::NonNegativeNumber);
    verify_cmd->add_option("--n", ver.n, "restrict to one system size (0: suite default)")
        ->check(CLI::NonNegativeNumber);

    FlowCmd flow;
    CLI::App *flow_cmd = app.add_subcommand("flow", "integrate a trajectory");
    flow_cmd->add_option("kind", flow.kind)
        ->required()
        ->check(CLI::IsMember({"isospectral", "isomonodromic", "painleve-scalar"}));
    flow.cm.add(flow_cmd);
    flow_cmd->add_option("--t-start", flow.t_start, "isospectral start time");
    flow_cmd->add_option("--t-end", flow.t_end, "isospectral end time");
    flow_cmd->add_option("--tau-end", flow.tau_end, "final tau for the tau flows");
    flow_cmd->add_option("--alpha", flow.alpha, "painleve parameters alpha_0..alpha_3");
    flow_cmd->add_option("--samples", flow.samples, "equally spaced output samples (0: every step)")
        ->check(CLI::NonNegativeNumber);

    MonodromyCmd mono;
    CLI::App *mono_cmd = app.add_subcommand("monodromy", "monodromy of the Lax connection");
    mono.cm.add(mono_cmd);
    mono_cmd->add_option("--base", mono.base, "base point (default (1+tau)/4)");
    mono_cmd->add_option("--radius", mono.radius, "radius of the pole loop");
    mono_cmd->add_option("--drift", mono.drift, "also report the spectral drift over this dtau");

    SymmetryCmd sym;
    CLI::App *sym_cmd = app.add_subcommand("symmetry", "symmetries of the elliptic Painleve equation");
    sym_cmd->add_option("kind", sym.kind)
        ->required()
        ->check(CLI::IsMember({"landin", "scaling", "shift", "hitchin"}));
    sym_cmd->add_option("--alpha", sym.alpha, "parameters alpha_0..alpha_3");
    sym_cmd->add_option("--q", sym.q, "initial q");
    sym_cmd->add_option("--p", sym.p, "initial p");
    sym_cmd->add_option("--tau", sym.tau, "initial tau");
    sym_cmd->add_option("--dtau", sym.dtau, "length of the comparison run");
    sym_cmd->add_option("--j", sym.j, "scaling factor");
    sym_cmd->add_option("--a", sym.a, "half-period index for shift")->check(CLI::Range(0, 3));
    sym_cmd->add_option("--tol", sym.tol, "integrator tolerance")->check(CLI::PositiveNumber);

    MapCmd map;
    CLI::App *map_cmd = app.add_subcommand("map", "elliptic to rational coordinates");
    map_cmd->add_option("--q", map.q, "elliptic coordinate");
    map_cmd->add_option("--tau", map.tau, "modulus tau");
    map_cmd->add_option("--alpha", map.alpha, "also convert these parameters");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        CLI::App *sub = app.get_subcommands().front();
        apply_config(sub, g.config);
        if (sub == eval_cmd)
            return cmd_eval(g, eval);
        if (sub == verify_cmd)
            return cmd_verify(g, ver);
        if (sub == flow_cmd)
            return cmd_flow(g, flow);
        if (sub == mono_cmd)
            return cmd_monodromy(g, mono);
        if (sub == sym_cmd)
            return cmd_symmetry(g, sym);
        return cmd_map(g, map);
    } catch (const usage_error &e) {
        report("usage", e.what());
        return exit_usage;
    } catch (const CLI::Error &e) {
        report("usage", e.what());
        return exit_usage;
    } catch (const pole_proximity_error &e) {
        report("pole_proximity", e.what(), {{"variable", e.variable()}, {"distance", e.distance()}});
        return exit_evaluation;
    } catch (const truncation_error &e) {
        report("truncation", e.what());
        return exit_evaluation;
    } catch (const gauge_singularity_error &e) {
        report("gauge_singularity", e.what(), {{"index", e.index()}});
        return exit_evaluation;
    } catch (const degenerate_lattice_error &e) {
        report("degenerate_lattice", e.what());
        return exit_evaluation;
    } catch (const singular_configuration_error &e) {
        report("singular_configuration", e.what());
        return exit_evaluation;
    } catch (const integration_error &e) {
        report("integration", e.what());
        return exit_integration;
    } catch (const std::invalid_argument &e) {
        report("validation", e.what());
        return exit_integration;
    } catch (const std::exception &e) {
        report("evaluation", e.what());
        return exit_evaluation;
    }
}
