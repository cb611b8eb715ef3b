#ifndef ISOTORUS_IO_HPP
#define ISOTORUS_IO_HPP

// Text formats shared by the CLI and the tests. CSV reals are written with 17
// significant digits, JSON reals in shortest round-trip form; complex numbers
// are always two fields.

#include <isotorus/flow.hpp>
#include <isotorus/monodromy.hpp>

#include <nlohmann/json.hpp>

#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace isotorus::io
{

class parse_error : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

inline std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace detail
{

inline std::string trim(const std::string &s)
{
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b])))
        ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1])))
        --e;
    return s.substr(b, e - b);
}

inline double parse_real(const std::string &s, const std::string &whole)
{
    if (s.empty() || s == "+")
        return 1.0;
    if (s == "-")
        return -1.0;
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        throw parse_error("cannot parse number '" + whole + "'");
    }
    if (used != s.size())
        throw parse_error("cannot parse number '" + whole + "'");
    return v;
}

} // namespace detail

// Accepts "a", "bi", "a+bi", "a-bi", "i", "-i" and the pair form "a,b".
inline cplx parse_complex(const std::string &text)
{
    const std::string s = detail::trim(text);
    if (s.empty())
        throw parse_error("empty complex number");
    if (const auto comma = s.find(','); comma != std::string::npos) {
        const std::string re = detail::trim(s.substr(0, comma));
        const std::string im = detail::trim(s.substr(comma + 1));
        if (re.empty() || im.empty())
            throw parse_error("cannot parse complex number '" + text + "'");
        return {detail::parse_real(re, text), detail::parse_real(im, text)};
    }
    if (s.back() != 'i' && s.back() != 'j')
        return {detail::parse_real(s, text), 0.0};
    const std::string body = s.substr(0, s.size() - 1);
    // split at the last sign that is not the leading one or part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = body.size(); k-- > 1;) {
        if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos)
        return {0.0, detail::parse_real(body, text)};
    return {detail::parse_real(body.substr(0, split), text),
            detail::parse_real(body.substr(split), text)};
}

// Complex lists separated by ';' or whitespace.
inline std::vector<cplx> parse_complex_list(const std::string &text)
{
    std::vector<cplx> out;
    std::string token;
    auto flush = [&] {
        const std::string t = detail::trim(token);
        if (!t.empty())
            out.push_back(parse_complex(t));
        token.clear();
    };
    for (char c : text) {
        if (c == ';' || std::isspace(static_cast<unsigned char>(c)))
            flush();
        else
            token += c;
    }
    flush();
    return out;
}

inline Vector to_vector(const std::vector<cplx> &v)
{
    Vector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i)
        out[Eigen::Index(i)] = v[i];
    return out;
}

// Flat "key = value" text; '#' starts a comment. Keys outside `allowed` are
// rejected.
inline std::map<std::string, std::string> read_config(std::istream &in,
                                                      const std::set<std::string> &allowed)
{
    std::map<std::string, std::string> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = detail::trim(line);
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw parse_error("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        if (!allowed.count(key))
            throw parse_error("config line " + std::to_string(lineno) + ": unknown key '" + key
                              + "'");
        out[key] = value;
    }
    return out;
}

inline std::map<std::string, std::string> read_config_file(const std::string &path,
                                                           const std::set<std::string> &allowed)
{
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open config file '" + path + "'");
    return read_config(in, allowed);
}

inline nlohmann::json to_json(cplx z) { return nlohmann::json::array({z.real(), z.imag()}); }

inline nlohmann::json to_json(const Vector &v)
{
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i)
        out.push_back(to_json(v[i]));
    return out;
}

// Row-major list of rows of [re, im] pairs.
inline nlohmann::json to_json(const Matrix &M)
{
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index r = 0; r < M.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index c = 0; c < M.cols(); ++c)
            row.push_back(to_json(M(r, c)));
        out.push_back(row);
    }
    return out;
}

inline cplx complex_from_json(const nlohmann::json &j)
{
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

inline Matrix matrix_from_json(const nlohmann::json &j)
{
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = rows > 0 ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
    Matrix M(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < cols; ++c)
            M(r, c) = complex_from_json(j.at(r).at(c));
    return M;
}

inline nlohmann::json diagnostics_json(const FlowDiagnostics &d)
{
    return {{"accepted_steps", d.accepted},
            {"rejected_steps", d.rejected},
            {"max_error_estimate", d.max_error},
            {"truncated", d.truncated},
            {"message", d.message}};
}

inline nlohmann::json trajectory_json(const Trajectory &t)
{
    nlohmann::json j;
    j["kind"] = to_string(t.kind);
    j["n"] = t.n;
    j["g"] = to_json(t.g);
    const bool fixed_tau = t.kind == TrajectoryKind::isospectral_t && !t.samples.empty();
    if (fixed_tau)
        j["tau"] = to_json(t.samples.front().tau);
    else {
        j["tau"] = nlohmann::json::array();
        for (const auto &s : t.samples)
            j["tau"].push_back(to_json(s.tau));
    }
    j["samples"] = nlohmann::json::array();
    for (const auto &s : t.samples)
        j["samples"].push_back({{"time", to_json(s.time)},
                                {"q", to_json(s.state.q)},
                                {"p", to_json(s.state.p)},
                                {"H", to_json(s.H)}});
    j["diagnostics"] = diagnostics_json(t.diagnostics);
    return j;
}

inline std::vector<std::string> trajectory_csv_header(int n)
{
    std::vector<std::string> h = {"schema", "time_re", "time_im", "tau_re", "tau_im"};
    for (const char *name : {"q", "p"})
        for (int j = 0; j < n; ++j) {
            h.push_back(std::string(name) + std::to_string(j) + "_re");
            h.push_back(std::string(name) + std::to_string(j) + "_im");
        }
    for (const char *col : {"H_re", "H_im", "accepted_steps", "rejected_steps",
                            "max_error_estimate", "truncated"})
        h.emplace_back(col);
    return h;
}

inline void write_trajectory_csv(std::ostream &out, const Trajectory &t)
{
    const auto header = trajectory_csv_header(t.n);
    for (std::size_t i = 0; i < header.size(); ++i)
        out << (i ? "," : "") << header[i];
    out << '\n';
    auto pair = [&](cplx z) { out << ',' << format_double(z.real()) << ',' << format_double(z.imag()); };
    for (const auto &s : t.samples) {
        out << 1;
        pair(s.time);
        pair(s.tau);
        for (int j = 0; j < t.n; ++j)
            pair(s.state.q[j]);
        for (int j = 0; j < t.n; ++j)
            pair(s.state.p[j]);
        pair(s.H);
        out << ',' << t.diagnostics.accepted << ',' << t.diagnostics.rejected << ','
            << format_double(t.diagnostics.max_error) << ',' << (t.diagnostics.truncated ? 1 : 0)
            << '\n';
    }
}

inline nlohmann::json monodromy_json(const MonodromyData &md)
{
    nlohmann::json j;
    j["base"] = to_json(md.base);
    j["Q"] = to_json(md.Q);
    j["M0"] = to_json(md.M0);
    j["M1"] = to_json(md.M1);
    j["Mtau"] = to_json(md.Mtau);
    j["spectra"] = {{"M0", to_json(spectrum(md.M0))},
                    {"M1", to_json(spectrum(md.M1))},
                    {"Mtau", to_json(spectrum(md.Mtau))}};
    j["cubic_residual"] = cubic_relation_residual(md);
    return j;
}

} // namespace isotorus::io

#endif // ISOTORUS_IO_HPP
