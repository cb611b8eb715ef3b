#ifndef ISOTORUS_ERRORS_HPP
#define ISOTORUS_ERRORS_HPP

#include <complex>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace isotorus
{

// Raised when an argument sits within the pole-exclusion radius of a lattice
// point. `variable` names the offending argument ("z", "u", "q[0]-q[1]", ...).
class pole_proximity_error : public std::domain_error
{
public:
    pole_proximity_error(std::string variable, double distance)
        : std::domain_error("pole proximity: " + variable + " is within " + format(distance)
                            + " of a lattice point"),
          variable_(std::move(variable)), distance_(distance)
    {}

    const std::string &variable() const noexcept { return variable_; }
    double distance() const noexcept { return distance_; }

private:
    static std::string format(double x)
    {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.3g", x);
        return buf;
    }

    std::string variable_;
    double distance_;
};

// A series or product did not stagnate within TruncationConfig::max_terms.
class truncation_error : public std::runtime_error
{
public:
    truncation_error(const std::string &what, std::complex<double> partial)
        : std::runtime_error(what), partial_(partial)
    {}

    std::complex<double> partial_sum() const noexcept { return partial_; }

private:
    std::complex<double> partial_;
};

// Lattice generators with Im(omega2/omega1) == 0, or a modulus whose
// normalizing denominators vanish.
class degenerate_lattice_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// The periodic-gauge matrix diag(x(q_j, z)) is not invertible at this point.
class gauge_singularity_error : public std::domain_error
{
public:
    gauge_singularity_error(int index, double magnitude)
        : std::domain_error("gauge singularity: |x(q[" + std::to_string(index) + "], z)| = "
                            + std::to_string(magnitude)),
          index_(index)
    {}

    int index() const noexcept { return index_; }

private:
    int index_;
};

// Rational P_VI evaluated at t in {0, 1} or y in {0, 1, t}.
class singular_configuration_error : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

// Integration or validation failures: paths leaving the upper half-plane,
// collisions, step-size underflow, invalid paths for transport.
class integration_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace isotorus

#endif // ISOTORUS_ERRORS_HPP
