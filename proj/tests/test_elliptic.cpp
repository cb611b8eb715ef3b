#include "oracles.hpp"

#include <isotorus/elliptic.hpp>
#include <isotorus/random.hpp>

#include <gtest/gtest.h>

using namespace isotorus;

namespace
{

double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

const cplx taus[] = {{0.0, 1.0}, {0.5, 0.8}, {0.0, 2.0}, {-0.3, 0.6}};

} // namespace

TEST(Theta1, FrozenValues)
{
    EXPECT_LT(rel_err(theta1(0.3, TorusModulus(cplx(0, 0.5))), oracle::frozen::theta1_03_05i), 1e-14);
    EXPECT_LT(rel_err(theta1(cplx(0.3, 0.1), TorusModulus(cplx(0, 2))), oracle::frozen::theta1_d), 1e-14);
    EXPECT_LT(rel_err(theta1_dz(cplx(0.3, 0.1), TorusModulus(cplx(0, 0.7))), oracle::frozen::theta1_dz_b),
              1e-14);
    EXPECT_LT(rel_err(theta1_d3z_at_0(TorusModulus(cplx(0, 0.8))), oracle::frozen::theta1_d3z0_c), 1e-13);
}

TEST(Theta1, MatchesNaiveSeries)
{
    SplitMix64 rng(11);
    for (cplx tau : taus) {
        const EllipticKernel k{TorusModulus(tau)};
        for (int i = 0; i < 20; ++i) {
            const cplx z = rng.complex_in(-0.5, 0.5, -0.4, 0.4);
            const auto jet = oracle::theta1_jet(z, tau);
            EXPECT_LT(rel_err(k.theta1(z), jet[0]), 1e-13);
            EXPECT_LT(rel_err(k.theta1_dz(z), jet[1]), 1e-13);
        }
        EXPECT_LT(rel_err(k.theta1_d3z_at_0(), oracle::theta1_jet(0.0, tau)[3]), 1e-13);
    }
}

TEST(Theta1, ProductAgreesWithSeries)
{
    SplitMix64 rng(12);
    for (cplx tau : taus) {
        const EllipticKernel k{TorusModulus(tau)};
        for (int i = 0; i < 20; ++i) {
            const cplx z = rng.complex_in(-2.0, 2.0, -1.5, 1.5);
            const cplx s = k.theta1(z), p = k.theta1_product(z);
            EXPECT_LT(std::abs(s - p), 1e-12 * std::max(1.0, std::abs(s)));
        }
    }
}

TEST(Theta1, ZerosAtLatticePoints)
{
    const cplx tau(0.2, 1.1);
    const EllipticKernel k{TorusModulus(tau)};
    for (int m = -2; m <= 2; ++m)
        for (int n = -1; n <= 1; ++n) {
            const cplx lam = double(m) + double(n) * tau;
            const double scale = std::abs(k.theta1(lam + 0.3));
            EXPECT_LT(std::abs(k.theta1(lam)), 1e-14 * std::max(1.0, scale));
        }
}

TEST(Theta1, QuasiPeriodicity)
{
    const cplx tau(0.3, 0.9);
    const EllipticKernel k{TorusModulus(tau)};
    for (cplx z : {cplx(0.1, 0.2), cplx(-0.4, 0.3), cplx(0.25, -0.35)}) {
        EXPECT_LT(rel_err(k.theta1(z + 1.0), -k.theta1(z)), 1e-14);
        const cplx b = -std::exp(-imag_unit * pi * (tau + 2.0 * z)) * k.theta1(z);
        EXPECT_LT(std::abs(k.theta1(z + tau) - b) / std::abs(b), 1e-13);
    }
}

TEST(Theta1, OddInZ)
{
    const EllipticKernel k{TorusModulus(cplx(0.1, 1.3))};
    for (cplx z : {cplx(0.1, 0.2), cplx(0.4, -0.3)})
        EXPECT_LT(std::abs(k.theta1(-z) + k.theta1(z)), 1e-14);
}

TEST(Wp, FrozenValues)
{
    EXPECT_LT(rel_err(wp(0.3, TorusModulus(cplx(0, 1))), oracle::frozen::wp_03_i), 1e-13);
    const TorusModulus tm(cplx(0.5, 0.8));
    const cplx z(0.37, 0.21), u(0.12, 0.4);
    EXPECT_LT(rel_err(wp(z, tm), oracle::frozen::wp_a), 1e-13);
    EXPECT_LT(rel_err(wp_dz(z, tm), oracle::frozen::wp_dz_a), 1e-13);
    EXPECT_LT(rel_err(rho(z, tm), oracle::frozen::rho_a), 1e-13);
    EXPECT_LT(rel_err(lame_x(u, z, tm), oracle::frozen::lame_x_a), 1e-13);
    EXPECT_LT(rel_err(lame_y(u, z, tm), oracle::frozen::lame_y_a), 1e-13);
    EXPECT_LT(rel_err(wp(cplx(0.3, 0.45), TorusModulus(cplx(0, 2))), oracle::frozen::wp_d), 1e-13);
    const GeneralLattice lat{cplx(1.0, 0.2), cplx(0.3, 1.1)};
    EXPECT_LT(rel_err(wp_general(cplx(0.31, 0.2), lat), oracle::frozen::wp_general_e), 1e-13);
}

TEST(Wp, MatchesThetaOracle)
{
    SplitMix64 rng(13);
    for (cplx tau : taus) {
        const EllipticKernel k{TorusModulus(tau)};
        for (int i = 0; i < 20; ++i) {
            const cplx z = rng.uniform(0.05, 0.95) + rng.uniform(0.05, 0.95) * tau;
            EXPECT_LT(rel_err(k.wp(z), oracle::wp(z, tau)), 1e-11);
            EXPECT_LT(rel_err(k.wp_dz(z), oracle::wp_dz(z, tau)), 1e-11);
            EXPECT_LT(rel_err(k.rho(z), oracle::rho(z, tau)), 1e-11);
        }
    }
}

TEST(Wp, LatticeOracleAgrees)
{
    SplitMix64 rng(14);
    for (cplx tau : {cplx(0, 1), cplx(0.5, 0.8)}) {
        const TorusModulus tm(tau);
        for (int i = 0; i < 3; ++i) {
            const cplx z = rng.uniform(0.1, 0.9) + rng.uniform(0.1, 0.9) * tau;
            EXPECT_LT(rel_err(wp_lattice_oracle(z, tm), wp(z, tm)), 1e-8);
        }
    }
}

TEST(Wp, EvenDoublyPeriodicWithLaurentTerm)
{
    const cplx tau(-0.2, 1.2);
    const EllipticKernel k{TorusModulus(tau)};
    const cplx z(0.31, 0.17);
    EXPECT_LT(rel_err(k.wp(-z), k.wp(z)), 1e-13);
    EXPECT_LT(rel_err(k.wp(z + 1.0), k.wp(z)), 1e-13);
    EXPECT_LT(rel_err(k.wp(z + tau), k.wp(z)), 1e-12);
    EXPECT_LT(rel_err(k.wp(z - 3.0 + 2.0 * tau), k.wp(z)), 1e-12);
    // wp(z) - 1/z^2 = O(z^2): no constant term
    const cplx s(1e-3, 5e-4);
    EXPECT_LT(std::abs(k.wp(s) - 1.0 / (s * s)), 1e-4);
}

TEST(Wp, DerivativeMatchesContourIntegral)
{
    const cplx tau(0.1, 0.9);
    const EllipticKernel k{TorusModulus(tau)};
    for (cplx z : {cplx(0.3, 0.2), cplx(0.6, 0.5)}) {
        const cplx d = oracle::contour_derivative([&](cplx w) { return k.wp(w); }, z, 0.05);
        EXPECT_LT(rel_err(k.wp_dz(z), d), 1e-11);
        const cplx r = oracle::contour_derivative([&](cplx w) { return k.rho(w); }, z, 0.05);
        EXPECT_LT(rel_err(k.wp(z), -r + k.wp_constant()), 1e-11);
    }
}

TEST(Wp, WeierstrassDifferentialEquation)
{
    // wp'^2 = 4 (wp - e1)(wp - e2)(wp - e3)
    const cplx tau(0.25, 1.05);
    const EllipticKernel k{TorusModulus(tau)};
    const cplx e1 = k.wp(0.5), e2 = k.wp(tau / 2.0), e3 = k.wp((1.0 + tau) / 2.0);
    EXPECT_LT(std::abs(e1 + e2 + e3), 1e-11);
    const cplx z(0.21, 0.33);
    const cplx w = k.wp(z), dw = k.wp_dz(z);
    EXPECT_LT(rel_err(dw * dw, 4.0 * (w - e1) * (w - e2) * (w - e3)), 1e-11);
}

TEST(Wp, GeneralLatticeHomogeneity)
{
    const cplx tau(0.1, 1.3), z(0.27, 0.41);
    for (cplx j : {cplx(2.0, 0.0), cplx(0.7, 0.4), cplx(-1.1, 0.3)}) {
        const GeneralLattice base{1.0, tau}, scaled{j, j * tau};
        EXPECT_LT(rel_err(wp_general(z, base), j * j * wp_general(j * z, scaled)), 1e-12);
        EXPECT_LT(rel_err(wp_dz_general(z, base), j * j * j * wp_dz_general(j * z, scaled)), 1e-12);
    }
}

TEST(Wp, GeneralLatticeOrientationInvariance)
{
    const GeneralLattice a{cplx(1.0, 0.2), cplx(0.3, 1.1)};
    const GeneralLattice b{cplx(1.0, 0.2), -cplx(0.3, 1.1)};
    const cplx z(0.31, 0.2);
    EXPECT_LT(rel_err(wp_general(z, a), wp_general(z, b)), 1e-14);
    EXPECT_THROW(GeneralLattice({1.0, 2.0}).normalized(), degenerate_lattice_error);
    EXPECT_THROW(GeneralLattice({0.0, 2.0}).normalized(), degenerate_lattice_error);
}

TEST(Lame, MatchesOracle)
{
    SplitMix64 rng(15);
    for (cplx tau : taus) {
        const EllipticKernel k{TorusModulus(tau)};
        for (int i = 0; i < 10; ++i) {
            const cplx u = rng.uniform(0.1, 0.9) + rng.uniform(0.1, 0.4) * tau;
            const cplx z = rng.uniform(0.1, 0.9) + rng.uniform(0.6, 0.9) * tau;
            EXPECT_LT(rel_err(k.lame_x(u, z), oracle::lame_x(u, z, tau)), 1e-11);
            const cplx dy = oracle::contour_derivative(
                [&](cplx w) { return oracle::lame_x(w, z, tau); }, u, 0.05);
            EXPECT_LT(rel_err(k.lame_y(u, z), dy), 1e-10);
        }
    }
}

TEST(Lame, JetDerivatives)
{
    const cplx tau(0.2, 0.95), u(0.3, 0.15), z(0.55, 0.6);
    const EllipticKernel k{TorusModulus(tau)};
    const LameJet j = k.lame(u, z);
    auto xz = [&](cplx w) { return k.lame_x(u, w); };
    auto yz = [&](cplx w) { return k.lame_y(u, w); };
    EXPECT_LT(rel_err(j.dx_dz, oracle::contour_derivative(xz, z, 0.05)), 1e-11);
    EXPECT_LT(rel_err(j.d2x_dudz, oracle::contour_derivative(yz, z, 0.05)), 1e-11);
    auto xt = [&](cplx t) { return EllipticKernel(TorusModulus(t)).lame_x(u, z); };
    EXPECT_LT(rel_err(j.dx_dtau, oracle::contour_derivative(xt, tau, 0.05)), 1e-10);
    auto lt = [&](cplx w) {
        const LameJet jj = k.lame(u, w);
        return jj.dx_dtau / jj.x;
    };
    EXPECT_LT(rel_err(j.dz_log_dtau, oracle::contour_derivative(lt, z, 0.05)), 1e-10);
}

TEST(Lame, QuasiPeriodicInZAndU)
{
    const cplx tau(-0.1, 1.1), u(0.3, 0.2), z(0.45, 0.7);
    const EllipticKernel k{TorusModulus(tau)};
    const cplx x = k.lame_x(u, z);
    EXPECT_LT(rel_err(k.lame_x(u, z + 1.0), x), 1e-13);
    EXPECT_LT(rel_err(k.lame_x(u + 1.0, z), x), 1e-13);
    EXPECT_LT(rel_err(k.lame_x(u, z + tau), std::exp(two_pi_i * u) * x), 1e-12);
    EXPECT_LT(rel_err(k.lame_x(u + tau, z), std::exp(two_pi_i * z) * x), 1e-12);
}

TEST(Lame, PoleAtZ0WithResidueMinusOne)
{
    const EllipticKernel k{TorusModulus(cplx(0, 1))};
    const cplx u(0.3, 0.2);
    const cplx s(1e-4, 1e-4);
    EXPECT_LT(std::abs(s * k.lame_x(u, s) + 1.0), 1e-3);
}

TEST(Errors, PoleProximity)
{
    const EllipticKernel k{TorusModulus(cplx(0, 1))};
    try {
        k.wp(1.0 + cplx(0, 1));
        FAIL() << "expected pole_proximity_error";
    } catch (const pole_proximity_error &e) {
        EXPECT_EQ(e.variable(), "z");
        EXPECT_LT(e.distance(), 1e-12);
    }
    EXPECT_THROW(k.lame_x(0.0, 0.3), pole_proximity_error);
    EXPECT_THROW(k.lame_x(0.3, 0.0), pole_proximity_error);
    EXPECT_THROW(k.rho(cplx(0, 1)), pole_proximity_error);
    EXPECT_NO_THROW(k.theta1(0.0));
}

TEST(Errors, TruncationAndConfig)
{
    TruncationConfig tiny;
    tiny.max_terms = 8;
    tiny.rel_tol = 1e-300;
    EXPECT_THROW(theta1_product(0.3, TorusModulus(cplx(0, 0.05)), tiny), truncation_error);
    TruncationConfig bad;
    bad.max_terms = 2;
    EXPECT_THROW(bad.validate(), std::invalid_argument);
    EXPECT_THROW(TorusModulus(cplx(0.3, -1.0)), std::invalid_argument);
}

TEST(Reduction, LargeArgumentsStayAccurate)
{
    const cplx tau(0.4, 0.85);
    const EllipticKernel k{TorusModulus(tau)};
    const cplx z(0.23, 0.31);
    const cplx far = z + 7.0 - 5.0 * tau;
    EXPECT_LT(rel_err(k.wp(far), k.wp(z)), 1e-11);
    EXPECT_LT(rel_err(k.rho(far), k.rho(z) + 5.0 * two_pi_i), 1e-11);
}
