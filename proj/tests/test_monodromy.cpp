#include <isotorus/monodromy.hpp>

#include <gtest/gtest.h>

using namespace isotorus;

namespace
{

CMConfig make_config(int n, cplx g, cplx tau)
{
    CMConfig c;
    c.n = n;
    c.g = g;
    c.tm = TorusModulus(tau);
    return c;
}

PhasePoint point2()
{
    Vector q(2), p(2);
    q << cplx(0.15, 0.05), cplx(0.6, -0.1);
    p << cplx(0.2, 0.0), cplx(-0.1, 0.1);
    return PhasePoint(q, p);
}

PhasePoint point3()
{
    Vector q(3), p(3);
    q << cplx(0.1, 0.05), cplx(0.45, -0.1), cplx(0.8, 0.2);
    p << cplx(0.2, 0.0), cplx(-0.1, 0.1), cplx(0.05, -0.1);
    return PhasePoint(q, p);
}

IntegratorConfig tight()
{
    IntegratorConfig ic;
    ic.abs_tol = ic.rel_tol = 1e-12;
    return ic;
}

double max_abs(const Matrix &M) { return M.cwiseAbs().maxCoeff(); }

} // namespace

TEST(Transport, MultiplicativeOverConcatenation)
{
    const CMConfig cfg = make_config(2, 0.4, cplx(0.1, 1.0));
    const PhasePoint ph = point2();
    const cplx a(0.3, 0.3), b(0.7, 0.45), c(0.55, 0.8);
    const Matrix ab = transport(cfg, ph, {{a, b}}, tight());
    const Matrix bc = transport(cfg, ph, {{b, c}}, tight());
    const Matrix abc = transport(cfg, ph, {{a, b, c}}, tight());
    // Psi(c) = Psi_bc Psi_ab for the left-multiplied system dPsi = L~ Psi dz
    EXPECT_LT(max_abs(abc - bc * ab), 1e-9);
}

TEST(Transport, LiouvilleDeterminant)
{
    const CMConfig cfg = make_config(3, 0.4, cplx(0.1, 1.0));
    const PhasePoint ph = point3();
    const cplx a(0.3, 0.3), b(0.62, 0.71);
    const Matrix M = transport(cfg, ph, {{a, b}}, tight());
    // trace L~ = sum p, so det Psi = exp(sum p (b - a))
    const cplx expected = std::exp(ph.p.sum() * (b - a));
    EXPECT_LT(std::abs(M.determinant() - expected) / std::abs(expected), 1e-7);
}

TEST(Transport, PathValidation)
{
    const CMConfig cfg = make_config(2, 0.4, cplx(0, 1));
    EXPECT_THROW(transport(cfg, point2(), {{cplx(0.5, 0.5)}}, tight()), integration_error);
    EXPECT_THROW(transport(cfg, point2(), {{cplx(-0.5, -0.5), cplx(0.5, 0.5)}}, tight()),
                 integration_error);
    EXPECT_THROW(transport(cfg, point2(), {{cplx(0.5, 0.5), cplx(0.5, 0.5)}}, tight()),
                 integration_error);
}

TEST(Monodromy, FreeClosedForms)
{
    const CMConfig cfg = make_config(2, 0.0, cplx(0.1, 1.05));
    const PhasePoint ph = point2();
    const MonodromyData md = compute_monodromy(cfg, ph, tight());
    const Matrix M1 = ph.p.array().exp().matrix().asDiagonal();
    const Matrix Mtau = twist_matrix(ph, -1.0) * Matrix((ph.p * cfg.tm.tau()).array().exp().matrix().asDiagonal());
    EXPECT_LT(max_abs(md.M1 - M1), 1e-9);
    EXPECT_LT(max_abs(md.Mtau - Mtau), 1e-9);
    EXPECT_LT(max_abs(md.M0 - Matrix::Identity(2, 2)), 1e-9);
    EXPECT_LT(cubic_relation_residual(md), 1e-8);
}

TEST(Monodromy, CubicRelation)
{
    for (const PhasePoint &ph : {point2(), point3()}) {
        const CMConfig cfg = make_config(ph.size(), 0.3, cplx(0.05, 1.0));
        const MonodromyData md = compute_monodromy(cfg, ph, tight());
        EXPECT_LT(cubic_relation_residual(md), 1e-8);
    }
}

TEST(Monodromy, OtherCommutatorOrderIsTheInverseLoop)
{
    const CMConfig cfg = make_config(2, 0.3, cplx(0.05, 1.0));
    const MonodromyData md = compute_monodromy(cfg, point2(), tight());
    const Matrix literal = md.M1.inverse() * md.Mtau.inverse() * md.M1 * md.Mtau;
    EXPECT_GT(max_abs(literal - md.M0), 1e-2);
    EXPECT_LT(max_abs(literal - md.M0.inverse()), 1e-8);
}

TEST(Monodromy, CubicResidualConjugationInvariant)
{
    const CMConfig cfg = make_config(2, 0.3, cplx(0.05, 1.0));
    const MonodromyData md = compute_monodromy(cfg, point2(), tight());
    Matrix C(2, 2);
    C << 1.0, cplx(0.3, 0.1), cplx(-0.2, 0.0), 0.8;
    const Matrix Ci = C.inverse();
    MonodromyData conj = md;
    conj.M0 = C * md.M0 * Ci;
    conj.M1 = C * md.M1 * Ci;
    conj.Mtau = C * md.Mtau * Ci;
    EXPECT_NEAR(cubic_relation_residual(conj), cubic_relation_residual(md), 1e-8);
}

TEST(Monodromy, PoleLoopSpectrumFromResidue)
{
    for (int n : {2, 3}) {
        const cplx g(0.13, 0.0);
        const PhasePoint ph = n == 2 ? point2() : point3();
        const CMConfig cfg = make_config(n, g, cplx(0.0, 1.0));
        const Matrix M0 = monodromy_pole(cfg, ph, 0.1, tight());
        // residue -ig (sum E_jk) has eigenvalues ig (n-1 times) and -ig (n-1)
        Vector expected(n);
        for (int j = 0; j + 1 < n; ++j)
            expected[j] = std::exp(two_pi_i * (imag_unit * g));
        expected[n - 1] = std::exp(two_pi_i * (-imag_unit * g * double(n - 1)));
        EXPECT_LT(spectral_distance(spectrum(M0), expected), 1e-9);
    }
}

TEST(Monodromy, PoleLoopRadiusIndependent)
{
    const CMConfig cfg = make_config(2, 0.3, cplx(0.05, 1.0));
    const Matrix a = monodromy_pole(cfg, point2(), 0.05, tight());
    const Matrix b = monodromy_pole(cfg, point2(), 0.1, tight());
    EXPECT_LT(max_abs(a - b), 1e-7);
    EXPECT_THROW(monodromy_pole(cfg, point2(), 0.5, tight()), std::invalid_argument);
    EXPECT_THROW(monodromy_pole(cfg, point2(), 0.1, tight(), default_base(cfg.tm.tau()), 8),
                 std::invalid_argument);
}

TEST(Monodromy, SpectraIndependentOfBasePoint)
{
    const CMConfig cfg = make_config(2, 0.3, cplx(0.05, 1.0));
    const PhasePoint ph = point2();
    const MonodromyData a = compute_monodromy(cfg, ph, tight());
    const MonodromyData b = compute_monodromy(cfg, ph, tight(), cplx(0.33, 0.21));
    EXPECT_LT(monodromy_spectral_distance(a, b), 1e-7);
}

TEST(Monodromy, IsomonodromicDriftAndControl)
{
    const CMConfig cfg = make_config(2, 0.3, cplx(0.05, 1.0));
    const PhasePoint ph = point2();
    const DriftReport d = isomonodromy_drift(cfg, ph, cplx(0, 1e-2), tight(), tight());
    EXPECT_LT(d.drift, 1e-5);
    PhasePoint moved = ph;
    moved.p[0] += 1e-2;
    const double control = monodromy_spectral_distance(d.start, compute_monodromy(cfg, moved, tight()));
    EXPECT_GT(control, 10.0 * d.drift);
    EXPECT_GT(control, 1e-4);
}

TEST(Monodromy, EnclosedLatticePoint)
{
    const cplx tau(0.05, 1.0);
    EXPECT_LT(std::abs(enclosed_lattice_point(default_base(tau), tau) - (1.0 + tau)), 1e-15);
    EXPECT_LT(std::abs(enclosed_lattice_point(cplx(-0.7, -0.4), tau)), 1e-15);
}

TEST(SpectralDistance, OptimalMatching)
{
    Vector a(3), b(3);
    a << 1.0, 2.0, 3.0;
    b << 3.0, 1.0, 2.0 + 1e-3;
    EXPECT_NEAR(spectral_distance(a, b), 1e-3, 1e-15);
    EXPECT_THROW(spectral_distance(a, Vector(2)), std::invalid_argument);
}

TEST(ModuliDimensions, DisplayedValues)
{
    const auto a = moduli_dimensions(2, 1);
    EXPECT_EQ(a.moduli, 8);
    EXPECT_EQ(a.character, 6);
    EXPECT_EQ(a.single, 7);
    const auto b = moduli_dimensions(1, 1);
    EXPECT_EQ(b.moduli, 4);
    EXPECT_EQ(b.character, 2);
    EXPECT_EQ(b.single, 3);
    EXPECT_THROW(moduli_dimensions(0, 1), std::invalid_argument);
}
