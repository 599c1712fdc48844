#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lagmin/charts.hpp"
#include "lagmin/error.hpp"
#include "lagmin/model_spaces.hpp"

using namespace lagmin;

namespace {

CVector cvec(std::initializer_list<Complex> xs)
{
    CVector v(static_cast<Eigen::Index>(xs.size()));
    int i = 0;
    for (auto x : xs)
        v(i++) = x;
    return v;
}

CVector last_unit(int n)
{
    CVector z = CVector::Zero(n + 1);
    z(n) = 1.0;
    return z;
}

} // namespace

TEST(HermitianForm, SignatureOnBasisVectors)
{
    const auto h = HermitianSpace::hyperbolic(3);
    const CVector t = last_unit(3);
    CVector e1 = CVector::Zero(4);
    e1(0) = 1.0;
    EXPECT_EQ(h.form(t, t), Complex(-1.0, 0.0));
    EXPECT_EQ(h.form(e1, e1), Complex(1.0, 0.0));
    EXPECT_EQ(HermitianSpace::spherical(3).form(t, t), Complex(1.0, 0.0));
}

TEST(HermitianForm, SmallestAntiDeSitterExample)
{
    const AmbientVector z(HermitianSpace::hyperbolic(1), cvec({1.0, std::sqrt(2.0)}));
    EXPECT_NEAR(herm_form(z, z).real(), -1.0, 1e-15);
    EXPECT_TRUE(on_quadric(z));
}

TEST(HermitianForm, DimensionMismatchRejected)
{
    const auto h = HermitianSpace::hyperbolic(2);
    EXPECT_THROW(AmbientVector(h, CVector::Zero(2)), Error);
    const AmbientVector a(h, CVector::Zero(3));
    const AmbientVector b(HermitianSpace::hyperbolic(3), CVector::Zero(4));
    EXPECT_THROW(herm_form(a, b), Error);
}

TEST(HermitianForm, HermitianSymmetryAndSesquilinearity)
{
    std::mt19937_64 rng(7);
    std::normal_distribution<double> N;
    const auto h = HermitianSpace::hyperbolic(3);
    for (int k = 0; k < 20; ++k) {
        CVector z(4), w(4);
        for (int i = 0; i < 4; ++i) {
            z(i) = {N(rng), N(rng)};
            w(i) = {N(rng), N(rng)};
        }
        const Complex lam{N(rng), N(rng)};
        EXPECT_NEAR(std::abs(h.form(z, w) - std::conj(h.form(w, z))), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(h.form(lam * z, w) - lam * h.form(z, w)), 0.0, 1e-12);
        EXPECT_NEAR(std::abs(h.form(z, lam * w) - std::conj(lam) * h.form(z, w)), 0.0, 1e-12);
    }
}

TEST(Quadric, Membership)
{
    const auto h = HermitianSpace::hyperbolic(2);
    EXPECT_TRUE(on_quadric(AmbientVector(h, last_unit(2))));
    CVector e1 = CVector::Zero(3);
    e1(0) = 1.0;
    EXPECT_FALSE(on_quadric(AmbientVector(h, e1)));
    for (double x : {-3.0, 0.0, 0.4, 7.0}) {
        RVector p(1);
        p << x;
        const auto z = umbilical_embed(UmbilicalKind::horosphere, std::nullopt, ModelPoint(ModelKind::euclidean, p));
        EXPECT_TRUE(on_quadric(z, 1e-9 * (1 + x * x * x * x)));
    }
}

TEST(ProjectivePoint, PhaseInvariance)
{
    const auto h = HermitianSpace::hyperbolic(2);
    const AmbientVector z(h, cvec({{0.3, 0.1}, {-0.2, 0.5}, {std::sqrt(1.0 + 0.1 + 0.29), 0.0}}));
    ASSERT_TRUE(on_quadric(z, 1e-12));
    const auto p = ProjectivePoint::from(z);
    EXPECT_TRUE(projective_equal(p, ProjectivePoint::from(Complex(0, 1) * z)));
    EXPECT_TRUE(projective_equal(p, ProjectivePoint::from(Complex(-1, 0) * z)));
    const AmbientVector far(h, cvec({std::sinh(1.0), 0.0, std::cosh(1.0)}));
    EXPECT_FALSE(projective_equal(ProjectivePoint::from(AmbientVector(h, last_unit(2))), ProjectivePoint::from(far)));
}

TEST(Horizontal, ProjectionProperties)
{
    const auto h = HermitianSpace::hyperbolic(1);
    const AmbientVector z(h, cvec({1.0, std::sqrt(2.0)}));
    const AmbientVector vz = horizontal_project(z, Complex(0, 1) * z);
    EXPECT_LT(vz.coords().norm(), 1e-14);
    const AmbientVector v(h, cvec({{0.7, -0.2}, {0.1, 0.9}}));
    const AmbientVector hv = horizontal_project(z, v);
    EXPECT_LT(std::abs(herm_form(hv, z)), 1e-14);
    EXPECT_LT((horizontal_project(z, hv).coords() - hv.coords()).norm(), 1e-14);
    EXPECT_THROW(horizontal_project(AmbientVector(h, cvec({1.0, 0.0})), v), Error);
}

TEST(Horizontal, KaehlerForm)
{
    const auto h = HermitianSpace::hyperbolic(2);
    const double r = 0.8;
    const AmbientVector z(h, cvec({std::sinh(r), 0.0, std::cosh(r)}));
    const AmbientVector u(h, cvec({std::cosh(r), 0.0, std::sinh(r)}));
    const AmbientVector v(h, cvec({0.0, 1.0, 0.0}));
    EXPECT_EQ(omega_eval(z, u, u), 0.0);
    EXPECT_EQ(omega_eval(z, u, v), 0.0);
    EXPECT_NEAR(omega_eval(z, u, Complex(0, 1) * u), herm_form(u, u).real(), 1e-14);
    EXPECT_THROW(omega_eval(z, z, u), Error);
}

TEST(Isometry, IdentityAndEuclideanExample)
{
    RMatrix id = RMatrix::Identity(3, 3);
    EXPECT_LT((embed_isometry(GroupKind::so_n, id).matrix() - CMatrix::Identity(4, 4)).norm(), 1e-15);

    EuclidParams e{RMatrix::Identity(1, 1), RVector::Ones(1)};
    CMatrix expect(3, 3);
    expect << 1.0, 1.0, 1.0, -1.0, 0.5, -0.5, 1.0, 0.5, 1.5;
    EXPECT_LT((embed_isometry(GroupKind::euclid_n, e).matrix() - expect).norm(), 1e-15);
}

TEST(Isometry, MembershipErrors)
{
    RMatrix refl = RMatrix::Identity(2, 2);
    refl(0, 0) = -1.0;
    EXPECT_THROW(embed_isometry(GroupKind::so_n, refl), Error);
    RMatrix time_flip = RMatrix::Identity(2, 2);
    time_flip(1, 1) = -1.0;
    time_flip(0, 0) = -1.0;
    EXPECT_THROW(embed_isometry(GroupKind::so1_n, time_flip), Error);
    EXPECT_THROW(embed_isometry(GroupKind::so1_n, RMatrix(RMatrix::Identity(2, 2)), Signature::spherical), Error);
}

class RandomIsometry : public ::testing::TestWithParam<std::tuple<GroupKind, int>> {};

TEST_P(RandomIsometry, PreservesFormAndQuadric)
{
    const auto [group, n] = GetParam();
    std::mt19937_64 rng(11);
    const auto h = HermitianSpace::hyperbolic(n);
    for (int k = 0; k < 10; ++k) {
        const auto g = embed_isometry(group, random_group_params(group, n, rng));
        EXPECT_LT(g.invariance_defect(), 1e-10);
        RVector x = RVector::Zero(n);
        x(0) = 1.0;
        const auto z = umbilical_embed(UmbilicalKind::geodesic_sphere, 0.7, ModelPoint(ModelKind::sphere, x));
        EXPECT_TRUE(on_quadric(g.apply(z), 1e-9));
    }
}

INSTANTIATE_TEST_SUITE_P(Groups, RandomIsometry,
                         ::testing::Combine(::testing::Values(GroupKind::so_n, GroupKind::so1_n, GroupKind::euclid_n),
                                            ::testing::Values(2, 3, 4)));

TEST(Umbilical, Examples)
{
    RVector x0 = RVector::Zero(2);
    const auto h0 = umbilical_embed(UmbilicalKind::horosphere, std::nullopt, ModelPoint(ModelKind::euclidean, x0));
    CVector expect = CVector::Zero(4);
    expect(3) = 1.0;
    EXPECT_LT((h0.coords() - expect).norm(), 1e-15);

    RVector e1 = RVector::Zero(3);
    e1(0) = 1.0;
    const auto g = umbilical_embed(UmbilicalKind::geodesic_sphere, 1.0, ModelPoint(ModelKind::sphere, e1));
    EXPECT_NEAR(g[0].real(), std::sinh(1.0), 1e-15);
    EXPECT_NEAR(g[3].real(), std::cosh(1.0), 1e-15);
    EXPECT_TRUE(on_quadric(g));

    RVector y(3);
    y << 0.3, -0.4, std::sqrt(1.25);
    EXPECT_TRUE(on_quadric(umbilical_embed(UmbilicalKind::tube, 0.6, ModelPoint(ModelKind::hyperbolic, y)), 1e-12));
    EXPECT_THROW(umbilical_embed(UmbilicalKind::tube, 0.6, ModelPoint(ModelKind::sphere, e1)), Error);
    EXPECT_THROW(ModelPoint(ModelKind::sphere, RVector::Ones(3)), Error);
}

TEST(Charts, SphereChartLandsOnSphere)
{
    const Chart c = Chart::sphere(2);
    for (const auto& u : c.mesh(25)) {
        EXPECT_NEAR(c.embed(u).norm(), 1.0, 1e-14);
        EXPECT_TRUE(c.contains(u));
    }
    EXPECT_EQ(c.per_axis(25), 5);
    EXPECT_EQ(per_axis(3, 64), 4);
}

TEST(Charts, HyperbolicChartLandsOnHyperboloid)
{
    const Chart c = Chart::hyperbolic(2);
    for (const auto& u : c.mesh(16)) {
        const RVector x = c.embed(u);
        EXPECT_NEAR(x.head(2).squaredNorm() - x(2) * x(2), -1.0, 1e-12);
    }
}

TEST(Charts, QuadratureWeightsIntegrateLength)
{
    ParamBox box{RVector::Zero(1), RVector::Constant(1, 2.0), {false}};
    double sum = 0.0;
    for (double w : box.weights(0, 9))
        sum += w;
    EXPECT_NEAR(sum, 2.0, 1e-15);
    box.periodic = {true};
    const auto nodes = box.nodes(0, 4);
    EXPECT_NEAR(nodes.front(), 0.25, 1e-15);
}
