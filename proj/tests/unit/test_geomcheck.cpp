#include <cmath>

#include <gtest/gtest.h>

#include "lagmin/error.hpp"
#include "lagmin/geomcheck.hpp"

using namespace lagmin;

namespace {

ImmersionFamilySpec spec(FamilyTag tag, int n, std::optional<double> rho = std::nullopt,
                         std::optional<SeedKind> seed = std::nullopt)
{
    ImmersionFamilySpec s;
    s.family = tag;
    s.n = n;
    s.rho = rho;
    s.seed_kind = seed;
    return s;
}

RVector point(std::initializer_list<double> xs)
{
    RVector p(static_cast<Eigen::Index>(xs.size()));
    int i = 0;
    for (double x : xs)
        p(i++) = x;
    return p;
}

// C^2 seed eta(x) = (x1 + i x2, 0): a complex line, hence not Lagrangian.
std::shared_ptr<const SeedLagrangian> complex_line_seed()
{
    ParamBox box{RVector::Constant(2, -1.0), RVector::Constant(2, 1.0), {false, false}};
    auto eval = [](const RVector& u) {
        CVector eta(2);
        eta << Complex(u(0), u(1)), 0.0;
        return SeedValue{eta, Complex(eta.squaredNorm(), 0.0)};
    };
    return std::make_shared<SeedLagrangian>("complex-line", SeedKind::custom, SeedTarget::c, 2, box, eval);
}

} // namespace

TEST(Jet, HorosphereSecondPartialsMatchAnalytic)
{
    // z(s, x) = (e^s x, e^s |x|^2/2 - sinh s, e^s |x|^2/2 + cosh s):
    // d^2 z / dx_i dx_j = e^s delta_ij on the last two coordinates.
    const auto imm = make_immersion(spec(FamilyTag::tg_horo, 3));
    const RVector p = point({0.4, 0.3, -0.5});
    const auto j = jet(imm, p);
    const double e = std::exp(p(0));
    for (int i = 1; i < 3; ++i)
        for (int k = 1; k < 3; ++k) {
            CVector ref = CVector::Zero(4);
            if (i == k)
                ref(2) = ref(3) = e;
            EXPECT_LT((j.second[i][k] - ref).norm(), 1e-6) << i << k;
        }
    EXPECT_LT(j.symmetry_defect, 1e-6);
}

TEST(Jet, RejectsBoundaryPoints)
{
    const auto imm = make_immersion(spec(FamilyTag::tg_sphere, 2));
    try {
        jet(imm, point({1e-4, 1.0}));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::out_of_domain);
    }
}

TEST(InducedMetric, Thm1WarpedProduct)
{
    const auto imm = make_immersion(spec(FamilyTag::thm1, 3, 1.0));
    for (const RVector& p : {point({0.0, 1.0, 2.0}), point({-1.2, 0.6, 4.0}), point({1.7, 2.0, 0.3})}) {
        const RMatrix g = induced_metric(imm, jet(imm, p, {1e-3, 4, false}));
        RMatrix ref = RMatrix::Zero(3, 3);
        ref(0, 0) = 1.0;
        ref.bottomRightCorner(2, 2) = std::pow(std::sinh(imm.profile()->r(p(0))), 2) *
                                      imm.model_chart()->model_metric(p.tail(2));
        EXPECT_LT((g - ref).cwiseAbs().maxCoeff(), 1e-6);
    }
}

TEST(Lagrangian, RealLiftsAreExactlyLagrangian)
{
    const auto imm = make_immersion(spec(FamilyTag::tg_tube, 3));
    const auto j = jet(imm, point({0.3, 0.2, -0.4}), {1e-3, 4, false});
    EXPECT_LT(lagrangian_residual(imm, j), 1e-12);
}

TEST(Lagrangian, ComplexLineComposedMapIsNot)
{
    auto s = spec(FamilyTag::prop4c, 3);
    s.seed = complex_line_seed();
    const auto imm = make_immersion(s);
    const auto j = jet(imm, point({0.2, 0.3, -0.4}), {1e-3, 4, false});
    EXPECT_GE(lagrangian_residual(imm, j), 0.5);
    const RMatrix g = induced_metric(imm, j);
    EXPECT_THROW(second_fundamental_form(imm, jet(imm, point({0.2, 0.3, -0.4})), g), Error);
}

TEST(SecondFundamentalForm, TotallyGeodesicVanishes)
{
    for (auto tag : {FamilyTag::tg_sphere, FamilyTag::tg_tube, FamilyTag::tg_horo}) {
        const auto imm = make_immersion(spec(tag, 3));
        const RVector p = point({0.6, 0.9, 0.4});
        const auto j = jet(imm, p);
        const auto sff = second_fundamental_form(imm, j, induced_metric(imm, j));
        for (double h : sff.h)
            EXPECT_LT(std::abs(h), 1e-5) << to_string(tag);
    }
}

TEST(SecondFundamentalForm, Thm1Components)
{
    const int n = 2;
    const auto imm = make_immersion(spec(FamilyTag::thm1, n, 1.0));
    const RVector p = point({0.8, 0.5});
    const auto j = jet(imm, p);
    const auto sff = second_fundamental_form(imm, j, induced_metric(imm, j));
    const double k = imm.phase()->c() / std::pow(std::sinh(imm.profile()->r(p(0))), n + 1);
    EXPECT_NEAR(sff.at(0, 0, 0) / k, -(n - 1.0), 1e-3);
    EXPECT_NEAR(sff.at(0, 1, 1) / k, 1.0, 1e-3);
    EXPECT_NEAR(sff.at(1, 0, 1) / k, 1.0, 1e-3);
    EXPECT_NEAR(sff.at(1, 1, 1) / k, 0.0, 1e-3);
    EXPECT_NEAR(sff.norm2() / (k * k), (n - 1.0) * (n + 2.0), 1e-3 * (n - 1.0) * (n + 2.0));
    EXPECT_LT(sff.mean_norm(), 5e-4);
    EXPECT_LT(sff.symmetry_defect(), 1e-4);
}

TEST(MeanCurvature, SecondOrderStencilConverges)
{
    // H of thm3 with three-point stencils should drop by about 4 per halving of h.
    const auto imm = make_immersion(spec(FamilyTag::thm3, 2, 1.0));
    const RVector p = point({0.7, 0.3});
    auto mean_at = [&](double h) {
        const auto j = jet(imm, p, {h, 2, true});
        return second_fundamental_form(imm, j, induced_metric(imm, j)).mean_norm();
    };
    const double e1 = mean_at(4e-3), e2 = mean_at(2e-3);
    EXPECT_GT(e1 / e2, 3.0);
    EXPECT_LT(e1 / e2, 5.0);
}

TEST(Invariance, MatchedAndMismatchedGroups)
{
    const auto thm1 = make_immersion(spec(FamilyTag::thm1, 3, 1.0));
    EXPECT_LE(invariance_residual(thm1, GroupKind::so_n), 1e-8);
    EXPECT_GE(invariance_residual(thm1, GroupKind::so1_n), 0.1);
    InvarianceOptions id;
    id.identity = true;
    EXPECT_LT(invariance_residual(thm1, GroupKind::so1_n, id), 1e-14);
    const auto thm3 = make_immersion(spec(FamilyTag::thm3, 3, 1.0));
    EXPECT_LE(invariance_residual(thm3, GroupKind::euclid_n), 1e-8);
}

TEST(LegendreFunctional, RealGeodesicIsExactlyZero)
{
    std::vector<double> s{0.2, 0.7, 1.3, 2.0};
    std::vector<RotationalJet> jets;
    for (double t : s)
        jets.push_back({t, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
    for (double a : legendre_functional(rotational_curve(Signature::hyperbolic, s, jets), 2))
        EXPECT_EQ(a, 0.0);
}

TEST(LegendreFunctional, VanishingFirstBlockGuarded)
{
    std::vector<double> s{0.0};
    std::vector<RotationalJet> jets{{0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}};
    try {
        legendre_functional(rotational_curve(Signature::hyperbolic, s, jets), 2);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::division_by_zero);
    }
}

TEST(PowerCurve, CurvatureExamples)
{
    const std::vector<double> s{0.3, 0.9, 1.6};
    for (double k : power_curve_curvature([](double t) { return power_curve(t, 1.0, 3); }, 3, s))
        EXPECT_LT(std::abs(k), 1e-6);
    for (double k : power_curve_curvature([](double t) { return std::polar(1.0, t); }, 2, s))
        EXPECT_NEAR(k, 1.0, 1e-6);
    for (double k : power_curve_curvature([](double t) { return std::polar(t, 0.4); }, 2, s))
        EXPECT_LT(std::abs(k), 1e-6);
    EXPECT_THROW(power_curve_curvature([](double t) { return Complex(t, 0.0); }, 2, {0.0}), Error);
}

TEST(SigmaGrid, TotallyGeodesicIsZero)
{
    EXPECT_LT(sigma_integral_grid(build_immersion(spec(FamilyTag::tg_horo, 2), {12, 12, 1.0})), 1e-12);
}

TEST(Reports, SubsetAndUnknownNames)
{
    const auto imm = build_immersion(spec(FamilyTag::tg_horo, 2), {8, 8, 1.0});
    CheckOptions o;
    o.checks = {"minimal"};
    const auto rep = run_checks(imm, o);
    ASSERT_EQ(rep.checks.size(), 1u);
    EXPECT_TRUE(rep.pass());
    EXPECT_LE(rep.find("minimal")->residual, 1e-5);
    o.checks = {"curvature"};
    EXPECT_THROW(run_checks(imm, o), Error);
}

TEST(Reports, DetunedFamilyFailsMinimality)
{
    const auto imm = build_immersion(spec(FamilyTag::thm1_detuned, 2, 1.0), {12, 12, 1.5});
    CheckOptions o;
    o.checks = {"lagrangian", "minimal"};
    const auto rep = run_checks(imm, o);
    EXPECT_TRUE(rep.find("lagrangian")->pass);
    EXPECT_GE(rep.find("minimal")->residual, 1e-2);
    EXPECT_FALSE(rep.pass());
}
