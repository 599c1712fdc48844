#include <cmath>

#include <gtest/gtest.h>

#include "lagmin/error.hpp"
#include "lagmin/immersions.hpp"

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

} // namespace

TEST(Seeds, CliffordNormalization)
{
    const auto seed = make_seed(SeedKind::clifford_cp, 2);
    RVector u(2);
    u << 0.0, 0.0;
    const CVector z = seed.eval(u).lift;
    EXPECT_EQ(z.size(), 3);
    EXPECT_NEAR(z.squaredNorm(), 1.0, 1e-15);
    EXPECT_NEAR(std::norm(z(2)), 1.0 / 3.0, 1e-15);
    EXPECT_THROW(make_seed(SeedKind::clifford_cp, 1), Error);
}

TEST(Seeds, NamedSeedsAreHorizontal)
{
    for (auto kind : {SeedKind::tg_sphere_cp, SeedKind::tg_rh_ch, SeedKind::tg_plane_c, SeedKind::clifford_cp})
        for (int dim : {2, 3}) {
            const auto seed = make_seed(kind, dim);
            const auto chk = check_seed(seed, box_mesh(seed.box(), 27));
            EXPECT_LT(chk.norm_residual, 1e-12) << to_string(kind);
            EXPECT_LT(chk.horizontal_residual, 1e-7) << to_string(kind);
            EXPECT_LT(chk.potential_residual, 1e-7) << to_string(kind);
        }
}

TEST(Seeds, PlaneSeedPotential)
{
    const auto seed = make_seed(SeedKind::tg_plane_c, 2);
    RVector u(2);
    u << 0.3, -1.2;
    const auto v = seed.eval(u);
    EXPECT_NEAR(v.potential.real(), u.squaredNorm(), 1e-15);
    EXPECT_EQ(v.potential.imag(), 0.0);
}

TEST(Families, NamesRoundTrip)
{
    for (auto tag : {FamilyTag::thm1, FamilyTag::tg_horo, FamilyTag::prop6b, FamilyTag::cn_product})
        EXPECT_EQ(parse_family_tag(to_string(tag)), tag);
    EXPECT_EQ(parse_family_tag("tg_sphere"), FamilyTag::tg_sphere);
    EXPECT_FALSE(parse_family_tag("thm4").has_value());
    EXPECT_EQ(parse_grid("64x32"), (std::pair{64, 32}));
    EXPECT_FALSE(parse_grid("64by32").has_value());
}

TEST(Families, InvalidSpecs)
{
    EXPECT_THROW(make_immersion(spec(FamilyTag::thm1, 2)), Error);
    EXPECT_THROW(make_immersion(spec(FamilyTag::prop3a, 3, 1.0)), Error);
    EXPECT_THROW(make_immersion(spec(FamilyTag::prop3a, 3, 1.0, SeedKind::tg_rh_ch)), Error);
    auto cn = spec(FamilyTag::cn_product, 2, std::nullopt, SeedKind::tg_sphere_cp);
    cn.c = -1.0;
    EXPECT_THROW(make_immersion(cn), Error);
}

class AllFamilies : public ::testing::TestWithParam<ImmersionFamilySpec> {};

TEST_P(AllFamilies, SamplesLieOnQuadric)
{
    const auto imm = build_immersion(GetParam(), {12, 16, 1.5});
    EXPECT_EQ(imm.samples.size(), imm.params.size());
    EXPECT_LT(imm.quadric_residual, 1e-8);
    for (const auto& p : imm.params)
        EXPECT_TRUE(imm.evaluator.in_domain(p));
}

INSTANTIATE_TEST_SUITE_P(
    Builders, AllFamilies,
    ::testing::Values(spec(FamilyTag::thm1, 2, 1.0), spec(FamilyTag::thm2, 3, 0.5), spec(FamilyTag::thm3, 2, 1.0),
                      spec(FamilyTag::thm5, 3, 0.6), spec(FamilyTag::tg_sphere, 2), spec(FamilyTag::tg_tube, 3),
                      spec(FamilyTag::tg_horo, 2), spec(FamilyTag::prop3a, 3, 1.0, SeedKind::clifford_cp),
                      spec(FamilyTag::prop3b, 2, 1.0, SeedKind::tg_rh_ch),
                      spec(FamilyTag::prop3c, 2, 1.0, SeedKind::tg_plane_c),
                      spec(FamilyTag::prop4a, 2, std::nullopt, SeedKind::tg_sphere_cp),
                      spec(FamilyTag::prop4b, 3, std::nullopt, SeedKind::tg_rh_ch),
                      spec(FamilyTag::prop4c, 2, std::nullopt, SeedKind::tg_plane_c),
                      spec(FamilyTag::prop6a, 2, 0.6, SeedKind::tg_sphere_cp),
                      spec(FamilyTag::prop6b, 3, std::nullopt, SeedKind::tg_sphere_cp),
                      spec(FamilyTag::cn_product, 2, std::nullopt, SeedKind::tg_sphere_cp)));

TEST(Families, Prop3aWithRoundSeedIsThm1)
{
    const auto a = make_immersion(spec(FamilyTag::thm1, 3, 1.0));
    const auto b = make_immersion(spec(FamilyTag::prop3a, 3, 1.0, SeedKind::tg_sphere_cp));
    for (double s : {-1.5, 0.0, 0.7})
        for (const auto& u : box_mesh(a.fiber_box(), 16)) {
            RVector p(3);
            p << s, u;
            EXPECT_LT(projective_distance(a.lift(p), b.lift(p)), 1e-12);
        }
}

TEST(Families, Thm5EquilibriumIsClifford)
{
    // The constant solution has phase speeds a' = -1/sqrt(n), b' = sqrt(n).
    for (int n : {2, 3}) {
        const auto imm = make_immersion(spec(FamilyTag::thm5, n, std::atan(std::sqrt(double(n)))));
        EXPECT_NEAR(imm.phase()->da(0.4), -1.0 / std::sqrt(double(n)), 1e-12);
        EXPECT_NEAR(imm.phase()->db(0.4), std::sqrt(double(n)), 1e-12);
    }
}

TEST(Foliation, SliceAtOriginAndElsewhere)
{
    const auto imm = build_immersion(spec(FamilyTag::thm1, 2, 1.0), {8, 8, 2.0});
    const auto s0 = slice(imm, 0.0);
    EXPECT_NEAR(s0.radius, 1.0, 1e-14);
    EXPECT_LT((s0.subspace.matrix() - CMatrix::Identity(3, 3)).norm(), 1e-14);
    for (double s : {-1.0, 0.5, 2.0})
        EXPECT_LE(slice(imm, s).dephase_residual, 1e-8);
    EXPECT_THROW(slice(build_immersion(spec(FamilyTag::thm3, 2, 1.0), {8, 8, 2.0}), 0.5), Error);
}

TEST(Foliation, RealLocus)
{
    CVector z(3);
    z << 0.5, -1.0, 2.0;
    EXPECT_EQ(real_locus_residual(z), 0.0);
    EXPECT_LT(real_locus_residual(Complex(0.6, 0.8) * z), 1e-15);
    z(1) = Complex(0.0, 1.0);
    EXPECT_GT(real_locus_residual(z), 0.1);
}

TEST(NormalPosition, AnglesEqualAndContinuous)
{
    const auto imm = make_immersion(spec(FamilyTag::thm1, 3, 1.0));
    const auto ang = normal_position_angles(*imm.phase(), 0.0, 1.0);
    for (double v : ang.raw)
        EXPECT_NEAR(v, ang.raw.front(), 1e-12);
    const auto close = normal_position_angles(*imm.phase(), 0.5, 0.5 + 1e-7);
    EXPECT_LT(std::abs(close.raw.front()), 1e-6);
    try {
        normal_position_angles(*imm.phase(), 0.3, 0.3);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::degenerate_pair);
    }
}

TEST(LegendreCurves, ProfileCurveIsLegendrian)
{
    const auto imm = make_immersion(spec(FamilyTag::thm1, 2, 1.0));
    std::vector<double> s;
    for (int k = 0; k <= 20; ++k)
        s.push_back(-1.5 + 0.15 * k);
    const auto chk = check_curve(profile_curve(*imm.phase(), s));
    EXPECT_LT(chk.norm_residual, 1e-12);
    EXPECT_LT(chk.legendre_residual, 1e-12);
}
