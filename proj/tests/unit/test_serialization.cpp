#include <cmath>

#include <gtest/gtest.h>

#include "lagmin/error.hpp"
#include "lagmin/serialization.hpp"

using namespace lagmin;

TEST(Reals, SeventeenDigitsRoundTrip)
{
    for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::nextafter(1.0, 2.0)})
        EXPECT_EQ(parse_real(format_real(x)), x);
    EXPECT_THROW(parse_real("1.0abc"), Error);
    EXPECT_THROW(parse_real(""), Error);
}

TEST(ProfileJson, RoundTripIsExact)
{
    const auto sol = solve_profile({ProfileKind::ch_tube, 2, 0.8}, 2.0, 1e-10);
    const auto rec = profile_record(sol);
    const auto back = parse_profile_json(profile_json(rec));
    EXPECT_EQ(back.family.kind, ProfileKind::ch_tube);
    EXPECT_EQ(back.family.rho, 0.8);
    ASSERT_EQ(back.grid.size(), rec.grid.size());
    for (std::size_t k = 0; k < rec.grid.size(); ++k)
        EXPECT_EQ(back.grid[k], rec.grid[k]);
    EXPECT_EQ(back.energy_residual, rec.energy_residual);
}

TEST(ImmersionJson, RoundTripIsExact)
{
    ImmersionFamilySpec spec;
    spec.family = FamilyTag::prop3a;
    spec.n = 3;
    spec.rho = 1.0;
    spec.seed_kind = SeedKind::clifford_cp;
    const auto imm = build_immersion(spec, {4, 8, 1.0});
    const auto rec = immersion_record(imm, {{"quadric_residual", imm.quadric_residual}});
    const auto back = parse_immersion_json(immersion_json(rec));
    EXPECT_EQ(back.spec.family, FamilyTag::prop3a);
    EXPECT_EQ(back.seed_kind, SeedKind::clifford_cp);
    ASSERT_EQ(back.samples.size(), imm.samples.size());
    for (std::size_t k = 0; k < imm.samples.size(); ++k) {
        EXPECT_EQ(back.samples[k], imm.samples[k]);
        EXPECT_EQ(back.params[k], imm.params[k]);
    }
    ASSERT_TRUE(back.profile.has_value());
}

TEST(ImmersionJson, SchemaErrorsNameThePath)
{
    try {
        parse_immersion_json(R"({"spec": {"family": "thm1", "n": "two"}})");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::schema);
        EXPECT_NE(std::string(e.what()).find("$.spec"), std::string::npos) << e.what();
    }
    EXPECT_THROW(parse_immersion_json("{not json"), Error);
}

TEST(Csv, SamplesTable)
{
    ImmersionFamilySpec spec;
    spec.family = FamilyTag::tg_horo;
    spec.n = 2;
    const auto imm = build_immersion(spec, {3, 4, 1.0});
    const auto table = parse_csv(samples_csv(immersion_record(imm)));
    EXPECT_EQ(table.header.front(), "s");
    EXPECT_EQ(table.header.size(), 2u + 2u * 3u);
    ASSERT_EQ(table.rows.size(), imm.samples.size());
    EXPECT_EQ(table.rows[5][2], imm.samples[5](0).real());
}
