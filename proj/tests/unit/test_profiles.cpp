#include <cmath>
#include <memory>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>
#include <gtest/gtest.h>

#include "lagmin/error.hpp"
#include "lagmin/profiles.hpp"

using namespace lagmin;

namespace {

// Independent oracle: r'' = (1 - r'^2) k(r) integrated in (r, r') with a
// fixed-step RK4 at a small step.
double rk4_r(ProfileKind kind, int n, double rho, double s_end, int steps = 20000)
{
    using State = std::array<double, 2>;
    State x{rho, 0.0};
    auto rhs = [&](const State& y, State& d, double) {
        d[0] = y[1];
        d[1] = profile_rhs(kind, n, y[0], y[1]);
    };
    boost::numeric::odeint::runge_kutta4<State> stepper;
    const double h = s_end / steps;
    for (int k = 0; k < steps; ++k)
        stepper.do_step(rhs, x, k * h, h);
    return x[0];
}

std::shared_ptr<const ProfileSolution> solved(ProfileKind kind, int n, double rho, double s_max = 4.0,
                                              double tol = 1e-11)
{
    return std::make_shared<const ProfileSolution>(solve_profile({kind, n, rho}, s_max, tol));
}

} // namespace

TEST(Profile, InitialConditions)
{
    const auto sol = solve_profile({ProfileKind::ch_sphere, 2, 1.0}, 3.0, 1e-10);
    EXPECT_NEAR(sol.at(0.0).r, 1.0, 1e-15);
    EXPECT_NEAR(sol.at(0.0).rp, 0.0, 1e-15);
    for (int n : {2, 3, 5}) {
        const auto h = solve_profile({ProfileKind::ch_horo, n, 0.7}, 3.0, 1e-10);
        EXPECT_NEAR(h.r(0.0), 0.7, 1e-15);
        EXPECT_NEAR(h.rp(0.0), 0.0, 1e-15);
    }
}

TEST(Profile, EvenInS)
{
    const auto sol = solve_profile({ProfileKind::ch_tube, 3, 0.5}, 4.0, 1e-11);
    for (double s : {0.3, 1.1, 2.7, 3.9}) {
        EXPECT_NEAR(sol.r(s), sol.r(-s), 1e-9 * sol.r(s));
        EXPECT_NEAR(sol.rp(s), -sol.rp(-s), 1e-9 * (1 + std::abs(sol.rp(s))));
    }
}

TEST(Profile, AgreesWithIndependentIntegrator)
{
    for (auto kind : {ProfileKind::ch_sphere, ProfileKind::ch_tube, ProfileKind::cp_sphere}) {
        const double rho = kind == ProfileKind::cp_sphere ? 0.6 : 1.0;
        const auto sol = solve_profile({kind, 2, rho}, 2.5, 1e-12);
        for (double s : {0.5, 1.5, 2.5})
            EXPECT_NEAR(sol.r(s), rk4_r(kind, 2, rho, s), 1e-8) << to_string(kind) << " s=" << s;
    }
}

TEST(Profile, EquilibriumIsConstant)
{
    const double rho = std::atan(std::sqrt(2.0));
    const auto sol = solve_profile({ProfileKind::cp_sphere, 2, rho}, 5.0, 1e-10);
    EXPECT_TRUE(sol.is_equilibrium());
    EXPECT_EQ(energy_residual(sol), 0.0);
    for (double s : {-5.0, -1.0, 0.0, 2.0, 5.0})
        EXPECT_NEAR(sol.r(s), rho, 1e-15);
    EXPECT_NEAR(profile_rhs(ProfileKind::cp_sphere, 2, rho, 0.0), 0.0, 1e-14);
}

TEST(Profile, EnergyConservation)
{
    EXPECT_LE(energy_residual(solve_profile({ProfileKind::ch_sphere, 2, 1.0}, 8.0, 1e-10)), 1e-8);
    EXPECT_LE(energy_residual(solve_profile({ProfileKind::ch_horo, 2, 1.0}, 5.0, 1e-10)), 1e-10);
}

TEST(Profile, HoroClosedFormFirstIntegral)
{
    const int n = 3;
    const double rho = 0.5;
    const auto sol = solve_profile({ProfileKind::ch_horo, n, rho}, 5.0, 1e-10);
    for (double s = -5.0; s <= 5.0; s += 0.25) {
        const auto v = sol.at(s);
        EXPECT_NEAR(v.rp * v.rp + std::pow(rho, 2 * (n + 1)) / std::pow(v.r, 2 * n) - v.r * v.r, 0.0,
                    1e-10 * std::max(1.0, v.r * v.r));
    }
}

TEST(Profile, InvalidArguments)
{
    EXPECT_THROW(solve_profile({ProfileKind::ch_sphere, 1, 1.0}, 2.0, 1e-10), Error);
    EXPECT_THROW(solve_profile({ProfileKind::ch_sphere, 2, -1.0}, 2.0, 1e-10), Error);
    EXPECT_THROW(solve_profile({ProfileKind::cp_sphere, 2, 2.0}, 2.0, 1e-10), Error);
    EXPECT_THROW(solve_profile({ProfileKind::ch_sphere, 2, 1.0}, 2.0, 1e-3), Error);
}

TEST(PhaseIntegralsTest, ZeroAtOriginAndMatchesQuadrature)
{
    const auto sol = solved(ProfileKind::ch_sphere, 2, 1.0);
    const PhaseIntegrals ph(sol);
    EXPECT_EQ(ph.a(0.0), 0.0);
    EXPECT_EQ(ph.b(0.0), 0.0);
    EXPECT_NEAR(ph.c(), std::cosh(1.0) * std::pow(std::sinh(1.0), 2), 1e-14);
    // Oracle: adaptive quadrature of the integrand a' = c / sinh^3 r at two tolerances.
    auto f = [&](double t) { return ph.c() / std::pow(std::sinh(sol->r(t)), 3); };
    using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
    const double q1 = GK::integrate(f, 0.0, 1.0, 10, 1e-12);
    const double q2 = GK::integrate(f, 0.0, 0.5, 10, 1e-12) + GK::integrate(f, 0.5, 1.0, 10, 1e-12);
    EXPECT_NEAR(q1, q2, 1e-10);
    EXPECT_NEAR(ph.a(1.0), q1, 1e-8);
    EXPECT_NEAR(ph.a(-1.0), -q1, 1e-8);
}

TEST(PhaseIntegralsTest, CpSphereSignConvention)
{
    const PhaseIntegrals ph(solved(ProfileKind::cp_sphere, 3, 0.6));
    EXPECT_LT(ph.da(0.3), 0.0);
    EXPECT_GT(ph.db(0.3), 0.0);
}

TEST(PhaseSupTest, ConvergesBelowPi)
{
    const auto p8 = embedding_phase_sup(solve_profile({ProfileKind::ch_sphere, 2, 1.0}, 8.0, 1e-11));
    const auto p12 = embedding_phase_sup(solve_profile({ProfileKind::ch_sphere, 2, 1.0}, 12.0, 1e-11));
    EXPECT_NEAR(p8.value, p12.value, 1e-6);
    EXPECT_LT(p8.value, std::numbers::pi);
    EXPECT_EQ(embedding_phase_partial(solve_profile({ProfileKind::ch_sphere, 2, 1.0}, 2.0, 1e-11), 0.0), 0.0);
}

TEST(PhaseSupTest, ShortDomainNeedsMore)
{
    try {
        embedding_phase_sup(solve_profile({ProfileKind::ch_sphere, 2, 0.5}, 0.5, 1e-11));
        FAIL() << "expected needs-larger-domain";
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::needs_larger_domain);
    }
}

TEST(SigmaIntegral, Prefactor)
{
    EXPECT_NEAR(sigma_prefactor(2), 16.0 * std::numbers::pi, 1e-12);
    EXPECT_NEAR(sphere_volume(1), 2.0 * std::numbers::pi, 1e-15);
    EXPECT_NEAR(sphere_volume(2), 4.0 * std::numbers::pi, 1e-14);
}

TEST(SigmaIntegral, TwoFormsAgree)
{
    for (auto [n, rho] : {std::pair{2, 1.0}, {3, 0.5}, {3, 2.0}}) {
        SigmaIntegralSpec s{n, rho};
        const auto rs = sigma_integral_thm1(s);
        s.method = SigmaMethod::t_form;
        const auto rt = sigma_integral_thm1(s);
        EXPECT_NEAR(rs.value / rt.value, 1.0, 1e-6) << n << ' ' << rho;
        EXPECT_TRUE(std::isfinite(rt.tail_bound));
    }
}

TEST(Period, ReturnsAndClosure)
{
    const auto r = detect_period(2, 0.6);
    ASSERT_TRUE(r.has_value());
    EXPECT_LE(r->closure_residual, 1e-8);
    const auto sol = solve_profile({ProfileKind::cp_sphere, 2, 0.6}, 2.0 * r->period + 1.0, 1e-12);
    for (int k = 0; k < 20; ++k) {
        const double s = r->period * k / 20.0;
        EXPECT_NEAR(sol.r(s + r->period), sol.r(s), 1e-7);
    }
    EXPECT_FALSE(detect_period(3, std::atan(std::sqrt(3.0))).has_value());
    EXPECT_TRUE(detect_period(3, 0.3).has_value());
}
