#include <memory>

#include <benchmark/benchmark.h>

#include "lagmin/geomcheck.hpp"

using namespace lagmin;

namespace {

ImmersionFamilySpec thm(FamilyTag tag, int n, double rho)
{
    ImmersionFamilySpec s;
    s.family = tag;
    s.n = n;
    s.rho = rho;
    return s;
}

void BM_SolveProfile(benchmark::State& state)
{
    const auto kind = static_cast<ProfileKind>(state.range(0));
    const double rho = kind == ProfileKind::cp_sphere ? 0.6 : 1.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(solve_profile({kind, 3, rho}, 8.0, 1e-11));
}
BENCHMARK(BM_SolveProfile)
    ->Arg(static_cast<int>(ProfileKind::ch_sphere))
    ->Arg(static_cast<int>(ProfileKind::ch_tube))
    ->Arg(static_cast<int>(ProfileKind::cp_sphere))
    ->Unit(benchmark::kMillisecond);

void BM_PhaseIntegrals(benchmark::State& state)
{
    auto sol = std::make_shared<const ProfileSolution>(solve_profile({ProfileKind::ch_sphere, 2, 1.0}, 8.0, 1e-11));
    for (auto _ : state)
        benchmark::DoNotOptimize(PhaseIntegrals(sol));
}
BENCHMARK(BM_PhaseIntegrals)->Unit(benchmark::kMillisecond);

void BM_JetAndSFF(benchmark::State& state)
{
    const auto imm = make_immersion(thm(FamilyTag::thm1, static_cast<int>(state.range(0)), 1.0));
    RVector p = RVector::Constant(imm.n(), 0.7);
    p(0) = 0.4;
    for (auto _ : state) {
        const auto j = jet(imm, p);
        benchmark::DoNotOptimize(second_fundamental_form(imm, j, induced_metric(imm, j)));
    }
}
BENCHMARK(BM_JetAndSFF)->Arg(2)->Arg(3)->Unit(benchmark::kMicrosecond);

void BM_RunChecks(benchmark::State& state)
{
    const auto imm = build_immersion(thm(FamilyTag::thm3, 2, 1.0), {32, 32, 2.0});
    for (auto _ : state)
        benchmark::DoNotOptimize(run_checks(imm, {}));
}
BENCHMARK(BM_RunChecks)->Unit(benchmark::kMillisecond);

void BM_SigmaIntegralThm1(benchmark::State& state)
{
    SigmaIntegralSpec s{3, 1.0};
    s.method = static_cast<SigmaMethod>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(sigma_integral_thm1(s));
}
BENCHMARK(BM_SigmaIntegralThm1)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
