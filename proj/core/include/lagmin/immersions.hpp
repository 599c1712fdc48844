#pragma once

// Evaluators for the immersion families. Each family produces the
// horizontal lift of its immersion on the quadric (or, for cn_product, the
// immersion itself in C^n) as a function of parameters p = (s, u), where u
// are chart coordinates of the orbit factor or of the seed.

#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "lagmin/charts.hpp"
#include "lagmin/profiles.hpp"
#include "lagmin/seeds.hpp"

namespace lagmin {

enum class FamilyTag {
    thm1,
    thm2,
    thm3,
    thm5,
    tg_sphere,
    tg_tube,
    tg_horo,
    prop3a,
    prop3b,
    prop3c,
    prop4a,
    prop4b,
    prop4c,
    prop6a,
    prop6b,
    cn_product,
    /// thm1 with the phase speed frozen at f(0): Lagrangian but not minimal.
    thm1_detuned,
};

std::string_view to_string(FamilyTag tag);
std::optional<FamilyTag> parse_family_tag(std::string_view text);

enum class AmbientKind { ch, cp, cn };

struct ImmersionFamilySpec {
    FamilyTag family;
    int n;
    std::optional<double> rho;
    std::optional<SeedKind> seed_kind;
    /// Overrides seed_kind (custom seeds).
    std::shared_ptr<const SeedLagrangian> seed;
    /// Imaginary part of gamma^n for cn_product.
    double c = 1.0;
    double ode_tol = 1e-11;
};

struct GridSpec {
    int s_count = 64;
    /// Total number of orbit-factor (or seed) points.
    int m_count = 64;
    /// Half-width of the s range for families defined on all of R.
    double s_max = 2.0;
};

/// Parses "SxM", e.g. "64x64".
std::optional<std::pair<int, int>> parse_grid(std::string_view text);

class Immersion {
public:
    using Lift = std::function<CVector(const RVector&)>;
    using ModelLift = std::function<CVector(double, const RVector&)>;

    const ImmersionFamilySpec& spec() const noexcept { return spec_; }
    FamilyTag family() const noexcept { return spec_.family; }
    int n() const noexcept { return spec_.n; }
    AmbientKind ambient() const noexcept { return ambient_; }
    /// Coordinate count of the lift: n + 1, or n for cn_product.
    int ambient_dim() const noexcept { return ambient_ == AmbientKind::cn ? n() : n() + 1; }

    /// Hermitian form of the ambient space and the value of (z, z) on the
    /// model quadric (0 for the flat C^n, where nothing is projected out).
    Complex form(const CVector& z, const CVector& w) const;
    double level() const noexcept;
    /// Ambient HermitianSpace (ch, cp only).
    HermitianSpace space() const;

    /// s range of the sample grid and the hard domain of the evaluator.
    std::pair<double, double> grid_s_range() const noexcept { return grid_s_; }
    std::pair<double, double> domain_s_range() const noexcept { return domain_s_; }
    /// Parameter box of the orbit factor / seed.
    const ParamBox& fiber_box() const noexcept { return fiber_box_; }
    /// True when p is at least `margin` inside the evaluator domain.
    bool in_domain(const RVector& p, double margin = 0.0) const;

    CVector lift(const RVector& p) const { return lift_(p); }

    /// Families whose orbit factor is a model manifold (S^{n-1}, RH^{n-1}, R^{n-1}).
    const std::optional<Chart>& model_chart() const noexcept { return chart_; }
    /// Lift at (s, x) with x a model point; only when model_chart() is set.
    CVector lift_at(double s, const ModelPoint& x) const;

    const ProfileSolution* profile() const noexcept { return profile_.get(); }
    const PhaseIntegrals* phase() const noexcept { return phase_.get(); }
    const SeedLagrangian* seed() const noexcept { return seed_.get(); }
    /// Symmetry group claimed for the family, if any.
    std::optional<GroupKind> symmetry() const noexcept { return symmetry_; }
    bool totally_geodesic() const noexcept { return totally_geodesic_; }

private:
    friend Immersion make_immersion(const ImmersionFamilySpec&, double);
    Immersion() = default;

    ImmersionFamilySpec spec_{};
    AmbientKind ambient_ = AmbientKind::ch;
    std::pair<double, double> grid_s_{};
    std::pair<double, double> domain_s_{};
    ParamBox fiber_box_;
    std::function<bool(const RVector&, double)> fiber_domain_;
    std::optional<Chart> chart_;
    std::shared_ptr<const ProfileSolution> profile_;
    std::shared_ptr<const PhaseIntegrals> phase_;
    std::shared_ptr<const SeedLagrangian> seed_;
    std::optional<GroupKind> symmetry_;
    bool totally_geodesic_ = false;
    Lift lift_;
    ModelLift model_lift_;
};

/// Builds the evaluator; ODE-backed families solve their profile on
/// [-(s_max + 1), s_max + 1].
Immersion make_immersion(const ImmersionFamilySpec& spec, double s_max = 2.0);

struct SampledImmersion {
    Immersion evaluator;
    GridSpec grid;
    std::vector<double> s_nodes;
    std::vector<RVector> fiber_nodes;
    /// Row-major over (s, fiber): params[i * fiber_nodes.size() + j].
    std::vector<RVector> params;
    std::vector<CVector> samples;
    /// max |(lift, lift) - level| over the samples.
    double quadric_residual = 0.0;
};

/// Tensor grid of s_count values of s times the chart mesh of m_count points.
SampledImmersion build_immersion(const ImmersionFamilySpec& spec, const GridSpec& grid);

struct SliceRecord {
    ProjectivePoint center;
    double radius;
    /// A(s) = diag(e^{ia(s)} I_n, e^{ib(s)}).
    IsometryElement subspace;
    std::vector<RVector> fiber_params;
    std::vector<CVector> samples;
    /// Samples multiplied by A(s)^{-1}, each rotated by one unit phase.
    std::vector<CVector> dephased;
    /// max |Im| of the de-phased samples relative to their size.
    double dephase_residual;
};

/// The geodesic sphere of radius r(s) at level s of a thm1 immersion.
SliceRecord slice(const SampledImmersion& imm, double s);

/// Distance of a vector to the real locus after the best unit phase,
/// relative to |z|_inf.
double real_locus_residual(const CVector& z, CVector* dephased = nullptr);

struct NormalPositionAngles {
    /// (a(s') - a(s)) - (b(s') - b(s)) for each of the n coordinates.
    std::vector<double> raw;
    /// raw reduced modulo pi into [0, pi).
    std::vector<double> reduced;
};

NormalPositionAngles normal_position_angles(const PhaseIntegrals& phase, double s, double s_prime);
/// Same, building the phase integrals of a ch-sphere profile.
NormalPositionAngles normal_position_angles(std::shared_ptr<const ProfileSolution> sol, double s,
                                            double s_prime);

/// A sampled curve in H^3_1 (hyperbolic) or S^3 (spherical) with its first
/// and second derivatives.
struct LegendreCurve {
    Signature signature;
    std::vector<double> s;
    std::vector<CVector> g;
    std::vector<CVector> dg;
    std::vector<CVector> ddg;
};

struct LegendreCurveCheck {
    /// max |(g, g) - level|
    double norm_residual = 0.0;
    /// max |(g', g)| / |g'|
    double legendre_residual = 0.0;
};
LegendreCurveCheck check_curve(const LegendreCurve& curve);

/// r, theta and their first two derivatives for one coordinate pair of a
/// curve (F(r) e^{ia}, G(r) e^{ib}).
struct RotationalJet {
    double r, rp, rpp;
    double a, ap, app;
    double b, bp, bpp;
};

/// (sinh r e^{ia}, cosh r e^{ib}) or (sin r e^{ia}, cos r e^{ib}).
LegendreCurve rotational_curve(Signature signature, const std::vector<double>& s,
                               const std::vector<RotationalJet>& jets);

/// The profile curve of a thm1 (ch_sphere) or thm5 (cp_sphere) immersion.
LegendreCurve profile_curve(const PhaseIntegrals& phase, const std::vector<double>& s);

} // namespace lagmin
