#include "lagmin/immersions.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lagmin/error.hpp"

namespace lagmin {

namespace {

constexpr Complex I(0.0, 1.0);

struct FamilyInfo {
    FamilyTag tag;
    const char* name;
    AmbientKind ambient;
    std::optional<ProfileKind> profile;
    std::optional<SeedTarget> seed;
    std::optional<ModelKind> model;
    std::optional<GroupKind> symmetry;
};

const FamilyInfo kFamilies[] = {
    {FamilyTag::thm1, "thm1", AmbientKind::ch, ProfileKind::ch_sphere, {}, ModelKind::sphere, GroupKind::so_n},
    {FamilyTag::thm2, "thm2", AmbientKind::ch, ProfileKind::ch_tube, {}, ModelKind::hyperbolic, GroupKind::so1_n},
    {FamilyTag::thm3, "thm3", AmbientKind::ch, ProfileKind::ch_horo, {}, ModelKind::euclidean, GroupKind::euclid_n},
    {FamilyTag::thm5, "thm5", AmbientKind::cp, ProfileKind::cp_sphere, {}, ModelKind::sphere, GroupKind::so_n},
    {FamilyTag::tg_sphere, "tg-sphere", AmbientKind::ch, {}, {}, ModelKind::sphere, GroupKind::so_n},
    {FamilyTag::tg_tube, "tg-tube", AmbientKind::ch, {}, {}, ModelKind::hyperbolic, GroupKind::so1_n},
    {FamilyTag::tg_horo, "tg-horo", AmbientKind::ch, {}, {}, ModelKind::euclidean, GroupKind::euclid_n},
    {FamilyTag::prop3a, "prop3a", AmbientKind::ch, ProfileKind::ch_sphere, SeedTarget::cp, {}, {}},
    {FamilyTag::prop3b, "prop3b", AmbientKind::ch, ProfileKind::ch_tube, SeedTarget::ch, {}, {}},
    {FamilyTag::prop3c, "prop3c", AmbientKind::ch, ProfileKind::ch_horo, SeedTarget::c, {}, {}},
    {FamilyTag::prop4a, "prop4a", AmbientKind::ch, {}, SeedTarget::cp, {}, {}},
    {FamilyTag::prop4b, "prop4b", AmbientKind::ch, {}, SeedTarget::ch, {}, {}},
    {FamilyTag::prop4c, "prop4c", AmbientKind::ch, {}, SeedTarget::c, {}, {}},
    {FamilyTag::prop6a, "prop6a", AmbientKind::cp, ProfileKind::cp_sphere, SeedTarget::cp, {}, {}},
    {FamilyTag::prop6b, "prop6b", AmbientKind::cp, {}, SeedTarget::cp, {}, {}},
    {FamilyTag::cn_product, "cn-product", AmbientKind::cn, {}, SeedTarget::cp, {}, {}},
    {FamilyTag::thm1_detuned, "thm1-detuned", AmbientKind::ch, ProfileKind::ch_sphere, {}, ModelKind::sphere, GroupKind::so_n},
};

const FamilyInfo& info(FamilyTag tag)
{
    for (const auto& f : kFamilies)
        if (f.tag == tag)
            return f;
    fail(Errc::invalid_argument, "unknown family");
}

// (sinh r e^{ia} x, cosh r e^{ib}) and its relatives: head block scaled by
// p e^{ia}, last coordinate q e^{ib}.
CVector head_tail(const CVector& head, Complex p, Complex q)
{
    CVector z(head.size() + 1);
    z.head(head.size()) = p * head;
    z(head.size()) = q;
    return z;
}

CVector scalar_head(Complex p, const CVector& tail, Complex q)
{
    CVector z(tail.size() + 1);
    z(0) = p;
    z.tail(tail.size()) = q * tail;
    return z;
}

// e^{iA} (r eta, (1 + r^2 (f - 1 - 2iB)) / 2r, (1 + r^2 (f + 1 - 2iB)) / 2r).
CVector horo_lift(double r, double A, double B, const CVector& eta, Complex f)
{
    const int m = static_cast<int>(eta.size());
    CVector z(m + 2);
    z.head(m) = r * eta;
    const double r2 = r * r;
    z(m) = (1.0 + r2 * (f - 1.0 - 2.0 * I * B)) / (2.0 * r);
    z(m + 1) = (1.0 + r2 * (f + 1.0 - 2.0 * I * B)) / (2.0 * r);
    return std::polar(1.0, A) * z;
}

// e^s (eta, f/2, f/2) + (0, -sinh s, cosh s).
CVector horo_geodesic(double s, const CVector& eta, Complex f)
{
    const int m = static_cast<int>(eta.size());
    const double e = std::exp(s);
    CVector z(m + 2);
    z.head(m) = e * eta;
    z(m) = e * 0.5 * f - std::sinh(s);
    z(m + 1) = e * 0.5 * f + std::cosh(s);
    return z;
}

} // namespace

std::string_view to_string(FamilyTag tag) { return info(tag).name; }

std::optional<FamilyTag> parse_family_tag(std::string_view text)
{
    std::string t(text);
    std::replace(t.begin(), t.end(), '_', '-');
    for (const auto& f : kFamilies)
        if (t == f.name)
            return f.tag;
    return std::nullopt;
}

std::optional<std::pair<int, int>> parse_grid(std::string_view text)
{
    const auto x = text.find('x');
    if (x == std::string_view::npos)
        return std::nullopt;
    int s = 0, m = 0;
    auto a = std::from_chars(text.data(), text.data() + x, s);
    auto b = std::from_chars(text.data() + x + 1, text.data() + text.size(), m);
    if (a.ec != std::errc() || a.ptr != text.data() + x || b.ec != std::errc() ||
        b.ptr != text.data() + text.size() || s < 2 || m < 1)
        return std::nullopt;
    return std::pair{s, m};
}

// ---------------------------------------------------------------------------

Complex Immersion::form(const CVector& z, const CVector& w) const
{
    Complex sum = z.cwiseProduct(w.conjugate()).sum();
    if (ambient_ == AmbientKind::ch) {
        const auto last = z.size() - 1;
        sum -= 2.0 * z(last) * std::conj(w(last));
    }
    return sum;
}

double Immersion::level() const noexcept
{
    switch (ambient_) {
    case AmbientKind::ch: return -1.0;
    case AmbientKind::cp: return 1.0;
    case AmbientKind::cn: return 0.0;
    }
    return 0.0;
}

HermitianSpace Immersion::space() const
{
    if (ambient_ == AmbientKind::cn)
        fail(Errc::invalid_argument, "the flat C^n has no model quadric");
    return {n(), ambient_ == AmbientKind::ch ? Signature::hyperbolic : Signature::spherical};
}

bool Immersion::in_domain(const RVector& p, double margin) const
{
    if (p.size() != n())
        return false;
    if (p(0) - margin < domain_s_.first || p(0) + margin > domain_s_.second)
        return false;
    return fiber_domain_ ? fiber_domain_(p.tail(n() - 1), margin) : true;
}

CVector Immersion::lift_at(double s, const ModelPoint& x) const
{
    if (!chart_)
        fail(Errc::invalid_argument, "family has no model orbit factor");
    if (x.kind() != chart_->kind() || x.dim() != chart_->dim())
        fail(Errc::invalid_argument, "model point does not match the family's orbit factor");
    return model_lift_(s, x.coords());
}

Immersion make_immersion(const ImmersionFamilySpec& spec, double s_max)
{
    const FamilyInfo& fi = info(spec.family);
    const int n = spec.n;
    if (n < 2)
        fail(Errc::invalid_argument, "immersion families need n >= 2");
    if (!(s_max > 0.0))
        fail(Errc::invalid_argument, "grid s_max must be positive");

    Immersion im;
    im.spec_ = spec;
    im.ambient_ = fi.ambient;
    im.symmetry_ = fi.symmetry;

    // Profile and phase integrals.
    if (fi.profile) {
        if (!spec.rho)
            fail(Errc::invalid_argument, std::string(fi.name) + " needs rho");
        const ProfileFamily pf{*fi.profile, n, *spec.rho};
        auto sol = std::make_shared<const ProfileSolution>(solve_profile(pf, s_max + 1.0, spec.ode_tol));
        im.profile_ = sol;
        im.phase_ = std::make_shared<const PhaseIntegrals>(
            spec.family == FamilyTag::thm1_detuned ? PhaseIntegrals::detuned(sol) : PhaseIntegrals(sol));
        im.domain_s_ = {-(s_max + 1.0), s_max + 1.0};
        im.grid_s_ = {-s_max, s_max};
    } else {
        im.domain_s_ = {-HUGE_VAL, HUGE_VAL};
        im.grid_s_ = {-s_max, s_max};
    }
    const double eps = 0.05;
    switch (spec.family) {
    case FamilyTag::tg_sphere:
    case FamilyTag::prop4a:
        im.domain_s_ = {0.0, HUGE_VAL};
        im.grid_s_ = {eps, s_max};
        break;
    case FamilyTag::prop6b:
        im.domain_s_ = {0.0, std::numbers::pi / 2};
        im.grid_s_ = {eps, std::numbers::pi / 2 - eps};
        break;
    case FamilyTag::cn_product:
        if (spec.c < 0.0)
            fail(Errc::invalid_argument, "cn-product needs c >= 0");
        if (spec.c == 0.0) {
            im.domain_s_ = {0.0, HUGE_VAL};
            im.grid_s_ = {0.1, s_max};
        }
        break;
    default:
        break;
    }

    // Orbit factor: model chart or seed.
    if (fi.model) {
        switch (*fi.model) {
        case ModelKind::sphere: im.chart_ = Chart::sphere(n - 1); break;
        case ModelKind::hyperbolic: im.chart_ = Chart::hyperbolic(n - 1); break;
        case ModelKind::euclidean: im.chart_ = Chart::euclidean(n - 1); break;
        }
        im.fiber_box_ = im.chart_->box();
        const Chart chart = *im.chart_;
        im.fiber_domain_ = [chart](const RVector& u, double m) { return chart.contains(u, m); };
        im.totally_geodesic_ = !fi.profile;
    }
    if (fi.seed) {
        std::shared_ptr<const SeedLagrangian> seed = spec.seed;
        if (!seed && spec.seed_kind)
            seed = std::make_shared<const SeedLagrangian>(make_seed(*spec.seed_kind, n - 1));
        if (!seed)
            fail(Errc::invalid_argument, std::string(fi.name) + " needs a seed");
        if (seed->target() != *fi.seed) {
            std::ostringstream os;
            os << fi.name << " needs a seed in " << to_string(*fi.seed) << ", got " << to_string(seed->target());
            fail(Errc::invalid_argument, os.str());
        }
        if (seed->dim() != n - 1)
            fail(Errc::invalid_argument, "seed dimension must be n - 1");
        im.seed_ = seed;
        im.fiber_box_ = seed->box();
        im.fiber_domain_ = [seed](const RVector& u, double m) { return seed->contains(u, m); };
        im.totally_geodesic_ = !fi.profile && spec.family != FamilyTag::cn_product && seed->totally_geodesic();
    }

    const auto sol = im.profile_;
    const auto ph = im.phase_;
    const auto seed = im.seed_;

    // Curve data (r, a, b) at s for the profile families.
    struct Curve {
        double r, a, b;
    };
    auto curve = [sol, ph](double s) { return Curve{sol->r(s), ph->a(s), ph->b(s)}; };

    Immersion::ModelLift model;
    switch (spec.family) {
    case FamilyTag::thm1:
    case FamilyTag::thm1_detuned:
        model = [curve](double s, const RVector& x) {
            const Curve g = curve(s);
            return head_tail(x.cast<Complex>(), std::sinh(g.r) * std::polar(1.0, g.a),
                             std::cosh(g.r) * std::polar(1.0, g.b));
        };
        break;
    case FamilyTag::thm2:
        model = [curve](double s, const RVector& x) {
            const Curve g = curve(s);
            return scalar_head(std::sinh(g.r) * std::polar(1.0, g.a), x.cast<Complex>(),
                               std::cosh(g.r) * std::polar(1.0, g.b));
        };
        break;
    case FamilyTag::thm3:
        model = [curve](double s, const RVector& x) {
            const Curve g = curve(s);
            return horo_lift(g.r, g.a, g.b, x.cast<Complex>(), Complex(x.squaredNorm(), 0.0));
        };
        break;
    case FamilyTag::thm5:
        model = [curve](double s, const RVector& x) {
            const Curve g = curve(s);
            return head_tail(x.cast<Complex>(), std::sin(g.r) * std::polar(1.0, g.a),
                             std::cos(g.r) * std::polar(1.0, g.b));
        };
        break;
    case FamilyTag::tg_sphere:
        model = [](double s, const RVector& x) {
            return head_tail(x.cast<Complex>(), std::sinh(s), std::cosh(s));
        };
        break;
    case FamilyTag::tg_tube:
        model = [](double s, const RVector& x) {
            return scalar_head(std::sinh(s), x.cast<Complex>(), std::cosh(s));
        };
        break;
    case FamilyTag::tg_horo:
        model = [](double s, const RVector& x) {
            return horo_geodesic(s, x.cast<Complex>(), Complex(x.squaredNorm(), 0.0));
        };
        break;
    default:
        break;
    }

    if (model) {
        im.model_lift_ = model;
        const Chart chart = *im.chart_;
        im.lift_ = [model, chart](const RVector& p) { return model(p(0), chart.embed(p.tail(p.size() - 1))); };
        return im;
    }

    const int c_dim = n - 1;
    auto seed_at = [seed, c_dim](const RVector& p) { return seed->eval(p.tail(c_dim)); };
    switch (spec.family) {
    case FamilyTag::prop3a:
        im.lift_ = [curve, seed_at](const RVector& p) {
            const Curve g = curve(p(0));
            return head_tail(seed_at(p).lift, std::sinh(g.r) * std::polar(1.0, g.a),
                             std::cosh(g.r) * std::polar(1.0, g.b));
        };
        break;
    case FamilyTag::prop3b:
        im.lift_ = [curve, seed_at](const RVector& p) {
            const Curve g = curve(p(0));
            return scalar_head(std::sinh(g.r) * std::polar(1.0, g.a), seed_at(p).lift,
                               std::cosh(g.r) * std::polar(1.0, g.b));
        };
        break;
    case FamilyTag::prop3c:
        im.lift_ = [curve, seed_at](const RVector& p) {
            const Curve g = curve(p(0));
            const SeedValue v = seed_at(p);
            return horo_lift(g.r, g.a, g.b, v.lift, v.potential);
        };
        break;
    case FamilyTag::prop4a:
        im.lift_ = [seed_at](const RVector& p) {
            return head_tail(seed_at(p).lift, std::sinh(p(0)), std::cosh(p(0)));
        };
        break;
    case FamilyTag::prop4b:
        im.lift_ = [seed_at](const RVector& p) {
            return scalar_head(std::sinh(p(0)), seed_at(p).lift, std::cosh(p(0)));
        };
        break;
    case FamilyTag::prop4c:
        im.lift_ = [seed_at](const RVector& p) {
            const SeedValue v = seed_at(p);
            return horo_geodesic(p(0), v.lift, v.potential);
        };
        break;
    case FamilyTag::prop6a:
        im.lift_ = [curve, seed_at](const RVector& p) {
            const Curve g = curve(p(0));
            return head_tail(seed_at(p).lift, std::sin(g.r) * std::polar(1.0, g.a),
                             std::cos(g.r) * std::polar(1.0, g.b));
        };
        break;
    case FamilyTag::prop6b:
        im.lift_ = [seed_at](const RVector& p) {
            return head_tail(seed_at(p).lift, std::sin(p(0)), std::cos(p(0)));
        };
        break;
    case FamilyTag::cn_product: {
        // gamma = (s + ic)^{1/n}; for c > 0 the argument stays in (0, pi), so
        // the principal branch is continuous along s.
        const double c = spec.c;
        im.lift_ = [seed_at, c, n](const RVector& p) {
            const double s = p(0);
            const Complex gamma = std::polar(std::pow(std::hypot(s, c), 1.0 / n), std::atan2(c, s) / n);
            return CVector(gamma * seed_at(p).lift);
        };
        break;
    }
    default:
        fail(Errc::invalid_argument, "family has no evaluator");
    }
    return im;
}

SampledImmersion build_immersion(const ImmersionFamilySpec& spec, const GridSpec& grid)
{
    if (grid.s_count < 2 || grid.m_count < 1)
        fail(Errc::invalid_argument, "grid needs at least 2 s-values and 1 orbit point");
    SampledImmersion out{make_immersion(spec, grid.s_max), grid, {}, {}, {}, {}, 0.0};
    const Immersion& im = out.evaluator;
    const auto [lo, hi] = im.grid_s_range();
    for (int i = 0; i < grid.s_count; ++i)
        out.s_nodes.push_back(lo + (hi - lo) * i / (grid.s_count - 1));
    out.fiber_nodes = box_mesh(im.fiber_box(), grid.m_count);

    const int n = im.n();
    for (double s : out.s_nodes) {
        for (const auto& u : out.fiber_nodes) {
            RVector p(n);
            p(0) = s;
            p.tail(n - 1) = u;
            CVector z = im.lift(p);
            if (im.ambient() != AmbientKind::cn)
                out.quadric_residual = std::max(out.quadric_residual, std::abs(im.form(z, z) - im.level()));
            out.params.push_back(std::move(p));
            out.samples.push_back(std::move(z));
        }
    }
    if (im.ambient() != AmbientKind::cn && !(out.quadric_residual <= 1e-8)) {
        std::ostringstream os;
        os << "samples leave the quadric (residual " << out.quadric_residual << ")";
        fail(Errc::precondition_violation, os.str());
    }
    return out;
}

// ---------------------------------------------------------------------------

double real_locus_residual(const CVector& z, CVector* dephased)
{
    const Complex sq = z.cwiseProduct(z).sum();
    const Complex phase = std::abs(sq) > 0.0 ? std::polar(1.0, -0.5 * std::arg(sq)) : Complex(1.0, 0.0);
    const CVector w = phase * z;
    if (dephased)
        *dephased = w;
    const double scale = z.cwiseAbs().maxCoeff();
    if (scale == 0.0)
        return 0.0;
    return w.imag().cwiseAbs().maxCoeff() / scale;
}

SliceRecord slice(const SampledImmersion& imm, double s)
{
    const Immersion& im = imm.evaluator;
    if (im.family() != FamilyTag::thm1)
        fail(Errc::invalid_argument, "slice is defined for thm1 immersions");
    const int n = im.n();
    const HermitianSpace space = im.space();
    CVector e(n + 1);
    e.setZero();
    e(n) = 1.0;
    const double a = im.phase()->a(s), b = im.phase()->b(s);
    CMatrix A = CMatrix::Zero(n + 1, n + 1);
    for (int i = 0; i < n; ++i)
        A(i, i) = std::polar(1.0, a);
    A(n, n) = std::polar(1.0, b);

    SliceRecord rec{ProjectivePoint::from(AmbientVector(space, e)), im.profile()->r(s),
                    IsometryElement(space, A), imm.fiber_nodes, {}, {}, 0.0};
    const CVector inv_diag = A.diagonal().conjugate();
    for (const auto& u : imm.fiber_nodes) {
        RVector p(n);
        p(0) = s;
        p.tail(n - 1) = u;
        CVector z = im.lift(p);
        // Row action z = y A(s), so y = z A(s)^{-1}.
        CVector w;
        rec.dephase_residual = std::max(rec.dephase_residual, real_locus_residual(inv_diag.cwiseProduct(z), &w));
        rec.samples.push_back(std::move(z));
        rec.dephased.push_back(std::move(w));
    }
    return rec;
}

NormalPositionAngles normal_position_angles(const PhaseIntegrals& phase, double s, double s_prime)
{
    if (s == s_prime)
        fail(Errc::degenerate_pair, "normal position needs s != s'");
    if (phase.profile().family().kind != ProfileKind::ch_sphere)
        fail(Errc::invalid_argument, "normal position angles need a ch-sphere profile");
    const int n = phase.profile().family().n;
    const double da = phase.a(s_prime) - phase.a(s);
    const double db = phase.b(s_prime) - phase.b(s);
    const double scalar = da - db;

    // Diagonal of A(s') A(s)^{-1} with the last phase factored out.
    CVector rel(n + 1);
    for (int i = 0; i < n; ++i)
        rel(i) = std::polar(1.0, phase.a(s_prime)) * std::conj(std::polar(1.0, phase.a(s)));
    rel(n) = std::polar(1.0, phase.b(s_prime)) * std::conj(std::polar(1.0, phase.b(s)));

    NormalPositionAngles out;
    for (int j = 0; j < n; ++j) {
        double theta = std::arg(rel(j) * std::conj(rel(n)));
        theta += 2.0 * std::numbers::pi * std::round((scalar - theta) / (2.0 * std::numbers::pi));
        out.raw.push_back(theta);
        out.reduced.push_back(theta - std::numbers::pi * std::floor(theta / std::numbers::pi));
    }
    return out;
}

NormalPositionAngles normal_position_angles(std::shared_ptr<const ProfileSolution> sol, double s,
                                            double s_prime)
{
    return normal_position_angles(PhaseIntegrals(std::move(sol)), s, s_prime);
}

} // namespace lagmin

// ---------------------------------------------------------------------------

namespace lagmin {

LegendreCurveCheck check_curve(const LegendreCurve& curve)
{
    const HermitianSpace space(1, curve.signature);
    LegendreCurveCheck out;
    for (std::size_t k = 0; k < curve.g.size(); ++k) {
        out.norm_residual = std::max(out.norm_residual, std::abs(space.form(curve.g[k], curve.g[k]) - space.level()));
        const double speed = std::max(curve.dg[k].norm(), 1e-300);
        out.legendre_residual = std::max(out.legendre_residual, std::abs(space.form(curve.dg[k], curve.g[k])) / speed);
    }
    return out;
}

LegendreCurve rotational_curve(Signature signature, const std::vector<double>& s,
                               const std::vector<RotationalJet>& jets)
{
    if (s.size() != jets.size())
        fail(Errc::invalid_argument, "rotational_curve: one jet per sample");
    const bool hyp = signature == Signature::hyperbolic;
    // F e^{i theta}: value, first and second derivative.
    auto component = [](double F, double dF, double ddF, double rp, double rpp, double th, double thp,
                        double thpp) {
        const Complex e = std::polar(1.0, th);
        return std::array<Complex, 3>{F * e, Complex(dF * rp, thp * F) * e,
                                      Complex(ddF * rp * rp + dF * rpp - thp * thp * F, thpp * F + 2.0 * thp * dF * rp) * e};
    };
    LegendreCurve out{signature, s, {}, {}, {}};
    for (const auto& j : jets) {
        const double sh = hyp ? std::sinh(j.r) : std::sin(j.r);
        const double ch = hyp ? std::cosh(j.r) : std::cos(j.r);
        // F1 = sinh / sin, F2 = cosh / cos.
        const auto c1 = component(sh, ch, hyp ? sh : -sh, j.rp, j.rpp, j.a, j.ap, j.app);
        const auto c2 = component(ch, hyp ? sh : -sh, hyp ? ch : -ch, j.rp, j.rpp, j.b, j.bp, j.bpp);
        for (int d = 0; d < 3; ++d) {
            CVector v(2);
            v << c1[d], c2[d];
            (d == 0 ? out.g : d == 1 ? out.dg : out.ddg).push_back(v);
        }
    }
    return out;
}

LegendreCurve profile_curve(const PhaseIntegrals& phase, const std::vector<double>& s)
{
    const ProfileSolution& sol = phase.profile();
    const ProfileKind kind = sol.family().kind;
    if (kind != ProfileKind::ch_sphere && kind != ProfileKind::cp_sphere)
        fail(Errc::invalid_argument, "profile_curve needs a ch-sphere or cp-sphere profile");
    const int n = sol.family().n;
    const bool hyp = kind == ProfileKind::ch_sphere;
    std::vector<RotationalJet> jets;
    for (double t : s) {
        const auto v = sol.at(t);
        RotationalJet j{v.r, v.rp, v.rpp, phase.a(t), phase.da(t), 0.0, phase.b(t), phase.db(t), 0.0};
        if (hyp) {
            // a' = c / sinh^{n+1} r, b' = a' tanh^2 r
            const double th = std::tanh(v.r);
            j.app = -(n + 1) * j.ap * v.rp / th;
            j.bpp = j.app * th * th + 2.0 * j.ap * th * (1.0 - th * th) * v.rp;
        } else {
            // a' = -c / sin^{n+1} r, b' = -a' tan^2 r
            const double tn = std::tan(v.r);
            j.app = -(n + 1) * j.ap * v.rp / tn;
            j.bpp = -j.app * tn * tn - 2.0 * j.ap * tn * (1.0 + tn * tn) * v.rp;
        }
        jets.push_back(j);
    }
    return rotational_curve(hyp ? Signature::hyperbolic : Signature::spherical, s, jets);
}

} // namespace lagmin
