#include "lagmin/seeds.hpp"

#include <algorithm>
#include <cmath>

#include "lagmin/error.hpp"

namespace lagmin {

std::string_view to_string(SeedKind kind)
{
    switch (kind) {
    case SeedKind::tg_sphere_cp: return "tg-sphere-cp";
    case SeedKind::tg_rh_ch: return "tg-rh-ch";
    case SeedKind::tg_plane_c: return "tg-plane-c";
    case SeedKind::clifford_cp: return "clifford-cp";
    case SeedKind::custom: return "custom";
    }
    return "unknown";
}

std::string_view to_string(SeedTarget target)
{
    switch (target) {
    case SeedTarget::cp: return "cp";
    case SeedTarget::ch: return "ch";
    case SeedTarget::c: return "c";
    }
    return "unknown";
}

std::optional<SeedKind> parse_seed_kind(std::string_view text)
{
    std::string t(text);
    std::replace(t.begin(), t.end(), '_', '-');
    for (auto k : {SeedKind::tg_sphere_cp, SeedKind::tg_rh_ch, SeedKind::tg_plane_c,
                   SeedKind::clifford_cp})
        if (t == to_string(k))
            return k;
    return std::nullopt;
}

SeedLagrangian::SeedLagrangian(std::string name, SeedKind kind, SeedTarget target, int dim,
                               ParamBox box, Evaluator eval, Domain domain)
    : name_(std::move(name)), kind_(kind), target_(target), dim_(dim), box_(std::move(box)),
      eval_(std::move(eval)), domain_(std::move(domain))
{
    if (dim_ < 1 || box_.dim() != dim_)
        fail(Errc::invalid_argument, "seed dimension and parameter box disagree");
    if (!eval_)
        fail(Errc::invalid_argument, "seed needs an evaluator");
}

bool SeedLagrangian::contains(const RVector& u, double margin) const
{
    if (u.size() != dim_)
        return false;
    return domain_ ? domain_(u, margin) : true;
}

SeedLagrangian make_seed(SeedKind kind, int dim)
{
    if (dim < 1)
        fail(Errc::invalid_argument, "seed dimension must be >= 1");
    switch (kind) {
    case SeedKind::tg_sphere_cp: {
        const Chart chart = Chart::sphere(dim);
        return {"tg-sphere-cp", kind, SeedTarget::cp, dim, chart.box(),
                [chart](const RVector& u) { return SeedValue{chart.embed(u).cast<Complex>()}; },
                [chart](const RVector& u, double m) { return chart.contains(u, m); }};
    }
    case SeedKind::tg_rh_ch: {
        const Chart chart = Chart::hyperbolic(dim);
        return {"tg-rh-ch", kind, SeedTarget::ch, dim, chart.box(),
                [chart](const RVector& u) { return SeedValue{chart.embed(u).cast<Complex>()}; }};
    }
    case SeedKind::tg_plane_c: {
        const Chart chart = Chart::euclidean(dim);
        return {"tg-plane-c", kind, SeedTarget::c, dim, chart.box(), [](const RVector& u) {
                    return SeedValue{u.cast<Complex>(), Complex(u.squaredNorm(), 0.0)};
                }};
    }
    case SeedKind::clifford_cp: {
        if (dim < 2)
            fail(Errc::invalid_argument, "clifford-cp needs dim >= 2");
        const int d = dim;
        const Chart sphere = Chart::sphere(d - 1);
        ParamBox box{RVector(d), RVector(d), std::vector<bool>(d, false)};
        box.lo(0) = -1.5;
        box.hi(0) = 1.5;
        box.lo.tail(d - 1) = sphere.box().lo;
        box.hi.tail(d - 1) = sphere.box().hi;
        for (int i = 1; i < d; ++i)
            box.periodic[i] = sphere.box().periodic[i - 1];
        return {"clifford-cp", kind, SeedTarget::cp, d, box,
                [sphere, d](const RVector& u) {
                    const double t = u(0);
                    const RVector y = sphere.embed(u.tail(d - 1));
                    const double norm = 1.0 / std::sqrt(d + 1.0);
                    CVector z(d + 1);
                    const Complex e1 = std::polar(1.0, -t / (d + 1.0));
                    z.head(d) = (std::sqrt(static_cast<double>(d)) * norm) * e1 * y.cast<Complex>();
                    z(d) = norm * std::polar(1.0, d * t / (d + 1.0));
                    return SeedValue{z};
                },
                [sphere, d](const RVector& u, double m) { return sphere.contains(u.tail(d - 1), m); }};
    }
    case SeedKind::custom:
        break;
    }
    fail(Errc::invalid_argument, "make_seed: custom seeds are built with the SeedLagrangian constructor");
}

SeedCheck check_seed(const SeedLagrangian& seed, const std::vector<RVector>& points, double h)
{
    SeedCheck out;
    const bool hyperbolic = seed.target() == SeedTarget::ch;
    auto form = [&](const CVector& z, const CVector& w) {
        Complex sum = z.cwiseProduct(w.conjugate()).sum();
        if (hyperbolic)
            sum -= 2.0 * z(z.size() - 1) * std::conj(w(w.size() - 1));
        return sum;
    };
    for (const auto& u : points) {
        const SeedValue v = seed.eval(u);
        if (seed.target() == SeedTarget::c) {
            out.norm_residual = std::max(out.norm_residual, std::abs(v.potential.real() - v.lift.squaredNorm()));
        } else {
            const double level = hyperbolic ? -1.0 : 1.0;
            out.norm_residual = std::max(out.norm_residual, std::abs(form(v.lift, v.lift) - level));
        }
        for (int i = 0; i < seed.dim(); ++i) {
            RVector up = u, um = u;
            up(i) += h;
            um(i) -= h;
            const SeedValue p = seed.eval(up), m = seed.eval(um);
            const CVector d = (p.lift - m.lift) / (2 * h);
            if (seed.target() == SeedTarget::c) {
                const double dim_f = (p.potential.imag() - m.potential.imag()) / (2 * h);
                // <eta_* v, J eta> = Re sum d conj(i eta)
                const double rhs = 2.0 * d.cwiseProduct((Complex(0, 1) * v.lift).conjugate()).sum().real();
                out.potential_residual = std::max(out.potential_residual, std::abs(dim_f - rhs));
            } else {
                out.horizontal_residual = std::max(out.horizontal_residual, std::abs(form(d, v.lift)));
            }
        }
    }
    return out;
}

} // namespace lagmin
