#include "lagmin/geomcheck.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "lagmin/error.hpp"

namespace lagmin {

namespace {

std::string format_short(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

constexpr Complex I(0.0, 1.0);

CVector horizontal(const Immersion& imm, const CVector& z, const CVector& v)
{
    if (imm.ambient() == AmbientKind::cn)
        return v;
    return v - imm.level() * imm.form(v, z) * z;
}

double max_abs(const CVector& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

} // namespace

JetSample jet(const Immersion& imm, const RVector& p, const JetOptions& opt)
{
    const int n = imm.n();
    if (p.size() != n)
        fail(Errc::invalid_argument, "jet: parameter has the wrong dimension");
    if (!(opt.h > 0.0) || (opt.order != 2 && opt.order != 4))
        fail(Errc::invalid_argument, "jet: h must be positive and order 2 or 4");
    if (!imm.in_domain(p, 2.0 * opt.h))
        fail(Errc::out_of_domain, "jet: point is within 2h of the domain boundary");

    JetSample j;
    j.point = p;
    j.value = imm.lift(p);
    auto at = [&](const std::vector<std::pair<int, double>>& offsets) {
        RVector q = p;
        for (auto [axis, d] : offsets)
            q(axis) += d;
        return imm.lift(q);
    };

    // Pilot pass for the metric scale of each axis.
    j.steps.resize(n);
    for (int i = 0; i < n; ++i) {
        const CVector d = (at({{i, opt.h}}) - at({{i, -opt.h}})) / (2.0 * opt.h);
        const CVector hd = horizontal(imm, j.value, d);
        const double gii = imm.form(hd, hd).real();
        j.steps(i) = gii > 0.0 ? std::min(opt.h / std::sqrt(gii), 0.05) : opt.h;
    }
    for (int i = 0; i < n; ++i)
        for (double sign : {-2.0, 2.0}) {
            RVector q = p;
            q(i) += sign * j.steps(i);
            if (!imm.in_domain(q))
                fail(Errc::out_of_domain, "jet: stencil leaves the domain");
        }

    const bool fourth = opt.order == 4;
    std::vector<std::array<CVector, 4>> axis_vals(n); // f(-2h), f(-h), f(h), f(2h)
    for (int i = 0; i < n; ++i) {
        const double h = j.steps(i);
        axis_vals[i] = {at({{i, -2 * h}}), at({{i, -h}}), at({{i, h}}), at({{i, 2 * h}})};
        const auto& f = axis_vals[i];
        CVector d = fourth ? CVector((f[0] - 8.0 * f[1] + 8.0 * f[2] - f[3]) / (12.0 * h))
                           : CVector((f[2] - f[1]) / (2.0 * h));
        j.horizontal.push_back(horizontal(imm, j.value, d));
        j.first.push_back(std::move(d));
    }
    if (!opt.second)
        return j;

    j.second.assign(n, std::vector<CVector>(n));
    double scale = 1.0;
    for (int i = 0; i < n; ++i) {
        const double h = j.steps(i);
        const auto& f = axis_vals[i];
        j.second[i][i] = fourth ? CVector((-f[0] + 16.0 * f[1] - 30.0 * j.value + 16.0 * f[2] - f[3]) / (12.0 * h * h))
                                : CVector((f[1] - 2.0 * j.value + f[2]) / (h * h));
        scale = std::max(scale, max_abs(j.second[i][i]));
    }
    static constexpr double w5[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
    for (int i = 0; i < n; ++i) {
        for (int k = i + 1; k < n; ++k) {
            const double hi = j.steps(i), hk = j.steps(k);
            auto cross = [&](double m) {
                return CVector((at({{i, m * hi}, {k, m * hk}}) - at({{i, m * hi}, {k, -m * hk}}) -
                                at({{i, -m * hi}, {k, m * hk}}) + at({{i, -m * hi}, {k, -m * hk}})) /
                               (4.0 * m * m * hi * hk));
            };
            const CVector d1 = cross(1.0);
            const CVector mixed = fourth ? CVector((4.0 * d1 - cross(2.0)) / 3.0) : d1;
            // Independent route: five-point derivative along k of the
            // five-point derivative along i.
            CVector nested = CVector::Zero(j.value.size());
            for (int a = 0; a < 5; ++a)
                for (int b = 0; b < 5; ++b)
                    if (a != 2 && b != 2)
                        nested += (w5[a] * w5[b]) * at({{i, (a - 2) * hi}, {k, (b - 2) * hk}});
            nested /= hi * hk;
            scale = std::max(scale, max_abs(mixed));
            j.symmetry_defect = std::max(j.symmetry_defect, max_abs(mixed - nested));
            j.second[i][k] = mixed;
            j.second[k][i] = mixed;
        }
    }
    j.symmetry_defect /= scale;
    return j;
}

RMatrix induced_metric(const Immersion& imm, const JetSample& j)
{
    const int n = static_cast<int>(j.horizontal.size());
    RMatrix g(n, n);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b)
            g(a, b) = g(b, a) = imm.form(j.horizontal[a], j.horizontal[b]).real();
    Eigen::LLT<RMatrix> llt(g);
    if (llt.info() != Eigen::Success)
        fail(Errc::degeneracy, "induced metric is not positive definite");
    return g;
}

double lagrangian_residual(const Immersion& imm, const JetSample& j)
{
    const int n = static_cast<int>(j.horizontal.size());
    double out = 0.0;
    for (int a = 0; a < n; ++a) {
        const double ga = imm.form(j.horizontal[a], j.horizontal[a]).real();
        for (int b = a + 1; b < n; ++b) {
            const double gb = imm.form(j.horizontal[b], j.horizontal[b]).real();
            const double omega = imm.form(I * j.horizontal[a], j.horizontal[b]).real();
            out = std::max(out, std::abs(omega) / std::sqrt(std::abs(ga * gb)));
        }
    }
    return out;
}

double horizontal_residual(const Immersion& imm, const JetSample& j, double h)
{
    double out = 0.0;
    if (imm.ambient() != AmbientKind::cn) {
        const double zn = j.value.norm();
        for (const auto& d : j.first)
            out = std::max(out, std::abs(imm.form(d, j.value)) / (d.norm() * zn));
        return out;
    }
    // Flat C^n: the seed lift is the Legendrian object.
    const SeedLagrangian& seed = *imm.seed();
    const RVector u = j.point.tail(imm.n() - 1);
    const CVector z = seed.eval(u).lift;
    for (int i = 0; i < seed.dim(); ++i) {
        auto f = [&](double d) {
            RVector q = u;
            q(i) += d;
            return seed.eval(q).lift;
        };
        const CVector d = (f(-2 * h) - 8.0 * f(-h) + 8.0 * f(h) - f(2 * h)) / (12.0 * h);
        out = std::max(out, std::abs(z.dot(d)) / (d.norm() * z.norm()));
    }
    return out;
}

// ---------------------------------------------------------------------------

double SFFData::norm2() const
{
    double s = 0.0;
    for (double v : h)
        s += v * v;
    return s;
}

double SFFData::symmetry_defect() const
{
    double out = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                const double v = at(a, b, c);
                for (double w : {at(a, c, b), at(b, a, c), at(b, c, a), at(c, a, b), at(c, b, a)})
                    out = std::max(out, std::abs(v - w));
            }
    return out;
}

SFFData second_fundamental_form(const Immersion& imm, const JetSample& j, const RMatrix& g,
                                double lagrangian_tol)
{
    const int n = static_cast<int>(j.horizontal.size());
    if (j.second.empty())
        fail(Errc::invalid_argument, "second_fundamental_form needs second derivatives");
    if (lagrangian_residual(imm, j) > lagrangian_tol)
        fail(Errc::not_lagrangian, "sample is not Lagrangian within tolerance");

    // Normal part of every coordinate second derivative.
    const Eigen::LLT<RMatrix> llt(g);
    std::vector<std::vector<CVector>> normal(n, std::vector<CVector>(n));
    for (int a = 0; a < n; ++a) {
        for (int b = a; b < n; ++b) {
            CVector v = horizontal(imm, j.value, j.second[a][b]);
            RVector rhs(n);
            for (int k = 0; k < n; ++k)
                rhs(k) = imm.form(v, j.horizontal[k]).real();
            const RVector coef = llt.solve(rhs);
            for (int k = 0; k < n; ++k)
                v -= coef(k) * j.horizontal[k];
            normal[a][b] = v;
            normal[b][a] = v;
        }
    }

    SFFData out;
    out.n = n;
    // Gram-Schmidt in coordinate order: E = L^{-1} with g = L L^T.
    const RMatrix L = llt.matrixL();
    out.frame = L.triangularView<Eigen::Lower>().solve(RMatrix::Identity(n, n));
    std::vector<CVector> tangent(n, CVector::Zero(j.value.size()));
    for (int a = 0; a < n; ++a)
        for (int i = 0; i < n; ++i)
            tangent[a] += out.frame(a, i) * j.horizontal[i];

    out.h.assign(static_cast<std::size_t>(n * n * n), 0.0);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            CVector sigma = CVector::Zero(j.value.size());
            for (int i = 0; i < n; ++i)
                for (int k = 0; k < n; ++k)
                    sigma += (out.frame(a, i) * out.frame(b, k)) * normal[i][k];
            for (int c = 0; c < n; ++c)
                out.h[(a * n + b) * n + c] = imm.form(sigma, I * tangent[c]).real();
        }
    }
    out.mean = RVector::Zero(n);
    for (int c = 0; c < n; ++c) {
        for (int a = 0; a < n; ++a)
            out.mean(c) += out.at(a, a, c);
        out.mean(c) /= n;
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

RVector resize_to(const RVector& x, Eigen::Index m)
{
    RVector y = RVector::Zero(m);
    const auto k = std::min(m, x.size());
    y.head(k) = x.head(k);
    return y;
}

RVector retract(ModelKind kind, RVector x)
{
    switch (kind) {
    case ModelKind::sphere: {
        const double nrm = x.norm();
        if (nrm == 0.0)
            x(0) = 1.0;
        else
            x /= nrm;
        return x;
    }
    case ModelKind::hyperbolic: {
        const auto m = x.size() - 1;
        x(m) = std::sqrt(1.0 + x.head(m).squaredNorm());
        return x;
    }
    case ModelKind::euclidean:
        return x;
    }
    return x;
}

} // namespace

RVector model_action(GroupKind group, const GroupParams& params, ModelKind kind, const RVector& x)
{
    RVector y;
    if (group == GroupKind::euclid_n) {
        const auto* p = std::get_if<EuclidParams>(&params);
        if (!p)
            fail(Errc::invalid_argument, "model_action: euclid_n needs (A, a)");
        const auto m = p->rotation.rows();
        y = resize_to(RVector(p->rotation.transpose() * resize_to(x, m) + p->translation), x.size());
    } else {
        const auto* a = std::get_if<RMatrix>(&params);
        if (!a)
            fail(Errc::invalid_argument, "model_action: group needs a matrix");
        y = resize_to(RVector(a->transpose() * resize_to(x, a->rows())), x.size());
    }
    const bool matched = (group == GroupKind::so_n && kind == ModelKind::sphere) ||
                         (group == GroupKind::so1_n && kind == ModelKind::hyperbolic) ||
                         (group == GroupKind::euclid_n && kind == ModelKind::euclidean);
    return matched ? y : retract(kind, y);
}

double invariance_residual(const Immersion& imm, GroupKind group, const InvarianceOptions& opt)
{
    if (!imm.model_chart())
        fail(Errc::invalid_argument, "invariance needs a family with a model orbit factor");
    const Chart& chart = *imm.model_chart();
    const HermitianSpace space = imm.space();
    const int n = imm.n();
    std::mt19937_64 rng(opt.seed);
    const auto [slo, shi] = imm.grid_s_range();
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    double out = 0.0;
    for (int k = 0; k < opt.samples; ++k) {
        GroupParams params;
        if (opt.identity) {
            if (group == GroupKind::euclid_n)
                params = EuclidParams{RMatrix::Identity(n - 1, n - 1), RVector::Zero(n - 1)};
            else
                params = RMatrix(RMatrix::Identity(n, n));
        } else {
            params = random_group_params(group, n, rng);
        }
        const IsometryElement g = embed_isometry(group, params, space.signature());
        const double s = slo + (shi - slo) * unit(rng);
        RVector u(chart.dim());
        const ParamBox& box = chart.box();
        for (int a = 0; a < chart.dim(); ++a)
            u(a) = box.lo(a) + (box.hi(a) - box.lo(a)) * unit(rng);
        const RVector x = chart.embed(u);
        const RVector gx = model_action(group, params, chart.kind(), x);
        const CVector z = imm.lift_at(s, ModelPoint(chart.kind(), x, 1e-10));
        const CVector w = imm.lift_at(s, ModelPoint(chart.kind(), gx, 1e-8));
        out = std::max(out, projective_distance(g.apply(z), w));
    }
    return out;
}

// ---------------------------------------------------------------------------

std::vector<double> legendre_functional(const LegendreCurve& curve, int n)
{
    const HermitianSpace space(1, curve.signature);
    auto inner = [&](const CVector& u, const CVector& v) { return space.form(u, v).real(); };
    std::vector<double> out;
    for (std::size_t k = 0; k < curve.g.size(); ++k) {
        const CVector& g = curve.g[k];
        const CVector& d = curve.dg[k];
        const CVector& dd = curve.ddg[k];
        const double g1 = std::norm(g(0));
        if (g1 < 1e-24)
            fail(Errc::division_by_zero, "legendre_functional: first component vanishes at s = " +
                                             std::to_string(curve.s[k]));
        const double speed2 = inner(d, d);
        const double first = inner(dd, CVector(I * d)) / (speed2 * speed2);
        const double second = (d(0) * std::conj(I * g(0))).real() / (g1 * speed2);
        out.push_back(first + (n - 1) * second);
    }
    return out;
}

Complex power_curve(double s, double c, int n)
{
    return std::polar(std::pow(std::hypot(s, c), 1.0 / n), std::atan2(c, s) / n);
}

std::vector<double> power_curve_curvature(const std::function<Complex(double)>& gamma, int n,
                                          const std::vector<double>& s, double h)
{
    std::vector<double> out;
    for (double t : s) {
        std::array<Complex, 5> w;
        for (int k = 0; k < 5; ++k) {
            const Complex g = gamma(t + (k - 2) * h);
            if (std::abs(g) < 1e-12)
                fail(Errc::singular_input, "power_curve_curvature: curve passes through 0");
            w[k] = std::pow(g, n);
        }
        const Complex d1 = (w[0] - 8.0 * w[1] + 8.0 * w[3] - w[4]) / (12.0 * h);
        const Complex d2 = (-w[0] + 16.0 * w[1] - 30.0 * w[2] + 16.0 * w[3] - w[4]) / (12.0 * h * h);
        out.push_back((std::conj(d1) * d2).imag() / std::pow(std::abs(d1), 3));
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

// Quadrature weights of the (s, fiber) grid in sample order.
std::vector<double> grid_weights(const SampledImmersion& imm)
{
    const auto& s = imm.s_nodes;
    const std::size_t ns = s.size();
    std::vector<double> ws(ns, (s.back() - s.front()) / (ns - 1));
    ws.front() *= 0.5;
    ws.back() *= 0.5;

    const ParamBox& box = imm.evaluator.fiber_box();
    const int dim = box.dim();
    const int k = per_axis(dim, imm.grid.m_count);
    std::vector<std::vector<double>> axis_w;
    for (int a = 0; a < dim; ++a)
        axis_w.push_back(box.weights(a, k));
    std::vector<double> wf;
    std::vector<int> idx(dim, 0);
    while (true) {
        double w = 1.0;
        for (int a = 0; a < dim; ++a)
            w *= axis_w[a][idx[a]];
        wf.push_back(w);
        int a = dim - 1;
        while (a >= 0 && ++idx[a] == k)
            idx[a--] = 0;
        if (a < 0)
            break;
    }
    std::vector<double> out;
    for (double a : ws)
        for (double b : wf)
            out.push_back(a * b);
    return out;
}

} // namespace

double sigma_integral_grid(const SampledImmersion& imm, const JetOptions& opt)
{
    const std::vector<double> w = grid_weights(imm);
    const int n = imm.evaluator.n();
    double sum = 0.0;
    for (std::size_t k = 0; k < imm.params.size(); ++k) {
        const JetSample j = jet(imm.evaluator, imm.params[k], opt);
        const RMatrix g = induced_metric(imm.evaluator, j);
        const SFFData sff = second_fundamental_form(imm.evaluator, j, g);
        sum += w[k] * std::pow(sff.norm2(), 0.5 * n) * std::sqrt(g.determinant());
    }
    return sum;
}

SigmaNumeric sigma_integral_numeric(const ImmersionFamilySpec& spec, const GridSpec& grid,
                                    const JetOptions& opt, double stable_tol)
{
    SigmaNumeric out;
    const SampledImmersion coarse = build_immersion(spec, grid);
    out.value = sigma_integral_grid(coarse, opt);

    GridSpec fine = grid;
    fine.s_count = 2 * grid.s_count - 1;
    const int dim = coarse.evaluator.fiber_box().dim();
    fine.m_count = static_cast<int>(std::lround(std::pow(2.0 * per_axis(dim, grid.m_count), dim)));
    out.doubled = sigma_integral_grid(build_immersion(spec, fine), opt);

    const double scale = std::max(std::abs(out.value), std::abs(out.doubled));
    out.rel_change = scale > 0.0 ? std::abs(out.doubled - out.value) / scale : 0.0;
    out.low_confidence = out.rel_change > stable_tol;
    return out;
}

// ---------------------------------------------------------------------------

bool CheckReport::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* CheckReport::find(const std::string& name) const
{
    for (const auto& c : checks)
        if (c.name == name)
            return &c;
    return nullptr;
}

const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names{"lagrangian", "horizontal", "minimal", "metric",
                                                "sff",        "invariance", "symmetry"};
    return names;
}

namespace {

// |g - reference| entrywise for the two families with a closed-form metric.
std::optional<double> metric_closed_form(const Immersion& imm, const RVector& p, const RMatrix& g)
{
    const int n = imm.n();
    RMatrix ref = RMatrix::Zero(n, n);
    ref(0, 0) = 1.0;
    const double r = imm.profile() ? imm.profile()->r(p(0)) : 0.0;
    switch (imm.family()) {
    case FamilyTag::thm1:
        ref.bottomRightCorner(n - 1, n - 1) =
            std::pow(std::sinh(r), 2) * imm.model_chart()->model_metric(p.tail(n - 1));
        break;
    case FamilyTag::thm3:
        ref.bottomRightCorner(n - 1, n - 1) = r * r * RMatrix::Identity(n - 1, n - 1);
        break;
    default:
        return std::nullopt;
    }
    return (g - ref).cwiseAbs().maxCoeff();
}

// Relative deviation of every h_abc from h_111 = -(n-1) k, h_1jj = h_j1j = h_jj1 = k,
// k = c / sinh^{n+1} r, plus the deviation of |sigma|^2 from (n-1)(n+2) k^2.
double thm1_sff_deviation(const Immersion& imm, double s, const SFFData& sff)
{
    const int n = imm.n();
    const double k = imm.phase()->c() / std::pow(std::sinh(imm.profile()->r(s)), n + 1);
    double out = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                double ref = 0.0;
                if (a == 0 && b == 0 && c == 0)
                    ref = -(n - 1) * k;
                else if ((a == 0 && b == c) || (b == 0 && a == c) || (c == 0 && a == b))
                    ref = k;
                out = std::max(out, std::abs(sff.at(a, b, c) - ref) / std::abs(k));
            }
    const double norm_ref = (n - 1) * (n + 2) * k * k;
    return std::max(out, std::abs(sff.norm2() - norm_ref) / norm_ref);
}

} // namespace

CheckReport run_checks(const SampledImmersion& sampled, const CheckOptions& opt,
                       const std::vector<CVector>& stored)
{
    const Immersion& imm = sampled.evaluator;
    for (const auto& name : opt.checks)
        if (std::find(check_names().begin(), check_names().end(), name) == check_names().end())
            fail(Errc::invalid_argument, "unknown check '" + name + "'");
    auto wanted = [&](const std::string& name) { return opt.checks.empty() || opt.checks.count(name) > 0; };
    const bool need_second = wanted("minimal") || wanted("sff") || wanted("symmetry");
    const bool tg = imm.totally_geodesic();

    double lag = 0.0, hor = 0.0, mean = 0.0, metric = 0.0, sff_dev = 0.0, sym = 0.0, jet_sym = 0.0;
    double min_eig = HUGE_VAL;
    bool metric_closed = false;
    JetOptions jo = opt.jet;
    jo.second = need_second;
    for (const auto& p : sampled.params) {
        const JetSample j = jet(imm, p, jo);
        lag = std::max(lag, lagrangian_residual(imm, j));
        if (wanted("horizontal"))
            hor = std::max(hor, horizontal_residual(imm, j, opt.jet.h));
        const RMatrix g = induced_metric(imm, j);
        if (wanted("metric")) {
            min_eig = std::min(min_eig, Eigen::SelfAdjointEigenSolver<RMatrix>(g).eigenvalues().minCoeff());
            if (auto d = metric_closed_form(imm, p, g)) {
                metric_closed = true;
                metric = std::max(metric, *d);
            } else if (imm.ambient() != AmbientKind::cn && imm.family() != FamilyTag::thm1_detuned) {
                metric = std::max(metric, std::abs(g(0, 0) - 1.0));
            }
        }
        if (!need_second)
            continue;
        jet_sym = std::max(jet_sym, j.symmetry_defect);
        const SFFData sff = second_fundamental_form(imm, j, g);
        mean = std::max(mean, sff.mean_norm());
        double hmax = 0.0;
        for (double v : sff.h)
            hmax = std::max(hmax, std::abs(v));
        sym = std::max(sym, sff.symmetry_defect() / std::max(1.0, hmax));
        if (imm.family() == FamilyTag::thm1)
            sff_dev = std::max(sff_dev, thm1_sff_deviation(imm, p(0), sff));
        else if (tg)
            sff_dev = std::max(sff_dev, hmax);
    }

    CheckReport rep{imm.spec(), sampled.grid, opt, {}};
    auto add = [&](std::string name, double residual, double tol, std::string note) {
        rep.checks.push_back({std::move(name), residual, tol, residual <= tol, std::move(note)});
    };
    if (wanted("lagrangian"))
        add("lagrangian", lag, 1e-6, "max |Omega(h_i, h_j)| / sqrt(g_ii g_jj)");
    if (wanted("horizontal")) {
        std::string note = imm.ambient() == AmbientKind::cn ? "seed lift, max |(d_i z, z)| / (|d_i z| |z|)"
                                                            : "max |(d_i z, z)| / (|d_i z| |z|)";
        if (!stored.empty()) {
            if (stored.size() != sampled.samples.size())
                fail(Errc::schema, "stored sample count does not match the grid");
            // Horizontality survives only a constant phase change of the lift.
            const Complex ov = sampled.samples[0].dot(stored[0]);
            const Complex phase = std::abs(ov) > 0.0 ? ov / std::abs(ov) : Complex(1.0);
            double mism = 0.0;
            for (std::size_t k = 0; k < stored.size(); ++k) {
                if (stored[k].size() != sampled.samples[k].size())
                    fail(Errc::schema, "stored sample has the wrong length");
                mism = std::max(mism, max_abs(phase * sampled.samples[k] - stored[k]) /
                                          std::max(1.0, max_abs(sampled.samples[k])));
            }
            hor = std::max(hor, mism);
            note += "; stored samples vs evaluator";
        }
        add("horizontal", hor, 1e-6, note);
    }
    if (wanted("minimal"))
        add("minimal", mean, tg ? 1e-5 : 5e-4, "max |H|");
    if (wanted("metric")) {
        if (!(min_eig > 0.0))
            add("metric", HUGE_VAL, 0.0, "induced metric not positive definite");
        else if (metric_closed)
            add("metric", metric, 1e-6, "entrywise |g - closed form|");
        else if (imm.ambient() != AmbientKind::cn && imm.family() != FamilyTag::thm1_detuned)
            add("metric", metric, 1e-6, "|g_ss - 1|, positive definite");
        else
            add("metric", 0.0, 0.0, "positive definite");
    }
    if (wanted("sff")) {
        if (imm.family() == FamilyTag::thm1)
            add("sff", sff_dev, 1e-3, "relative deviation from the closed-form components");
        else if (tg)
            add("sff", sff_dev, 1e-5, "max |h_ijk|");
        else
            add("sff", sym, 1e-4, "total symmetry of h_ijk");
    }
    if (wanted("invariance")) {
        if (auto group = imm.symmetry()) {
            InvarianceOptions io{opt.invariance_samples, opt.prng_seed, false};
            add("invariance", invariance_residual(imm, *group, io), 1e-8, "projective distance");
        } else {
            add("invariance", 0.0, 0.0, "no symmetry group claimed; skipped");
        }
    }
    if (wanted("symmetry"))
        add("symmetry", sym, 1e-4,
            "max |h_abc - h_perm| / max(1, |h|); mixed-partial defect " + format_short(jet_sym));
    return rep;
}

} // namespace lagmin
