#include "lagmin/profiles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

#include "lagmin/error.hpp"

namespace lagmin {

namespace {

constexpr double kEquilibriumRhs = 1e-12;
constexpr double kMaxStep = 0.05;
constexpr double kHoroSpacing = 0.01;
constexpr double kQuadTol = 1e-13;

template <class F>
double gk15(F&& f, double a, double b)
{
    if (a == b)
        return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 6, kQuadTol);
}

template <class F>
double gl10(F&& f, double a, double b)
{
    if (a == b)
        return 0.0;
    return boost::math::quadrature::gauss<double, 10>::integrate(f, a, b);
}

// Quintic Hermite basis on [0, 1] from values, first and second derivatives.
double quintic(double t, double h, double y0, double d0, double c0, double y1, double d1, double c1)
{
    const double t2 = t * t, t3 = t2 * t, t4 = t3 * t, t5 = t4 * t;
    const double h00 = 1 - 10 * t3 + 15 * t4 - 6 * t5;
    const double h10 = t - 6 * t3 + 8 * t4 - 3 * t5;
    const double h20 = 0.5 * (t2 - 3 * t3 + 3 * t4 - t5);
    const double h01 = 10 * t3 - 15 * t4 + 6 * t5;
    const double h11 = -4 * t3 + 7 * t4 - 3 * t5;
    const double h21 = 0.5 * (t3 - 2 * t4 + t5);
    return h00 * y0 + h * h10 * d0 + h * h * h20 * c0 + h01 * y1 + h * h11 * d1 + h * h * h21 * c1;
}

double sech2(double u)
{
    const double ch = std::cosh(u);
    return 1.0 / (ch * ch);
}

// G(r) with G(r)(1 - r'^2) conserved.
double energy_G(ProfileKind kind, int n, double r)
{
    switch (kind) {
    case ProfileKind::ch_sphere:
        return std::pow(std::cosh(r), 2) * std::pow(std::sinh(r), 2 * n);
    case ProfileKind::ch_tube:
        return std::pow(std::sinh(r), 2) * std::pow(std::cosh(r), 2 * n);
    case ProfileKind::cp_sphere:
        return std::pow(std::sin(r), 2 * n) * std::pow(std::cos(r), 2);
    case ProfileKind::ch_horo:
        break;
    }
    fail(Errc::invalid_argument, "energy_G: no ODE for ch_horo");
}

struct RawNode {
    double s, r, u;
};

// Integrates from s = 0 to s = end (either sign) and returns the accepted
// knots including s = 0.
std::vector<RawNode> integrate_branch(const ProfileFamily& fam, double end, double tol)
{
    namespace odeint = boost::numeric::odeint;
    using State = std::array<double, 2>;

    const ProfileKind kind = fam.kind;
    const int n = fam.n;
    auto system = [kind, n](const State& x, State& dxdt, double) {
        dxdt[0] = -std::tanh(x[1]);
        dxdt[1] = -profile_k(kind, n, x[0]);
    };

    auto stepper = odeint::make_controlled(tol, tol, odeint::runge_kutta_dopri5<State>());
    State x{fam.rho, 0.0};
    double t = 0.0;
    const double dir = end >= 0 ? 1.0 : -1.0;
    double dt = dir * std::min(1e-3, std::abs(end) > 0 ? std::abs(end) : 1e-3);
    std::vector<RawNode> out{{0.0, x[0], x[1]}};
    const double upper = kind == ProfileKind::cp_sphere ? std::numbers::pi / 2 : HUGE_VAL;

    while (dir * (end - t) > 0) {
        if (std::abs(dt) > kMaxStep)
            dt = dir * kMaxStep;
        if (dir * (t + dt - end) > 0)
            dt = end - t;
        if (std::abs(dt) < 1e-12 * std::max(1.0, std::abs(t)) && dir * (end - t) > 1e-12)
            throw IntegrationFailure("step size underflow", t);
        const State before = x;
        const double t_before = t;
        if (stepper.try_step(system, x, t, dt) == odeint::fail) {
            x = before;
            t = t_before;
            continue;
        }
        if (!std::isfinite(x[0]) || !std::isfinite(x[1]) || x[0] <= 0.0 || x[0] >= upper)
            throw IntegrationFailure("profile left its domain", t_before);
        out.push_back({t, x[0], x[1]});
    }
    out.back().s = end;
    return out;
}

} // namespace

std::string_view to_string(ProfileKind kind)
{
    switch (kind) {
    case ProfileKind::ch_sphere: return "ch-sphere";
    case ProfileKind::ch_tube: return "ch-tube";
    case ProfileKind::ch_horo: return "ch-horo";
    case ProfileKind::cp_sphere: return "cp-sphere";
    }
    return "unknown";
}

std::optional<ProfileKind> parse_profile_kind(std::string_view text)
{
    std::string t(text);
    std::replace(t.begin(), t.end(), '_', '-');
    for (auto k : {ProfileKind::ch_sphere, ProfileKind::ch_tube, ProfileKind::ch_horo,
                   ProfileKind::cp_sphere})
        if (t == to_string(k))
            return k;
    return std::nullopt;
}

void ProfileFamily::validate() const
{
    if (n < 2)
        fail(Errc::invalid_argument, "profile families need n >= 2");
    if (!(rho > 0.0) || !std::isfinite(rho))
        fail(Errc::invalid_argument, "rho must be positive");
    if (kind == ProfileKind::cp_sphere && !(rho < std::numbers::pi / 2))
        fail(Errc::invalid_argument, "cp-sphere needs rho < pi/2");
}

double energy_constant(const ProfileFamily& f)
{
    if (f.kind == ProfileKind::ch_horo)
        return std::pow(f.rho, 2 * (f.n + 1));
    return energy_G(f.kind, f.n, f.rho);
}

double phase_constant(const ProfileFamily& f) { return std::sqrt(energy_constant(f)); }

double profile_k(ProfileKind kind, int n, double r)
{
    switch (kind) {
    case ProfileKind::ch_sphere:
        return std::tanh(r) + n / std::tanh(r);
    case ProfileKind::ch_tube:
        return 1.0 / std::tanh(r) + n * std::tanh(r);
    case ProfileKind::cp_sphere:
        return n / std::tan(r) - std::tan(r);
    case ProfileKind::ch_horo:
        break;
    }
    fail(Errc::invalid_argument, "profile_k: ch_horo has a closed form");
}

double profile_dk(ProfileKind kind, int n, double r)
{
    switch (kind) {
    case ProfileKind::ch_sphere: {
        const double sh = std::sinh(r);
        return sech2(r) - n / (sh * sh);
    }
    case ProfileKind::ch_tube: {
        const double sh = std::sinh(r);
        return -1.0 / (sh * sh) + n * sech2(r);
    }
    case ProfileKind::cp_sphere: {
        const double s = std::sin(r), c = std::cos(r);
        return -n / (s * s) - 1.0 / (c * c);
    }
    case ProfileKind::ch_horo:
        break;
    }
    fail(Errc::invalid_argument, "profile_dk: ch_horo has a closed form");
}

double profile_rhs(ProfileKind kind, int n, double r, double rp)
{
    return (1.0 - rp * rp) * profile_k(kind, n, r);
}

// ---------------------------------------------------------------------------

ProfileSolution solve_profile(const ProfileFamily& family, double s_max, double tol)
{
    family.validate();
    if (!(s_max > 0.0) || !std::isfinite(s_max))
        fail(Errc::invalid_argument, "s_max must be positive");
    if (!(tol >= 1e-13 && tol <= 1e-6))
        fail(Errc::invalid_argument, "tol must lie in [1e-13, 1e-6]");

    ProfileSolution sol;
    sol.family_ = family;
    sol.tol_ = tol;
    sol.s_max_ = s_max;
    sol.energy_ = energy_constant(family);

    auto uniform = [&](double spacing) {
        const int half = std::max(1, static_cast<int>(std::ceil(s_max / spacing)));
        for (int i = -half; i <= half; ++i)
            sol.nodes_.push_back({s_max * i / half, family.rho, 0.0});
        sol.origin_ = static_cast<std::size_t>(half);
    };

    if (family.kind == ProfileKind::ch_horo) {
        uniform(kHoroSpacing);
        for (auto& node : sol.nodes_)
            node.r = sol.at(node.s).r;
        return sol;
    }
    if (std::abs(profile_k(family.kind, family.n, family.rho)) < kEquilibriumRhs) {
        sol.equilibrium_ = true;
        uniform(kMaxStep);
        return sol;
    }

    auto fwd = integrate_branch(family, s_max, tol);
    auto bwd = integrate_branch(family, -s_max, tol);
    sol.nodes_.reserve(fwd.size() + bwd.size() - 1);
    for (auto it = bwd.rbegin(); it != bwd.rend(); ++it)
        sol.nodes_.push_back({it->s, it->r, it->u});
    sol.origin_ = bwd.size() - 1;
    for (std::size_t i = 1; i < fwd.size(); ++i)
        sol.nodes_.push_back({fwd[i].s, fwd[i].r, fwd[i].u});
    return sol;
}

std::size_t ProfileSolution::interval(double s) const
{
    auto it = std::upper_bound(nodes_.begin(), nodes_.end(), s,
                               [](double v, const Node& node) { return v < node.s; });
    std::size_t k = it == nodes_.begin() ? 0 : static_cast<std::size_t>(it - nodes_.begin()) - 1;
    return std::min(k, nodes_.size() - 2);
}

ProfileSolution::Value ProfileSolution::at_node(std::size_t k) const
{
    const Node& p = nodes_[k];
    if (is_closed_form())
        return at(p.s);
    if (equilibrium_)
        return {family_.rho, 0.0, 0.0, 1.0};
    const double rp = -std::tanh(p.u);
    const double def = sech2(p.u);
    return {p.r, rp, def * profile_k(family_.kind, family_.n, p.r), def};
}

ProfileSolution::Value ProfileSolution::at(double s) const
{
    if (!(std::abs(s) <= s_max_ * (1 + 1e-12))) {
        std::ostringstream os;
        os << "s = " << s << " outside the solved range [-" << s_max_ << ", " << s_max_ << "]";
        fail(Errc::out_of_domain, os.str());
    }
    const int n = family_.n;
    if (is_closed_form()) {
        const double w = (n + 1) * s;
        const double r = family_.rho * std::pow(std::cosh(w), 1.0 / (n + 1));
        const double th = std::tanh(w);
        const double rp = r * th;
        return {r, rp, r * (th * th + (n + 1) * sech2(w)), 1.0 - rp * rp};
    }
    if (equilibrium_)
        return {family_.rho, 0.0, 0.0, 1.0};

    const std::size_t k = interval(s);
    const Node& p = nodes_[k];
    const Node& q = nodes_[k + 1];
    const double h = q.s - p.s;
    const double t = (s - p.s) / h;
    const ProfileKind kind = family_.kind;

    // r' = -tanh u, r'' = sech^2 u k(r); u' = -k(r), u'' = -k'(r) r'.
    auto derivs = [&](const Node& m) {
        const double rp = -std::tanh(m.u);
        const double k0 = profile_k(kind, n, m.r);
        return std::array<double, 4>{rp, sech2(m.u) * k0, -k0, -profile_dk(kind, n, m.r) * rp};
    };
    const auto dp = derivs(p);
    const auto dq = derivs(q);
    const double r = quintic(t, h, p.r, dp[0], dp[1], q.r, dq[0], dq[1]);
    const double u = quintic(t, h, p.u, dp[2], dp[3], q.u, dq[2], dq[3]);
    const double def = sech2(u);
    return {r, -std::tanh(u), def * profile_k(kind, n, r), def};
}

double energy_residual(const ProfileSolution& sol)
{
    const auto& fam = sol.family();
    double worst = 0.0;
    if (sol.is_closed_form()) {
        const double a2 = std::pow(fam.rho, 2 * (fam.n + 1));
        for (const auto& node : sol.nodes()) {
            const auto v = sol.at(node.s);
            const double res = (v.rp - v.r) * (v.rp + v.r) + a2 / std::pow(v.r, 2 * fam.n);
            worst = std::max(worst, std::abs(res));
        }
        return worst;
    }
    const double e = sol.energy_constant();
    for (std::size_t k = 0; k < sol.nodes().size(); ++k) {
        const auto v = sol.at_node(k);
        worst = std::max(worst, std::abs(energy_G(fam.kind, fam.n, v.r) * v.deficit - e) / e);
    }
    return worst;
}

// ---------------------------------------------------------------------------

PhaseIntegrals::PhaseIntegrals(std::shared_ptr<const ProfileSolution> sol)
    : sol_(std::move(sol)), c_(std::sqrt(sol_->energy_constant()))
{
    const auto& nodes = sol_->nodes();
    const std::size_t o = sol_->origin();
    cum_a_.assign(nodes.size(), 0.0);
    cum_b_.assign(nodes.size(), 0.0);
    for (std::size_t k = o; k + 1 < nodes.size(); ++k) {
        cum_a_[k + 1] = cum_a_[k] + gk15([&](double s) { return integrand(s, 0); }, nodes[k].s, nodes[k + 1].s);
        cum_b_[k + 1] = cum_b_[k] + gk15([&](double s) { return integrand(s, 1); }, nodes[k].s, nodes[k + 1].s);
    }
    for (std::size_t k = o; k > 0; --k) {
        cum_a_[k - 1] = cum_a_[k] - gk15([&](double s) { return integrand(s, 0); }, nodes[k - 1].s, nodes[k].s);
        cum_b_[k - 1] = cum_b_[k] - gk15([&](double s) { return integrand(s, 1); }, nodes[k - 1].s, nodes[k].s);
    }
}

PhaseIntegrals PhaseIntegrals::detuned(std::shared_ptr<const ProfileSolution> sol)
{
    if (sol->family().kind != ProfileKind::ch_sphere)
        fail(Errc::invalid_argument, "detuned phase is defined for ch-sphere only");
    const double c = std::sqrt(sol->energy_constant());
    const double f0 = c / std::pow(std::sinh(sol->family().rho), sol->family().n + 1);
    PhaseIntegrals out(sol);
    out.detuned_ = true;
    out.f0_ = f0;
    // Recompute the cumulative tables with the frozen speed.
    const auto& nodes = sol->nodes();
    const std::size_t o = sol->origin();
    for (std::size_t k = o; k + 1 < nodes.size(); ++k) {
        out.cum_a_[k + 1] = f0 * nodes[k + 1].s;
        out.cum_b_[k + 1] = out.cum_b_[k] + gk15([&](double s) { return out.integrand(s, 1); }, nodes[k].s, nodes[k + 1].s);
    }
    for (std::size_t k = o; k > 0; --k) {
        out.cum_a_[k - 1] = f0 * nodes[k - 1].s;
        out.cum_b_[k - 1] = out.cum_b_[k] - gk15([&](double s) { return out.integrand(s, 1); }, nodes[k - 1].s, nodes[k].s);
    }
    return out;
}

double PhaseIntegrals::integrand(double s, int which) const
{
    const auto& fam = sol_->family();
    const int n = fam.n;
    const double r = sol_->r(s);
    if (detuned_) {
        const double t = std::tanh(r);
        return which == 0 ? f0_ : f0_ * t * t;
    }
    switch (fam.kind) {
    case ProfileKind::ch_sphere: {
        const double f = c_ / std::pow(std::sinh(r), n + 1);
        const double t = std::tanh(r);
        return which == 0 ? f : f * t * t;
    }
    case ProfileKind::ch_tube: {
        const double f = c_ / std::pow(std::cosh(r), n + 1);
        const double ct = 1.0 / std::tanh(r);
        return which == 0 ? f * ct * ct : f;
    }
    case ProfileKind::ch_horo:
        return c_ / std::pow(r, which == 0 ? n + 1 : n + 3);
    case ProfileKind::cp_sphere: {
        const double f = c_ / std::pow(std::sin(r), n + 1);
        const double t = std::tan(r);
        return which == 0 ? -f : f * t * t;
    }
    }
    return 0.0;
}

double PhaseIntegrals::da(double s) const { return integrand(s, 0); }
double PhaseIntegrals::db(double s) const { return integrand(s, 1); }

double PhaseIntegrals::partial(double lo, double hi, int which) const
{
    return gl10([&](double s) { return integrand(s, which); }, lo, hi);
}

double PhaseIntegrals::eval(double s, int which) const
{
    if (detuned_ && which == 0)
        return f0_ * s;
    const std::size_t k = sol_->interval(s);
    const auto& cum = which == 0 ? cum_a_ : cum_b_;
    // Integrate from the nearer knot so that the piece stays inside one interval.
    const auto& nodes = sol_->nodes();
    if (s - nodes[k].s <= nodes[k + 1].s - s)
        return cum[k] + partial(nodes[k].s, s, which);
    return cum[k + 1] - partial(s, nodes[k + 1].s, which);
}

double PhaseIntegrals::horo_A(int m, double s) const
{
    if (sol_->family().kind != ProfileKind::ch_horo)
        fail(Errc::invalid_argument, "A_m is defined for ch-horo only");
    if (m == sol_->family().n + 1)
        return a(s) / c_;
    if (m == sol_->family().n + 3)
        return b(s) / c_;
    return gk15([&](double t) { return std::pow(sol_->r(t), -m); }, 0.0, s);
}

// ---------------------------------------------------------------------------

namespace {

void require_ch_sphere(const ProfileSolution& sol, const char* what)
{
    if (sol.family().kind != ProfileKind::ch_sphere)
        fail(Errc::invalid_argument, std::string(what) + " needs a ch-sphere profile");
}

// int_0^s g(t) dt over the knot intervals, s >= 0.
template <class G>
double knot_integral(const ProfileSolution& sol, double s, G&& g)
{
    const auto& nodes = sol.nodes();
    double total = 0.0;
    for (std::size_t k = sol.origin(); k + 1 < nodes.size() && nodes[k].s < s; ++k)
        total += gk15(g, nodes[k].s, std::min(nodes[k + 1].s, s));
    return total;
}

} // namespace

double embedding_phase_partial(const ProfileSolution& sol, double s)
{
    require_ch_sphere(sol, "embedding_phase_partial");
    if (s < 0)
        fail(Errc::invalid_argument, "embedding_phase_partial needs s >= 0");
    const int n = sol.family().n;
    const double c = std::sqrt(sol.energy_constant());
    return knot_integral(sol, s, [&](double t) {
        const double r = sol.r(t);
        const double ch = std::cosh(r);
        return 2.0 * c / (ch * ch * std::pow(std::sinh(r), n + 1));
    });
}

PhaseSup embedding_phase_sup(const ProfileSolution& sol, double tail_tol)
{
    require_ch_sphere(sol, "embedding_phase_sup");
    const int n = sol.family().n;
    const double c = std::sqrt(sol.energy_constant());
    const double sm = sol.s_max();
    const auto end = sol.at(sm);
    // r is convex, so r(s) >= r_m + p_m (s - s_m) and sinh r >= sinh r_m e^{r - r_m}.
    const double tail = 2.0 * c / (std::pow(std::sinh(end.r), n + 3) * (n + 3) * end.rp);
    if (!(tail <= tail_tol)) {
        std::ostringstream os;
        os << "phase tail bound " << tail << " exceeds " << tail_tol << " at s_max = " << sm;
        fail(Errc::needs_larger_domain, os.str());
    }
    const double partial = embedding_phase_partial(sol, sm);
    return {partial, partial, tail};
}

double sphere_volume(int m)
{
    if (m < 0)
        fail(Errc::invalid_argument, "sphere dimension must be >= 0");
    const double k = 0.5 * (m + 1);
    return 2.0 * std::pow(std::numbers::pi, k) / std::tgamma(k);
}

double sigma_prefactor(int n)
{
    return 2.0 * std::pow(static_cast<double>((n + 2) * (n - 1)), 0.5 * n) * sphere_volume(n - 1);
}

SigmaIntegralResult sigma_integral_thm1(const SigmaIntegralSpec& spec)
{
    const ProfileFamily fam{ProfileKind::ch_sphere, spec.n, spec.rho};
    fam.validate();
    const int n = spec.n;
    const double e = energy_constant(fam);
    const double scale = sigma_prefactor(n) * std::pow(e, 0.5 * n);
    const int p = n * n + 1;

    if (spec.method == SigmaMethod::s_form) {
        const auto sol = solve_profile(fam, spec.s_max, spec.ode_tol);
        const double reduced =
            knot_integral(sol, spec.s_max, [&](double t) { return std::pow(std::sinh(sol.r(t)), -p); });
        const auto end = sol.at(spec.s_max);
        const double tail = 1.0 / (std::pow(std::sinh(end.r), p) * p * end.rp);
        if (!(tail <= spec.tol * reduced)) {
            std::ostringstream os;
            os << "s-form tail bound " << tail << " too large at s_max = " << spec.s_max;
            fail(Errc::needs_larger_domain, os.str());
        }
        return {scale * reduced, reduced, tail, spec.s_max};
    }

    // t = sinh r; with t = t0 + v^2 the endpoint singularity disappears:
    // R(t) = t^{2n+2} + t^{2n} - c^2 = (t - t0) Q(t).
    const double t0 = std::sinh(spec.rho);
    const int q = n * n - n + 1;
    auto Q = [&](double t) {
        double sum = 0.0;
        for (int j = 0; j <= 2 * n + 1; ++j)
            sum += std::pow(t, j) * std::pow(t0, 2 * n + 1 - j);
        for (int j = 0; j <= 2 * n - 1; ++j)
            sum += std::pow(t, j) * std::pow(t0, 2 * n - 1 - j);
        return sum;
    };
    auto f = [&](double v) {
        const double t = t0 + v * v;
        return 2.0 / (std::pow(t, q) * std::sqrt(Q(t)));
    };
    auto integrate_to = [&](double vmax) {
        double total = 0.0, lo = 0.0, hi = std::min(1.0, vmax);
        while (lo < vmax) {
            total += gk15(f, lo, hi);
            lo = hi;
            hi = std::min(2.0 * hi, vmax);
        }
        return total;
    };
    // For t >= T: R >= t^{2n+2}(1 - c^2/T^{2n+2}), so the tail is at most
    // (1 - c^2/T^{2n+2})^{-1/2} T^{-(n^2+1)} / (n^2+1).
    auto tail_at = [&](double T) {
        const double k = 1.0 / std::sqrt(1.0 - e / std::pow(T, 2 * n + 2));
        return k * std::pow(T, -p) / p;
    };
    double T = 8.0 * std::max(1.0, t0);
    double reduced = integrate_to(std::sqrt(T - t0));
    while (tail_at(T) > spec.tol * reduced) {
        T *= 2.0;
        if (T > 1e12)
            fail(Errc::needs_larger_domain, "t-form tail bound not reached");
    }
    reduced = integrate_to(std::sqrt(T - t0));
    return {scale * reduced, reduced, tail_at(T), T};
}

// ---------------------------------------------------------------------------

std::optional<PeriodResult> detect_period(int n, double rho, double ode_tol, double max_time)
{
    const ProfileFamily fam{ProfileKind::cp_sphere, n, rho};
    fam.validate();
    if (std::abs(profile_k(fam.kind, n, rho)) < kEquilibriumRhs)
        return std::nullopt;

    for (double span = 8.0; span <= 2 * max_time; span *= 2) {
        const double s_end = std::min(span, max_time);
        const auto sol = solve_profile(fam, s_end, ode_tol);
        const auto& nodes = sol.nodes();
        int changes = 0;
        for (std::size_t k = sol.origin() + 1; k + 1 < nodes.size(); ++k) {
            if ((nodes[k].u < 0) == (nodes[k + 1].u < 0) || nodes[k + 1].u == 0.0)
                continue;
            if (++changes < 2)
                continue;
            // u changes sign inside [s_k, s_{k+1}]: bisect on the interpolant.
            // sign(u) = -sign(r').
            auto rising = [&](double s) { return sol.at(s).rp > 0; };
            double lo = nodes[k].s, hi = nodes[k + 1].s;
            const bool lo_rising = rising(lo);
            for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
                const double mid = 0.5 * (lo + hi);
                (rising(mid) == lo_rising ? lo : hi) = mid;
            }
            const double T = 0.5 * (lo + hi);
            const auto v = sol.at(T);
            return PeriodResult{T, std::abs(v.r - rho) + std::abs(v.rp)};
        }
        if (s_end >= max_time)
            break;
    }
    std::ostringstream os;
    os << "no return of the cp-sphere orbit within " << max_time << " time units";
    fail(Errc::detection_failure, os.str());
}

} // namespace lagmin
