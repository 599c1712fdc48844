#pragma once

// Profile curves r(s) of the cohomogeneity-one families, their phase
// integrals and the integrals built on top of them.
//
// Every family is arc-length parametrized, so the phase speed carries the
// constant c = sqrt(energy): with it the profile curve has unit speed and
// the immersion is minimal.

#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "lagmin/model_spaces.hpp"

namespace lagmin {

enum class ProfileKind { ch_sphere, ch_tube, ch_horo, cp_sphere };

std::string_view to_string(ProfileKind kind);
/// Accepts both "ch-sphere" and "ch_sphere".
std::optional<ProfileKind> parse_profile_kind(std::string_view text);

struct ProfileFamily {
    ProfileKind kind;
    int n;
    double rho;

    /// Throws invalid-argument unless n >= 2, rho > 0 (and rho < pi/2 for cp_sphere).
    void validate() const;
};

/// G(rho) with G(r) (1 - r'^2) conserved along the profile: cosh^2 sinh^{2n},
/// sinh^2 cosh^{2n}, sin^{2n} cos^2; for ch_horo rho^{2(n+1)}.
double energy_constant(const ProfileFamily& family);
/// sqrt(energy_constant).
double phase_constant(const ProfileFamily& family);

/// k(r) in r'' = (1 - r'^2) k(r) for the three ODE families.
double profile_k(ProfileKind kind, int n, double r);
double profile_dk(ProfileKind kind, int n, double r);
/// Right-hand side r'' of the profile ODE.
double profile_rhs(ProfileKind kind, int n, double r, double rp);

/// Dense profile on [-s_max, s_max].
///
/// ODE families are integrated in the variables (r, u) with r' = -tanh u,
/// so that 1 - r'^2 = sech^2 u is available without cancellation. Between
/// knots r and u are quintic Hermite interpolants using the exact first and
/// second derivatives from the right-hand side.
class ProfileSolution {
public:
    struct Node {
        double s;
        double r;
        double u;
    };
    struct Value {
        double r;
        double rp;
        double rpp;
        /// 1 - r'^2
        double deficit;
    };

    const ProfileFamily& family() const noexcept { return family_; }
    double tol() const noexcept { return tol_; }
    double s_max() const noexcept { return s_max_; }
    double energy_constant() const noexcept { return energy_; }
    bool is_equilibrium() const noexcept { return equilibrium_; }
    /// Closed-form solution (ch_horo): evaluation is exact, nodes are for output only.
    bool is_closed_form() const noexcept { return family_.kind == ProfileKind::ch_horo; }

    const std::vector<Node>& nodes() const noexcept { return nodes_; }
    Value at(double s) const;
    Value at_node(std::size_t k) const;
    double r(double s) const { return at(s).r; }
    double rp(double s) const { return at(s).rp; }

    /// Index k with s_k <= s <= s_{k+1} (clamped to the last interval).
    std::size_t interval(double s) const;
    /// Index of the node at s = 0.
    std::size_t origin() const noexcept { return origin_; }

private:
    friend ProfileSolution solve_profile(const ProfileFamily&, double, double);
    ProfileSolution() = default;

    ProfileFamily family_{};
    double tol_ = 0.0;
    double s_max_ = 0.0;
    double energy_ = 0.0;
    bool equilibrium_ = false;
    std::vector<Node> nodes_;
    std::size_t origin_ = 0;
};

/// tol must lie in [1e-13, 1e-6]. Throws IntegrationFailure when the step
/// size underflows or the solution leaves its domain.
ProfileSolution solve_profile(const ProfileFamily& family, double s_max, double tol);

/// Max over nodes of |G(r)(1 - r'^2) - E| / E; for ch_horo the absolute
/// residual of (r')^2 + rho^{2(n+1)}/r^{2n} - r^2.
double energy_residual(const ProfileSolution& sol);

/// Cumulative phase integrals a(s), b(s) with a(0) = b(0) = 0.
///
/// a multiplies the first coordinate block and b the last one:
///   ch_sphere  a' = c / sinh^{n+1} r,           b' = a' tanh^2 r
///   ch_tube    a' = c coth^2 r / cosh^{n+1} r,  b' = c / cosh^{n+1} r
///   ch_horo    a  = c A_{n+1},                  b  = c A_{n+3}
///   cp_sphere  a' = -c / sin^{n+1} r,           b' = c tan^2 r / sin^{n+1} r
class PhaseIntegrals {
public:
    explicit PhaseIntegrals(std::shared_ptr<const ProfileSolution> sol);

    /// Replaces the phase speed of the first block by its value at s = 0
    /// (and b' by that constant times the usual ratio). Only for
    /// ch_sphere; used as a non-minimal control.
    static PhaseIntegrals detuned(std::shared_ptr<const ProfileSolution> sol);

    const ProfileSolution& profile() const noexcept { return *sol_; }
    double c() const noexcept { return c_; }

    double a(double s) const { return eval(s, 0); }
    double b(double s) const { return eval(s, 1); }
    /// Integrands a'(s), b'(s).
    double da(double s) const;
    double db(double s) const;
    /// The phase speed f(s) of the first block (equal to da).
    double phase_speed(double s) const { return da(s); }

    /// A_m(s) = int_0^s dt / r(t)^m, ch_horo only.
    double horo_A(int m, double s) const;

private:
    double eval(double s, int which) const;
    double integrand(double s, int which) const;
    double partial(double lo, double hi, int which) const;

    std::shared_ptr<const ProfileSolution> sol_;
    double c_ = 0.0;
    bool detuned_ = false;
    double f0_ = 0.0;
    std::vector<double> cum_a_;
    std::vector<double> cum_b_;
};

/// lim 2 int_0^s c dt / (cosh^2 r sinh^{n+1} r) for ch_sphere, the angle that
/// would identify (s, x) with (-s, x') in the embedding argument.
struct PhaseSup {
    double value;
    double partial;
    double tail_bound;
};
/// Throws needs-larger-domain when the tail bound exceeds tail_tol.
PhaseSup embedding_phase_sup(const ProfileSolution& sol, double tail_tol = 1e-9);
/// Partial value 2 int_0^s c dt / (cosh^2 r sinh^{n+1} r).
double embedding_phase_partial(const ProfileSolution& sol, double s);

/// Volume of the unit sphere S^m: 2 pi^{(m+1)/2} / Gamma((m+1)/2).
double sphere_volume(int m);
/// 2 ((n+2)(n-1))^{n/2} c_{n-1}.
double sigma_prefactor(int n);

enum class SigmaMethod { s_form, t_form };

struct SigmaIntegralSpec {
    int n;
    double rho;
    SigmaMethod method = SigmaMethod::s_form;
    /// s-form truncation; the profile is solved on [-s_max, s_max].
    double s_max = 8.0;
    double ode_tol = 1e-11;
    /// Relative tolerance for the tail bound.
    double tol = 1e-10;
};

struct SigmaIntegralResult {
    /// Full integral of |sigma|^n dv.
    double value;
    /// int_0^inf ds / sinh^{n^2+1} r(s).
    double reduced;
    /// Bound on the truncated tail of `reduced`.
    double tail_bound;
    /// Truncation point: s_max (s-form) or t_max (t-form).
    double truncation;
};

/// The full value is prefactor * c^n * reduced, with c^2 the energy constant.
SigmaIntegralResult sigma_integral_thm1(const SigmaIntegralSpec& spec);

struct PeriodResult {
    double period;
    /// |r(T) - rho| + |r'(T)|
    double closure_residual;
};

/// First return time of a cp_sphere profile; none at the equilibrium
/// rho = arctan sqrt(n). Throws detection-failure if no return within
/// max_time.
std::optional<PeriodResult> detect_period(int n, double rho, double ode_tol = 1e-12,
                                          double max_time = 1000.0);

} // namespace lagmin
