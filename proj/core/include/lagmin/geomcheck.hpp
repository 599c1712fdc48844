#pragma once

// Finite-difference geometry of immersion evaluators: jets, induced metric,
// Lagrangian and horizontality residuals, second fundamental form, group
// invariance and the curve-level functionals.

#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lagmin/immersions.hpp"

namespace lagmin {

struct JetOptions {
    /// Base step in metric units; the step along axis i is h / sqrt(g_ii).
    double h = 1e-3;
    /// 4: five-point stencils plus Richardson-corrected mixed partials. 2: three-point.
    int order = 4;
    bool second = true;
};

struct JetSample {
    RVector point;
    CVector value;
    /// Raw partials of the lift.
    std::vector<CVector> first;
    /// Partials projected onto the horizontal space at the lift.
    std::vector<CVector> horizontal;
    /// second[i][j]; empty when only first derivatives were requested.
    std::vector<std::vector<CVector>> second;
    RVector steps;
    /// max |d_i d_j - d_j d_i| over two independent stencils, relative to max(1, |second|).
    double symmetry_defect = 0.0;
};

/// Throws out-of-domain when p is closer than 2 steps to the evaluator boundary.
JetSample jet(const Immersion& imm, const RVector& p, const JetOptions& opt = {});

/// g_ij = Re (h_i, h_j). Throws degeneracy-error unless positive definite.
RMatrix induced_metric(const Immersion& imm, const JetSample& j);

/// max |Omega(h_i, h_j)| / sqrt(g_ii g_jj) at one sample.
double lagrangian_residual(const Immersion& imm, const JetSample& j);
/// max |(d_i z, z)| / (|d_i z| |z|) at one sample; for the flat C^n family
/// the same quantity for the seed lift along the seed directions.
double horizontal_residual(const Immersion& imm, const JetSample& j, double h = 1e-3);

struct SFFData {
    int n = 0;
    /// Rows of `frame` are the coordinates of the g-orthonormal frame e_a.
    RMatrix frame;
    /// h[(a * n + b) * n + c] = <sigma(e_a, e_b), J e_c>.
    std::vector<double> h;
    /// H_c = (1/n) sum_a h_aac.
    RVector mean;

    double at(int a, int b, int c) const { return h[(a * n + b) * n + c]; }
    double mean_norm() const { return mean.norm(); }
    /// sum of h_abc^2 over all ordered index triples.
    double norm2() const;
    /// max |h_abc - h_perm(abc)| over all permutations.
    double symmetry_defect() const;
};

/// Throws not-lagrangian-error when the sample's Lagrangian residual exceeds lagrangian_tol.
SFFData second_fundamental_form(const Immersion& imm, const JetSample& j, const RMatrix& g,
                                double lagrangian_tol = 1e-5);

/// Model-manifold action matching embed_isometry. Groups that do not match
/// the point's model act on the padded or truncated coordinates, followed by
/// a retraction onto the model.
RVector model_action(GroupKind group, const GroupParams& params, ModelKind kind, const RVector& x);

struct InvarianceOptions {
    int samples = 16;
    std::uint64_t seed = 42;
    /// Use the identity element instead of random ones.
    bool identity = false;
};

/// max projective distance between g . lift(s, x) and lift(s, g . x).
double invariance_residual(const Immersion& imm, GroupKind group, const InvarianceOptions& opt = {});

/// <g'', J g'> / |g'|^4 + (n - 1) <g_1', J g_1> / (|g_1|^2 |g'|^2) at every sample.
std::vector<double> legendre_functional(const LegendreCurve& curve, int n);

/// Signed curvature of s -> gamma(s)^n by fourth-order differences with step h.
std::vector<double> power_curve_curvature(const std::function<Complex(double)>& gamma, int n,
                                          const std::vector<double>& s, double h = 1e-3);

/// gamma(s) = (s + ic)^{1/n} on the principal branch.
Complex power_curve(double s, double c, int n);

struct SigmaNumeric {
    double value = 0.0;
    /// Estimate on the grid with twice the nodes per axis.
    double doubled = 0.0;
    double rel_change = 0.0;
    bool low_confidence = false;
};

/// Riemann sum of |sigma|^n dv over the sample grid of `imm`.
double sigma_integral_grid(const SampledImmersion& imm, const JetOptions& opt = {});
/// Grid estimate plus a doubling study; low_confidence when the relative
/// change exceeds `stable_tol`.
SigmaNumeric sigma_integral_numeric(const ImmersionFamilySpec& spec, const GridSpec& grid,
                                    const JetOptions& opt = {}, double stable_tol = 1e-3);

// ---------------------------------------------------------------------------
// Reports

struct Check {
    std::string name;
    double residual = 0.0;
    double tol = 0.0;
    bool pass = false;
    std::string note;
};

struct CheckOptions {
    /// Empty: all checks.
    std::set<std::string> checks;
    JetOptions jet;
    std::uint64_t prng_seed = 42;
    int invariance_samples = 16;
};

struct CheckReport {
    ImmersionFamilySpec spec;
    GridSpec grid;
    CheckOptions options;
    std::vector<Check> checks;

    bool pass() const;
    const Check* find(const std::string& name) const;
};

/// Names accepted in CheckOptions::checks.
const std::vector<std::string>& check_names();

/// Runs the selected checks over every grid sample. When `stored` is
/// non-empty it holds the sample lifts as read back from disk; they must
/// agree with the evaluator up to one constant phase for the horizontal
/// check to pass.
CheckReport run_checks(const SampledImmersion& imm, const CheckOptions& opt,
                       const std::vector<CVector>& stored = {});

} // namespace lagmin
