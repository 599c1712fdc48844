#pragma once

// (n-1)-dimensional minimal Lagrangian seeds in CP^{n-1}, CH^{n-1} or
// C^{n-1}, given by their horizontal lifts on a parameter box.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lagmin/charts.hpp"

namespace lagmin {

enum class SeedTarget { cp, ch, c };
enum class SeedKind { tg_sphere_cp, tg_rh_ch, tg_plane_c, clifford_cp, custom };

std::string_view to_string(SeedKind kind);
std::string_view to_string(SeedTarget target);
std::optional<SeedKind> parse_seed_kind(std::string_view text);

struct SeedValue {
    /// Point of S^{2d+1} (cp), H^{2d+1}_1 (ch) or eta(x) in C^d (c).
    CVector lift;
    /// f(x) with Re f = |eta|^2; zero for cp and ch seeds.
    Complex potential{0.0, 0.0};
};

class SeedLagrangian {
public:
    using Evaluator = std::function<SeedValue(const RVector&)>;
    using Domain = std::function<bool(const RVector&, double)>;

    SeedLagrangian(std::string name, SeedKind kind, SeedTarget target, int dim, ParamBox box,
                   Evaluator eval, Domain domain = {});

    const std::string& name() const noexcept { return name_; }
    SeedKind kind() const noexcept { return kind_; }
    SeedTarget target() const noexcept { return target_; }
    int dim() const noexcept { return dim_; }
    /// Coordinate count of the lift: dim + 1 (cp, ch) or dim (c).
    int lift_size() const noexcept { return target_ == SeedTarget::c ? dim_ : dim_ + 1; }
    const ParamBox& box() const noexcept { return box_; }

    SeedValue eval(const RVector& u) const { return eval_(u); }
    /// True when u is a valid parameter with the given margin from chart singularities.
    bool contains(const RVector& u, double margin = 0.0) const;
    bool totally_geodesic() const noexcept { return kind_ != SeedKind::clifford_cp && kind_ != SeedKind::custom; }

private:
    std::string name_;
    SeedKind kind_;
    SeedTarget target_;
    int dim_;
    ParamBox box_;
    Evaluator eval_;
    Domain domain_;
};

/// dim >= 1; clifford_cp needs dim >= 2 and is the S^1 x S^{dim-1} family in
/// CP^dim with lift (sqrt(d) e^{-it/(d+1)} y, e^{idt/(d+1)}) / sqrt(d+1), d = dim.
SeedLagrangian make_seed(SeedKind kind, int dim);

struct SeedCheck {
    /// |(lift, lift) - level| (cp, ch) or |Re f - |eta|^2| (c).
    double norm_residual = 0.0;
    /// Horizontality |(d lift, lift)| of the lift (cp, ch).
    double horizontal_residual = 0.0;
    /// |v(Im f) - 2 <eta_* v, J eta>| (c).
    double potential_residual = 0.0;
};

/// Finite-difference check of the seed invariants at the given parameters.
SeedCheck check_seed(const SeedLagrangian& seed, const std::vector<RVector>& points, double h = 1e-5);

} // namespace lagmin
