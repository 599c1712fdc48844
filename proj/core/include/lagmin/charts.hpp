#pragma once

// Coordinate charts on S^m, RH^m and R^m used to mesh the orbit factor of
// an immersion and to parametrize seeds.

#include <vector>

#include "lagmin/model_spaces.hpp"

namespace lagmin {

/// Axis-aligned parameter box. Periodic axes are sampled at cell midpoints,
/// the others including both endpoints.
struct ParamBox {
    RVector lo;
    RVector hi;
    std::vector<bool> periodic;

    int dim() const noexcept { return static_cast<int>(lo.size()); }

    /// Uniform nodes along one axis.
    std::vector<double> nodes(int axis, int count) const;
    /// Quadrature weights matching nodes(): trapezoid or periodic midpoint.
    std::vector<double> weights(int axis, int count) const;
};

/// Tensor mesh of a box with per_axis(dim, total) nodes per axis.
std::vector<RVector> box_mesh(const ParamBox& box, int total);
/// round(total^{1/dim}), at least 2.
int per_axis(int dim, int total);

class Chart {
public:
    /// Hyperspherical angles (theta_1..theta_{m-1}, phi) with the poles cut
    /// out by pole_margin.
    static Chart sphere(int m, double pole_margin = 0.1);
    /// Graph chart u -> (u, sqrt(1 + |u|^2)) on the hyperboloid.
    static Chart hyperbolic(int m, double half_width = 1.5);
    static Chart euclidean(int m, double half_width = 1.5);

    ModelKind kind() const noexcept { return kind_; }
    /// Intrinsic dimension m.
    int dim() const noexcept { return dim_; }
    const ParamBox& box() const noexcept { return box_; }

    /// Model coordinates: a point of R^{m+1} (sphere, hyperboloid) or R^m.
    RVector embed(const RVector& u) const;
    ModelPoint point(const RVector& u) const;
    /// Canonical metric of the model manifold pulled back to the chart.
    RMatrix model_metric(const RVector& u) const;
    /// True when u is a valid chart coordinate (angles strictly inside (0, pi)).
    bool contains(const RVector& u, double margin = 0.0) const;

    /// Tensor mesh with round(total^{1/m}) nodes per axis (at least 2).
    std::vector<RVector> mesh(int total) const;
    /// Nodes per axis used by mesh(total).
    int per_axis(int total) const;

private:
    Chart(ModelKind kind, int dim, ParamBox box) : kind_(kind), dim_(dim), box_(std::move(box)) {}

    ModelKind kind_;
    int dim_;
    ParamBox box_;
};

} // namespace lagmin
