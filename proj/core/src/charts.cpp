#include "lagmin/charts.hpp"

#include <cmath>
#include <numbers>

#include "lagmin/error.hpp"

namespace lagmin {

std::vector<double> ParamBox::nodes(int axis, int count) const
{
    std::vector<double> out(count);
    const double a = lo(axis), b = hi(axis);
    if (periodic[axis]) {
        for (int i = 0; i < count; ++i)
            out[i] = a + (i + 0.5) * (b - a) / count;
    } else if (count == 1) {
        out[0] = 0.5 * (a + b);
    } else {
        for (int i = 0; i < count; ++i)
            out[i] = a + i * (b - a) / (count - 1);
    }
    return out;
}

std::vector<double> ParamBox::weights(int axis, int count) const
{
    const double a = lo(axis), b = hi(axis);
    if (periodic[axis] || count == 1)
        return std::vector<double>(count, (b - a) / count);
    std::vector<double> w(count, (b - a) / (count - 1));
    w.front() *= 0.5;
    w.back() *= 0.5;
    return w;
}

Chart Chart::sphere(int m, double pole_margin)
{
    if (m < 1)
        fail(Errc::invalid_argument, "sphere chart needs m >= 1");
    ParamBox box{RVector(m), RVector(m), std::vector<bool>(m, false)};
    for (int i = 0; i < m - 1; ++i) {
        box.lo(i) = pole_margin;
        box.hi(i) = std::numbers::pi - pole_margin;
    }
    box.lo(m - 1) = -std::numbers::pi;
    box.hi(m - 1) = std::numbers::pi;
    box.periodic[m - 1] = true;
    return {ModelKind::sphere, m, box};
}

Chart Chart::hyperbolic(int m, double half_width)
{
    if (m < 1)
        fail(Errc::invalid_argument, "hyperbolic chart needs m >= 1");
    return {ModelKind::hyperbolic, m,
            ParamBox{RVector::Constant(m, -half_width), RVector::Constant(m, half_width),
                     std::vector<bool>(m, false)}};
}

Chart Chart::euclidean(int m, double half_width)
{
    if (m < 1)
        fail(Errc::invalid_argument, "euclidean chart needs m >= 1");
    return {ModelKind::euclidean, m,
            ParamBox{RVector::Constant(m, -half_width), RVector::Constant(m, half_width),
                     std::vector<bool>(m, false)}};
}

RVector Chart::embed(const RVector& u) const
{
    if (u.size() != dim_)
        fail(Errc::invalid_argument, "chart coordinate has the wrong dimension");
    switch (kind_) {
    case ModelKind::sphere: {
        RVector x(dim_ + 1);
        double prod = 1.0;
        for (int i = 0; i < dim_ - 1; ++i) {
            x(i) = prod * std::cos(u(i));
            prod *= std::sin(u(i));
        }
        x(dim_ - 1) = prod * std::cos(u(dim_ - 1));
        x(dim_) = prod * std::sin(u(dim_ - 1));
        return x;
    }
    case ModelKind::hyperbolic: {
        RVector x(dim_ + 1);
        x.head(dim_) = u;
        x(dim_) = std::sqrt(1.0 + u.squaredNorm());
        return x;
    }
    case ModelKind::euclidean:
        return u;
    }
    fail(Errc::invalid_argument, "unknown chart kind");
}

ModelPoint Chart::point(const RVector& u) const { return ModelPoint(kind_, embed(u), 1e-10); }

RMatrix Chart::model_metric(const RVector& u) const
{
    switch (kind_) {
    case ModelKind::sphere: {
        RMatrix g = RMatrix::Zero(dim_, dim_);
        double prod = 1.0;
        for (int i = 0; i < dim_; ++i) {
            g(i, i) = prod;
            if (i < dim_ - 1)
                prod *= std::sin(u(i)) * std::sin(u(i));
        }
        return g;
    }
    case ModelKind::hyperbolic:
        return RMatrix::Identity(dim_, dim_) - u * u.transpose() / (1.0 + u.squaredNorm());
    case ModelKind::euclidean:
        return RMatrix::Identity(dim_, dim_);
    }
    fail(Errc::invalid_argument, "unknown chart kind");
}

bool Chart::contains(const RVector& u, double margin) const
{
    if (u.size() != dim_)
        return false;
    if (kind_ == ModelKind::sphere)
        for (int i = 0; i < dim_ - 1; ++i)
            if (u(i) <= margin || u(i) >= std::numbers::pi - margin)
                return false;
    return true;
}

int per_axis(int dim, int total)
{
    const int k = static_cast<int>(std::lround(std::pow(static_cast<double>(total), 1.0 / dim)));
    return std::max(k, 2);
}

std::vector<RVector> box_mesh(const ParamBox& box, int total)
{
    const int dim = box.dim();
    const int k = per_axis(dim, total);
    std::vector<std::vector<double>> axes;
    for (int a = 0; a < dim; ++a)
        axes.push_back(box.nodes(a, k));
    std::vector<RVector> out;
    std::vector<int> idx(dim, 0);
    while (true) {
        RVector u(dim);
        for (int a = 0; a < dim; ++a)
            u(a) = axes[a][idx[a]];
        out.push_back(u);
        int a = dim - 1;
        while (a >= 0 && ++idx[a] == k)
            idx[a--] = 0;
        if (a < 0)
            break;
    }
    return out;
}

int Chart::per_axis(int total) const { return lagmin::per_axis(dim_, total); }

std::vector<RVector> Chart::mesh(int total) const { return box_mesh(box_, total); }

} // namespace lagmin
