#include "lagmin/model_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lagmin/error.hpp"

namespace lagmin {

namespace {

void require_same_space(const HermitianSpace& a, const HermitianSpace& b, const char* what)
{
    if (!(a == b))
        fail(Errc::invalid_argument, std::string(what) + ": vectors live in different Hermitian spaces");
}

double max_abs(const CMatrix& m)
{
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

RMatrix random_rotation(int m, std::mt19937_64& rng)
{
    if (m <= 1)
        return RMatrix::Identity(std::max(m, 0), std::max(m, 0));
    std::normal_distribution<double> gauss;
    RMatrix g(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            g(i, j) = gauss(rng);
    Eigen::HouseholderQR<RMatrix> qr(g);
    RMatrix q = qr.householderQ();
    RMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < m; ++j)
        if (r(j, j) < 0)
            q.col(j) *= -1.0;
    if (q.determinant() < 0)
        q.col(0) *= -1.0;
    return q;
}

} // namespace

// ---------------------------------------------------------------------------

HermitianSpace::HermitianSpace(int n, Signature signature) : n_(n), signature_(signature)
{
    if (n < 1)
        fail(Errc::invalid_argument, "complex dimension must be >= 1");
}

RMatrix HermitianSpace::signature_matrix() const
{
    RMatrix s = RMatrix::Identity(n_ + 1, n_ + 1);
    if (is_hyperbolic())
        s(n_, n_) = -1.0;
    return s;
}

Complex HermitianSpace::form(const CVector& z, const CVector& w) const
{
    Complex sum = 0.0;
    for (int i = 0; i < n_; ++i)
        sum += z(i) * std::conj(w(i));
    const Complex last = z(n_) * std::conj(w(n_));
    return is_hyperbolic() ? sum - last : sum + last;
}

AmbientVector::AmbientVector(HermitianSpace space, CVector coords)
    : space_(space), coords_(std::move(coords))
{
    if (coords_.size() != space_.ambient_dim()) {
        std::ostringstream os;
        os << "expected " << space_.ambient_dim() << " coordinates, got " << coords_.size();
        fail(Errc::invalid_argument, os.str());
    }
}

AmbientVector AmbientVector::operator+(const AmbientVector& o) const
{
    require_same_space(space_, o.space_, "AmbientVector::operator+");
    return {space_, coords_ + o.coords_};
}

AmbientVector AmbientVector::operator-(const AmbientVector& o) const
{
    require_same_space(space_, o.space_, "AmbientVector::operator-");
    return {space_, coords_ - o.coords_};
}

AmbientVector AmbientVector::operator*(Complex c) const { return {space_, coords_ * c}; }

Complex herm_form(const AmbientVector& z, const AmbientVector& w)
{
    require_same_space(z.space(), w.space(), "herm_form");
    return z.space().form(z.coords(), w.coords());
}

bool on_quadric(const AmbientVector& z, double tol)
{
    return std::abs(herm_form(z, z) - z.space().level()) <= tol;
}

// ---------------------------------------------------------------------------

ProjectivePoint ProjectivePoint::from(const AmbientVector& z, double renormalize_tol)
{
    const double level = z.space().level();
    const double q = herm_form(z, z).real();
    if (std::abs(q - level) > renormalize_tol || q * level <= 0.0) {
        std::ostringstream os;
        os << "representative has (z,z) = " << q << ", expected " << level;
        fail(Errc::invalid_argument, os.str());
    }
    CVector c = z.coords() * std::sqrt(level / q);

    const double biggest = c.cwiseAbs().maxCoeff();
    int lead = 0;
    for (int i = 0; i < c.size(); ++i) {
        if (std::abs(c(i)) >= biggest * (1.0 - 1e-14)) {
            lead = i;
            break;
        }
    }
    if (std::abs(c(lead)) > 0.0)
        c *= std::conj(c(lead)) / std::abs(c(lead));
    c(lead) = Complex(c(lead).real(), 0.0);
    return ProjectivePoint(AmbientVector(z.space(), std::move(c)));
}

double projective_distance(const CVector& z, const CVector& w)
{
    if (z.size() != w.size())
        fail(Errc::invalid_argument, "projective_distance: size mismatch");
    const Complex overlap = z.dot(w); // sum conj(z_i) w_i
    Complex phase = 1.0;
    if (std::abs(overlap) > 0.0)
        phase = overlap / std::abs(overlap);
    const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
    return (phase * z - w).cwiseAbs().maxCoeff() / scale;
}

bool projective_equal(const ProjectivePoint& p, const ProjectivePoint& q, double tol)
{
    require_same_space(p.space(), q.space(), "projective_equal");
    return projective_distance(p.rep().coords(), q.rep().coords()) <= tol;
}

CVector horizontal_project(const HermitianSpace& space, const CVector& z, const CVector& v)
{
    // (z,z) = level, so v - level*(v,z) z is the component with (h,z) = 0.
    return v - space.level() * space.form(v, z) * z;
}

AmbientVector horizontal_project(const AmbientVector& z, const AmbientVector& v, double tol)
{
    require_same_space(z.space(), v.space(), "horizontal_project");
    if (!on_quadric(z, tol))
        fail(Errc::precondition_violation, "horizontal_project: base point is not on the quadric");
    return {z.space(), horizontal_project(z.space(), z.coords(), v.coords())};
}

double omega_eval(const AmbientVector& z, const AmbientVector& u, const AmbientVector& v, double tol)
{
    require_same_space(z.space(), u.space(), "omega_eval");
    require_same_space(z.space(), v.space(), "omega_eval");
    const double scale = std::max(1.0, z.coords().norm());
    if (std::abs(herm_form(u, z)) > tol * scale * std::max(1.0, u.coords().norm()) ||
        std::abs(herm_form(v, z)) > tol * scale * std::max(1.0, v.coords().norm()))
        fail(Errc::precondition_violation, "omega_eval: arguments must be horizontal at z");
    return herm_form(u * Complex(0.0, 1.0), v).real();
}

// ---------------------------------------------------------------------------

IsometryElement::IsometryElement(HermitianSpace space, CMatrix matrix, double tol)
    : space_(space), matrix_(std::move(matrix))
{
    const int d = space_.ambient_dim();
    if (matrix_.rows() != d || matrix_.cols() != d)
        fail(Errc::invalid_argument, "isometry matrix has the wrong size");
    const double scale = std::max(1.0, max_abs(matrix_) * max_abs(matrix_));
    if (invariance_defect() > tol * scale)
        fail(Errc::invalid_argument, "matrix does not preserve the Hermitian form");
}

double IsometryElement::invariance_defect() const
{
    const CMatrix s = space_.signature_matrix().cast<Complex>();
    return max_abs(matrix_.adjoint() * s * matrix_ - s);
}

AmbientVector IsometryElement::apply(const AmbientVector& z) const
{
    require_same_space(space_, z.space(), "IsometryElement::apply");
    return {space_, apply(z.coords())};
}

bool is_special_orthogonal(const RMatrix& a, double tol)
{
    if (a.rows() != a.cols())
        return false;
    const RMatrix id = RMatrix::Identity(a.rows(), a.cols());
    return (a.transpose() * a - id).cwiseAbs().maxCoeff() <= tol && a.determinant() > 0.0;
}

bool is_lorentz_identity_component(const RMatrix& a, double tol)
{
    if (a.rows() != a.cols() || a.rows() < 1)
        return false;
    const int m = static_cast<int>(a.rows());
    RMatrix eta = RMatrix::Identity(m, m);
    eta(m - 1, m - 1) = -1.0;
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff() * a.cwiseAbs().maxCoeff());
    return (a.transpose() * eta * a - eta).cwiseAbs().maxCoeff() <= tol * scale &&
           a(m - 1, m - 1) >= 1.0 - tol && a.determinant() > 0.0;
}

IsometryElement embed_isometry(GroupKind group, const GroupParams& params, Signature signature,
                               double tol)
{
    switch (group) {
    case GroupKind::so_n: {
        const auto* a = std::get_if<RMatrix>(&params);
        if (!a || !is_special_orthogonal(*a, tol))
            fail(Errc::invalid_argument, "so_n parameter must be a special orthogonal matrix");
        const int n = static_cast<int>(a->rows());
        CMatrix m = CMatrix::Identity(n + 1, n + 1);
        m.topLeftCorner(n, n) = a->cast<Complex>();
        return {HermitianSpace(n, signature), m};
    }
    case GroupKind::so1_n: {
        const auto* a = std::get_if<RMatrix>(&params);
        if (!a || !is_lorentz_identity_component(*a, tol))
            fail(Errc::invalid_argument, "so1_n parameter must lie in SO^1_0(n)");
        if (signature != Signature::hyperbolic)
            fail(Errc::invalid_argument, "so1_n acts only on the hyperbolic model");
        const int n = static_cast<int>(a->rows());
        CMatrix m = CMatrix::Identity(n + 1, n + 1);
        m.bottomRightCorner(n, n) = a->cast<Complex>();
        return {HermitianSpace(n, signature), m};
    }
    case GroupKind::euclid_n: {
        const auto* p = std::get_if<EuclidParams>(&params);
        if (!p || p->translation.size() != p->rotation.rows() ||
            !is_special_orthogonal(p->rotation, tol))
            fail(Errc::invalid_argument, "euclid_n parameter must be (A in SO(n-1), a in R^{n-1})");
        if (signature != Signature::hyperbolic)
            fail(Errc::invalid_argument, "euclid_n acts only on the hyperbolic model");
        const int k = static_cast<int>(p->rotation.rows()); // n - 1
        const int n = k + 1;
        const RMatrix& a = p->rotation;
        const RVector& t = p->translation;
        const double half = 0.5 * t.squaredNorm();
        RMatrix m = RMatrix::Zero(n + 1, n + 1);
        m.topLeftCorner(k, k) = a;
        const RVector at = a * t;
        m.block(0, k, k, 1) = at;
        m.block(0, k + 1, k, 1) = at;
        m.block(k, 0, 1, k) = -t.transpose();
        m(k, k) = 1.0 - half;
        m(k, k + 1) = -half;
        m.block(k + 1, 0, 1, k) = t.transpose();
        m(k + 1, k) = half;
        m(k + 1, k + 1) = 1.0 + half;
        return {HermitianSpace(n, signature), m.cast<Complex>()};
    }
    }
    fail(Errc::invalid_argument, "unknown group");
}

GroupParams random_group_params(GroupKind group, int n, std::mt19937_64& rng)
{
    switch (group) {
    case GroupKind::so_n:
        return random_rotation(n, rng);
    case GroupKind::so1_n: {
        std::uniform_real_distribution<double> rapidity(0.4, 1.4);
        std::bernoulli_distribution flip;
        const double t = flip(rng) ? rapidity(rng) : -rapidity(rng);
        RMatrix boost = RMatrix::Identity(n, n);
        boost(0, 0) = std::cosh(t);
        boost(0, n - 1) = std::sinh(t);
        boost(n - 1, 0) = std::sinh(t);
        boost(n - 1, n - 1) = std::cosh(t);
        RMatrix left = RMatrix::Identity(n, n);
        RMatrix right = RMatrix::Identity(n, n);
        if (n > 1) {
            left.topLeftCorner(n - 1, n - 1) = random_rotation(n - 1, rng);
            right.topLeftCorner(n - 1, n - 1) = random_rotation(n - 1, rng);
        }
        return RMatrix(left * boost * right);
    }
    case GroupKind::euclid_n: {
        std::normal_distribution<double> gauss;
        EuclidParams p{random_rotation(n - 1, rng), RVector(n - 1)};
        for (int i = 0; i < n - 1; ++i)
            p.translation(i) = gauss(rng);
        return p;
    }
    }
    fail(Errc::invalid_argument, "unknown group");
}

// ---------------------------------------------------------------------------

ModelPoint::ModelPoint(ModelKind kind, RVector coords, double tol)
    : kind_(kind), coords_(std::move(coords))
{
    const auto m = coords_.size();
    switch (kind_) {
    case ModelKind::sphere:
        if (m < 1 || std::abs(coords_.squaredNorm() - 1.0) > tol)
            fail(Errc::invalid_argument, "sphere point must have unit norm");
        break;
    case ModelKind::hyperbolic: {
        if (m < 1)
            fail(Errc::invalid_argument, "hyperbolic point needs at least one coordinate");
        const double last = coords_(m - 1);
        const double q = coords_.head(m - 1).squaredNorm() - last * last;
        if (std::abs(q + 1.0) > tol * std::max(1.0, last * last) || last < 1.0 - tol)
            fail(Errc::invalid_argument, "hyperbolic point must satisfy <<x,x>> = -1, x_last >= 1");
        break;
    }
    case ModelKind::euclidean:
        break;
    }
}

int ModelPoint::dim() const noexcept
{
    const int m = static_cast<int>(coords_.size());
    return kind_ == ModelKind::euclidean ? m : m - 1;
}

AmbientVector umbilical_embed(UmbilicalKind kind, std::optional<double> r, const ModelPoint& x)
{
    const RVector& c = x.coords();
    const int m = static_cast<int>(c.size());
    auto need_radius = [&] {
        if (!r || !(*r > 0.0))
            fail(Errc::invalid_argument, "umbilical_embed: radius must be positive");
        return *r;
    };
    switch (kind) {
    case UmbilicalKind::geodesic_sphere: {
        if (x.kind() != ModelKind::sphere)
            fail(Errc::invalid_argument, "geodesic sphere needs a sphere point");
        const double rr = need_radius();
        CVector z(m + 1);
        z.head(m) = (std::sinh(rr) * c).cast<Complex>();
        z(m) = std::cosh(rr);
        return {HermitianSpace::hyperbolic(m), z};
    }
    case UmbilicalKind::tube: {
        if (x.kind() != ModelKind::hyperbolic)
            fail(Errc::invalid_argument, "tube needs a hyperbolic point");
        const double rr = need_radius();
        CVector z(m + 1);
        z(0) = std::sinh(rr);
        z.tail(m) = (std::cosh(rr) * c).cast<Complex>();
        return {HermitianSpace::hyperbolic(m), z};
    }
    case UmbilicalKind::horosphere: {
        if (x.kind() != ModelKind::euclidean)
            fail(Errc::invalid_argument, "horosphere needs a Euclidean point");
        const double half = 0.5 * c.squaredNorm();
        CVector z(m + 2);
        z.head(m) = c.cast<Complex>();
        z(m) = half;
        z(m + 1) = half + 1.0;
        return {HermitianSpace::hyperbolic(m + 1), z};
    }
    }
    fail(Errc::invalid_argument, "unknown umbilical kind");
}

} // namespace lagmin
