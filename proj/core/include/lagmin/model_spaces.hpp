#pragma once

// Indefinite Hermitian linear algebra on C^{n+1}: the quadrics
// H^{2n+1}_1 = {(z,z) = -1} and S^{2n+1} = {(z,z) = 1}, their Hopf
// quotients CH^n and CP^n, the three isometry-group embeddings and the
// umbilical hypersurfaces of the totally geodesic RH^n.
//
// Vectors are row vectors as far as group actions go: an isometry A acts
// by z -> zA, which in Eigen's column convention is A^T z.
//
// J is multiplication by i on horizontal vectors, so the Kaehler form is
// Omega(u, v) = Re (iu, v) = -Im (u, v).

#include <complex>
#include <optional>
#include <random>
#include <variant>

#include <Eigen/Dense>

namespace lagmin {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kDefaultMembershipTol = 1e-10;

enum class Signature { hyperbolic, spherical };

/// C^{n+1} with the form sum_{i<=n} z_i conj(w_i) -/+ z_{n+1} conj(w_{n+1}).
class HermitianSpace {
public:
    HermitianSpace(int n, Signature signature);

    static HermitianSpace hyperbolic(int n) { return {n, Signature::hyperbolic}; }
    static HermitianSpace spherical(int n) { return {n, Signature::spherical}; }

    int n() const noexcept { return n_; }
    int ambient_dim() const noexcept { return n_ + 1; }
    Signature signature() const noexcept { return signature_; }
    bool is_hyperbolic() const noexcept { return signature_ == Signature::hyperbolic; }

    /// Value of (z,z) on the model quadric: -1 hyperbolic, +1 spherical.
    double level() const noexcept { return is_hyperbolic() ? -1.0 : 1.0; }
    double weight(int i) const noexcept { return (is_hyperbolic() && i == n_) ? -1.0 : 1.0; }
    RMatrix signature_matrix() const;

    /// Unchecked form evaluation; sizes must equal ambient_dim().
    Complex form(const CVector& z, const CVector& w) const;

    bool operator==(const HermitianSpace&) const = default;

private:
    int n_;
    Signature signature_;
};

class AmbientVector {
public:
    AmbientVector(HermitianSpace space, CVector coords);

    const HermitianSpace& space() const noexcept { return space_; }
    const CVector& coords() const noexcept { return coords_; }
    Complex operator[](int i) const { return coords_(i); }

    AmbientVector operator+(const AmbientVector& o) const;
    AmbientVector operator-(const AmbientVector& o) const;
    AmbientVector operator*(Complex c) const;

private:
    HermitianSpace space_;
    CVector coords_;
};

inline AmbientVector operator*(Complex c, const AmbientVector& v) { return v * c; }

Complex herm_form(const AmbientVector& z, const AmbientVector& w);
bool on_quadric(const AmbientVector& z, double tol = kDefaultMembershipTol);

/// A point of CH^n or CP^n. The representative lies on the quadric and is
/// phase-normalized: its largest-modulus coordinate (lowest index on ties)
/// is real and nonnegative.
class ProjectivePoint {
public:
    /// Rescales by a positive real when |(z,z) - level| < renormalize_tol,
    /// rejects otherwise.
    static ProjectivePoint from(const AmbientVector& z, double renormalize_tol = 1e-6);

    const AmbientVector& rep() const noexcept { return rep_; }
    const HermitianSpace& space() const noexcept { return rep_.space(); }

private:
    explicit ProjectivePoint(AmbientVector rep) : rep_(std::move(rep)) {}
    AmbientVector rep_;
};

/// Phase-aligned max-coordinate distance between two representatives,
/// scaled by max(1, |w|_inf) so that points far out on the quadric compare
/// on a relative scale.
double projective_distance(const CVector& z, const CVector& w);
bool projective_equal(const ProjectivePoint& p, const ProjectivePoint& q,
                      double tol = kDefaultMembershipTol);

/// Projects v onto the horizontal space at z: the result h satisfies (h, z) = 0.
AmbientVector horizontal_project(const AmbientVector& z, const AmbientVector& v,
                                 double tol = kDefaultMembershipTol);
CVector horizontal_project(const HermitianSpace& space, const CVector& z, const CVector& v);

/// Kaehler form on horizontal vectors at z.
double omega_eval(const AmbientVector& z, const AmbientVector& u, const AmbientVector& v,
                  double tol = 1e-8);

// ---------------------------------------------------------------------------
// Isometry groups

enum class GroupKind { so_n, so1_n, euclid_n };

/// (A, a) in SO(n-1) x R^{n-1}.
struct EuclidParams {
    RMatrix rotation;
    RVector translation;
};

using GroupParams = std::variant<RMatrix, EuclidParams>;

class IsometryElement {
public:
    IsometryElement(HermitianSpace space, CMatrix matrix, double tol = 1e-10);

    const HermitianSpace& space() const noexcept { return space_; }
    const CMatrix& matrix() const noexcept { return matrix_; }

    /// Row action z -> zA.
    CVector apply(const CVector& z) const { return matrix_.transpose() * z; }
    AmbientVector apply(const AmbientVector& z) const;

    /// max |conj(A)^T S A - S| entrywise.
    double invariance_defect() const;

private:
    HermitianSpace space_;
    CMatrix matrix_;
};

/// Embeds SO(n), SO^1_0(n) or SO(n-1) x R^{n-1} into U^1(n+1) using the
/// block forms diag(A, 1), diag(1, A) and the parabolic block matrix.
/// `spherical` selects U(n+1) (only meaningful for so_n).
IsometryElement embed_isometry(GroupKind group, const GroupParams& params,
                               Signature signature = Signature::hyperbolic,
                               double tol = kDefaultMembershipTol);

/// Uniformly-ish distributed random group parameters for complex dimension n.
GroupParams random_group_params(GroupKind group, int n, std::mt19937_64& rng);

bool is_special_orthogonal(const RMatrix& a, double tol);
bool is_lorentz_identity_component(const RMatrix& a, double tol);

// ---------------------------------------------------------------------------
// Real model manifolds and umbilical hypersurfaces

enum class ModelKind { sphere, hyperbolic, euclidean };

/// A point of S^{m}, RH^{m} (hyperboloid in R^{m+1}, last coordinate timelike)
/// or R^{m}.
class ModelPoint {
public:
    ModelPoint(ModelKind kind, RVector coords, double tol = 1e-12);

    ModelKind kind() const noexcept { return kind_; }
    const RVector& coords() const noexcept { return coords_; }
    /// Intrinsic dimension of the model manifold.
    int dim() const noexcept;

private:
    ModelKind kind_;
    RVector coords_;
};

enum class UmbilicalKind { geodesic_sphere, tube, horosphere };

/// (sinh r x, cosh r), (sinh r, cosh r x) or (x, |x|^2/2, |x|^2/2 + 1) as a
/// real vector on RH^n inside H^{2n+1}_1.
AmbientVector umbilical_embed(UmbilicalKind kind, std::optional<double> r, const ModelPoint& x);

} // namespace lagmin
