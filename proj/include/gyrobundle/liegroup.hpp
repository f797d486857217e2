#pragma once

/**
 * @file liegroup.hpp
 * @brief SO(3) / so(3) primitives: hat and vee maps, exponential and
 *        logarithm, adjoint action and projection back onto the group.
 *
 * Rotations are stored as full 3x3 matrices. Right multiplication by
 * exp(hat(w)) is the body-frame (left-trivialized) update used throughout.
 */

#include <Eigen/Dense>

namespace gyrobundle {

using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

/// Second and third basis vectors (gimbal and spin axes in the gimbal frame).
inline Vector3 unit_i2() { return Vector3::UnitY(); }
inline Vector3 unit_i3() { return Vector3::UnitZ(); }

/// hat(v) * w == v.cross(w). The result is exactly skew-symmetric.
Matrix3 hat(const Vector3& v);

/// Inverse of hat. Throws std::invalid_argument when the symmetric part of
/// `S` exceeds 1e-9 in max-norm.
Vector3 vee(const Matrix3& S);

/**
 * Element of SO(3).
 *
 * Construction from an arbitrary matrix is validated (orthonormality and
 * determinant within 1e-12). Group products are not re-validated; drift from
 * long products is monitored by orthonormality_error() and removed with
 * project_to_so3().
 */
class Rotation {
public:
    Rotation() : m_(Matrix3::Identity()) {}

    static Rotation identity() { return Rotation(); }

    /// Throws std::invalid_argument unless ||M^T M - I||_F <= tol and
    /// |det M - 1| <= tol.
    static Rotation from_matrix(const Matrix3& m, double tol = 1e-12);

    const Matrix3& matrix() const { return m_; }
    double operator()(int r, int c) const { return m_(r, c); }

    Rotation transpose() const { return Rotation(m_.transpose(), Trusted{}); }
    Rotation inverse() const { return transpose(); }

    Rotation operator*(const Rotation& o) const { return Rotation(m_ * o.m_, Trusted{}); }
    Vector3 operator*(const Vector3& v) const { return m_ * v; }

    /// ||R^T R - I||_F
    double orthonormality_error() const;

private:
    struct Trusted {};
    Rotation(const Matrix3& m, Trusted) : m_(m) {}

    friend Rotation exp_so3(const Vector3&);
    friend Rotation project_to_so3(const Matrix3&);

    Matrix3 m_;
};

/// Rodrigues formula, with 4th-order Taylor coefficients below 1e-5 rad.
Rotation exp_so3(const Vector3& v);

/// Rotation vector with norm in [0, pi]. Near pi the axis is recovered from
/// the symmetric part with largest-pivot selection.
Vector3 log_so3(const Rotation& R);

/// Ad_R v = R v = vee(R hat(v) R^T). Maps a body-frame vector to the spatial
/// frame when R is the body attitude.
Vector3 adjoint(const Rotation& R, const Vector3& v);

/// Nearest rotation in Frobenius norm (polar factor). Throws
/// std::invalid_argument when det M <= 0 or M is singular.
Rotation project_to_so3(const Matrix3& m);

/// Angle of R1^T R2.
double geodesic_distance(const Rotation& R1, const Rotation& R2);

}  // namespace gyrobundle
