#include "gyrobundle/liegroup.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gyrobundle {

namespace {
constexpr double kSmallAngle = 1e-5;
// Below this distance from pi the sin(theta) division loses too many digits.
constexpr double kNearPi = 1e-3;
}  // namespace

Matrix3 hat(const Vector3& v) {
    Matrix3 S;
    S << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
        -v.y(), v.x(), 0.0;
    return S;
}

Vector3 vee(const Matrix3& S) {
    const double sym = (S + S.transpose()).cwiseAbs().maxCoeff() * 0.5;
    if (!(sym <= 1e-9)) {
        throw std::invalid_argument("vee: matrix is not skew-symmetric (symmetric part " +
                                    std::to_string(sym) + ")");
    }
    return Vector3(0.5 * (S(2, 1) - S(1, 2)), 0.5 * (S(0, 2) - S(2, 0)),
                   0.5 * (S(1, 0) - S(0, 1)));
}

Rotation Rotation::from_matrix(const Matrix3& m, double tol) {
    if (!m.allFinite()) {
        throw std::invalid_argument("rotation matrix has non-finite entries");
    }
    const double ortho = (m.transpose() * m - Matrix3::Identity()).norm();
    const double det = m.determinant();
    if (ortho > tol || std::abs(det - 1.0) > tol) {
        throw std::invalid_argument("matrix is not a rotation (orthonormality error " +
                                    std::to_string(ortho) + ", det " + std::to_string(det) +
                                    ")");
    }
    return Rotation(m, Trusted{});
}

double Rotation::orthonormality_error() const {
    return (m_.transpose() * m_ - Matrix3::Identity()).norm();
}

Rotation exp_so3(const Vector3& v) {
    const double theta2 = v.squaredNorm();
    const double theta = std::sqrt(theta2);
    double a = 0.0;  // sin(theta)/theta
    double b = 0.0;  // (1 - cos(theta))/theta^2
    if (theta < kSmallAngle) {
        a = 1.0 - theta2 / 6.0 + theta2 * theta2 / 120.0;
        b = 0.5 - theta2 / 24.0 + theta2 * theta2 / 720.0;
    } else {
        a = std::sin(theta) / theta;
        b = (1.0 - std::cos(theta)) / theta2;
    }
    const Matrix3 K = hat(v);
    return Rotation(Matrix3::Identity() + a * K + b * K * K, Rotation::Trusted{});
}

Vector3 log_so3(const Rotation& R) {
    const Matrix3& m = R.matrix();
    const Vector3 axial(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1));
    const double cos_theta = std::clamp(0.5 * (m.trace() - 1.0), -1.0, 1.0);
    const double theta = std::atan2(0.5 * axial.norm(), cos_theta);

    if (theta < kSmallAngle) {
        // theta / (2 sin theta) ~ 1/2 + theta^2/12 + 7 theta^4/720
        const double t2 = theta * theta;
        return (0.5 + t2 / 12.0 + 7.0 * t2 * t2 / 720.0) * axial;
    }
    if (theta > M_PI - kNearPi) {
        // (R + R^T)/2 = cos(theta) I + (1 - cos(theta)) n n^T
        const Matrix3 B = (0.5 * (m + m.transpose()) - cos_theta * Matrix3::Identity()) /
                          (1.0 - cos_theta);
        int k = 0;
        B.diagonal().maxCoeff(&k);
        Vector3 n = B.col(k) / std::sqrt(B(k, k));
        n.normalize();
        if (n.dot(axial) < 0.0) {
            n = -n;
        }
        return theta * n;
    }
    return (theta / (2.0 * std::sin(theta))) * axial;
}

Vector3 adjoint(const Rotation& R, const Vector3& v) { return R.matrix() * v; }

Rotation project_to_so3(const Matrix3& m) {
    if (!m.allFinite()) {
        throw std::invalid_argument("project_to_so3: non-finite matrix");
    }
    const double det = m.determinant();
    if (!(det > 0.0)) {
        throw std::invalid_argument("project_to_so3: determinant must be positive (got " +
                                    std::to_string(det) + ")");
    }
    Eigen::JacobiSVD<Matrix3> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues().minCoeff() <= 1e-14 * svd.singularValues().maxCoeff()) {
        throw std::invalid_argument("project_to_so3: matrix is singular");
    }
    Matrix3 q = svd.matrixU() * svd.matrixV().transpose();
    // A couple of Newton polar iterations clean the SVD round-off.
    for (int i = 0; i < 2; ++i) {
        q = 0.5 * (q + q.inverse().transpose());
    }
    return Rotation(q, Rotation::Trusted{});
}

double geodesic_distance(const Rotation& R1, const Rotation& R2) {
    return log_so3(R1.transpose() * R2).norm();
}

}  // namespace gyrobundle
