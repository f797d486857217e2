#include "gyrobundle/sampling.hpp"

#include <cmath>

namespace gyrobundle {

double RandomModel::uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
}

Vector3 RandomModel::vector(double lo, double hi) {
    const double x = uniform(lo, hi);
    const double y = uniform(lo, hi);
    const double z = uniform(lo, hi);
    return {x, y, z};
}

Vector3 RandomModel::unit_vector() {
    std::normal_distribution<double> n(0.0, 1.0);
    Vector3 v;
    do {
        const double x = n(rng_);
        const double y = n(rng_);
        const double z = n(rng_);
        v = Vector3(x, y, z);
    } while (v.norm() < 1e-6);
    return v.normalized();
}

Rotation RandomModel::rotation() {
    std::normal_distribution<double> n(0.0, 1.0);
    const double w = n(rng_);
    const double x = n(rng_);
    const double y = n(rng_);
    const double z = n(rng_);
    Eigen::Quaterniond q(w, x, y, z);
    q.normalize();
    return project_to_so3(q.toRotationMatrix());
}

Matrix3 RandomModel::spd(double lo, double hi) {
    const Matrix3& Q = rotation().matrix();
    const Vector3 e = vector(lo, hi);
    Matrix3 m = Q * e.asDiagonal() * Q.transpose();
    return 0.5 * (m + m.transpose());
}

InertiaParams RandomModel::params() {
    InertiaParams p;
    p.Jx = uniform(0.1, 2.0);
    p.Jz = uniform(0.1, 2.0);
    p.It = uniform(0.1, 2.0);
    p.Ig = uniform(0.1, 2.0);
    p.Is_g = uniform(0.1, 2.0);
    p.I_sc = spd(5.0, 20.0);
    return p;
}

SystemState RandomModel::state(double speed) {
    SystemState s;
    s.R_s = rotation();
    s.shape.beta = uniform(-M_PI, M_PI);
    s.shape.gamma = uniform(-M_PI, M_PI);
    std::normal_distribution<double> n(0.0, 1.0);
    Vector5 v;
    for (int i = 0; i < 5; ++i) {
        v(i) = n(rng_);
    }
    v *= speed / v.norm();
    s.Omega_s = v.head<3>();
    s.shape.beta_dot = v(3);
    s.shape.gamma_dot = v(4);
    return s;
}

}  // namespace gyrobundle
