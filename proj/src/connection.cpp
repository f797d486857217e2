#include "gyrobundle/connection.hpp"

#include <stdexcept>

namespace gyrobundle {

namespace {

/// [(Jx+Ig) i2, (Jz+Is_g) s_beta]: body momentum per unit shape rate.
Eigen::Matrix<double, 3, 2> shape_coupling(double beta, const InertiaParams& p) {
    Eigen::Matrix<double, 3, 2> B;
    B.col(0) = p.gimbal_axis_inertia() * unit_i2();
    B.col(1) = p.spin_axis_inertia() * spin_axis(beta);
    return B;
}

}  // namespace

Vector5 TangentVector::coords() const {
    Vector5 v;
    v << omega_local, beta_dot, gamma_dot;
    return v;
}

TangentVector TangentVector::from_coords(const Vector5& v) {
    return {v.head<3>(), v(3), v(4)};
}

TangentVector tangent_of(const SystemState& s) {
    return {s.Omega_s, s.shape.beta_dot, s.shape.gamma_dot};
}

SystemState with_velocity(const SystemState& q, const TangentVector& v) {
    SystemState s = q;
    s.Omega_s = v.omega_local;
    s.shape.beta_dot = v.beta_dot;
    s.shape.gamma_dot = v.gamma_dot;
    return s;
}

double metric_inner(double beta, const TangentVector& v, const TangentVector& w,
                    const InertiaParams& p) {
    return v.coords().dot(metric_matrix(beta, p) * w.coords());
}

Vector3 mechanical_connection(const SystemState& q, const TangentVector& v,
                              const InertiaParams& p) {
    const SystemState s = with_velocity(q, v);
    return locked_inertia_tensor(s, p).llt().solve(momentum_map(s, p).mu);
}

LocalConnection local_connection_form(double beta, const InertiaParams& p) {
    LocalConnection A;
    A.leftCols<3>().setIdentity();
    A.rightCols<2>() = locked_body_inertia(beta, p).llt().solve(shape_coupling(beta, p));
    return A;
}

TangentVector horizontal_lift(double beta, double beta_dot, double gamma_dot,
                              const InertiaParams& p) {
    const Vector3 w = -locked_body_inertia(beta, p).llt().solve(
        shape_coupling(beta, p) * Eigen::Vector2d(beta_dot, gamma_dot));
    return {w, beta_dot, gamma_dot};
}

std::pair<TangentVector, TangentVector> split(const SystemState& q, const TangentVector& v,
                                              const InertiaParams& p) {
    const TangentVector horizontal = horizontal_lift(q.shape.beta, v.beta_dot, v.gamma_dot, p);
    const TangentVector vertical{local_connection_form(q.shape.beta, p) * v.coords(), 0.0, 0.0};
    return {vertical, horizontal};
}

Vector3 reconstruction_rate(const Rotation& R, const ShapeState& x, const SpatialMomentum& mu,
                            const InertiaParams& p) {
    const Vector3 drift = locked_body_inertia(x.beta, p).llt().solve(R.transpose() * mu.mu);
    return drift + horizontal_lift(x.beta, x.beta_dot, x.gamma_dot, p).omega_local;
}

std::vector<Rotation> reconstruct(const ShapePath& path, const SpatialMomentum& mu,
                                  const Rotation& R0, const InertiaParams& p, Scheme scheme) {
    if (!path.uniform()) {
        throw std::invalid_argument("reconstruct: shape path must be uniformly sampled");
    }
    const double t0 = path.t_begin();
    IntegratorConfig cfg;
    cfg.dt = path.step();
    cfg.steps = static_cast<int>(path.samples().size()) - 1;
    cfg.scheme = scheme;
    cfg.reproject_every = 100;

    SystemState initial;
    initial.R_s = R0;
    ReconstructDriver driver{[&path, t0](double t) { return path.at(t0 + t); }, mu};
    const Trajectory traj = simulate(initial, driver, cfg, p);

    std::vector<Rotation> out;
    out.reserve(traj.size());
    for (const auto& s : traj.states) {
        out.push_back(s.R_s);
    }
    return out;
}

Vector3 holonomy(const ShapePath& loop, const InertiaParams& p) {
    if (!loop.closed(1e-12)) {
        throw std::invalid_argument("holonomy: shape path is not closed");
    }
    const std::vector<Rotation> R = reconstruct(loop, SpatialMomentum{}, Rotation::identity(), p);
    return log_so3(R.front().transpose() * R.back());
}

}  // namespace gyrobundle
