#include "gyrobundle/vscmg_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace gyrobundle {

void validate(const InertiaParams& p) {
    const std::pair<const char*, double> scalars[] = {
        {"Jx", p.Jx}, {"Jz", p.Jz}, {"It", p.It}, {"Ig", p.Ig}, {"Is_g", p.Is_g}};
    for (const auto& [name, value] : scalars) {
        if (!(std::isfinite(value) && value > 0.0)) {
            throw std::invalid_argument(std::string("inertia parameter ") + name +
                                        " must be positive");
        }
    }
    if (!p.I_sc.allFinite()) {
        throw std::invalid_argument("spacecraft inertia has non-finite entries");
    }
    const double scale = std::max(p.I_sc.cwiseAbs().maxCoeff(), 1.0);
    if ((p.I_sc - p.I_sc.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("spacecraft inertia not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix3> eig(p.I_sc, Eigen::EigenvaluesOnly);
    if (!(eig.eigenvalues().minCoeff() > 0.0)) {
        throw std::invalid_argument("spacecraft inertia not positive definite");
    }
}

Matrix3 gimbal_rotor_inertia(const InertiaParams& p) {
    return Vector3(p.transverse_inertia(), p.gimbal_axis_inertia(), p.spin_axis_inertia())
        .asDiagonal();
}

Rotation gimbal_rotation(double beta) { return exp_so3(beta * unit_i2()); }

Vector3 spin_axis(double beta) { return gimbal_rotation(beta) * unit_i3(); }

Matrix3 reflected_inertia(double beta, const InertiaParams& p) {
    const Matrix3& Rb = gimbal_rotation(beta).matrix();
    Matrix3 out = Rb * gimbal_rotor_inertia(p) * Rb.transpose();
    return 0.5 * (out + out.transpose());
}

Matrix3 locked_body_inertia(double beta, const InertiaParams& p) {
    return p.I_sc + reflected_inertia(beta, p);
}

Matrix5 metric_matrix(double beta, const InertiaParams& p) {
    const double b = p.gimbal_axis_inertia();
    const double c = p.spin_axis_inertia();
    const Vector3 g = unit_i2();
    const Vector3 s = spin_axis(beta);

    Matrix5 G = Matrix5::Zero();
    G.topLeftCorner<3, 3>() = locked_body_inertia(beta, p);
    G.block<3, 1>(0, 3) = b * g;
    G.block<3, 1>(0, 4) = c * s;
    G.block<1, 3>(3, 0) = b * g.transpose();
    G.block<1, 3>(4, 0) = c * s.transpose();
    G(3, 3) = b;
    G(4, 4) = c;
    return G;
}

Vector5 velocity_coordinates(const SystemState& s) {
    Vector5 v;
    v << s.Omega_s, s.shape.beta_dot, s.shape.gamma_dot;
    return v;
}

double kinetic_energy(const SystemState& s, const InertiaParams& p) {
    const Rotation Rb = gimbal_rotation(s.shape.beta);
    const Vector3 w = Rb.transpose() * s.Omega_s +
                      Vector3(0.0, s.shape.beta_dot, s.shape.gamma_dot);
    return 0.5 * s.Omega_s.dot(p.I_sc * s.Omega_s) +
           0.5 * w.dot(gimbal_rotor_inertia(p) * w);
}

Vector3 body_momentum(const SystemState& s, const InertiaParams& p) {
    const Rotation Rb = gimbal_rotation(s.shape.beta);
    const Vector3 rates(0.0, s.shape.beta_dot, s.shape.gamma_dot);
    return locked_body_inertia(s.shape.beta, p) * s.Omega_s +
           Rb * (gimbal_rotor_inertia(p) * rates);
}

SpatialMomentum momentum_map(const SystemState& s, const InertiaParams& p) {
    return {adjoint(s.R_s, body_momentum(s, p))};
}

Matrix3 locked_inertia_tensor(const SystemState& s, const InertiaParams& p) {
    const Matrix3& R = s.R_s.matrix();
    Matrix3 out = R * locked_body_inertia(s.shape.beta, p) * R.transpose();
    return 0.5 * (out + out.transpose());
}

}  // namespace gyrobundle
