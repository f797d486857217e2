#pragma once

/**
 * @file vscmg_model.hpp
 * @brief Spacecraft carrying one variable-speed control moment gyroscope.
 *
 * Configuration space is SO(3) x S^1 x S^1 with coordinates (R_s, beta, gamma).
 * The gimbal frame is related to the spacecraft body frame by
 * R_beta = exp(beta * hat(i2)): the gimbal axis is i2 and the rotor spin axis
 * is i3 in the gimbal frame.
 *
 * Velocities are left-trivialized: Omega_s is the spacecraft angular velocity
 * in the body frame. The kinetic energy is 1/2 v^T G(beta) v with
 * v = (Omega_s, beta_dot, gamma_dot) and G the 5x5 metric below; the momentum
 * map is the spatial angular momentum mu = R_s h, with h the body momentum.
 */

#include "gyrobundle/liegroup.hpp"

namespace gyrobundle {

using Matrix5 = Eigen::Matrix<double, 5, 5>;
using Vector5 = Eigen::Matrix<double, 5, 1>;

/// Principal moments of rotor and gimbal plus the bare spacecraft inertia (kg m^2).
struct InertiaParams {
    double Jx = 0.0;    ///< rotor transverse moment
    double Jz = 0.0;    ///< rotor spin moment
    double It = 0.0;    ///< gimbal frame, transverse axis
    double Ig = 0.0;    ///< gimbal frame, gimbal axis
    double Is_g = 0.0;  ///< gimbal frame, spin axis
    Matrix3 I_sc = Matrix3::Identity();

    /// Jx + It, Jx + Ig, Jz + Is_g: diagonal of the combined gimbal-rotor inertia.
    double transverse_inertia() const { return Jx + It; }
    double gimbal_axis_inertia() const { return Jx + Ig; }
    double spin_axis_inertia() const { return Jz + Is_g; }

    bool operator==(const InertiaParams&) const = default;
};

/// Throws std::invalid_argument when a scalar moment is not positive or I_sc
/// is not symmetric positive definite.
void validate(const InertiaParams& p);

/// Gimbal and rotor angles with their rates. Angles are never wrapped here.
struct ShapeState {
    double beta = 0.0;
    double gamma = 0.0;
    double beta_dot = 0.0;
    double gamma_dot = 0.0;

    bool operator==(const ShapeState&) const = default;
};

struct SystemState {
    Rotation R_s;
    ShapeState shape;
    Vector3 Omega_s = Vector3::Zero();  ///< body frame, rad/s
};

/// Total spatial angular momentum (kg m^2/s).
struct SpatialMomentum {
    Vector3 mu = Vector3::Zero();
};

/// diag(Jx + It, Jx + Ig, Jz + Is_g)
Matrix3 gimbal_rotor_inertia(const InertiaParams& p);

/// R_beta = exp(beta * hat(i2)); columns are the transverse, gimbal and spin axes.
Rotation gimbal_rotation(double beta);

/// Spin axis R_beta i3 in the body frame. The gimbal axis R_beta i2 = i2 is fixed.
Vector3 spin_axis(double beta);

/// R_beta I_gr R_beta^T
Matrix3 reflected_inertia(double beta, const InertiaParams& p);

/// Body-frame locked inertia I_sc + R_beta I_gr R_beta^T.
Matrix3 locked_body_inertia(double beta, const InertiaParams& p);

/**
 * Kinetic-energy metric on (Omega_s, beta_dot, gamma_dot):
 *
 *   [ Ĩ(beta)              (Jx+Ig) i2   (Jz+Is_g) s_beta ]
 *   [ (Jx+Ig) i2^T          Jx+Ig        0               ]
 *   [ (Jz+Is_g) s_beta^T    0            Jz+Is_g         ]
 *
 * This is the un-halved mass matrix: KE = 1/2 v^T G v.
 */
Matrix5 metric_matrix(double beta, const InertiaParams& p);

/// (Omega_s, beta_dot, gamma_dot) stacked.
Vector5 velocity_coordinates(const SystemState& s);

double kinetic_energy(const SystemState& s, const InertiaParams& p);

/// mu = R_s [Ĩ(beta) Omega_s + R_beta I_gr (0, beta_dot, gamma_dot)]
SpatialMomentum momentum_map(const SystemState& s, const InertiaParams& p);

/// R_s^T mu; invariant under left rotation of R_s.
Vector3 body_momentum(const SystemState& s, const InertiaParams& p);

/// Spatial locked inertia R_s Ĩ(beta) R_s^T.
Matrix3 locked_inertia_tensor(const SystemState& s, const InertiaParams& p);

}  // namespace gyrobundle
