#pragma once

/**
 * @file dynamics.hpp
 * @brief Kinematic (momentum level set) and dynamic (torque balance) models,
 *        CMG torque expansion, motor torque extraction and the comparison
 *        with the Schaub-Rao-Junkins (SRJ) equations of motion.
 *
 * Dynamic model. With zero external torque the body-frame momentum obeys
 *
 *   I_sc Omega_dot + Omega x I_sc Omega + tau_B = 0,
 *
 * where tau_B = hat(Omega) R_beta u1 + R_beta u2 is the body-frame rate of the
 * gimbal-rotor momentum. The two shape rows are the Euler-Lagrange equations
 * of the kinetic energy in beta and gamma with the motor torques as
 * generalized forces. The acceleration coefficients of these five rows are
 * exactly the metric matrix G(beta).
 */

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "gyrobundle/vscmg_model.hpp"

namespace gyrobundle {

/// Kinematic-level inputs: gimbal rate and wheel rate (rad/s).
struct ControlRates {
    double u_beta = 0.0;
    double u_gamma = 0.0;
};

/// Gimbal and wheel motor torques (N m).
struct MotorTorques {
    double tau_gimbal = 0.0;
    double tau_wheel = 0.0;
};

struct Accelerations {
    Vector3 Omega_dot = Vector3::Zero();
    double beta_ddot = 0.0;
    double gamma_ddot = 0.0;
};

/// Time derivative of a SystemState. Rdot_s = R_s hat(body_rate) holds by
/// construction; shape rates and accelerations are carried alongside.
class StateDerivative {
public:
    StateDerivative(const Rotation& R_s, const Vector3& body_rate, double beta_dot,
                    double gamma_dot, const Accelerations& acc = {});

    const Matrix3& Rdot_s() const { return Rdot_s_; }
    const Vector3& body_rate() const { return body_rate_; }
    double beta_dot() const { return beta_dot_; }
    double gamma_dot() const { return gamma_dot_; }
    const Vector3& Omega_dot() const { return acc_.Omega_dot; }
    double beta_ddot() const { return acc_.beta_ddot; }
    double gamma_ddot() const { return acc_.gamma_ddot; }
    const Accelerations& accelerations() const { return acc_; }

private:
    Matrix3 Rdot_s_;
    Vector3 body_rate_;
    double beta_dot_;
    double gamma_dot_;
    Accelerations acc_;
};

// ---------------------------------------------------------------------------
// Kinematic model  X_dot = f(X) + g_beta(X) u_beta + g_gamma(X) u_gamma
// ---------------------------------------------------------------------------

/// Attitude rate Ĩ(beta)^-1 R_s^T mu with frozen shape. State velocities are ignored.
StateDerivative drift_field(const SystemState& s, const SpatialMomentum& mu,
                            const InertiaParams& p);

/// (g_beta, g_gamma): attitude part -R_s hat(Ĩ^-1 R_beta I_gr i_k), unit shape rate.
std::pair<StateDerivative, StateDerivative> control_fields(const SystemState& s,
                                                           const InertiaParams& p);

StateDerivative kinematic_rhs(const SystemState& s, const ControlRates& u,
                              const SpatialMomentum& mu, const InertiaParams& p);

// ---------------------------------------------------------------------------
// Dynamic model
// ---------------------------------------------------------------------------

struct CmgTorque {
    Vector3 u1;     ///< gimbal-frame momentum of the gimbal-rotor unit
    Vector3 u2;     ///< gimbal-frame rate terms
    Vector3 tau_B;  ///< hat(Omega) R_beta u1 + R_beta u2, body frame
};

/// Body-frame rate of change of the gimbal-rotor angular momentum, i.e. the
/// torque acting on the unit from outside it. u2 includes I_gr R_beta^T Omega_dot.
CmgTorque cmg_external_torque(const SystemState& s, const Accelerations& acc,
                              const InertiaParams& p);

/**
 * Generalized shape forces needed to realize `acc` at state `s`.
 *
 * The gimbal entry is the second gimbal-frame component of tau_B. The wheel
 * entry is the third component minus the gyroscopic term
 * (Ig - It) omega_t (omega_g + beta_dot) that the gimbal frame itself absorbs;
 * the two coincide when It == Ig.
 */
MotorTorques shape_generalized_forces(const SystemState& s, const Accelerations& acc,
                                      const InertiaParams& p);

/// Five-row balance: rows 0-2 body momentum rate, rows 3-4 shape forces minus tau.
Vector5 balance_residual(const SystemState& s, const Accelerations& acc,
                         const MotorTorques& tau, const InertiaParams& p);

/// mass * (Omega_dot, beta_ddot, gamma_ddot) = rhs
struct DynamicSystem {
    Matrix5 mass;
    Vector5 rhs;
};

/// Assembles the linear system from balance_residual: the mass columns are the
/// residual responses to unit accelerations at zero velocity.
DynamicSystem assemble_dynamic_system(const SystemState& s, const MotorTorques& tau,
                                      const InertiaParams& p);

/// Solves the dynamic system. Throws std::domain_error if the mass matrix is
/// not positive definite.
StateDerivative dynamic_rhs(const SystemState& s, const MotorTorques& tau,
                            const InertiaParams& p);

struct MotorSolution {
    MotorTorques torques;
    Vector3 Omega_dot;
};

/// Inverse dynamics in the actuation channel: Omega_dot from the momentum rows
/// given (beta_ddot, gamma_ddot), then the motor torques from the shape rows.
MotorSolution required_motor_torques(const SystemState& s, double beta_ddot,
                                     double gamma_ddot, const InertiaParams& p);

// ---------------------------------------------------------------------------
// SRJ comparison
// ---------------------------------------------------------------------------

/// Gimbal-frame quantities in SRJ naming. R_beta = [g_t g_g g_s] and
/// R_beta^T Omega_s = (omega_t, omega_g, omega_s).
struct SRJState {
    double omega_s = 0.0;
    double omega_t = 0.0;
    double omega_g = 0.0;
    double gamma_srj = 0.0;  ///< SRJ gimbal angle (our beta)
    double Omega_srj = 0.0;  ///< SRJ wheel speed (our gamma_dot)
    Vector3 g_s, g_t, g_g;
};

SRJState to_srj(const SystemState& s);

/// SRJ lumped inertias: J_s = Jz+Is_g, J_t = Jx+It, J_g = Jx+Ig.
struct SRJInertias {
    double J_s, J_t, J_g;
};
SRJInertias to_srj(const InertiaParams& p);

/// Right-hand side of Ĩ Omega_dot + hat(Omega) Ĩ Omega in the SRJ g-basis form.
Vector3 srj_rhs(const SystemState& s, double beta_ddot, double gamma_ddot,
                const InertiaParams& p);

/// Same right-hand side in matrix form:
///   -[hat(Omega) + beta_dot hat(i2)] R_beta I_gr xdot
///   - beta_dot R_beta U R_beta^T Omega - R_beta I_gr xddot,   U = hat(i2) I_gr - I_gr hat(i2)
Vector3 geometric_rhs(const SystemState& s, double beta_ddot, double gamma_ddot,
                      const InertiaParams& p);

/// U = hat(i2) I_gr - I_gr hat(i2)
Matrix3 commutator_U(const InertiaParams& p);

struct ExpansionTerm {
    std::string label;
    Eigen::VectorXd matrix_form;  ///< evaluated as written with matrices
    Eigen::VectorXd basis_form;   ///< evaluated in the (g_t, g_g, g_s) basis
    double residual = 0.0;        ///< max-norm of the difference
};

/// The five term-by-term identities linking the matrix and g-basis forms.
std::vector<ExpansionTerm> expand_terms(const SystemState& s, double beta_ddot,
                                        double gamma_ddot, const InertiaParams& p);

}  // namespace gyrobundle
