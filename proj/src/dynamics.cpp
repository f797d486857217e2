#include "gyrobundle/dynamics.hpp"

#include <stdexcept>

namespace gyrobundle {

namespace {

Vector3 shape_rates(const ShapeState& x) { return Vector3(0.0, x.beta_dot, x.gamma_dot); }

Vector3 solve_locked(double beta, const InertiaParams& p, const Vector3& rhs) {
    return locked_body_inertia(beta, p).llt().solve(rhs);
}

SystemState at_rest(const SystemState& s) {
    SystemState r = s;
    r.Omega_s.setZero();
    r.shape.beta_dot = 0.0;
    r.shape.gamma_dot = 0.0;
    return r;
}

Eigen::VectorXd flatten(const Matrix3& m) {
    return Eigen::Map<const Eigen::VectorXd>(m.data(), 9);
}

}  // namespace

StateDerivative::StateDerivative(const Rotation& R_s, const Vector3& body_rate,
                                 double beta_dot, double gamma_dot, const Accelerations& acc)
    : Rdot_s_(R_s.matrix() * hat(body_rate)),
      body_rate_(body_rate),
      beta_dot_(beta_dot),
      gamma_dot_(gamma_dot),
      acc_(acc) {}

// --- kinematic model --------------------------------------------------------

StateDerivative drift_field(const SystemState& s, const SpatialMomentum& mu,
                            const InertiaParams& p) {
    const Vector3 w = solve_locked(s.shape.beta, p, s.R_s.transpose() * mu.mu);
    return StateDerivative(s.R_s, w, 0.0, 0.0);
}

std::pair<StateDerivative, StateDerivative> control_fields(const SystemState& s,
                                                           const InertiaParams& p) {
    const Rotation Rb = gimbal_rotation(s.shape.beta);
    const Matrix3 Igr = gimbal_rotor_inertia(p);
    const Vector3 wb = -solve_locked(s.shape.beta, p, Rb * (Igr * unit_i2()));
    const Vector3 wg = -solve_locked(s.shape.beta, p, Rb * (Igr * unit_i3()));
    return {StateDerivative(s.R_s, wb, 1.0, 0.0), StateDerivative(s.R_s, wg, 0.0, 1.0)};
}

StateDerivative kinematic_rhs(const SystemState& s, const ControlRates& u,
                              const SpatialMomentum& mu, const InertiaParams& p) {
    const Rotation Rb = gimbal_rotation(s.shape.beta);
    const Vector3 internal = Rb * (gimbal_rotor_inertia(p) * Vector3(0.0, u.u_beta, u.u_gamma));
    const Vector3 w = solve_locked(s.shape.beta, p, s.R_s.transpose() * mu.mu - internal);
    return StateDerivative(s.R_s, w, u.u_beta, u.u_gamma);
}

// --- dynamic model ----------------------------------------------------------

Matrix3 commutator_U(const InertiaParams& p) {
    const Matrix3 Igr = gimbal_rotor_inertia(p);
    const Matrix3 i2 = hat(unit_i2());
    return i2 * Igr - Igr * i2;
}

CmgTorque cmg_external_torque(const SystemState& s, const Accelerations& acc,
                              const InertiaParams& p) {
    const Rotation Rb = gimbal_rotation(s.shape.beta);
    const Matrix3 Igr = gimbal_rotor_inertia(p);
    const Vector3 w = Rb.transpose() * s.Omega_s;
    const Vector3 xdot = shape_rates(s.shape);
    const Vector3 xddot(0.0, acc.beta_ddot, acc.gamma_ddot);
    const double bdot = s.shape.beta_dot;

    CmgTorque out;
    out.u1 = Igr * (w + xdot);
    out.u2 = commutator_U(p) * w * bdot + hat(unit_i2()) * (Igr * xdot) * bdot +
             Igr * (xddot + Rb.transpose() * acc.Omega_dot);
    out.tau_B = s.Omega_s.cross(Rb * out.u1) + Rb * out.u2;
    return out;
}

MotorTorques shape_generalized_forces(const SystemState& s, const Accelerations& acc,
                                      const InertiaParams& p) {
    const Rotation Rb = gimbal_rotation(s.shape.beta);
    const Vector3 tau_G = Rb.transpose() * cmg_external_torque(s, acc, p).tau_B;
    const Vector3 w = Rb.transpose() * s.Omega_s;
    const double frame_gyro =
        (p.gimbal_axis_inertia() - p.transverse_inertia()) * w.x() * (w.y() + s.shape.beta_dot);
    return {tau_G.y(), tau_G.z() - frame_gyro};
}

Vector5 balance_residual(const SystemState& s, const Accelerations& acc,
                         const MotorTorques& tau, const InertiaParams& p) {
    const Vector3& W = s.Omega_s;
    const MotorTorques q = shape_generalized_forces(s, acc, p);
    Vector5 r;
    r.head<3>() = p.I_sc * acc.Omega_dot + W.cross(p.I_sc * W) +
                  cmg_external_torque(s, acc, p).tau_B;
    r(3) = q.tau_gimbal - tau.tau_gimbal;
    r(4) = q.tau_wheel - tau.tau_wheel;
    return r;
}

DynamicSystem assemble_dynamic_system(const SystemState& s, const MotorTorques& tau,
                                      const InertiaParams& p) {
    const SystemState rest = at_rest(s);
    DynamicSystem sys;
    for (int k = 0; k < 5; ++k) {
        Accelerations unit;
        if (k < 3) {
            unit.Omega_dot(k) = 1.0;
        } else if (k == 3) {
            unit.beta_ddot = 1.0;
        } else {
            unit.gamma_ddot = 1.0;
        }
        sys.mass.col(k) = balance_residual(rest, unit, MotorTorques{}, p);
    }
    sys.rhs = -balance_residual(s, Accelerations{}, tau, p);
    return sys;
}

StateDerivative dynamic_rhs(const SystemState& s, const MotorTorques& tau,
                            const InertiaParams& p) {
    const DynamicSystem sys = assemble_dynamic_system(s, tau, p);
    Eigen::LLT<Matrix5> llt(sys.mass);
    if (llt.info() != Eigen::Success) {
        throw std::domain_error("dynamic_rhs: system matrix is not positive definite");
    }
    const Vector5 a = llt.solve(sys.rhs);
    Accelerations acc;
    acc.Omega_dot = a.head<3>();
    acc.beta_ddot = a(3);
    acc.gamma_ddot = a(4);
    return StateDerivative(s.R_s, s.Omega_s, s.shape.beta_dot, s.shape.gamma_dot, acc);
}

MotorSolution required_motor_torques(const SystemState& s, double beta_ddot,
                                     double gamma_ddot, const InertiaParams& p) {
    Accelerations acc;
    acc.beta_ddot = beta_ddot;
    acc.gamma_ddot = gamma_ddot;
    const Vector5 r0 = balance_residual(s, acc, MotorTorques{}, p);
    acc.Omega_dot = -solve_locked(s.shape.beta, p, r0.head<3>());
    return {shape_generalized_forces(s, acc, p), acc.Omega_dot};
}

// --- SRJ comparison ---------------------------------------------------------

SRJState to_srj(const SystemState& s) {
    const Rotation Rb = gimbal_rotation(s.shape.beta);
    SRJState out;
    out.g_t = Rb.matrix().col(0);
    out.g_g = Rb.matrix().col(1);
    out.g_s = Rb.matrix().col(2);
    const Vector3 w = Rb.transpose() * s.Omega_s;
    out.omega_t = w.x();
    out.omega_g = w.y();
    out.omega_s = w.z();
    out.gamma_srj = s.shape.beta;
    out.Omega_srj = s.shape.gamma_dot;
    return out;
}

SRJInertias to_srj(const InertiaParams& p) {
    return {p.spin_axis_inertia(), p.transverse_inertia(), p.gimbal_axis_inertia()};
}

Vector3 srj_rhs(const SystemState& s, double beta_ddot, double gamma_ddot,
                const InertiaParams& p) {
    const SRJState x = to_srj(s);
    const auto [Js, Jt, Jg] = to_srj(p);
    const double gdot = x.Omega_srj;       // wheel speed
    const double gimbal_rate = s.shape.beta_dot;

    const double spin = Js * (gamma_ddot + gimbal_rate * x.omega_t) -
                        (Jt - Jg) * x.omega_t * gimbal_rate;
    const double transverse = Js * (gdot + x.omega_s) * gimbal_rate -
                              (Jt + Jg) * x.omega_s * gimbal_rate + Js * gdot * x.omega_g;
    const double gimbal = Jg * beta_ddot - Js * gdot * x.omega_t;
    return -x.g_s * spin - x.g_t * transverse - x.g_g * gimbal;
}

Vector3 geometric_rhs(const SystemState& s, double beta_ddot, double gamma_ddot,
                      const InertiaParams& p) {
    const Rotation Rb = gimbal_rotation(s.shape.beta);
    const Matrix3 Igr = gimbal_rotor_inertia(p);
    const Vector3 xdot = shape_rates(s.shape);
    const Vector3 xddot(0.0, beta_ddot, gamma_ddot);
    const double bdot = s.shape.beta_dot;
    const Matrix3 lead = hat(s.Omega_s) + bdot * hat(unit_i2());
    return -lead * (Rb * (Igr * xdot)) -
           bdot * (Rb * (commutator_U(p) * (Rb.transpose() * s.Omega_s))) -
           Rb * (Igr * xddot);
}

std::vector<ExpansionTerm> expand_terms(const SystemState& s, double beta_ddot,
                                        double gamma_ddot, const InertiaParams& p) {
    const Rotation Rb = gimbal_rotation(s.shape.beta);
    const Matrix3 Igr = gimbal_rotor_inertia(p);
    const SRJState x = to_srj(s);
    const double a = p.transverse_inertia();
    const double b = p.gimbal_axis_inertia();
    const double c = p.spin_axis_inertia();
    const double bdot = s.shape.beta_dot;
    const double gdot = s.shape.gamma_dot;
    const Vector3 xdot = shape_rates(s.shape);
    const Vector3 xddot(0.0, beta_ddot, gamma_ddot);

    std::vector<ExpansionTerm> terms(5);

    terms[0].label = "R_beta I_gr xddot";
    terms[0].matrix_form = Rb * (Igr * xddot);
    terms[0].basis_form = x.g_g * b * beta_ddot + x.g_s * c * gamma_ddot;

    terms[1].label = "R_beta hat(i2) beta_dot I_gr xdot";
    terms[1].matrix_form = Rb.matrix() * hat(unit_i2()) * bdot * (Igr * xdot);
    terms[1].basis_form = x.g_t * c * gdot * bdot;

    terms[2].label = "hat(Omega_s) R_beta I_gr xdot";
    terms[2].matrix_form = s.Omega_s.cross(Rb * (Igr * xdot));
    terms[2].basis_form = x.g_s * (b * bdot * x.omega_t) + x.g_g * (-c * gdot * x.omega_t) +
                          x.g_t * (-b * bdot * x.omega_s + c * gdot * x.omega_g);

    Matrix3 displayed = Matrix3::Zero();
    displayed(0, 2) = c - a;
    displayed(2, 0) = c - a;
    terms[3].label = "U = hat(i2) I_gr - I_gr hat(i2)";
    terms[3].matrix_form = flatten(commutator_U(p));
    terms[3].basis_form = flatten(displayed);

    terms[4].label = "R_beta U R_beta^T Omega_s beta_dot";
    terms[4].matrix_form = Rb * (commutator_U(p) * (Rb.transpose() * s.Omega_s)) * bdot;
    terms[4].basis_form = (x.g_t * x.omega_s + x.g_s * x.omega_t) * ((c - a) * bdot);

    for (auto& t : terms) {
        t.residual = (t.matrix_form - t.basis_form).cwiseAbs().maxCoeff();
    }
    return terms;
}

}  // namespace gyrobundle
