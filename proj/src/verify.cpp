#include "gyrobundle/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "gyrobundle/connection.hpp"
#include "gyrobundle/dynamics.hpp"
#include "gyrobundle/sampling.hpp"

namespace gyrobundle {

namespace {

/// d G(beta) / d beta
Matrix5 metric_derivative(double beta, const InertiaParams& p) {
    const Matrix3& Rb = gimbal_rotation(beta).matrix();
    const Vector3 g_t = Rb.col(0);
    const double c = p.spin_axis_inertia();
    Matrix5 d = Matrix5::Zero();
    d.topLeftCorner<3, 3>() = Rb * commutator_U(p) * Rb.transpose();
    d.block<3, 1>(0, 4) = c * g_t;
    d.block<1, 3>(4, 0) = c * g_t.transpose();
    return d;
}

struct Check {
    CheckResult result;
    std::function<double(RandomModel&, const InertiaParams&, const SystemState&)> residual;
};

}  // namespace

std::vector<CheckResult> run_verification(std::uint64_t seed, int trials) {
    std::vector<Check> checks;
    auto add = [&](std::string name, double tol, bool connection, auto fn) {
        checks.push_back({CheckResult{std::move(name), 0.0, tol, connection}, fn});
    };

    add("hat_vee_roundtrip", 1e-15, false,
        [](RandomModel& r, const InertiaParams&, const SystemState&) {
            const Vector3 v = r.vector(-10, 10);
            const Vector3 w = r.vector(-10, 10);
            return std::max((vee(hat(v)) - v).cwiseAbs().maxCoeff(),
                            (hat(v) * w - v.cross(w)).cwiseAbs().maxCoeff() / 100.0);
        });
    add("exp_log_roundtrip", 1e-10, false,
        [](RandomModel& r, const InertiaParams&, const SystemState&) {
            const Rotation R = r.rotation();
            return (exp_so3(log_so3(R)).matrix() - R.matrix()).cwiseAbs().maxCoeff();
        });
    add("exp_orthonormality", 1e-13, false,
        [](RandomModel& r, const InertiaParams&, const SystemState&) {
            const Rotation R = exp_so3(r.vector(-4, 4));
            return std::max(R.orthonormality_error(), std::abs(R.matrix().determinant() - 1.0));
        });
    add("adjoint_conjugation", 1e-13, false,
        [](RandomModel& r, const InertiaParams&, const SystemState& s) {
            const Vector3 v = r.vector(-1, 1);
            const Matrix3& R = s.R_s.matrix();
            return (vee(R * hat(v) * R.transpose()) - adjoint(s.R_s, v)).cwiseAbs().maxCoeff();
        });
    add("reflected_inertia_spectrum", 1e-10, false,
        [](RandomModel&, const InertiaParams& p, const SystemState& s) {
            Eigen::SelfAdjointEigenSolver<Matrix3> e(reflected_inertia(s.shape.beta, p));
            Vector3 want(p.transverse_inertia(), p.gimbal_axis_inertia(), p.spin_axis_inertia());
            std::sort(want.data(), want.data() + 3);
            return (e.eigenvalues() - want).cwiseAbs().maxCoeff();
        });
    add("kinetic_energy_left_invariance", 1e-12, false,
        [](RandomModel& r, const InertiaParams& p, const SystemState& s) {
            SystemState m = s;
            m.R_s = r.rotation() * s.R_s;
            return std::abs(kinetic_energy(m, p) - kinetic_energy(s, p));
        });
    add("momentum_equivariance", 1e-13, false,
        [](RandomModel& r, const InertiaParams& p, const SystemState& s) {
            const Rotation M = r.rotation();
            SystemState m = s;
            m.R_s = M * s.R_s;
            return (momentum_map(m, p).mu - M * momentum_map(s, p).mu).cwiseAbs().maxCoeff();
        });
    add("metric_symmetry", 1e-15, false,
        [](RandomModel&, const InertiaParams& p, const SystemState& s) {
            const Matrix5 G = metric_matrix(s.shape.beta, p);
            return (G - G.transpose()).cwiseAbs().maxCoeff();
        });
    add("metric_quadratic_form", 1e-12, false,
        [](RandomModel&, const InertiaParams& p, const SystemState& s) {
            const Vector5 v = velocity_coordinates(s);
            return std::abs(v.dot(metric_matrix(s.shape.beta, p) * v) - 2.0 * kinetic_energy(s, p));
        });
    add("mass_matrix_identification", 1e-13, false,
        [](RandomModel&, const InertiaParams& p, const SystemState& s) {
            const DynamicSystem sys = assemble_dynamic_system(s, MotorTorques{}, p);
            return (sys.mass - metric_matrix(s.shape.beta, p)).cwiseAbs().maxCoeff();
        });
    add("srj_equivalence", 1e-10, false,
        [](RandomModel& r, const InertiaParams& p, const SystemState& s) {
            const MotorTorques tau{r.uniform(-1, 1), r.uniform(-1, 1)};
            const StateDerivative d = dynamic_rhs(s, tau, p);
            const Matrix3 I = locked_body_inertia(s.shape.beta, p);
            const Vector3 lhs = I * d.Omega_dot() + s.Omega_s.cross(I * s.Omega_s);
            return (lhs - srj_rhs(s, d.beta_ddot(), d.gamma_ddot(), p)).cwiseAbs().maxCoeff();
        });
    add("expansion_terms", 1e-13, false,
        [](RandomModel& r, const InertiaParams& p, const SystemState& s) {
            double worst = 0.0;
            for (const auto& t : expand_terms(s, r.uniform(-1, 1), r.uniform(-1, 1), p)) {
                worst = std::max(worst, t.residual);
            }
            return worst;
        });
    add("momentum_rate_zero", 1e-12, false,
        [](RandomModel& r, const InertiaParams& p, const SystemState& s) {
            const MotorTorques tau{r.uniform(-1, 1), r.uniform(-1, 1)};
            const StateDerivative d = dynamic_rhs(s, tau, p);
            const Vector5 v = velocity_coordinates(s);
            Vector5 a;
            a << d.Omega_dot(), d.beta_ddot(), d.gamma_ddot();
            const Vector5 G = metric_matrix(s.shape.beta, p) * v;
            const Vector3 hdot = (metric_matrix(s.shape.beta, p) * a +
                                  metric_derivative(s.shape.beta, p) * v * s.shape.beta_dot)
                                     .head<3>();
            return (hdot + s.Omega_s.cross(G.head<3>())).cwiseAbs().maxCoeff();
        });
    add("power_balance", 1e-10, false,
        [](RandomModel& r, const InertiaParams& p, const SystemState& s) {
            const MotorTorques tau{r.uniform(-1, 1), r.uniform(-1, 1)};
            const StateDerivative d = dynamic_rhs(s, tau, p);
            const Vector5 v = velocity_coordinates(s);
            Vector5 a;
            a << d.Omega_dot(), d.beta_ddot(), d.gamma_ddot();
            const double dke = v.dot(metric_matrix(s.shape.beta, p) * a) +
                               0.5 * s.shape.beta_dot *
                                   v.dot(metric_derivative(s.shape.beta, p) * v);
            return std::abs(dke - (tau.tau_gimbal * s.shape.beta_dot +
                                   tau.tau_wheel * s.shape.gamma_dot));
        });
    add("motor_torque_roundtrip", 1e-11, false,
        [](RandomModel& r, const InertiaParams& p, const SystemState& s) {
            const double bdd = r.uniform(-1, 1);
            const double gdd = r.uniform(-1, 1);
            const MotorSolution m = required_motor_torques(s, bdd, gdd, p);
            const StateDerivative d = dynamic_rhs(s, m.torques, p);
            return std::max({std::abs(d.beta_ddot() - bdd), std::abs(d.gamma_ddot() - gdd),
                             (d.Omega_dot() - m.Omega_dot).cwiseAbs().maxCoeff()});
        });
    add("kinematic_momentum", 1e-12, false,
        [](RandomModel& r, const InertiaParams& p, const SystemState& s) {
            const SpatialMomentum mu{r.vector(-5, 5)};
            const ControlRates u{r.uniform(-1, 1), r.uniform(-10, 10)};
            SystemState k = s;
            k.Omega_s = kinematic_rhs(s, u, mu, p).body_rate();
            k.shape.beta_dot = u.u_beta;
            k.shape.gamma_dot = u.u_gamma;
            return (momentum_map(k, p).mu - mu.mu).cwiseAbs().maxCoeff();
        });
    add("connection_vertical_axiom", 1e-12, true,
        [](RandomModel& r, const InertiaParams& p, const SystemState& s) {
            const Vector3 xi = r.vector(-1, 1);
            const TangentVector v{s.R_s.transpose() * xi, 0.0, 0.0};
            return (mechanical_connection(s, v, p) - xi).cwiseAbs().maxCoeff();
        });
    add("connection_equivariance", 1e-12, true,
        [](RandomModel& r, const InertiaParams& p, const SystemState& s) {
            const Rotation M = r.rotation();
            SystemState m = s;
            m.R_s = M * s.R_s;
            const TangentVector v = tangent_of(s);
            return (mechanical_connection(m, v, p) - M * mechanical_connection(s, v, p))
                .cwiseAbs()
                .maxCoeff();
        });
    add("horizontal_momentum", 1e-12, true,
        [](RandomModel&, const InertiaParams& p, const SystemState& s) {
            const TangentVector h =
                horizontal_lift(s.shape.beta, s.shape.beta_dot, s.shape.gamma_dot, p);
            return momentum_map(with_velocity(s, h), p).mu.norm();
        });
    add("split_orthogonality", 1e-12, true,
        [](RandomModel&, const InertiaParams& p, const SystemState& s) {
            const auto [ver, hor] = split(s, tangent_of(s), p);
            const double sum_err = (ver.coords() + hor.coords() - tangent_of(s).coords())
                                       .cwiseAbs()
                                       .maxCoeff();
            return std::max(std::abs(metric_inner(s.shape.beta, ver, hor, p)), sum_err);
        });
    add("local_form_matches_connection", 1e-12, true,
        [](RandomModel&, const InertiaParams& p, const SystemState& s) {
            SystemState q = s;
            q.R_s = Rotation::identity();
            const TangentVector v = tangent_of(s);
            return (mechanical_connection(q, v, p) - local_connection_form(s.shape.beta, p) *
                                                         v.coords())
                .cwiseAbs()
                .maxCoeff();
        });
    add("control_fields_horizontal", 1e-12, true,
        [](RandomModel&, const InertiaParams& p, const SystemState& s) {
            const auto [gb, gg] = control_fields(s, p);
            SystemState b = s;
            b.Omega_s = gb.body_rate();
            b.shape.beta_dot = 1.0;
            b.shape.gamma_dot = 0.0;
            SystemState g = s;
            g.Omega_s = gg.body_rate();
            g.shape.beta_dot = 0.0;
            g.shape.gamma_dot = 1.0;
            return std::max(momentum_map(b, p).mu.norm(), momentum_map(g, p).mu.norm());
        });

    RandomModel rng(seed);
    for (int k = 0; k < trials; ++k) {
        const InertiaParams p = rng.params();
        const SystemState s = rng.state(1.0);
        for (auto& c : checks) {
            double r = c.residual(rng, p, s);
            if (!std::isfinite(r)) {
                r = std::numeric_limits<double>::infinity();
            }
            c.result.max_residual = std::max(c.result.max_residual, r);
        }
    }
    std::vector<CheckResult> out;
    out.reserve(checks.size());
    for (const auto& c : checks) {
        out.push_back(c.result);
    }
    return out;
}

}  // namespace gyrobundle
