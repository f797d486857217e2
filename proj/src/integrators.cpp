#include "gyrobundle/integrators.hpp"

#include <cmath>
#include <sstream>

#include "gyrobundle/connection.hpp"

namespace gyrobundle {

namespace {

constexpr double kAbortOrthonormality = 1e-6;

Vector3 dexpinv(const Vector3& theta, const Vector3& w) {
    const Vector3 tw = theta.cross(w);
    return w + 0.5 * tw + (1.0 / 12.0) * theta.cross(tw);
}

GroupPoint pack(const SystemState& s) {
    GroupPoint x{s.R_s, Eigen::VectorXd(7)};
    x.y << s.shape.beta, s.shape.gamma, s.Omega_s, s.shape.beta_dot, s.shape.gamma_dot;
    return x;
}

SystemState unpack(const GroupPoint& x) {
    SystemState s;
    s.R_s = x.R;
    s.shape = {x.y(0), x.y(1), x.y(5), x.y(6)};
    s.Omega_s = x.y.segment<3>(2);
    return s;
}

GroupVelocity pack(const StateDerivative& d) {
    GroupVelocity v{d.body_rate(), Eigen::VectorXd(7)};
    v.y_dot << d.beta_dot(), d.gamma_dot(), d.Omega_dot(), d.beta_ddot(), d.gamma_ddot();
    return v;
}

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::LieRk4 ? "lie_rk4" : "lie_euler"; }

Scheme parse_scheme(std::string_view name) {
    if (name == "lie_rk4") {
        return Scheme::LieRk4;
    }
    if (name == "lie_euler") {
        return Scheme::LieEuler;
    }
    throw std::invalid_argument("unknown integrator scheme '" + std::string(name) + "'");
}

void validate(const IntegratorConfig& cfg) {
    if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) {
        throw std::invalid_argument("integrator dt must be positive");
    }
    if (cfg.steps < 1) {
        throw std::invalid_argument("integrator steps must be at least 1");
    }
    if (cfg.reproject_every < 1) {
        throw std::invalid_argument("integrator reproject_every must be at least 1");
    }
}

GroupPoint step_lie_rk4(const GroupRhs& rhs, double t, const GroupPoint& x, double dt) {
    const GroupVelocity v1 = rhs(t, x);
    const Vector3 k1 = v1.body_rate;

    const Vector3 th2 = 0.5 * dt * k1;
    const GroupVelocity v2 = rhs(t + 0.5 * dt, {x.R * exp_so3(th2), x.y + 0.5 * dt * v1.y_dot});
    const Vector3 k2 = dexpinv(th2, v2.body_rate);

    const Vector3 th3 = 0.5 * dt * k2;
    const GroupVelocity v3 = rhs(t + 0.5 * dt, {x.R * exp_so3(th3), x.y + 0.5 * dt * v2.y_dot});
    const Vector3 k3 = dexpinv(th3, v3.body_rate);

    const Vector3 th4 = dt * k3;
    const GroupVelocity v4 = rhs(t + dt, {x.R * exp_so3(th4), x.y + dt * v3.y_dot});
    const Vector3 k4 = dexpinv(th4, v4.body_rate);

    const Vector3 theta = (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return {x.R * exp_so3(theta),
            x.y + (dt / 6.0) * (v1.y_dot + 2.0 * v2.y_dot + 2.0 * v3.y_dot + v4.y_dot)};
}

GroupPoint step_lie_euler(const GroupRhs& rhs, double t, const GroupPoint& x, double dt) {
    const GroupVelocity v = rhs(t, x);
    return {x.R * exp_so3(dt * v.body_rate), x.y + dt * v.y_dot};
}

GroupPoint step(Scheme scheme, const GroupRhs& rhs, double t, const GroupPoint& x, double dt) {
    return scheme == Scheme::LieRk4 ? step_lie_rk4(rhs, t, x, dt) : step_lie_euler(rhs, t, x, dt);
}

SystemState step_lie_rk4(const SystemState& s, const StateRhs& rhs, double t, double dt) {
    const GroupRhs flat = [&rhs](double tt, const GroupPoint& x) {
        return pack(rhs(tt, unpack(x)));
    };
    return unpack(step_lie_rk4(flat, t, pack(s), dt));
}

// ---------------------------------------------------------------------------

namespace {

/// Integration problem for one driver: the flat-space rhs, the initial point
/// and the map from an integrated point back to a recorded SystemState.
struct Problem {
    GroupRhs rhs;
    GroupPoint initial;
    std::function<SystemState(double, const GroupPoint&)> record;
};

Problem make_problem(const SystemState& initial, const DynamicDriver& d,
                     const InertiaParams& p) {
    TorqueLaw torques = d.torques ? d.torques
                                  : TorqueLaw([](double, const SystemState&) { return MotorTorques{}; });
    Problem pr;
    pr.rhs = [torques, &p](double t, const GroupPoint& x) {
        const SystemState s = unpack(x);
        return pack(dynamic_rhs(s, torques(t, s), p));
    };
    pr.initial = pack(initial);
    pr.record = [](double, const GroupPoint& x) { return unpack(x); };
    return pr;
}

Problem make_problem(const SystemState& initial, const KinematicDriver& d,
                     const InertiaParams& p) {
    auto state_at = [](const GroupPoint& x) {
        SystemState s;
        s.R_s = x.R;
        s.shape.beta = x.y(0);
        s.shape.gamma = x.y(1);
        return s;
    };
    Problem pr;
    pr.rhs = [d, &p, state_at](double t, const GroupPoint& x) {
        const ControlRates u = d.rates(t);
        const StateDerivative f = kinematic_rhs(state_at(x), u, d.mu, p);
        GroupVelocity v{f.body_rate(), Eigen::VectorXd(2)};
        v.y_dot << u.u_beta, u.u_gamma;
        return v;
    };
    pr.initial = {initial.R_s, Eigen::Vector2d(initial.shape.beta, initial.shape.gamma)};
    pr.record = [d, &p, state_at](double t, const GroupPoint& x) {
        SystemState s = state_at(x);
        const ControlRates u = d.rates(t);
        s.shape.beta_dot = u.u_beta;
        s.shape.gamma_dot = u.u_gamma;
        s.Omega_s = kinematic_rhs(s, u, d.mu, p).body_rate();
        return s;
    };
    return pr;
}

Problem make_problem(const SystemState& initial, const ReconstructDriver& d,
                     const InertiaParams& p) {
    Problem pr;
    pr.rhs = [d, &p](double t, const GroupPoint& x) {
        return GroupVelocity{reconstruction_rate(x.R, d.shape(t), d.mu, p), Eigen::VectorXd()};
    };
    pr.initial = {initial.R_s, Eigen::VectorXd()};
    pr.record = [d, &p](double t, const GroupPoint& x) {
        SystemState s;
        s.R_s = x.R;
        s.shape = d.shape(t);
        s.Omega_s = reconstruction_rate(x.R, s.shape, d.mu, p);
        return s;
    };
    return pr;
}

void check_sample(double t, const SystemState& s, double ortho) {
    const bool finite = s.R_s.matrix().allFinite() && s.Omega_s.allFinite() &&
                        std::isfinite(s.shape.beta) && std::isfinite(s.shape.gamma) &&
                        std::isfinite(s.shape.beta_dot) && std::isfinite(s.shape.gamma_dot);
    if (!finite || !(ortho <= kAbortOrthonormality)) {
        std::ostringstream msg;
        msg << "integration aborted at t=" << t << ": "
            << (finite ? "orthonormality error " : "non-finite state, orthonormality error ")
            << ortho;
        throw NumericalAbort(msg.str());
    }
}

}  // namespace

Trajectory simulate(const SystemState& initial, const Driver& driver,
                    const IntegratorConfig& cfg, const InertiaParams& p) {
    validate(cfg);
    const Problem pr = std::visit([&](const auto& d) { return make_problem(initial, d, p); },
                                  driver);

    Trajectory traj;
    const auto n = static_cast<std::size_t>(cfg.steps) + 1;
    traj.times.reserve(n);
    traj.states.reserve(n);
    traj.mu.reserve(n);
    traj.kinetic_energy.reserve(n);
    traj.orthonormality_error.reserve(n);

    GroupPoint x = pr.initial;
    for (int k = 0;; ++k) {
        const double t = k * cfg.dt;
        const SystemState s = pr.record(t, x);
        const double ortho = s.R_s.orthonormality_error();
        check_sample(t, s, ortho);
        traj.times.push_back(t);
        traj.states.push_back(s);
        traj.mu.push_back(momentum_map(s, p).mu);
        traj.kinetic_energy.push_back(kinetic_energy(s, p));
        traj.orthonormality_error.push_back(ortho);
        if (k == cfg.steps) {
            break;
        }
        x = step(cfg.scheme, pr.rhs, t, x, cfg.dt);
        if ((k + 1) % cfg.reproject_every == 0) {
            x.R = project_to_so3(x.R.matrix());
        }
    }
    return traj;
}

DriftSummary summarize(const Trajectory& traj) {
    DriftSummary out;
    if (traj.size() == 0) {
        return out;
    }
    const Vector3& mu0 = traj.mu.front();
    const double mu_scale = mu0.norm() > 0.0 ? mu0.norm() : 1.0;
    const double ke0 = traj.kinetic_energy.front();
    const double ke_scale = ke0 > 0.0 ? ke0 : 1.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        out.mu_drift_rel =
            std::max(out.mu_drift_rel, (traj.mu[k] - mu0).cwiseAbs().maxCoeff() / mu_scale);
        out.ke_drift_rel =
            std::max(out.ke_drift_rel, std::abs(traj.kinetic_energy[k] - ke0) / ke_scale);
        out.ortho_err_max = std::max(out.ortho_err_max, traj.orthonormality_error[k]);
    }
    return out;
}

TorqueLaw tracking_torques(const ShapePath& path, const InertiaParams& p) {
    return [path, p](double t, const SystemState& s) {
        const auto [bdd, gdd] = path.accel(t);
        return required_motor_torques(s, bdd, gdd, p).torques;
    };
}

}  // namespace gyrobundle
