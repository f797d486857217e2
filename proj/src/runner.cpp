#include "gyrobundle/runner.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>

#include "gyrobundle/connection.hpp"
#include "gyrobundle/sampling.hpp"

namespace gyrobundle {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

/// Report key from a free-form label: runs of non-identifier characters become '_'.
std::string key(const std::string& label) {
    std::string out;
    for (char ch : label) {
        if (std::isalnum(static_cast<unsigned char>(ch))) {
            out += ch;
        } else if (!out.empty() && out.back() != '_') {
            out += '_';
        }
    }
    while (!out.empty() && out.back() == '_') out.pop_back();
    return out;
}

double finite_or_inf(double v) {
    return std::isfinite(v) ? v : std::numeric_limits<double>::infinity();
}

/// Cubic interpolant of one schedule column.
CubicHermite column(const SampledSchedule& sch, const std::string& name) {
    return CubicHermite::from_samples(sch.times(), sch.values(name));
}

bool all_zero(const SampledSchedule& sch, const std::string& name) {
    const auto v = sch.values(name);
    return std::all_of(v.begin(), v.end(), [](double x) { return x == 0.0; });
}

ShapePath shape_path(const SampledSchedule& sch) {
    const auto t = sch.times();
    const auto b = sch.values("beta");
    const auto g = sch.values("gamma");
    const auto bd = sch.values("beta_dot");
    const auto gd = sch.values("gamma_dot");
    std::vector<ShapeSample> samples(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        samples[i] = ShapeSample{t[i], b[i], g[i], bd[i], gd[i]};
    }
    return ShapePath(std::move(samples));
}

void check(DiagnosticReport& r, const std::string& what, double value, double tol) {
    if (!(value <= tol)) {
        r.violations.push_back(what + " " + fmt(value) + " exceeds " + fmt(tol));
    }
}

void add_drift(DiagnosticReport& r, const Trajectory& traj, const Thresholds& th, bool ke) {
    const DriftSummary d = summarize(traj);
    r.mu_drift_rel = d.mu_drift_rel;
    r.ortho_err_max = d.ortho_err_max;
    check(r, "mu_drift_rel", d.mu_drift_rel, th.mu_drift);
    if (ke) {
        r.ke_drift_rel = d.ke_drift_rel;
        check(r, "ke_drift_rel", d.ke_drift_rel, th.ke_drift);
    }
}

RunResult run_dynamic(const Scenario& sc) {
    RunResult out;
    out.report.mode = sc.mode;
    bool torque_free = true;
    TorqueLaw law;
    if (!sc.schedule.empty()) {
        torque_free = all_zero(sc.schedule, "tau_g") && all_zero(sc.schedule, "tau_w");
        if (!torque_free) {
            law = [tg = column(sc.schedule, "tau_g"), tw = column(sc.schedule, "tau_w")](
                      double time, const SystemState&) {
                return MotorTorques{tg(time).value, tw(time).value};
            };
        }
    }
    out.trajectory = simulate(sc.initial, DynamicDriver{law}, sc.integrator, sc.params);
    add_drift(out.report, *out.trajectory, sc.thresholds, torque_free);
    return out;
}

RunResult run_kinematic(const Scenario& sc) {
    RunResult out;
    out.report.mode = sc.mode;
    const SpatialMomentum mu =
        sc.mu ? SpatialMomentum{*sc.mu} : momentum_map(sc.initial, sc.params);
    const RateLaw rates = [ub = column(sc.schedule, "u_beta"),
                           ug = column(sc.schedule, "u_gamma")](double time) {
        return ControlRates{ub(time).value, ug(time).value};
    };
    out.trajectory = simulate(sc.initial, KinematicDriver{rates, mu}, sc.integrator, sc.params);
    add_drift(out.report, *out.trajectory, sc.thresholds, false);
    return out;
}

RunResult run_reconstruct(const Scenario& sc) {
    RunResult out;
    DiagnosticReport& r = out.report;
    r.mode = sc.mode;
    const ShapePath path = shape_path(sc.schedule);
    const SpatialMomentum mu{sc.mu.value_or(Vector3::Zero())};

    IntegratorConfig cfg = sc.integrator;
    cfg.dt = path.step();
    cfg.steps = static_cast<int>(std::lround((path.t_end() - path.t_begin()) / cfg.dt));

    const ShapeLaw law = [path](double t) { return path.at(t); };
    out.trajectory = simulate(sc.initial, ReconstructDriver{law, mu}, cfg, sc.params);
    add_drift(r, *out.trajectory, sc.thresholds, false);

    // Same motion produced by the torque-driven model.
    SystemState s0 = sc.initial;
    s0.shape = path.at(path.t_begin());
    s0.Omega_s = reconstruction_rate(s0.R_s, s0.shape, mu, sc.params);
    IntegratorConfig dyn = cfg;
    dyn.scheme = Scheme::LieRk4;
    const Trajectory full =
        simulate(s0, DynamicDriver{tracking_torques(path, sc.params)}, dyn, sc.params);

    const Rotation& R_rec = out.trajectory->states.back().R_s;
    const Rotation& R_dyn = full.states.back().R_s;
    r.holonomy_mismatch = finite_or_inf(geodesic_distance(R_rec, R_dyn));
    if (path.closed(1e-9)) {
        r.holonomy_vector = log_so3(sc.initial.R_s.transpose() * R_rec);
    }
    check(r, "holonomy_mismatch", *r.holonomy_mismatch, sc.thresholds.holonomy_match);
    return out;
}

RunResult run_verify(const Scenario& sc) {
    RunResult out;
    DiagnosticReport& r = out.report;
    r.mode = sc.mode;
    r.checks = run_verification(sc.seed, sc.trials);
    for (auto& c : r.checks) {
        if (c.connection) {
            c.tolerance = sc.thresholds.axiom;
            r.connection_axiom_residuals.emplace_back(c.name, c.max_residual);
        }
        if (!c.passed()) {
            r.violations.push_back(c.name + " " + fmt(c.max_residual) + " exceeds " +
                                   fmt(c.tolerance));
        }
    }
    return out;
}

}  // namespace

DiagnosticReport compare_srj(std::uint64_t seed, int trials, const InertiaParams* fixed,
                             const Thresholds& th) {
    DiagnosticReport r;
    r.mode = Mode::CompareSrj;
    RandomModel rng(seed);
    double srj = 0.0;
    for (int k = 0; k < trials; ++k) {
        const InertiaParams p = fixed ? *fixed : rng.params();
        const SystemState s = rng.state(1.0);
        const MotorTorques tau{rng.uniform(-1, 1), rng.uniform(-1, 1)};
        const StateDerivative d = dynamic_rhs(s, tau, p);
        const Matrix3 I = locked_body_inertia(s.shape.beta, p);
        const Vector3 lhs = I * d.Omega_dot() + s.Omega_s.cross(I * s.Omega_s);
        const Vector3 a = srj_rhs(s, d.beta_ddot(), d.gamma_ddot(), p);
        const Vector3 b = geometric_rhs(s, d.beta_ddot(), d.gamma_ddot(), p);
        srj = std::max({srj, finite_or_inf((lhs - a).cwiseAbs().maxCoeff()),
                        finite_or_inf((b - a).cwiseAbs().maxCoeff())});

        const auto terms = expand_terms(s, d.beta_ddot(), d.gamma_ddot(), p);
        if (r.term_residuals.empty()) {
            for (const auto& t : terms) r.term_residuals.emplace_back(t.label, 0.0);
        }
        for (std::size_t i = 0; i < terms.size(); ++i) {
            r.term_residuals[i].second =
                std::max(r.term_residuals[i].second, finite_or_inf(terms[i].residual));
        }
    }
    r.srj_residual_max = srj;
    double worst = 0.0;
    for (const auto& [label, v] : r.term_residuals) worst = std::max(worst, v);
    r.term_residual_max = worst;
    check(r, "srj_residual_max", srj, th.srj_residual);
    for (const auto& [label, v] : r.term_residuals) {
        check(r, "term_residual[" + label + "]", v, th.term_residual);
    }
    return r;
}

RunResult run(const Scenario& sc) {
    switch (sc.mode) {
        case Mode::Dynamic: return run_dynamic(sc);
        case Mode::Kinematic: return run_kinematic(sc);
        case Mode::Reconstruct: return run_reconstruct(sc);
        case Mode::CompareSrj: {
            RunResult out;
            out.report = compare_srj(sc.seed, sc.trials, &sc.params, sc.thresholds);
            return out;
        }
        case Mode::Verify: return run_verify(sc);
    }
    throw std::logic_error("unhandled mode");
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
    os << "t,R11,R12,R13,R21,R22,R23,R31,R32,R33,beta,gamma,Omega1,Omega2,Omega3,"
          "beta_dot,gamma_dot,mu1,mu2,mu3,ke,ortho_err\n";
    os << std::setprecision(17);
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const SystemState& s = traj.states[k];
        const Matrix3& R = s.R_s.matrix();
        os << traj.times[k];
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) os << ',' << R(i, j);
        os << ',' << s.shape.beta << ',' << s.shape.gamma;
        for (int i = 0; i < 3; ++i) os << ',' << s.Omega_s(i);
        os << ',' << s.shape.beta_dot << ',' << s.shape.gamma_dot;
        for (int i = 0; i < 3; ++i) os << ',' << traj.mu[k](i);
        os << ',' << traj.kinetic_energy[k] << ',' << traj.orthonormality_error[k] << '\n';
    }
}

void write_report(std::ostream& os, const DiagnosticReport& r) {
    auto opt = [&](const char* key, const std::optional<double>& v) {
        if (v) os << key << " = " << fmt(*v) << '\n';
    };
    os << "mode = " << to_string(r.mode) << '\n';
    opt("mu_drift_rel", r.mu_drift_rel);
    opt("ke_drift_rel", r.ke_drift_rel);
    opt("ortho_err_max", r.ortho_err_max);
    opt("srj_residual_max", r.srj_residual_max);
    opt("term_residual_max", r.term_residual_max);
    for (const auto& [label, v] : r.term_residuals) {
        os << "term_residual." << key(label) << " = " << fmt(v) << '\n';
    }
    for (const auto& c : r.checks) {
        os << "check." << c.name << " = " << fmt(c.max_residual) << " (tol " << fmt(c.tolerance)
           << ", " << (c.passed() ? "pass" : "FAIL") << ")\n";
    }
    for (const auto& [name, v] : r.connection_axiom_residuals) {
        os << "connection_axiom." << name << " = " << fmt(v) << '\n';
    }
    if (r.holonomy_vector) {
        const Vector3& h = *r.holonomy_vector;
        os << "holonomy_vector = " << fmt(h(0)) << ", " << fmt(h(1)) << ", " << fmt(h(2)) << '\n';
    }
    opt("holonomy_mismatch", r.holonomy_mismatch);
    os << "violations = " << r.violations.size() << '\n';
    for (const auto& v : r.violations) os << "violation = " << v << '\n';
    os << "status = " << (r.passed() ? "pass" : "fail") << '\n';
}

void write_outputs(const std::filesystem::path& out_dir, const std::string& stem,
                   const RunResult& result) {
    std::filesystem::create_directories(out_dir);
    if (result.trajectory) {
        std::ofstream csv(out_dir / (stem + ".csv"));
        if (!csv) throw std::runtime_error("cannot write " + (out_dir / (stem + ".csv")).string());
        write_trajectory_csv(csv, *result.trajectory);
    }
    std::ofstream rep(out_dir / (stem + ".report"));
    if (!rep) throw std::runtime_error("cannot write " + (out_dir / (stem + ".report")).string());
    write_report(rep, result.report);
}

}  // namespace gyrobundle
