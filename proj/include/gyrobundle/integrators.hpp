#pragma once

/**
 * @file integrators.hpp
 * @brief Fixed-step integration on SO(3) x R^n with conservation diagnostics.
 *
 * The attitude is advanced by right multiplication, R <- R exp(theta), where
 * theta comes from a 4th-order Runge-Kutta-Munthe-Kaas combination of body
 * rates passed through the truncated inverse right-trivialized differential
 *   dexpinv(theta, w) = w + 1/2 theta x w + 1/12 theta x (theta x w).
 * The flat part is advanced with the same classical RK4 tableau.
 */

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gyrobundle/dynamics.hpp"
#include "gyrobundle/schedule.hpp"

namespace gyrobundle {

enum class Scheme { LieRk4, LieEuler };

std::string to_string(Scheme s);
/// "lie_rk4" or "lie_euler"; throws std::invalid_argument otherwise.
Scheme parse_scheme(std::string_view name);

struct IntegratorConfig {
    double dt = 1e-3;
    int steps = 10000;
    Scheme scheme = Scheme::LieRk4;
    int reproject_every = 100;

    bool operator==(const IntegratorConfig&) const = default;
};

void validate(const IntegratorConfig& cfg);

/// A point of SO(3) x R^n.
struct GroupPoint {
    Rotation R;
    Eigen::VectorXd y;
};

/// Body angular velocity (R_dot = R hat(body_rate)) and flat derivative.
struct GroupVelocity {
    Vector3 body_rate;
    Eigen::VectorXd y_dot;
};

using GroupRhs = std::function<GroupVelocity(double t, const GroupPoint&)>;

GroupPoint step_lie_rk4(const GroupRhs& rhs, double t, const GroupPoint& x, double dt);
GroupPoint step_lie_euler(const GroupRhs& rhs, double t, const GroupPoint& x, double dt);
GroupPoint step(Scheme scheme, const GroupRhs& rhs, double t, const GroupPoint& x, double dt);

using StateRhs = std::function<StateDerivative(double t, const SystemState&)>;

/// One RKMK4 step of the full phase state (R_s, beta, gamma, Omega_s, beta_dot, gamma_dot).
SystemState step_lie_rk4(const SystemState& s, const StateRhs& rhs, double t, double dt);

// ---------------------------------------------------------------------------
// Simulation drivers
// ---------------------------------------------------------------------------

using TorqueLaw = std::function<MotorTorques(double t, const SystemState&)>;
using RateLaw = std::function<ControlRates(double t)>;
using ShapeLaw = std::function<ShapeState(double t)>;

/// Dynamic model driven by motor torques (possibly state feedback).
struct DynamicDriver {
    TorqueLaw torques;
};

/// Kinematic model on the momentum level set `mu`, driven by shape rates.
struct KinematicDriver {
    RateLaw rates;
    SpatialMomentum mu;
};

/// Attitude reconstructed from a prescribed shape trajectory at momentum `mu`.
struct ReconstructDriver {
    ShapeLaw shape;
    SpatialMomentum mu;
};

using Driver = std::variant<DynamicDriver, KinematicDriver, ReconstructDriver>;

struct Trajectory {
    std::vector<double> times;
    std::vector<SystemState> states;
    std::vector<Vector3> mu;
    std::vector<double> kinetic_energy;
    std::vector<double> orthonormality_error;

    std::size_t size() const { return times.size(); }
};

/// Orthonormality error above 1e-6 or a non-finite state.
class NumericalAbort : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/**
 * Integrates `cfg.steps` fixed steps from t = 0 and records every sample.
 *
 * For the kinematic and reconstruct drivers the recorded Omega_s is the
 * attitude rate implied by the model and the recorded shape rates are the
 * driving rates. The initial shape of a reconstruct run is taken from the
 * shape law at t = 0.
 */
Trajectory simulate(const SystemState& initial, const Driver& driver,
                    const IntegratorConfig& cfg, const InertiaParams& p);

struct DriftSummary {
    double mu_drift_rel = 0.0;   ///< max_k max_i |mu_i(t_k) - mu_i(0)| / |mu(0)|
    double ke_drift_rel = 0.0;   ///< max_k |KE(t_k) - KE(0)| / KE(0)
    double ortho_err_max = 0.0;
};

/// Relative drifts fall back to absolute values when the initial value is zero.
DriftSummary summarize(const Trajectory& traj);

/// Torque law that feeds forward required_motor_torques for a shape path.
TorqueLaw tracking_torques(const ShapePath& path, const InertiaParams& p);

}  // namespace gyrobundle
