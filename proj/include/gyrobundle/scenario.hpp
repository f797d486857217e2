#pragma once

/**
 * @file scenario.hpp
 * @brief Scenario files: flat key-value sections plus a sampled schedule.
 *
 * @code
 *   # comment
 *   [scenario]
 *   mode = dynamic            # dynamic | kinematic | reconstruct | compare_srj | verify
 *   seed = 42
 *   trials = 10000
 *   mu = 0, 0, 0              # kinematic / reconstruct momentum (optional)
 *   tol_mu_drift = 1e-8       # thresholds, all optional
 *
 *   [params]
 *   Jx = 0.1
 *   Jz = 0.2
 *   It = 0.05
 *   Ig = 0.07
 *   Is_g = 0.05
 *   I_sc = 10,0,0, 0,12,0, 0,0,15     # row-major
 *
 *   [initial]
 *   R_s = 1,0,0, 0,1,0, 0,0,1
 *   beta = 0
 *   gamma = 0
 *   Omega_s = 0.1, 0, 0
 *   beta_dot = 0
 *   gamma_dot = 10
 *
 *   [integrator]
 *   dt = 1e-3
 *   steps = 10000
 *   scheme = lie_rk4
 *   reproject_every = 100
 *
 *   [schedule]
 *   columns = t, tau_g, tau_w
 *   0.0, 0.0, 0.01
 *   10.0, 0.0, 0.01
 * @endcode
 *
 * Schedule columns by mode: dynamic (t, tau_g, tau_w), kinematic
 * (t, u_beta, u_gamma), reconstruct (t, beta, gamma, beta_dot, gamma_dot).
 */

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include "gyrobundle/integrators.hpp"
#include "gyrobundle/schedule.hpp"

namespace gyrobundle {

enum class Mode { Dynamic, Kinematic, Reconstruct, CompareSrj, Verify };

std::string to_string(Mode m);
/// Throws std::invalid_argument for unknown names.
Mode parse_mode(std::string_view name);

/// Pass/fail limits checked by run().
struct Thresholds {
    double mu_drift = 1e-8;
    double ke_drift = 1e-8;
    double srj_residual = 1e-10;
    double term_residual = 1e-13;
    double axiom = 1e-12;
    double holonomy_match = 1e-6;

    bool operator==(const Thresholds&) const = default;
};

struct Scenario {
    InertiaParams params;
    SystemState initial;
    Mode mode = Mode::Dynamic;
    SampledSchedule schedule;
    IntegratorConfig integrator;
    std::uint64_t seed = 42;
    int trials = 10000;
    std::optional<Vector3> mu;
    Thresholds thresholds;
};

bool operator==(const Scenario& a, const Scenario& b);

/// Parse or validation failure, formatted as "<source>:<line>: <message>".
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Scenario parse_scenario_text(const std::string& text, const std::string& source = "<input>");
Scenario parse_scenario(const std::filesystem::path& path);

/// Lossless text form (17 significant digits); parse(serialize(s)) == s.
std::string serialize_scenario(const Scenario& s);

/// Initial attitude acceptance: exact within 1e-12, reprojected within 1e-6.
inline constexpr double kAttitudeRepairLimit = 1e-6;

}  // namespace gyrobundle
