#pragma once

/**
 * @file runner.hpp
 * @brief Executes a Scenario and produces the trajectory CSV and the
 *        key-value diagnostic report.
 *
 * CSV columns: t, R11..R33 (row-major), beta, gamma, Omega1..3, beta_dot,
 * gamma_dot, mu1..3, ke, ortho_err; 17 significant digits.
 */

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "gyrobundle/integrators.hpp"
#include "gyrobundle/scenario.hpp"
#include "gyrobundle/verify.hpp"

namespace gyrobundle {

struct DiagnosticReport {
    Mode mode = Mode::Dynamic;
    std::optional<double> mu_drift_rel;
    std::optional<double> ke_drift_rel;
    std::optional<double> ortho_err_max;
    std::optional<double> srj_residual_max;
    std::optional<double> term_residual_max;
    std::vector<std::pair<std::string, double>> term_residuals;
    std::vector<std::pair<std::string, double>> connection_axiom_residuals;
    std::vector<CheckResult> checks;
    std::optional<Vector3> holonomy_vector;
    std::optional<double> holonomy_mismatch;
    std::vector<std::string> violations;

    bool passed() const { return violations.empty(); }
};

struct RunResult {
    std::optional<Trajectory> trajectory;
    DiagnosticReport report;
};

/// Throws NumericalAbort if integration becomes unstable.
RunResult run(const Scenario& sc);

/// Per-term expansion residuals and the SRJ-vs-geometric residual over
/// `trials` seeded random states (and random parameters when `p` is null).
DiagnosticReport compare_srj(std::uint64_t seed, int trials, const InertiaParams* p,
                             const Thresholds& th = {});

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
void write_report(std::ostream& os, const DiagnosticReport& report);

/// Writes <out_dir>/<stem>.csv (when a trajectory exists) and <stem>.report.
void write_outputs(const std::filesystem::path& out_dir, const std::string& stem,
                   const RunResult& result);

}  // namespace gyrobundle
