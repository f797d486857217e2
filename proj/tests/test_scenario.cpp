#include <gtest/gtest.h>

#include <fstream>

#include "gyrobundle/scenario.hpp"

using namespace gyrobundle;

namespace {

const char* kMinimal = R"(
[scenario]
mode = dynamic

[params]
Jx = 0.1
Jz = 0.2
It = 0.05
Ig = 0.07
Is_g = 0.05
I_sc = 10,0,0, 0,12,0, 0,0,15
)";

std::string error_of(const std::string& text) {
    try {
        parse_scenario_text(text, "case.cfg");
    } catch (const ScenarioError& e) {
        return e.what();
    }
    return "";
}

std::string replace(std::string text, const std::string& from, const std::string& to) {
    const auto at = text.find(from);
    if (at != std::string::npos) text.replace(at, from.size(), to);
    return text;
}

}  // namespace

TEST(Scenario, MinimalDefaults) {
    const Scenario s = parse_scenario_text(kMinimal);
    EXPECT_EQ(s.mode, Mode::Dynamic);
    EXPECT_EQ(s.integrator.dt, 1e-3);
    EXPECT_EQ(s.integrator.steps, 10000);
    EXPECT_EQ(s.integrator.scheme, Scheme::LieRk4);
    EXPECT_EQ(s.integrator.reproject_every, 100);
    EXPECT_EQ(s.initial.R_s.matrix(), Matrix3::Identity());
    EXPECT_EQ(s.params.I_sc(2, 2), 15.0);
    EXPECT_EQ(s.seed, 42u);
    EXPECT_TRUE(s.schedule.empty());
    EXPECT_FALSE(s.mu.has_value());
}

TEST(Scenario, NonPositiveDefiniteInertia) {
    const std::string msg =
        error_of(replace(kMinimal, "I_sc = 10,0,0, 0,12,0, 0,0,15", "I_sc = 10,0,0, 0,-12,0, 0,0,15"));
    EXPECT_NE(msg.find("spacecraft inertia not positive definite"), std::string::npos) << msg;
    EXPECT_NE(msg.find("case.cfg:11:"), std::string::npos) << msg;
}

TEST(Scenario, AttitudeRepairAndRejection) {
    const std::string tweak = std::string(kMinimal) + "\n[initial]\nR_s = 1.00000001,0,0, 0,1,0, 0,0,1\n";
    const Scenario s = parse_scenario_text(tweak);
    EXPECT_LT(s.initial.R_s.orthonormality_error(), 1e-15);
    EXPECT_LT((s.initial.R_s.matrix() - Matrix3::Identity()).norm(), 1e-15);

    const std::string far = std::string(kMinimal) + "\n[initial]\nR_s = 1.001,0,0, 0,1,0, 0,0,1\n";
    const std::string msg = error_of(far);
    EXPECT_NE(msg.find("initial attitude not orthonormal"), std::string::npos) << msg;
    EXPECT_NE(msg.find("case.cfg:14:"), std::string::npos) << msg;

    const std::string flip = std::string(kMinimal) + "\n[initial]\nR_s = -1,0,0, 0,1,0, 0,0,1\n";
    EXPECT_NE(error_of(flip).find("not orthonormal"), std::string::npos);
}

TEST(Scenario, LinePreciseErrors) {
    EXPECT_NE(error_of("[scenario]\nmode = dynamic\n").find("missing field 'Jx' in [params]"),
              std::string::npos);
    EXPECT_NE(error_of("[params]\nJx = 1\n").find("missing field 'mode' in [scenario]"),
              std::string::npos);
    EXPECT_NE(error_of(std::string(kMinimal) + "bogus = 3\n").find("case.cfg:12: unknown field"),
              std::string::npos);
    EXPECT_NE(error_of(std::string(kMinimal) + "Jx = 3\n").find("case.cfg:12: duplicate field"),
              std::string::npos);
    EXPECT_NE(error_of(replace(kMinimal, "Jx = 0.1", "Jx = abc")).find("case.cfg:6:"),
              std::string::npos);
    EXPECT_NE(error_of(replace(kMinimal, "mode = dynamic", "mode = fly")).find("case.cfg:3:"),
              std::string::npos);
    EXPECT_NE(error_of(std::string(kMinimal) + "[extras]\n").find("unknown section"),
              std::string::npos);
    EXPECT_NE(error_of(replace(kMinimal, "Ig = 0.07", "Ig = 0")).find("must be positive"),
              std::string::npos);
}

TEST(Scenario, ScheduleChecks) {
    const std::string base = std::string(kMinimal) + "\n[integrator]\ndt = 0.01\nsteps = 100\n";
    const Scenario ok = parse_scenario_text(base + "\n[schedule]\ncolumns = t, tau_g, tau_w\n0, 0, 1\n1, 0, 1\n");
    EXPECT_EQ(ok.schedule.rows().size(), 2u);

    const std::string short_run = error_of(base + "\n[schedule]\ncolumns = t, tau_g, tau_w\n0, 0, 1\n0.5, 0, 1\n");
    EXPECT_NE(short_run.find("inconsistent schedule length"), std::string::npos) << short_run;

    EXPECT_NE(error_of(base + "\n[schedule]\ncolumns = t, u_beta, u_gamma\n0, 0, 1\n1, 0, 1\n")
                  .find("schedule columns must be"),
              std::string::npos);
    EXPECT_NE(error_of(base + "\n[schedule]\ncolumns = t, tau_g, tau_w\n0, 0, 1\n1, 0\n")
                  .find("schedule row has"),
              std::string::npos);
    EXPECT_NE(error_of(base + "\n[schedule]\ncolumns = t, tau_g, tau_w\n0, 0, 1\n0, 0, 1\n1, 0, 1\n")
                  .find("strictly increasing"),
              std::string::npos);

    const std::string kin = replace(base, "mode = dynamic", "mode = kinematic");
    EXPECT_NE(error_of(kin).find("requires a [schedule] section"), std::string::npos);
    const std::string rec = replace(base, "mode = dynamic", "mode = reconstruct");
    EXPECT_NE(error_of(rec + "\n[schedule]\ncolumns = t, beta, gamma, beta_dot, gamma_dot\n"
                             "0, 0, 0, 0, 0\n0.2, 0, 0, 0, 0\n1, 0, 0, 0, 0\n")
                  .find("uniformly sampled"),
              std::string::npos);
}

TEST(Scenario, VerifyNeedsNoParams) {
    const Scenario s = parse_scenario_text("[scenario]\nmode = verify\ntrials = 100\nseed = 7\n");
    EXPECT_EQ(s.mode, Mode::Verify);
    EXPECT_EQ(s.trials, 100);
    EXPECT_EQ(s.seed, 7u);
    EXPECT_EQ(parse_scenario_text(serialize_scenario(s)), s);
}

TEST(Scenario, RoundTrip) {
    std::string text = std::string(kMinimal) +
                       "\n[initial]\nR_s = 0.36, 0.48, -0.8, -0.8, 0.6, 0, 0.48, 0.64, 0.6\n"
                       "beta = 0.1234567890123\ngamma = -3\nOmega_s = 0.1, 1e-7, -2.5\n"
                       "beta_dot = 0.3\ngamma_dot = 17.25\n"
                       "[integrator]\ndt = 0.005\nsteps = 200\nscheme = lie_euler\nreproject_every = 7\n"
                       "[schedule]\ncolumns = t, tau_g, tau_w\n0, 0.1, 0.2\n0.4, -0.1, 0.25\n1.0, 0.3, 0.0\n";
    text = replace(text, "mode = dynamic", "mode = dynamic\nseed = 9\nmu = 1, 2, 3\ntol_mu_drift = 1e-9");
    const Scenario a = parse_scenario_text(text);
    const Scenario b = parse_scenario_text(serialize_scenario(a));
    EXPECT_EQ(a, b);
    EXPECT_EQ(serialize_scenario(a), serialize_scenario(b));
    EXPECT_EQ(b.thresholds.mu_drift, 1e-9);
    EXPECT_EQ(*b.mu, Vector3(1, 2, 3));
}

TEST(Scenario, ExampleFilesParse) {
    for (const char* name : {"torque_free", "gimbal_torque", "kinematic_slew", "square_loop",
                             "compare_srj", "verify"}) {
        const std::string path = std::string(GYROBUNDLE_SCENARIO_DIR) + "/" + name + ".cfg";
        const Scenario s = parse_scenario(path);
        EXPECT_EQ(parse_scenario_text(serialize_scenario(s)), s) << name;
    }
    EXPECT_THROW(parse_scenario("/nonexistent/file.cfg"), ScenarioError);
}
