#include <gtest/gtest.h>

#include "gyrobundle/connection.hpp"
#include "gyrobundle/sampling.hpp"
#include "oracles.hpp"

using namespace gyrobundle;

namespace {

double maxabs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

TangentVector random_tangent(RandomModel& rng) {
    return TangentVector{rng.vector(-2, 2), rng.uniform(-2, 2), rng.uniform(-10, 10)};
}

}  // namespace

TEST(Connection, VerticalAxiom) {
    RandomModel rng(40);
    for (int i = 0; i < 1000; ++i) {
        const InertiaParams p = rng.params();
        const SystemState q = rng.state();
        const Vector3 xi = rng.vector(-3, 3);
        const TangentVector v{q.R_s.transpose() * xi, 0, 0};
        EXPECT_LT(maxabs(mechanical_connection(q, v, p) - xi), 1e-12);
    }
}

TEST(Connection, KernelAndDefinition) {
    RandomModel rng(41);
    for (int i = 0; i < 1000; ++i) {
        const InertiaParams p = rng.params();
        const SystemState q = rng.state();
        const TangentVector h = horizontal_lift(q.shape.beta, rng.uniform(-2, 2),
                                                rng.uniform(-10, 10), p);
        EXPECT_LT(mechanical_connection(q, h, p).norm(), 1e-12);

        const TangentVector v = random_tangent(rng);
        const Vector3 alpha = mechanical_connection(q, v, p);
        EXPECT_LT(maxabs(locked_inertia_tensor(q, p) * alpha -
                         momentum_map(with_velocity(q, v), p).mu),
                  1e-12);
    }
}

TEST(Connection, Equivariance) {
    RandomModel rng(42);
    for (int i = 0; i < 1000; ++i) {
        const InertiaParams p = rng.params();
        const SystemState q = rng.state();
        const Rotation M = rng.rotation();
        SystemState m = q;
        m.R_s = M * q.R_s;
        const TangentVector v = random_tangent(rng);
        EXPECT_LT(maxabs(mechanical_connection(m, v, p) - M * mechanical_connection(q, v, p)),
                  1e-12);
    }
}

TEST(LocalForm, IdentityBlockAndLift) {
    RandomModel rng(43);
    for (int i = 0; i < 500; ++i) {
        const InertiaParams p = rng.params();
        const double beta = rng.uniform(-M_PI, M_PI);
        const LocalConnection A = local_connection_form(beta, p);
        const Vector3 w = rng.vector(-1, 1);
        Vector5 v;
        v << w, 0, 0;
        EXPECT_LT(maxabs(A * v - w), 1e-15);
        const TangentVector h = horizontal_lift(beta, rng.uniform(-1, 1), rng.uniform(-1, 1), p);
        EXPECT_LT(maxabs(A * h.coords()), 1e-13);

        SystemState q = rng.state();
        q.R_s = Rotation();
        const TangentVector t = random_tangent(rng);
        EXPECT_LT(maxabs(mechanical_connection(q, t, p) -
                         local_connection_form(q.shape.beta, p) * t.coords()),
                  1e-12);
    }
}

TEST(LocalForm, SmoothInBeta) {
    const InertiaParams p = oracle::sample_params();
    const double h = 1e-6;
    for (double beta : {-2.0, -0.3, 0.0, 0.8, 2.9}) {
        const Matrix3 Ii = locked_body_inertia(beta, p).inverse();
        const Matrix3 Rb = oracle::rot_y(beta);
        const Matrix3 dI = Rb * (hat(unit_i2()) * oracle::gimbal_rotor(p) -
                                 oracle::gimbal_rotor(p) * hat(unit_i2())) *
                           Rb.transpose();
        const Matrix3 dIi = -Ii * dI * Ii;
        Eigen::Matrix<double, 3, 2> B, dB;
        B << Vector3(0, p.gimbal_axis_inertia(), 0), p.spin_axis_inertia() * Rb.col(2);
        dB << Vector3::Zero(), p.spin_axis_inertia() * Rb.col(0);
        LocalConnection dA = LocalConnection::Zero();
        dA.rightCols<2>() = dIi * B + Ii * dB;
        const LocalConnection fd =
            (local_connection_form(beta + h, p) - local_connection_form(beta - h, p)) / (2 * h);
        EXPECT_LT(maxabs(fd - dA), 1e-5);
    }
}

TEST(Split, Examples) {
    RandomModel rng(44);
    for (int i = 0; i < 1000; ++i) {
        const InertiaParams p = rng.params();
        const SystemState q = rng.state();
        const TangentVector v = random_tangent(rng);
        const auto [ver, hor] = split(q, v, p);
        EXPECT_LT(maxabs(ver.coords() + hor.coords() - v.coords()), 1e-14);
        const Matrix5 G = metric_matrix(q.shape.beta, p);
        EXPECT_LT(std::abs(ver.coords().dot(G * hor.coords())), 1e-12);
        EXPECT_LT(std::abs(metric_inner(q.shape.beta, ver, hor, p)), 1e-12);
        EXPECT_EQ(ver.beta_dot, 0.0);
        EXPECT_EQ(ver.gamma_dot, 0.0);

        const auto [vv, vh] = split(q, ver, p);
        EXPECT_LT(maxabs(vv.coords() - ver.coords()), 1e-14);
        EXPECT_LT(maxabs(vh.coords()), 1e-14);

        const auto [hv, hh] = split(q, hor, p);
        EXPECT_LT(maxabs(hv.coords()), 1e-14);
        EXPECT_LT(maxabs(hh.coords() - hor.coords()), 1e-14);
    }
}

TEST(Lift, Examples) {
    RandomModel rng(45);
    const InertiaParams p0 = oracle::sample_params();
    EXPECT_EQ(horizontal_lift(0.3, 0, 0, p0).coords(), Vector5::Zero());
    for (int i = 0; i < 1000; ++i) {
        const InertiaParams p = rng.params();
        SystemState q = rng.state();
        const double bd = rng.uniform(-2, 2), gd = rng.uniform(-20, 20);
        const TangentVector h = horizontal_lift(q.shape.beta, bd, gd, p);
        EXPECT_EQ(h.beta_dot, bd);
        EXPECT_EQ(h.gamma_dot, gd);
        EXPECT_LT(momentum_map(with_velocity(q, h), p).mu.norm(), 1e-12);
    }
    const Vector5 a = horizontal_lift(0.3, 1, 0, p0).coords();
    const Vector5 b = horizontal_lift(0.3, 0, 1, p0).coords();
    Eigen::Matrix<double, 5, 2> m;
    m << a, b;
    EXPECT_EQ(Eigen::FullPivLU<Eigen::MatrixXd>(m).rank(), 2);
}

TEST(Reconstruct, ConstantShape) {
    InertiaParams p = oracle::sample_params();
    p.I_sc = Vector3(10, 12, 15).asDiagonal();
    std::vector<ShapeSample> samples;
    for (int k = 0; k <= 1000; ++k) samples.push_back({k * 1e-3, 0, 0, 0, 0});
    const ShapePath still(samples);
    const Rotation R0 = exp_so3(Vector3(0.2, -0.1, 0.4));

    for (const Rotation& R : reconstruct(still, SpatialMomentum{}, R0, p)) {
        EXPECT_LT(maxabs(R.matrix() - R0.matrix()), 1e-15);
    }

    const double I3 = locked_body_inertia(0, p)(2, 2);
    const auto traj = reconstruct(still, SpatialMomentum{Vector3(0, 0, 3.0)}, Rotation(), p);
    ASSERT_EQ(traj.size(), 1001u);
    for (std::size_t k = 0; k < traj.size(); k += 100) {
        const Rotation want = exp_so3(Vector3(0, 0, 3.0 / I3 * k * 1e-3));
        EXPECT_LT(geodesic_distance(traj[k], want), 1e-12);
    }
}

TEST(Reconstruct, RejectsNonUniform) {
    const ShapePath path({{0, 0, 0, 0, 0}, {0.1, 0, 0, 0, 0}, {0.3, 0, 0, 0, 0}});
    EXPECT_THROW(reconstruct(path, SpatialMomentum{}, Rotation(), oracle::sample_params()),
                 std::invalid_argument);
}

TEST(Holonomy, SquareLoopIsNontrivial) {
    const InertiaParams p = oracle::sample_params();
    const Vector3 h = holonomy(oracle::square_loop(), p);
    EXPECT_GT(h.norm(), 1e-3);
}

TEST(Holonomy, ZeroAreaLoop) {
    const InertiaParams p = oracle::sample_params();
    const ShapePath there_and_back = oracle::polygon_loop({{0, 0}, {0.5, 0}, {0, 0}}, 1.0, 1e-3);
    EXPECT_LT(holonomy(there_and_back, p).norm(), 1e-9);
    const ShapePath wheel_only = oracle::polygon_loop({{0.3, 0}, {0.3, 5}, {0.3, 0}}, 1.0, 1e-3);
    EXPECT_LT(holonomy(wheel_only, p).norm(), 1e-9);
}

TEST(Holonomy, TwiceAndReversed) {
    const InertiaParams p = oracle::sample_params();
    const ShapePath loop = oracle::square_loop();
    const Rotation once = exp_so3(holonomy(loop, p));
    const Rotation twice = exp_so3(holonomy(loop.repeated(2), p));
    EXPECT_LT(geodesic_distance(twice, once * once), 1e-9);
    const Rotation back = exp_so3(holonomy(loop.reversed(), p));
    EXPECT_LT(geodesic_distance(back, once.inverse()), 1e-9);
}

TEST(Holonomy, RequiresClosedLoop) {
    const ShapePath open = oracle::polygon_loop({{0, 0}, {0.5, 0}, {0.5, 5}}, 1.0, 1e-2);
    EXPECT_THROW(holonomy(open, oracle::sample_params()), std::invalid_argument);
}
