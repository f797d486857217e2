#include <gtest/gtest.h>

#include <cmath>

#include "gyrobundle/liegroup.hpp"
#include "gyrobundle/sampling.hpp"
#include "oracles.hpp"

using namespace gyrobundle;

TEST(Hat, CrossProductAndVee) {
    RandomModel rng(1);
    for (int i = 0; i < 1000; ++i) {
        const Vector3 v = rng.vector(-5, 5), w = rng.vector(-5, 5);
        EXPECT_LT((hat(v) * w - v.cross(w)).cwiseAbs().maxCoeff(), 1e-14);
        EXPECT_EQ(hat(v) + hat(v).transpose(), Matrix3::Zero());
        EXPECT_EQ(vee(hat(v)), v);
    }
}

TEST(Hat, VeeRejectsSymmetricPart) {
    Matrix3 m = hat(Vector3(1, 2, 3));
    m(0, 1) += 1e-6;
    EXPECT_THROW(vee(m), std::invalid_argument);
}

TEST(Exp, MatchesPowerSeries) {
    RandomModel rng(2);
    for (int i = 0; i < 500; ++i) {
        const Vector3 v = rng.unit_vector() * rng.uniform(0, 3.0);
        EXPECT_LT((exp_so3(v).matrix() - oracle::series_exp(v)).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(Exp, SmallAngleBranch) {
    for (double a : {0.0, 1e-12, 1e-8, 9e-6, 1.1e-5, 1e-4}) {
        const Vector3 v = Vector3(0.3, -0.5, 0.8).normalized() * a;
        EXPECT_LT((exp_so3(v).matrix() - oracle::series_exp(v)).cwiseAbs().maxCoeff(), 1e-15)
            << a;
        EXPECT_LT((log_so3(exp_so3(v)) - v).norm(), 1e-18 + 1e-12 * a);
    }
}

TEST(Exp, QuarterTurns) {
    const Matrix3 R = exp_so3(Vector3(0, 0, M_PI / 2)).matrix();
    EXPECT_LT((R * Vector3::UnitX() - Vector3::UnitY()).norm(), 1e-15);
    EXPECT_EQ(exp_so3(Vector3::Zero()).matrix(), Matrix3::Identity());
}

TEST(Log, RoundTripInsideBall) {
    RandomModel rng(3);
    for (int i = 0; i < 1000; ++i) {
        const Vector3 v = rng.unit_vector() * rng.uniform(0, M_PI - 1e-9);
        EXPECT_LT((log_so3(exp_so3(v)) - v).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Log, NearPi) {
    RandomModel rng(4);
    for (double gap : {0.0, 1e-12, 1e-8, 1e-5, 5e-4, 2e-3}) {
        for (int i = 0; i < 50; ++i) {
            const Vector3 v = rng.unit_vector() * (M_PI - gap);
            const Vector3 w = log_so3(exp_so3(v));
            EXPECT_NEAR(w.norm(), M_PI - gap, 1e-10);
            EXPECT_LT((exp_so3(w).matrix() - exp_so3(v).matrix()).cwiseAbs().maxCoeff(), 1e-12);
        }
    }
}

TEST(Adjoint, ConjugationAndComposition) {
    RandomModel rng(5);
    for (int i = 0; i < 1000; ++i) {
        const Rotation A = rng.rotation(), B = rng.rotation();
        const Vector3 v = rng.vector(-1, 1);
        const Matrix3 conj = A.matrix() * hat(v) * A.matrix().transpose();
        EXPECT_LT((vee(conj) - adjoint(A, v)).cwiseAbs().maxCoeff(), 1e-13);
        EXPECT_LT((adjoint(A * B, v) - adjoint(A, adjoint(B, v))).cwiseAbs().maxCoeff(), 1e-13);
    }
}

TEST(Rotation, FromMatrixValidates) {
    EXPECT_NO_THROW(Rotation::from_matrix(oracle::rot_y(0.3)));
    Matrix3 m = oracle::rot_y(0.3);
    m(0, 0) += 1e-8;
    EXPECT_THROW(Rotation::from_matrix(m), std::invalid_argument);
    EXPECT_NO_THROW(Rotation::from_matrix(m, 1e-6));
    EXPECT_THROW(Rotation::from_matrix(-Matrix3::Identity(), 1e-6), std::invalid_argument);
}

TEST(Rotation, ExpIsOrthonormal) {
    RandomModel rng(6);
    for (int i = 0; i < 1000; ++i) {
        const Rotation R = exp_so3(rng.vector(-10, 10));
        EXPECT_LT(R.orthonormality_error(), 1e-13);
        EXPECT_NEAR(R.matrix().determinant(), 1.0, 1e-13);
    }
}

TEST(Project, RecoversPerturbedRotation) {
    RandomModel rng(7);
    for (int i = 0; i < 200; ++i) {
        const Rotation R = rng.rotation();
        Matrix3 m = R.matrix();
        m += 1e-7 * Matrix3::Random();
        const Rotation Q = project_to_so3(m);
        EXPECT_LT(Q.orthonormality_error(), 1e-14);
        EXPECT_LT(geodesic_distance(Q, R), 1e-6);
    }
    EXPECT_THROW(project_to_so3(-Matrix3::Identity()), std::invalid_argument);
    EXPECT_THROW(project_to_so3(Matrix3::Zero()), std::invalid_argument);
}

TEST(Geodesic, AngleOfRelativeRotation) {
    const Rotation A = exp_so3(Vector3(0.1, 0.2, 0.3));
    const Rotation B = A * exp_so3(Vector3(0, 0.7, 0));
    EXPECT_NEAR(geodesic_distance(A, B), 0.7, 1e-14);
    EXPECT_NEAR(geodesic_distance(A, A), 0.0, 1e-15);
}
