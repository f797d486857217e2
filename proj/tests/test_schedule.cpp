#include <gtest/gtest.h>

#include <cmath>

#include "gyrobundle/schedule.hpp"
#include "oracles.hpp"

using namespace gyrobundle;

TEST(Hermite, ReproducesCubics) {
    auto f = [](double t) { return 1 - 2 * t + 0.5 * t * t - 0.3 * t * t * t; };
    auto df = [](double t) { return -2 + t - 0.9 * t * t; };
    std::vector<double> t{0, 0.3, 1.0, 1.2, 2.0}, y, m;
    for (double x : t) {
        y.push_back(f(x));
        m.push_back(df(x));
    }
    const CubicHermite h(t, y, m);
    for (double x = 0; x <= 2.0; x += 0.0137) {
        EXPECT_NEAR(h(x).value, f(x), 1e-13);
        EXPECT_NEAR(h(x).rate, df(x), 1e-12);
        EXPECT_NEAR(h(x).accel, 1 - 1.8 * x, 1e-11);
    }
    EXPECT_EQ(h(-1).value, f(0));
    EXPECT_EQ(h(5).value, f(2));
}

TEST(Hermite, FromSamplesExactOnQuadratics) {
    std::vector<double> t, y;
    for (int k = 0; k <= 10; ++k) {
        t.push_back(0.1 * k);
        y.push_back(3 * t.back() * t.back() - t.back());
    }
    const CubicHermite h = CubicHermite::from_samples(t, y);
    for (double x = 0; x <= 1.0; x += 0.013) EXPECT_NEAR(h(x).value, 3 * x * x - x, 1e-13);
}

TEST(Hermite, RejectsBadKnots) {
    EXPECT_THROW(CubicHermite({0.0}, {1.0}, {0.0}), std::invalid_argument);
    EXPECT_THROW(CubicHermite({0.0, 0.0}, {1.0, 2.0}, {0.0, 0.0}), std::invalid_argument);
    EXPECT_THROW(CubicHermite({0.0, 1.0}, {1.0}, {0.0, 0.0}), std::invalid_argument);
}

TEST(Sampled, Columns) {
    const SampledSchedule s({"t", "tau_g", "tau_w"}, {{0, 1, 2}, {1, 3, 4}});
    EXPECT_EQ(s.column("tau_w"), 2);
    EXPECT_EQ(s.values("tau_g"), (std::vector<double>{1, 3}));
    EXPECT_EQ(s.times(), (std::vector<double>{0, 1}));
    EXPECT_TRUE(s.uniform());
}

TEST(ShapePath, LoopHelpers) {
    const ShapePath loop = oracle::square_loop(1.0, 1e-2);
    EXPECT_TRUE(loop.uniform());
    EXPECT_TRUE(loop.closed());
    EXPECT_NEAR(loop.step(), 1e-2, 1e-15);
    EXPECT_NEAR(loop.at(1.5).beta, 0.5, 1e-15);
    EXPECT_NEAR(loop.at(1.5).gamma, 2.5, 1e-12);
    const ShapePath back = loop.reversed();
    EXPECT_NEAR(back.at(0.3).gamma, loop.at(3.7).gamma, 1e-12);
    EXPECT_NEAR(back.at(0.3).beta_dot, -loop.at(3.7).beta_dot, 1e-12);
    const ShapePath two = loop.repeated(2);
    EXPECT_DOUBLE_EQ(two.t_end(), 8.0);
    EXPECT_NEAR(two.at(5.5).gamma, loop.at(1.5).gamma, 1e-12);
    EXPECT_THROW(oracle::polygon_loop({{0, 0}, {1, 0}}, 1.0, 0.1).repeated(2),
                 std::invalid_argument);
}
