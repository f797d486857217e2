#pragma once

// Test-only reference computations. Deliberately written without the library's
// own formulas so agreement means something.

#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "gyrobundle/schedule.hpp"
#include "gyrobundle/vscmg_model.hpp"

namespace oracle {

using gyrobundle::Matrix3;
using gyrobundle::Vector3;

inline Matrix3 skew(const Vector3& v) {
    Matrix3 m;
    m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
    return m;
}

// matrix exponential by truncated power series
inline Matrix3 series_exp(const Vector3& v, int terms = 30) {
    const Matrix3 A = skew(v);
    Matrix3 sum = Matrix3::Identity();
    Matrix3 term = Matrix3::Identity();
    for (int k = 1; k < terms; ++k) {
        term = term * A / double(k);
        sum += term;
    }
    return sum;
}

// rotation by `a` about the second body axis
inline Matrix3 rot_y(double a) {
    Matrix3 m;
    m << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
    return m;
}

inline Matrix3 gimbal_rotor(const gyrobundle::InertiaParams& p) {
    return Vector3(p.Jx + p.It, p.Jx + p.Ig, p.Jz + p.Is_g).asDiagonal();
}

using Matrix5 = Eigen::Matrix<double, 5, 5>;

// kinetic-energy metric assembled block by block from the two-body picture
inline Matrix5 metric(double beta, const gyrobundle::InertiaParams& p) {
    const Matrix3 Rb = rot_y(beta);
    const double b = p.Jx + p.Ig, c = p.Jz + p.Is_g;
    Matrix5 G = Matrix5::Zero();
    G.topLeftCorner<3, 3>() = p.I_sc + Rb * gimbal_rotor(p) * Rb.transpose();
    G.block<3, 1>(0, 3) = b * Vector3::UnitY();
    G.block<3, 1>(0, 4) = c * Rb.col(2);
    G.block<1, 3>(3, 0) = G.block<3, 1>(0, 3).transpose();
    G.block<1, 3>(4, 0) = G.block<3, 1>(0, 4).transpose();
    G(3, 3) = b;
    G(4, 4) = c;
    return G;
}

// d metric / d beta, differentiated by hand
inline Matrix5 metric_dbeta(double beta, const gyrobundle::InertiaParams& p) {
    const Matrix3 Rb = rot_y(beta);
    const Matrix3 K = skew(Vector3::UnitY());
    const double c = p.Jz + p.Is_g;
    Matrix5 D = Matrix5::Zero();
    D.topLeftCorner<3, 3>() = Rb * (K * gimbal_rotor(p) - gimbal_rotor(p) * K) * Rb.transpose();
    D.block<3, 1>(0, 4) = c * Rb.col(0);
    D.block<1, 3>(4, 0) = c * Rb.col(0).transpose();
    return D;
}

// spacecraft + gimbal/rotor momenta summed separately, spatial frame
inline Vector3 two_body_momentum(const gyrobundle::SystemState& s,
                                 const gyrobundle::InertiaParams& p) {
    const Matrix3 Rb = rot_y(s.shape.beta);
    const Matrix3& R = s.R_s.matrix();
    const Vector3 body = p.I_sc * s.Omega_s;
    const Vector3 gr =
        Rb * gimbal_rotor(p) *
        (Rb.transpose() * s.Omega_s + Vector3(0, s.shape.beta_dot, s.shape.gamma_dot));
    return R * body + R * gr;
}

// gimbal/rotor momentum only, body frame
inline Vector3 gimbal_rotor_momentum(double beta, const Vector3& Omega, double beta_dot,
                                     double gamma_dot, const gyrobundle::InertiaParams& p) {
    const Matrix3 Rb = rot_y(beta);
    return Rb * gimbal_rotor(p) * (Rb.transpose() * Omega + Vector3(0, beta_dot, gamma_dot));
}

inline Vector3 euler_rate(const Matrix3& I, const Vector3& w) {
    return -I.ldlt().solve(w.cross(I * w));
}

// s(tau) easing with zero rate and acceleration at both ends
inline double ease(double tau) { return tau - std::sin(2 * M_PI * tau) / (2 * M_PI); }
inline double ease_rate(double tau) { return 1 - std::cos(2 * M_PI * tau); }

// polygonal loop through `corners` (first == last), `T` seconds per edge,
// sampled every `h` seconds
inline gyrobundle::ShapePath polygon_loop(const std::vector<std::pair<double, double>>& corners,
                                          double T, double h) {
    const int edges = int(corners.size()) - 1;
    const int n = int(std::lround(edges * T / h));
    std::vector<gyrobundle::ShapeSample> out;
    for (int k = 0; k <= n; ++k) {
        const double t = k * h;
        int e = std::min(int(t / T), edges - 1);
        double tau = t / T - e;
        if (k == n) {
            e = edges - 1;
            tau = 1.0;
        }
        const auto [b0, g0] = corners[e];
        const auto [b1, g1] = corners[e + 1];
        out.push_back({t, b0 + (b1 - b0) * ease(tau), g0 + (g1 - g0) * ease(tau),
                       (b1 - b0) * ease_rate(tau) / T, (g1 - g0) * ease_rate(tau) / T});
    }
    return gyrobundle::ShapePath(out);
}

inline gyrobundle::ShapePath square_loop(double T = 1.0, double h = 1e-3) {
    return polygon_loop({{0, 0}, {0.5, 0}, {0.5, 5}, {0, 5}, {0, 0}}, T, h);
}

inline gyrobundle::InertiaParams sample_params() {
    gyrobundle::InertiaParams p;
    p.Jx = 0.08;
    p.Jz = 0.12;
    p.It = 0.03;
    p.Ig = 0.05;
    p.Is_g = 0.06;
    p.I_sc << 12, 0.4, -0.2, 0.4, 15, 0.3, -0.2, 0.3, 9;
    return p;
}

}  // namespace oracle
