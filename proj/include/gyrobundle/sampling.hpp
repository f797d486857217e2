#pragma once

/// @file sampling.hpp
/// @brief Seeded random inertias, rotations and states for property checks.

#include <cstdint>
#include <random>

#include "gyrobundle/vscmg_model.hpp"

namespace gyrobundle {

class RandomModel {
public:
    explicit RandomModel(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo, double hi);
    Vector3 vector(double lo, double hi);
    Vector3 unit_vector();
    /// Haar-distributed rotation.
    Rotation rotation();
    /// SPD matrix Q diag(e) Q^T with eigenvalues drawn from [lo, hi].
    Matrix3 spd(double lo, double hi);

    /// Scalar moments in [0.1, 2], spacecraft eigenvalues in [5, 20].
    InertiaParams params();

    /// Random attitude, beta and gamma in [-pi, pi] and a velocity
    /// (Omega_s, beta_dot, gamma_dot) of Euclidean norm `speed`.
    SystemState state(double speed = 1.0);

    std::mt19937_64& engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

}  // namespace gyrobundle
