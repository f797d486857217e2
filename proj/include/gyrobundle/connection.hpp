#pragma once

/**
 * @file connection.hpp
 * @brief Mechanical connection of the SO(3) x S^1 x S^1 bundle, the split of
 *        tangent vectors into vertical and horizontal parts, and
 *        reconstruction of attitude from shape motion.
 *
 * Conventions. Tangent vectors are left-trivialized: (omega_local, beta_dot,
 * gamma_dot) stands for (R_s hat(omega_local), beta_dot, gamma_dot). The
 * connection value is returned as a spatial angular velocity:
 *
 *   alpha(q, v) = I(q)^-1 mu(q, v) = R_s A(beta) (omega_local, beta_dot, gamma_dot),
 *   A(beta)     = [ Id | Ĩ(beta)^-1 [(Jx+Ig) i2, (Jz+Is_g) s_beta] ].
 *
 * A vector is horizontal iff its momentum vanishes; the horizontal lift of a
 * shape velocity carries omega_local = -Ĩ^-1 [(Jx+Ig) i2, (Jz+Is_g) s_beta] xdot.
 */

#include <utility>
#include <vector>

#include "gyrobundle/integrators.hpp"
#include "gyrobundle/schedule.hpp"
#include "gyrobundle/vscmg_model.hpp"

namespace gyrobundle {

using LocalConnection = Eigen::Matrix<double, 3, 5>;

struct TangentVector {
    Vector3 omega_local = Vector3::Zero();
    double beta_dot = 0.0;
    double gamma_dot = 0.0;

    Vector5 coords() const;
    static TangentVector from_coords(const Vector5& v);
};

/// Tangent vector carried by the velocities of a state.
TangentVector tangent_of(const SystemState& s);
/// Configuration of `q` with the velocities of `v`.
SystemState with_velocity(const SystemState& q, const TangentVector& v);

/// Metric inner product G(beta)(v, w).
double metric_inner(double beta, const TangentVector& v, const TangentVector& w,
                    const InertiaParams& p);

/// alpha(q, v) = I(q)^-1 J(q, v), spatial. Velocities stored in `q` are ignored.
Vector3 mechanical_connection(const SystemState& q, const TangentVector& v,
                              const InertiaParams& p);

LocalConnection local_connection_form(double beta, const InertiaParams& p);

TangentVector horizontal_lift(double beta, double beta_dot, double gamma_dot,
                              const InertiaParams& p);

/// (vertical, horizontal) with vertical = (A v, 0, 0) and horizontal the lift
/// of the shape rates of v.
std::pair<TangentVector, TangentVector> split(const SystemState& q, const TangentVector& v,
                                              const InertiaParams& p);

/// Body rate Ĩ(beta)^-1 R^T mu + lift(beta, xdot) of the reconstruction equation.
Vector3 reconstruction_rate(const Rotation& R, const ShapeState& x, const SpatialMomentum& mu,
                            const InertiaParams& p);

/// Attitude along a uniformly sampled shape path, one rotation per sample.
/// Uses the simulator's Lie-group integrator with dt equal to the sample step.
/// Throws std::invalid_argument for non-uniform sampling.
std::vector<Rotation> reconstruct(const ShapePath& path, const SpatialMomentum& mu,
                                  const Rotation& R0, const InertiaParams& p,
                                  Scheme scheme = Scheme::LieRk4);

/// log(R0^T R_end) for a zero-momentum traversal of a closed loop. Throws
/// std::invalid_argument if the endpoints differ by more than 1e-12.
Vector3 holonomy(const ShapePath& loop, const InertiaParams& p);

}  // namespace gyrobundle
