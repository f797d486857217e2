#pragma once

/**
 * @file schedule.hpp
 * @brief Sampled input signals and shape paths with piecewise-cubic
 *        interpolation, so that Runge-Kutta stage times between samples see
 *        values of matching order.
 */

#include <string>
#include <vector>

#include "gyrobundle/vscmg_model.hpp"

namespace gyrobundle {

/// Piecewise cubic Hermite interpolant on strictly increasing knots.
class CubicHermite {
public:
    struct Value {
        double value;
        double rate;
        double accel;
    };

    /// Explicit knot slopes. Throws std::invalid_argument on size mismatch,
    /// fewer than two knots or non-increasing times.
    CubicHermite(std::vector<double> t, std::vector<double> y, std::vector<double> slope);

    /// Slopes from three-point finite differences (one-sided at the ends).
    static CubicHermite from_samples(std::vector<double> t, std::vector<double> y);

    /// Evaluates at `t`; times outside the knot range are clamped.
    Value operator()(double t) const;

    double t_begin() const { return t_.front(); }
    double t_end() const { return t_.back(); }

private:
    std::vector<double> t_, y_, m_;
};

/// Named columns sampled on a common time grid, e.g. (t, tau_g, tau_w).
class SampledSchedule {
public:
    SampledSchedule() = default;
    SampledSchedule(std::vector<std::string> columns, std::vector<std::vector<double>> rows);

    const std::vector<std::string>& columns() const { return columns_; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }
    bool empty() const { return rows_.empty(); }

    /// Index of a named column, or -1.
    int column(const std::string& name) const;

    /// Time column; the first column is always `t`.
    std::vector<double> times() const;
    std::vector<double> values(const std::string& name) const;

    /// True when sample spacing is uniform to a relative 1e-9.
    bool uniform() const;

    bool operator==(const SampledSchedule&) const = default;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<double>> rows_;
};

struct ShapeSample {
    double t = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double beta_dot = 0.0;
    double gamma_dot = 0.0;
};

/// Shape trajectory (beta(t), gamma(t)) interpolated with cubic Hermite pieces
/// that honour the sampled rates. Rates and accelerations returned by at() and
/// accel() are derivatives of the same interpolant.
class ShapePath {
public:
    explicit ShapePath(std::vector<ShapeSample> samples);

    const std::vector<ShapeSample>& samples() const { return samples_; }
    double t_begin() const { return samples_.front().t; }
    double t_end() const { return samples_.back().t; }

    bool uniform() const;
    /// Mean sample spacing.
    double step() const;

    /// Endpoints agree in angles and rates within `tol`.
    bool closed(double tol = 1e-12) const;

    ShapeState at(double t) const;
    /// (beta_ddot, gamma_ddot)
    std::pair<double, double> accel(double t) const;

    /// Same geometric path traversed backwards in time over the same interval.
    ShapePath reversed() const;
    /// The path followed by `times - 1` further copies, each shifted in time
    /// and continuing from the previous end angles. Requires a closed path.
    ShapePath repeated(int times) const;

private:
    std::vector<ShapeSample> samples_;
    CubicHermite beta_, gamma_;
};

}  // namespace gyrobundle
