#include "gyrobundle/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace gyrobundle {

namespace {

void check_knots(const std::vector<double>& t) {
    if (t.size() < 2) {
        throw std::invalid_argument("schedule needs at least two samples");
    }
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (!(t[i] > t[i - 1])) {
            throw std::invalid_argument("schedule times must be strictly increasing");
        }
    }
}

bool uniform_spacing(const std::vector<double>& t) {
    if (t.size() < 2) {
        return true;
    }
    const double h = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
    for (std::size_t i = 1; i < t.size(); ++i) {
        if (std::abs((t[i] - t[i - 1]) - h) > 1e-9 * std::max(std::abs(h), 1e-300)) {
            return false;
        }
    }
    return true;
}

}  // namespace

CubicHermite::CubicHermite(std::vector<double> t, std::vector<double> y,
                           std::vector<double> slope)
    : t_(std::move(t)), y_(std::move(y)), m_(std::move(slope)) {
    if (y_.size() != t_.size() || m_.size() != t_.size()) {
        throw std::invalid_argument("CubicHermite: size mismatch");
    }
    check_knots(t_);
}

CubicHermite CubicHermite::from_samples(std::vector<double> t, std::vector<double> y) {
    if (y.size() != t.size()) {
        throw std::invalid_argument("CubicHermite: size mismatch");
    }
    check_knots(t);
    const std::size_t n = t.size();
    std::vector<double> m(n);
    if (n == 2) {
        m[0] = m[1] = (y[1] - y[0]) / (t[1] - t[0]);
        return CubicHermite(std::move(t), std::move(y), std::move(m));
    }
    // Three-point derivative of the interpolating parabola through (i-1, i, i+1).
    auto parabola_slope = [&](std::size_t i0, std::size_t at) {
        const double x0 = t[i0], x1 = t[i0 + 1], x2 = t[i0 + 2];
        const double x = t[at];
        const double l0 = ((x - x1) + (x - x2)) / ((x0 - x1) * (x0 - x2));
        const double l1 = ((x - x0) + (x - x2)) / ((x1 - x0) * (x1 - x2));
        const double l2 = ((x - x0) + (x - x1)) / ((x2 - x0) * (x2 - x1));
        return l0 * y[i0] + l1 * y[i0 + 1] + l2 * y[i0 + 2];
    };
    m[0] = parabola_slope(0, 0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        m[i] = parabola_slope(i - 1, i);
    }
    m[n - 1] = parabola_slope(n - 3, n - 1);
    return CubicHermite(std::move(t), std::move(y), std::move(m));
}

CubicHermite::Value CubicHermite::operator()(double t) const {
    t = std::clamp(t, t_.front(), t_.back());
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = static_cast<std::size_t>(std::distance(t_.begin(), it));
    i = std::clamp<std::size_t>(i, 1, t_.size() - 1) - 1;

    const double h = t_[i + 1] - t_[i];
    const double s = (t - t_[i]) / h;
    const double y0 = y_[i], y1 = y_[i + 1];
    const double m0 = m_[i] * h, m1 = m_[i + 1] * h;

    const double s2 = s * s, s3 = s2 * s;
    const double value = (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 +
                         (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
    const double d1 = (6 * s2 - 6 * s) * y0 + (3 * s2 - 4 * s + 1) * m0 +
                      (-6 * s2 + 6 * s) * y1 + (3 * s2 - 2 * s) * m1;
    const double d2 = (12 * s - 6) * y0 + (6 * s - 4) * m0 + (-12 * s + 6) * y1 +
                      (6 * s - 2) * m1;
    return {value, d1 / h, d2 / (h * h)};
}

// --- SampledSchedule --------------------------------------------------------

SampledSchedule::SampledSchedule(std::vector<std::string> columns,
                                 std::vector<std::vector<double>> rows)
    : columns_(std::move(columns)), rows_(std::move(rows)) {
    if (columns_.empty() || columns_.front() != "t") {
        throw std::invalid_argument("schedule: first column must be 't'");
    }
    for (const auto& r : rows_) {
        if (r.size() != columns_.size()) {
            throw std::invalid_argument("schedule: row width does not match columns");
        }
    }
    if (!rows_.empty()) {
        check_knots(times());
    }
}

int SampledSchedule::column(const std::string& name) const {
    auto it = std::find(columns_.begin(), columns_.end(), name);
    return it == columns_.end() ? -1 : static_cast<int>(std::distance(columns_.begin(), it));
}

std::vector<double> SampledSchedule::times() const { return values("t"); }

std::vector<double> SampledSchedule::values(const std::string& name) const {
    const int c = column(name);
    if (c < 0) {
        throw std::invalid_argument("schedule: no column '" + name + "'");
    }
    std::vector<double> out;
    out.reserve(rows_.size());
    for (const auto& r : rows_) {
        out.push_back(r[static_cast<std::size_t>(c)]);
    }
    return out;
}

bool SampledSchedule::uniform() const { return uniform_spacing(times()); }

// --- ShapePath --------------------------------------------------------------

namespace {

std::vector<double> field(const std::vector<ShapeSample>& s, double ShapeSample::*m) {
    std::vector<double> out;
    out.reserve(s.size());
    for (const auto& x : s) {
        out.push_back(x.*m);
    }
    return out;
}

}  // namespace

ShapePath::ShapePath(std::vector<ShapeSample> samples)
    : samples_(std::move(samples)),
      beta_(field(samples_, &ShapeSample::t), field(samples_, &ShapeSample::beta),
            field(samples_, &ShapeSample::beta_dot)),
      gamma_(field(samples_, &ShapeSample::t), field(samples_, &ShapeSample::gamma),
             field(samples_, &ShapeSample::gamma_dot)) {}

bool ShapePath::uniform() const { return uniform_spacing(field(samples_, &ShapeSample::t)); }

double ShapePath::step() const {
    return (t_end() - t_begin()) / static_cast<double>(samples_.size() - 1);
}

bool ShapePath::closed(double tol) const {
    const ShapeSample& a = samples_.front();
    const ShapeSample& b = samples_.back();
    return std::abs(a.beta - b.beta) <= tol && std::abs(a.gamma - b.gamma) <= tol &&
           std::abs(a.beta_dot - b.beta_dot) <= tol &&
           std::abs(a.gamma_dot - b.gamma_dot) <= tol;
}

ShapeState ShapePath::at(double t) const {
    const auto b = beta_(t);
    const auto g = gamma_(t);
    return {b.value, g.value, b.rate, g.rate};
}

std::pair<double, double> ShapePath::accel(double t) const {
    return {beta_(t).accel, gamma_(t).accel};
}

ShapePath ShapePath::reversed() const {
    std::vector<ShapeSample> out;
    out.reserve(samples_.size());
    const double t0 = t_begin(), t1 = t_end();
    for (auto it = samples_.rbegin(); it != samples_.rend(); ++it) {
        out.push_back({t0 + (t1 - it->t), it->beta, it->gamma, -it->beta_dot, -it->gamma_dot});
    }
    return ShapePath(std::move(out));
}

ShapePath ShapePath::repeated(int times) const {
    if (times < 1) {
        throw std::invalid_argument("ShapePath::repeated: count must be positive");
    }
    if (!closed(1e-9)) {
        throw std::invalid_argument("ShapePath::repeated: path is not closed");
    }
    const double period = t_end() - t_begin();
    std::vector<ShapeSample> out = samples_;
    for (int k = 1; k < times; ++k) {
        for (std::size_t i = 1; i < samples_.size(); ++i) {
            ShapeSample s = samples_[i];
            s.t += k * period;
            out.push_back(s);
        }
    }
    return ShapePath(std::move(out));
}

}  // namespace gyrobundle
