// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "envtk/errors.hpp"
#include "envtk/tolerance.hpp"

namespace envtk {

/// Default step for central finite differences in the type variable.
inline constexpr double kDefaultFdStep = 1e-4;

/// Real-valued function sampled on a uniform grid over [0,1], endpoints
/// included. The grid step h = 1/(n-1) is implied by the sample count.
///
/// Values are immutable after construction and must be finite; a NaN or
/// infinity anywhere is a hard error, never propagated.
class GridFn {
public:
    explicit GridFn(std::vector<double> values) : values_(std::move(values)) {
        if (values_.size() < 3)
            throw ArgumentError("GridFn: need at least 3 grid points");
        for (double v : values_)
            if (!std::isfinite(v))
                throw EvaluationError("GridFn: non-finite sample value");
    }

    /// Sample f at the n grid points i/(n-1).
    template <class F>
    static GridFn sample(std::size_t n_points, F&& f) {
        if (n_points < 3)
            throw ArgumentError("GridFn: need at least 3 grid points");
        std::vector<double> v(n_points);
        for (std::size_t i = 0; i < n_points; ++i)
            v[i] = f(static_cast<double>(i) / static_cast<double>(n_points - 1));
        return GridFn(std::move(v));
    }

    static GridFn constant(std::size_t n_points, double c) {
        return sample(n_points, [c](double) { return c; });
    }

    std::size_t size() const { return values_.size(); }
    double step() const { return 1.0 / static_cast<double>(values_.size() - 1); }
    double t(std::size_t i) const {
        return static_cast<double>(i) / static_cast<double>(values_.size() - 1);
    }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const { return values_; }

    /// Piecewise-linear interpolation at an arbitrary point of [0,1].
    double value_at(double x) const {
        if (!(x >= 0.0 && x <= 1.0))
            throw DomainError("GridFn: evaluation point outside [0,1]");
        const double n1 = static_cast<double>(values_.size() - 1);
        const double pos = x * n1;
        auto i = static_cast<std::size_t>(pos);
        if (i >= values_.size() - 1) return values_.back();
        const double u = pos - static_cast<double>(i);
        return values_[i] + (values_[i + 1] - values_[i]) * u;
    }

    /// Index of the grid point equal to x, or AlignmentError if x does not
    /// lie on the grid (within a small rounding slack).
    std::size_t aligned_index(double x) const {
        const double n1 = static_cast<double>(values_.size() - 1);
        const double pos = x * n1;
        const double rounded = std::round(pos);
        if (std::abs(pos - rounded) > 1e-9 * std::max(1.0, std::abs(pos)))
            throw AlignmentError("GridFn: point is not grid-aligned");
        if (rounded < 0.0 || rounded > n1)
            throw DomainError("GridFn: point outside [0,1]");
        return static_cast<std::size_t>(rounded);
    }

    /// Number of grid steps in the shift m, or AlignmentError if m is not a
    /// positive integer multiple of the step.
    std::size_t shift_steps(double m) const {
        const double n1 = static_cast<double>(values_.size() - 1);
        const double k = m * n1;
        const double rounded = std::round(k);
        if (rounded < 1.0 || std::abs(k - rounded) > 1e-9 * std::max(1.0, rounded))
            throw AlignmentError("GridFn: shift is not a positive grid multiple");
        if (rounded > n1)
            throw DomainError("GridFn: shift exceeds the domain");
        return static_cast<std::size_t>(rounded);
    }

private:
    std::vector<double> values_;
};

/// Integral of the piecewise-linear interpolant of f over [a,b] (composite
/// trapezoid, with exact handling of non-grid endpoints). Antisymmetric in
/// the endpoints: integrate(f,b,a) == -integrate(f,a,b).
inline double integrate(const GridFn& f, double a, double b) {
    if (!(a >= 0.0 && a <= 1.0) || !(b >= 0.0 && b <= 1.0))
        throw DomainError("integrate: endpoint outside [0,1]");
    if (a == b) return 0.0;
    const double sign = (a <= b) ? 1.0 : -1.0;
    const double lo = std::min(a, b), hi = std::max(a, b);

    const std::size_t n = f.size();
    const double n1 = static_cast<double>(n - 1);
    const double h = 1.0 / n1;

    // Cell index and local coordinate of each endpoint.
    auto cell_of = [&](double x) {
        auto c = static_cast<std::size_t>(x * n1);
        if (c >= n - 1) c = n - 2;
        return c;
    };
    const std::size_t c0 = cell_of(lo), c1 = cell_of(hi);

    // Integral of the linear segment on cell c between local coords u0 <= u1.
    auto piece = [&](std::size_t c, double u0, double u1) {
        const double v0 = f[c], v1 = f[c + 1];
        return h * (v0 * (u1 - u0) + 0.5 * (v1 - v0) * (u1 * u1 - u0 * u0));
    };
    auto local = [&](double x, std::size_t c) {
        return std::clamp(x * n1 - static_cast<double>(c), 0.0, 1.0);
    };

    if (c0 == c1)
        return sign * piece(c0, local(lo, c0), local(hi, c0));

    double total = piece(c0, local(lo, c0), 1.0);
    for (std::size_t c = c0 + 1; c < c1; ++c)
        total += 0.5 * h * (f[c] + f[c + 1]);
    total += piece(c1, 0.0, local(hi, c1));
    return sign * total;
}

/// Cumulative trapezoid antiderivative: F[i] = integral of f over [0, t_i].
/// Consistent with integrate() at grid endpoints.
inline GridFn cumulative_integral(const GridFn& f) {
    const double h = f.step();
    std::vector<double> acc(f.size());
    acc[0] = 0.0;
    for (std::size_t i = 1; i < f.size(); ++i)
        acc[i] = acc[i - 1] + 0.5 * h * (f[i - 1] + f[i]);
    return GridFn(std::move(acc));
}

/// Forward divided difference t -> (f(t+m) - f(t))/m on the truncated domain
/// [0, 1-m]. Entries past the last valid point are padded with the final
/// valid value; n_valid records where the padding starts.
struct DividedDifference {
    GridFn fn;
    std::size_t n_valid;

    bool padded() const { return n_valid < fn.size(); }
};

inline DividedDifference divided_difference(const GridFn& f, double m) {
    const std::size_t k = f.shift_steps(m);
    const std::size_t n = f.size();
    const std::size_t n_valid = n - k;
    const double exact_m = static_cast<double>(k) / static_cast<double>(n - 1);
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n_valid; ++i)
        v[i] = (f[i + k] - f[i]) / exact_m;
    for (std::size_t i = n_valid; i < n; ++i)
        v[i] = v[n_valid - 1];
    return DividedDifference{GridFn(std::move(v)), n_valid};
}

/// Finite-scale stand-in for the upper (Dini) derivative of f at t: the
/// largest signed divided difference over the given steps, looking both ways.
/// Steps must be grid-aligned and listed in decreasing order.
inline double upper_derivative_estimate(const GridFn& f, double t,
                                        std::span<const double> steps) {
    if (steps.empty())
        throw ArgumentError("upper_derivative_estimate: empty step list");
    if (!(t > 0.0 && t < 1.0))
        throw DomainError("upper_derivative_estimate: t must lie in (0,1)");
    for (std::size_t i = 0; i + 1 < steps.size(); ++i)
        if (!(steps[i] > steps[i + 1]))
            throw ArgumentError("upper_derivative_estimate: steps must decrease");

    double best = -std::numeric_limits<double>::infinity();
    const double ft = f.value_at(t);
    for (double m : steps) {
        const std::size_t k = f.shift_steps(m);
        const double exact_m = static_cast<double>(k) / static_cast<double>(f.size() - 1);
        if (t + exact_m > 1.0 + 1e-12 || t - exact_m < -1e-12)
            throw DomainError("upper_derivative_estimate: step leaves [0,1]");
        const double fwd = (f.value_at(std::min(t + exact_m, 1.0)) - ft) / exact_m;
        const double bwd = (ft - f.value_at(std::max(t - exact_m, 0.0))) / exact_m;
        best = std::max({best, fwd, bwd});
    }
    return best;
}

/// Total variation of the grid samples. Diagnostic stand-in for the
/// (undecidable at grid scale) absolute-continuity hypotheses.
inline double total_variation(const GridFn& f) {
    double tv = 0.0;
    for (std::size_t i = 0; i + 1 < f.size(); ++i)
        tv += std::abs(f[i + 1] - f[i]);
    return tv;
}

} // namespace envtk
