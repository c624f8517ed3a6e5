// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>

#include "envtk/errors.hpp"

namespace envtk {

/// Absolute/relative tolerance pair. At least one component must be
/// strictly positive.
class Tolerance {
public:
    Tolerance(double abs_tol, double rel_tol = 0.0)
        : abs_tol_(abs_tol), rel_tol_(rel_tol) {
        if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0))
            throw ArgumentError("Tolerance: components must be non-negative");
        if (abs_tol == 0.0 && rel_tol == 0.0)
            throw ArgumentError("Tolerance: at least one component must be positive");
    }

    double abs_tol() const { return abs_tol_; }
    double rel_tol() const { return rel_tol_; }

    /// |deviation| <= abs_tol + rel_tol * |reference|
    bool within(double deviation, double reference = 0.0) const {
        return std::abs(deviation) <= abs_tol_ + rel_tol_ * std::abs(reference);
    }

private:
    double abs_tol_;
    double rel_tol_;
};

} // namespace envtk
