// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "envtk/errors.hpp"

namespace envtk {

/// Outcome of a phase-1 feasibility solve for {x >= 0 : Ax = b}.
struct Phase1Result {
    bool feasible = false;
    std::vector<double> x;        // structural variable values (basic solution)
    double infeasibility = 0.0;   // residual artificial mass
    std::size_t iterations = 0;
};

/// Dense phase-1 simplex with Bland's rule. Decides feasibility of
/// {x >= 0 : Ax = b} by minimising the total artificial mass; the artifact
/// only ever needs desk-scale instances (a few hundred variables), so a
/// dense tableau is deliberate.
///
/// Bland's rule precludes cycling in exact arithmetic; an iteration cap
/// guards the floating-point case and trips NumericError.
inline Phase1Result phase1_feasible(std::size_t n_vars,
                                    const std::vector<std::vector<double>>& rows,
                                    const std::vector<double>& rhs, double feas_tol,
                                    std::size_t max_iterations = 200000) {
    const std::size_t m = rows.size();
    if (rhs.size() != m)
        throw ArgumentError("phase1_feasible: row/rhs size mismatch");
    for (const auto& r : rows)
        if (r.size() != n_vars)
            throw ArgumentError("phase1_feasible: row width mismatch");

    const std::size_t width = n_vars + m + 1; // structurals, artificials, rhs
    std::vector<std::vector<double>> tab(m, std::vector<double>(width, 0.0));
    std::vector<std::size_t> basis(m);

    for (std::size_t i = 0; i < m; ++i) {
        const double sign = (rhs[i] < 0.0) ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n_vars; ++j) tab[i][j] = sign * rows[i][j];
        tab[i][n_vars + i] = 1.0;
        tab[i][width - 1] = sign * rhs[i];
        basis[i] = n_vars + i;
    }

    // Objective row for min(sum of artificials), artificial costs eliminated:
    // obj[j] = sum_i tab[i][j] for structural j; positive entries can reduce
    // the objective.
    std::vector<double> obj(width, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < width; ++j)
            if (j < n_vars || j == width - 1) obj[j] += tab[i][j];

    constexpr double kPivotEps = 1e-11;
    Phase1Result result;

    while (true) {
        // Bland: entering = lowest structural index with positive reduced gain.
        std::size_t enter = width;
        for (std::size_t j = 0; j < n_vars; ++j) {
            if (obj[j] > kPivotEps) {
                enter = j;
                break;
            }
        }
        if (enter == width) break;

        // Ratio test; ties broken by the smallest basic-variable index.
        std::size_t leave = m;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] > kPivotEps) {
                const double ratio = tab[i][width - 1] / tab[i][enter];
                if (leave == m || ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
        }
        if (leave == m) break; // unbounded improving ray cannot occur in phase 1

        const double pivot = tab[leave][enter];
        for (std::size_t j = 0; j < width; ++j) tab[leave][j] /= pivot;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            const double factor = tab[i][enter];
            if (factor == 0.0) continue;
            for (std::size_t j = 0; j < width; ++j)
                tab[i][j] -= factor * tab[leave][j];
        }
        const double ofactor = obj[enter];
        for (std::size_t j = 0; j < width; ++j) obj[j] -= ofactor * tab[leave][j];
        basis[leave] = enter;

        if (++result.iterations > max_iterations)
            throw NumericError("phase1_feasible: iteration cap hit (cycling guard)");
    }

    double artificial_mass = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n_vars) artificial_mass += std::max(0.0, tab[i][width - 1]);

    result.infeasibility = artificial_mass;
    result.feasible = artificial_mass <= feas_tol;
    result.x.assign(n_vars, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n_vars) result.x[basis[i]] = tab[i][width - 1];
    return result;
}

} // namespace envtk
