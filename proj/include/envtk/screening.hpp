// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "envtk/errors.hpp"
#include "envtk/grid_fn.hpp"
#include "envtk/payment.hpp"
#include "envtk/tolerance.hpp"

namespace envtk {

/// A direct mechanism: paired allocation and payment schedules on a shared
/// grid, together with the preference they are evaluated under.
template <class Outcome>
struct Mechanism {
    Preference<Outcome> pref;
    Allocation<Outcome> Y;
    GridFn P;

    Mechanism(Preference<Outcome> pref_, Allocation<Outcome> Y_, GridFn P_)
        : pref(std::move(pref_)), Y(std::move(Y_)), P(std::move(P_)) {
        if (Y.size() != P.size())
            throw ArgumentError("Mechanism: allocation and payments on different grids");
    }

    std::size_t size() const { return P.size(); }

    /// U(r,t): payoff of type t reporting r.
    double mimic(std::size_t r, std::size_t t) const {
        return pref.eval(Y.outcomes[r], P[r], Y.t(t));
    }
};

struct ICViolation {
    std::size_t r_index = 0;
    std::size_t t_index = 0;
    double gain = 0.0;
};

/// Exhaustive grid evidence on incentive compatibility: the full n-by-n
/// mimicking matrix U(r,t), the worst mimicking gain, and all pairs whose
/// gain exceeds tolerance in decreasing order.
struct ICReport {
    std::size_t n = 0;
    std::vector<double> mimic_matrix; // row-major, [r*n + t]
    double worst_violation = 0.0;     // max(0, max gain), a magnitude
    std::vector<ICViolation> violating_pairs;
    bool is_ic = false;

    double at(std::size_t r, std::size_t t) const { return mimic_matrix[r * n + t]; }
};

/// Checks the incentive-compatibility inequalities U(t,t) >= U(r,t) on all
/// grid pairs. Exhaustive by design: local checks plus single-crossing are
/// the theory's input, global IC is the conclusion under test.
template <class Outcome>
ICReport ic_report(const Mechanism<Outcome>& m, Tolerance tol) {
    ICReport rep;
    rep.n = m.size();
    rep.mimic_matrix.resize(rep.n * rep.n);
    for (std::size_t r = 0; r < rep.n; ++r)
        for (std::size_t t = 0; t < rep.n; ++t)
            rep.mimic_matrix[r * rep.n + t] = m.mimic(r, t);

    double worst = 0.0;
    for (std::size_t t = 0; t < rep.n; ++t) {
        const double truthful = rep.at(t, t);
        for (std::size_t r = 0; r < rep.n; ++r) {
            const double gain = rep.at(r, t) - truthful;
            worst = std::max(worst, gain);
            if (gain > tol.abs_tol())
                rep.violating_pairs.push_back({r, t, gain});
        }
    }
    rep.worst_violation = std::max(0.0, worst);
    rep.is_ic = rep.worst_violation <= tol.abs_tol();
    std::sort(rep.violating_pairs.begin(), rep.violating_pairs.end(),
              [](const ICViolation& a, const ICViolation& b) {
                  if (a.gain != b.gain) return a.gain > b.gain;
                  if (a.r_index != b.r_index) return a.r_index < b.r_index;
                  return a.t_index < b.t_index;
              });
    return rep;
}

template <class Outcome>
struct OutcomePayment {
    Outcome y;
    double p = 0.0;
};

struct SingleCrossingViolation {
    std::size_t pair_index = 0;
    double t_armed = 0.0; // type at which the difference first counted as >= 0
    double t_broken = 0.0;
};

struct SingleCrossingReport {
    bool holds = true;
    std::optional<SingleCrossingViolation> violation{};
};

/// Verifies single-crossing of t -> f(y',p',t) - f(y,p,t) for each supplied
/// ordered pair: once the difference is (weakly) positive it must not later
/// drop below the negative dead zone. In strict mode a difference inside the
/// dead zone already arms the check.
template <class Outcome, class Cmp>
SingleCrossingReport single_crossing_differences_check(
    const Preference<Outcome>& pref,
    std::span<const std::pair<OutcomePayment<Outcome>, OutcomePayment<Outcome>>> pairs,
    Cmp&& order_cmp, std::span<const double> t_grid, bool strict, Tolerance tol) {
    if (t_grid.size() < 2)
        throw ArgumentError("single_crossing: need at least two type samples");

    for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
        const auto& [low, high] = pairs[idx];
        if (order_cmp(low.y, high.y) != std::partial_ordering::less)
            throw ArgumentError("single_crossing: pair " + std::to_string(idx) +
                                " is not strictly ordered");

        bool armed = false;
        double armed_at = 0.0;
        for (double t : t_grid) {
            const double delta = pref.eval(high.y, high.p, t) - pref.eval(low.y, low.p, t);
            if (armed && delta < -tol.abs_tol())
                return {false, SingleCrossingViolation{idx, armed_at, t}};
            const bool counts_nonneg =
                strict ? (delta >= -tol.abs_tol()) : (delta > tol.abs_tol());
            if (!armed && counts_nonneg) {
                armed = true;
                armed_at = t;
            }
        }
    }
    return {true, std::nullopt};
}

struct MonotonicityReport {
    bool nondecreasing = true;
    /// First grid index pair (i,j), i < j, with Y(t_j) strictly below Y(t_i).
    std::optional<std::pair<std::size_t, std::size_t>> violation{};
};

/// Scans all grid pairs for a comparable strictly decreasing pair.
/// Incomparable pairs do not violate non-decreasingness.
template <class Outcome>
MonotonicityReport is_nondecreasing(const Allocation<Outcome>& Y) {
    if (!Y.order_cmp)
        throw ArgumentError("is_nondecreasing: allocation has no order_cmp");
    for (std::size_t i = 0; i < Y.size(); ++i)
        for (std::size_t j = i + 1; j < Y.size(); ++j)
            if (Y.order_cmp(Y.outcomes[j], Y.outcomes[i]) == std::partial_ordering::less)
                return {false, std::make_pair(i, j)};
    return {true, std::nullopt};
}

/// Synthesizes envelope payments for an increasing allocation and certifies
/// the result with an exhaustive IC check. Requires every pair of allocated
/// outcomes to be comparable (the allocation maps into a chain) and the
/// allocation to be non-decreasing.
template <class Outcome>
std::pair<GridFn, ICReport> implement_increasing(const Preference<Outcome>& pref,
                                                 const Allocation<Outcome>& Y, double k,
                                                 Tolerance tol) {
    if (!Y.order_cmp)
        throw ArgumentError("implement_increasing: allocation has no order_cmp");
    for (std::size_t i = 0; i < Y.size(); ++i) {
        for (std::size_t j = i + 1; j < Y.size(); ++j) {
            const auto c = Y.order_cmp(Y.outcomes[i], Y.outcomes[j]);
            if (c == std::partial_ordering::unordered)
                throw PreconditionError("implement_increasing: incomparable outcomes at grid pair (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");
            if (c == std::partial_ordering::greater)
                throw PreconditionError("implement_increasing: decreasing outcomes at grid pair (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    GridFn P = synthesize_payments(pref, Y, k, tol);
    ICReport rep = ic_report(Mechanism<Outcome>(pref, Y, P), tol);
    return {std::move(P), std::move(rep)};
}

enum class ConverseVerdict { OK, CounterexampleFound };

inline const char* to_string(ConverseVerdict v) {
    return v == ConverseVerdict::OK ? "OK" : "CounterexampleFound";
}

/// Evidence for "incentive-compatible implies non-decreasing".
struct ConverseReport {
    ConverseVerdict verdict = ConverseVerdict::OK;
    bool ic = false;
    double worst_violation = 0.0;
    MonotonicityReport monotonicity{};
    /// Strict single-crossing probe over sampled image pairs; a failed probe
    /// means the converse hypothesis itself is in doubt.
    bool scd_hypothesis_holds = true;
    std::optional<SingleCrossingViolation> scd_violation{};
};

/// Checks the implication (IC mechanism => non-decreasing allocation) on one
/// mechanism. A CounterexampleFound verdict flags either a numeric artifact
/// or a violated hypothesis; the strict single-crossing probe in the report
/// helps tell the two apart.
template <class Outcome>
ConverseReport converse_check(const Mechanism<Outcome>& m, Tolerance tol) {
    if (!m.Y.order_cmp)
        throw ArgumentError("converse_check: allocation has no order_cmp");
    ConverseReport rep;

    // Strict single-crossing on a subsample of the mechanism's own
    // (outcome, payment) image, ordered by the allocation's comparator.
    const std::size_t n = m.size();
    const std::size_t samples = std::min<std::size_t>(n, 9);
    std::vector<std::pair<OutcomePayment<Outcome>, OutcomePayment<Outcome>>> pairs;
    std::vector<double> t_grid;
    for (std::size_t a = 0; a < samples; ++a) {
        const std::size_t i = a * (n - 1) / (samples > 1 ? samples - 1 : 1);
        t_grid.push_back(m.Y.t(i));
        for (std::size_t b = a + 1; b < samples; ++b) {
            const std::size_t j = b * (n - 1) / (samples > 1 ? samples - 1 : 1);
            const auto c = m.Y.order_cmp(m.Y.outcomes[i], m.Y.outcomes[j]);
            if (c == std::partial_ordering::less)
                pairs.push_back({{m.Y.outcomes[i], m.P[i]}, {m.Y.outcomes[j], m.P[j]}});
            else if (c == std::partial_ordering::greater)
                pairs.push_back({{m.Y.outcomes[j], m.P[j]}, {m.Y.outcomes[i], m.P[i]}});
        }
    }
    const SingleCrossingReport scd = single_crossing_differences_check<Outcome>(
        m.pref, std::span(pairs), m.Y.order_cmp, std::span(t_grid), /*strict=*/true, tol);
    rep.scd_hypothesis_holds = scd.holds;
    rep.scd_violation = scd.violation;

    const ICReport icr = ic_report(m, tol);
    rep.ic = icr.is_ic;
    rep.worst_violation = icr.worst_violation;
    rep.monotonicity = is_nondecreasing(m.Y);

    rep.verdict = (rep.ic && !rep.monotonicity.nondecreasing)
                      ? ConverseVerdict::CounterexampleFound
                      : ConverseVerdict::OK;
    return rep;
}

} // namespace envtk
