// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "envtk/errors.hpp"
#include "envtk/grid_fn.hpp"
#include "envtk/tolerance.hpp"

namespace envtk {

/// Preferences f(y,p,t) over outcomes, payments and types. The payoff must
/// be strictly decreasing and onto R in the payment; this is probed by
/// sampling, and a detected violation is a hard error.
template <class Outcome>
struct Preference {
    std::function<double(const Outcome&, double, double)> payoff;    // f(y,p,t)
    std::function<double(const Outcome&, double, double)> t_partial; // f_3(y,p,t)
    double t_partial_bound = 0.0;
    std::pair<double, double> payment_range_hint{0.0, 1.0};

    double eval(const Outcome& y, double p, double t) const {
        const double v = payoff(y, p, t);
        if (!std::isfinite(v))
            throw EvaluationError("payoff returned a non-finite value");
        return v;
    }

    double partial(const Outcome& y, double p, double t) const {
        const double v = t_partial(y, p, t);
        if (!std::isfinite(v))
            throw EvaluationError("t_partial returned a non-finite value");
        return v;
    }
};

/// Grid-sampled allocation of outcomes to types, with an optional partial
/// order on outcomes (std::partial_ordering::unordered marks incomparable
/// pairs).
template <class Outcome>
struct Allocation {
    std::vector<Outcome> outcomes;
    std::function<std::partial_ordering(const Outcome&, const Outcome&)> order_cmp{};

    std::size_t size() const { return outcomes.size(); }
    double step() const { return 1.0 / static_cast<double>(outcomes.size() - 1); }
    double t(std::size_t i) const {
        return static_cast<double>(i) / static_cast<double>(outcomes.size() - 1);
    }

    template <class F>
    static Allocation sample(std::size_t n_points, F&& f) {
        if (n_points < 3)
            throw ArgumentError("Allocation: need at least 3 grid points");
        std::vector<Outcome> out;
        out.reserve(n_points);
        for (std::size_t i = 0; i < n_points; ++i)
            out.push_back(f(static_cast<double>(i) / static_cast<double>(n_points - 1)));
        return Allocation{std::move(out)};
    }
};

struct ProbeConfig {
    std::size_t payment_lattice = 33; // payments probed per (y,t) sample
    std::size_t type_samples = 9;
    std::size_t outcome_samples = 9;
};

/// Samples the preference over the allocation's outcomes: the payoff must
/// strictly decrease along a payment lattice and the type derivative must
/// respect its declared bound. Violations raise ModelViolationError.
template <class Outcome>
void preflight_check(const Preference<Outcome>& pref, const Allocation<Outcome>& alloc,
                     const ProbeConfig& cfg = {}) {
    if (alloc.size() < 3)
        throw ArgumentError("preflight_check: allocation too small");
    const auto [lo, hi] = pref.payment_range_hint;
    const double width = (hi > lo) ? (hi - lo) : 1.0;
    const double base = std::min(lo, hi);

    const std::size_t oc = std::min(cfg.outcome_samples, alloc.size());
    const std::size_t tc = std::min(cfg.type_samples, alloc.size());
    for (std::size_t a = 0; a < oc; ++a) {
        const std::size_t i = a * (alloc.size() - 1) / (oc > 1 ? oc - 1 : 1);
        const Outcome& y = alloc.outcomes[i];
        for (std::size_t b = 0; b < tc; ++b) {
            const double t =
                static_cast<double>(b) / static_cast<double>(tc > 1 ? tc - 1 : 1);
            double prev = pref.eval(y, base, t);
            for (std::size_t j = 1; j < cfg.payment_lattice; ++j) {
                const double p =
                    base + width * static_cast<double>(j) /
                               static_cast<double>(cfg.payment_lattice - 1);
                const double cur = pref.eval(y, p, t);
                if (!(cur < prev))
                    throw ModelViolationError(
                        "preflight: payoff not strictly decreasing in payment near p = " +
                        std::to_string(p));
                prev = cur;
            }
            const double d = pref.partial(y, base + 0.5 * width, t);
            if (std::abs(d) > pref.t_partial_bound * (1.0 + 1e-9) + 1e-12)
                throw ModelViolationError("preflight: |t_partial| exceeds declared bound");
        }
    }
}

/// Solves payoff(y, p, t) = target for the payment p by bracket expansion
/// (doubling outward from the range hint) followed by bisection.
/// If 60 doublings cannot bracket the target, the payoff is not onto the
/// required range and NotOntoError is raised.
template <class Outcome>
double invert_in_payment(const Preference<Outcome>& pref, const Outcome& y, double t,
                         double target, Tolerance tol) {
    double lo = std::min(pref.payment_range_hint.first, pref.payment_range_hint.second);
    double hi = std::max(pref.payment_range_hint.first, pref.payment_range_hint.second);
    if (lo == hi) hi = lo + 1.0;

    // payoff decreases in p: value at lo is the high end.
    double width = hi - lo;
    int doublings = 0;
    while (pref.eval(y, lo, t) < target) {
        lo -= width;
        width *= 2.0;
        if (++doublings > 60)
            throw NotOntoError("invert_in_payment: target above attainable payoffs");
    }
    width = hi - lo;
    doublings = 0;
    while (pref.eval(y, hi, t) > target) {
        hi += width;
        width *= 2.0;
        if (++doublings > 60)
            throw NotOntoError("invert_in_payment: target below attainable payoffs");
    }

    for (int iter = 0; iter < 2000; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double v = pref.eval(y, mid, t);
        if (tol.within(v - target, target)) return mid;
        if (v > target)
            lo = mid;
        else
            hi = mid;
        if (!(hi - lo > 0.0)) break;
    }
    throw NumericError("invert_in_payment: bisection failed to meet tolerance");
}

/// Constructs a payment schedule P on the allocation's grid so that the
/// mechanism (Y,P) satisfies the envelope formula with initial value k.
///
/// Marches the integral equation W(t) = k + integral_0^t chi(W(s),s) ds with
/// fixed-step Heun (predictor-corrector), where chi(w,t) is the type
/// derivative evaluated at the payment that attains payoff w; then maps W
/// back through payment inversion. Payment brackets are re-expanded at every
/// stage so the result is deterministic and restart-safe.
template <class Outcome>
GridFn synthesize_payments(const Preference<Outcome>& pref, const Allocation<Outcome>& Y,
                           double k, Tolerance tol, const ProbeConfig& probe = {}) {
    preflight_check(pref, Y, probe);

    const std::size_t n = Y.size();
    const double h = Y.step();
    const double chi_cap = pref.t_partial_bound * (1.0 + tol.rel_tol()) + 1e-12;
    // tol governs the residual scale the caller will accept; the inversions
    // themselves are log-cost and always done tight
    const Tolerance inv_tol(1e-11, 1e-11);

    auto chi = [&](double w, std::size_t i) {
        const Outcome& y = Y.outcomes[i];
        const double t = Y.t(i);
        const double p = invert_in_payment(pref, y, t, w, inv_tol);
        const double d = pref.partial(y, p, t);
        if (std::abs(d) > chi_cap)
            throw ModelViolationError(
                "synthesize_payments: |chi| exceeds the declared type-derivative bound");
        return d;
    };

    std::vector<double> w(n);
    w[0] = k;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d0 = chi(w[i], i);
        const double predicted = w[i] + h * d0;
        const double d1 = chi(predicted, i + 1);
        w[i + 1] = w[i] + 0.5 * h * (d0 + d1);
    }

    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i)
        p[i] = invert_in_payment(pref, Y.outcomes[i], Y.t(i), w[i], inv_tol);
    return GridFn(std::move(p));
}

/// Residual of the envelope formula for an explicit payment schedule:
/// t -> f(Y(t),P(t),t) - k - integral_0^t f_3(Y(s),P(s),s) ds.
template <class Outcome>
GridFn verify_envelope_consistency(const Preference<Outcome>& pref,
                                   const Allocation<Outcome>& Y, const GridFn& P,
                                   double k) {
    if (Y.size() != P.size())
        throw ArgumentError("verify_envelope_consistency: grid mismatch");
    std::vector<double> d(Y.size());
    for (std::size_t i = 0; i < Y.size(); ++i)
        d[i] = pref.partial(Y.outcomes[i], P[i], Y.t(i));
    const GridFn accumulated = cumulative_integral(GridFn(std::move(d)));

    std::vector<double> r(Y.size());
    for (std::size_t i = 0; i < Y.size(); ++i)
        r[i] = pref.eval(Y.outcomes[i], P[i], Y.t(i)) - k - accumulated[i];
    return GridFn(std::move(r));
}

} // namespace envtk
