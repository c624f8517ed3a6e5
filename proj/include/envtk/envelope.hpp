// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "envtk/errors.hpp"
#include "envtk/grid_fn.hpp"
#include "envtk/tolerance.hpp"

namespace envtk {

/// A parametrised decision problem: an objective f(x,t) over an arbitrary
/// action set (actions are opaque to the toolkit) and a type t in [0,1].
///
/// If the analytic type partial is absent, a central finite difference with
/// step fd_step is substituted; reports record the substitution.
template <class Action>
struct DecisionProblem {
    std::function<double(const Action&, double)> objective;
    std::function<double(const Action&, double)> t_partial{};
    std::optional<double> t_partial_bound{};
    double fd_step = kDefaultFdStep;

    bool has_analytic_partial() const { return static_cast<bool>(t_partial); }

    double eval(const Action& x, double t) const {
        double v;
        try {
            v = objective(x, t);
        } catch (const Error&) {
            throw;
        } catch (const std::exception& e) {
            throw EvaluationError(std::string("objective failed: ") + e.what());
        }
        if (!std::isfinite(v))
            throw EvaluationError("objective returned a non-finite value");
        return v;
    }

    /// f_2(x,t): analytic when supplied, else a central difference clamped
    /// to [0,1] near the endpoints.
    double partial(const Action& x, double t) const {
        if (t_partial) {
            const double v = t_partial(x, t);
            if (!std::isfinite(v))
                throw EvaluationError("t_partial returned a non-finite value");
            return v;
        }
        const double hi = std::min(t + fd_step, 1.0);
        const double lo = std::max(t - fd_step, 0.0);
        return (eval(x, hi) - eval(x, lo)) / (hi - lo);
    }
};

/// A decision rule sampled on the ambient uniform grid: one action per grid
/// point. The grid size is the sample count.
template <class Action>
struct DecisionRule {
    std::vector<Action> actions;

    std::size_t size() const { return actions.size(); }
    double step() const { return 1.0 / static_cast<double>(actions.size() - 1); }
    double t(std::size_t i) const {
        return static_cast<double>(i) / static_cast<double>(actions.size() - 1);
    }

    template <class F>
    static DecisionRule sample(std::size_t n_points, F&& f) {
        if (n_points < 3)
            throw ArgumentError("DecisionRule: need at least 3 grid points");
        std::vector<Action> a;
        a.reserve(n_points);
        for (std::size_t i = 0; i < n_points; ++i)
            a.push_back(f(static_cast<double>(i) / static_cast<double>(n_points - 1)));
        return DecisionRule{std::move(a)};
    }
};

/// Caller's assertion that a rule is Lipschitz with the given constant.
/// Required by the classical first-order condition.
struct LipschitzDeclaration {
    double constant;
};

/// Largest grid slope |X(t_{i+1})-X(t_i)|/h of a numeric-action rule.
template <class Action>
    requires std::convertible_to<Action, double>
double grid_lipschitz_estimate(const DecisionRule<Action>& rule) {
    const double h = rule.step();
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < rule.size(); ++i) {
        const double a = static_cast<double>(rule.actions[i]);
        const double b = static_cast<double>(rule.actions[i + 1]);
        worst = std::max(worst, std::abs(b - a) / h);
    }
    return worst;
}

template <class Action>
    requires std::convertible_to<Action, double>
std::optional<std::string> lipschitz_warning(const DecisionRule<Action>& rule,
                                             LipschitzDeclaration decl) {
    const double est = grid_lipschitz_estimate(rule);
    if (est > decl.constant * (1.0 + 1e-9)) {
        std::ostringstream os;
        os << "grid slope " << est << " exceeds declared Lipschitz constant "
           << decl.constant;
        return os.str();
    }
    return std::nullopt;
}

/// V_X(t_i) = f(X(t_i), t_i).
template <class Action>
GridFn value_function(const DecisionProblem<Action>& p, const DecisionRule<Action>& X) {
    std::vector<double> v(X.size());
    for (std::size_t i = 0; i < X.size(); ++i) {
        try {
            v[i] = p.eval(X.actions[i], X.t(i));
        } catch (const EvaluationError& e) {
            throw EvaluationError(std::string(e.what()) + " at grid index " +
                                  std::to_string(i));
        }
    }
    return GridFn(std::move(v));
}

/// Grid samples of s -> f_2(X(s), s).
template <class Action>
GridFn partial_along_rule(const DecisionProblem<Action>& p, const DecisionRule<Action>& X) {
    std::vector<double> v(X.size());
    for (std::size_t i = 0; i < X.size(); ++i)
        v[i] = p.partial(X.actions[i], X.t(i));
    return GridFn(std::move(v));
}

/// Pointwise defect of the integral representation of the value function:
/// t -> V_X(t) - V_X(0) - integral_0^t f_2(X(s),s) ds.
/// The zero grid function means the representation holds at grid scale.
template <class Action>
GridFn envelope_residual(const DecisionProblem<Action>& p, const DecisionRule<Action>& X) {
    const GridFn value = value_function(p, X);
    const GridFn accumulated = cumulative_integral(partial_along_rule(p, X));
    std::vector<double> r(value.size());
    for (std::size_t i = 0; i < value.size(); ++i)
        r[i] = value[i] - value[0] - accumulated[i];
    return GridFn(std::move(r));
}

/// Finite-difference estimates of d/dm of the aggregate mimicking payoff
/// m -> integral_r^t f(X(s+m), s) ds at m = 0.
struct OuterFocSample {
    double r = 0.0;
    double t = 0.0;
    double m = 0.0;
    double symmetric = 0.0;
    double forward = 0.0;
    double backward = 0.0;
};

namespace detail {

// Grid samples of s -> f(X(s + shift), s); entries whose shifted index falls
// off the grid are padded with the nearest valid value. Integration ranges
// are restricted by the callers so padding is never integrated over.
template <class Action>
GridFn shifted_payoff(const DecisionProblem<Action>& p, const DecisionRule<Action>& X,
                      std::ptrdiff_t shift) {
    const auto n = static_cast<std::ptrdiff_t>(X.size());
    std::vector<double> v(X.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::ptrdiff_t j = std::clamp<std::ptrdiff_t>(i + shift, 0, n - 1);
        v[static_cast<std::size_t>(i)] =
            p.eval(X.actions[static_cast<std::size_t>(j)],
                   X.t(static_cast<std::size_t>(i)));
    }
    return GridFn(std::move(v));
}

} // namespace detail

template <class Action>
OuterFocSample outer_foc_estimate(const DecisionProblem<Action>& p,
                                  const DecisionRule<Action>& X, double r, double t,
                                  double m) {
    if (!(r > 0.0 && r < 1.0 && t > 0.0 && t < 1.0))
        throw DomainError("outer_foc: r and t must lie in (0,1)");
    const GridFn probe = value_function(p, X); // validates grid, reused below
    const auto k = static_cast<std::ptrdiff_t>(probe.shift_steps(m));
    const double exact_m = static_cast<double>(k) * probe.step();
    if (r - exact_m < -1e-12 || t + exact_m > 1.0 + 1e-12)
        throw DomainError("outer_foc: shift leaves [0,1]");

    const GridFn up = detail::shifted_payoff(p, X, k);
    const GridFn down = detail::shifted_payoff(p, X, -k);
    const double base = integrate(probe, r, t);
    const double plus = integrate(up, r, t);
    const double minus = integrate(down, r, t);

    OuterFocSample s;
    s.r = r;
    s.t = t;
    s.m = exact_m;
    s.forward = (plus - base) / exact_m;
    s.backward = (base - minus) / exact_m;
    s.symmetric = (plus - minus) / (2.0 * exact_m);
    return s;
}

/// Symmetric finite-difference estimate of the outer first-order condition
/// functional at (r,t). Zero for every (r,t) iff the condition holds.
template <class Action>
double outer_foc_residual(const DecisionProblem<Action>& p, const DecisionRule<Action>& X,
                          double r, double t, double m) {
    return outer_foc_estimate(p, X, r, t, m).symmetric;
}

/// Symmetric finite difference of m -> f(X(t+m), t) at m = 0. Meaningful
/// only for rules the caller asserts to be Lipschitz.
template <class Action>
double classical_foc_residual(const DecisionProblem<Action>& p,
                              const DecisionRule<Action>& X, LipschitzDeclaration,
                              double t, double m) {
    const GridFn probe = value_function(p, X);
    const std::size_t k = probe.shift_steps(m);
    const std::size_t i = probe.aligned_index(t);
    if (i < k || i + k >= X.size())
        throw DomainError("classical_foc: shift leaves [0,1]");
    const double exact_m = static_cast<double>(k) * probe.step();
    const double up = p.eval(X.actions[i + k], t);
    const double down = p.eval(X.actions[i - k], t);
    return (up - down) / (2.0 * exact_m);
}

/// Gap between the two sides of the interchange identity that links the
/// outer first-order functional with the value-function increment:
/// | outer_foc(r,t,m) - [ V_X(t) - V_X(r) - integral_r^t f_2(X(s),s) ds ] |.
template <class Action>
double identity_residual(const DecisionProblem<Action>& p, const DecisionRule<Action>& X,
                         double r, double t, double m) {
    const double lhs = outer_foc_residual(p, X, r, t, m);
    const GridFn value = value_function(p, X);
    const GridFn partials = partial_along_rule(p, X);
    const double rhs = value.value_at(t) - value.value_at(r) - integrate(partials, r, t);
    return std::abs(lhs - rhs);
}

enum class EquivalenceVerdict { BothHold, BothFail, Inconsistent };

inline const char* to_string(EquivalenceVerdict v) {
    switch (v) {
        case EquivalenceVerdict::BothHold: return "BothHold";
        case EquivalenceVerdict::BothFail: return "BothFail";
        case EquivalenceVerdict::Inconsistent: return "Inconsistent";
    }
    return "?";
}

/// Joint numeric evidence on the envelope representation and the outer
/// first-order condition for one problem/rule pair.
struct EnvelopeReport {
    GridFn value_fn;
    GridFn envelope_residual;
    std::vector<OuterFocSample> outer_foc_residuals;
    std::pair<double, double> max_abs_residuals{0.0, 0.0}; // (envelope, outer)
    EquivalenceVerdict verdict = EquivalenceVerdict::Inconsistent;

    // diagnostics
    double envelope_tolerance = 0.0;
    double outer_tolerance = 0.0;
    bool used_fd_partial = false;
    double value_total_variation = 0.0;
    std::vector<std::string> warnings;
};

struct TheoremCheckOptions {
    /// Residual tolerance override. Default: 10 * sup|f_2| * h for both
    /// residual families (both carry O(h) discretisation error).
    std::optional<Tolerance> tolerance{};
    /// (r,t) mesh values; all pairs r < t are sampled. Default 0.1..0.9.
    std::vector<double> mesh{};
    /// Shift for the outer derivative estimate. Default: one grid step.
    std::optional<double> shift{};
    /// Replace the symmetric estimate with a two-shift (m, 2m) Richardson
    /// extrapolation to expose the convergence order.
    bool richardson = false;
};

/// Evaluates both sides of the equivalence between the envelope formula and
/// the outer first-order condition on one concrete problem/rule pair.
template <class Action>
EnvelopeReport check_main_theorem(const DecisionProblem<Action>& p,
                                  const DecisionRule<Action>& X,
                                  const TheoremCheckOptions& options = {}) {
    EnvelopeReport report{value_function(p, X), envelope_residual(p, X)};
    report.used_fd_partial = !p.has_analytic_partial();
    report.value_total_variation = total_variation(report.value_fn);

    const double h = X.step();
    double max_env = 0.0;
    for (double v : report.envelope_residual.values())
        max_env = std::max(max_env, std::abs(v));

    std::vector<double> mesh = options.mesh;
    if (mesh.empty())
        for (int i = 1; i <= 9; ++i) mesh.push_back(0.1 * i);

    const double m = options.shift.value_or(h);
    double max_outer = 0.0;
    for (std::size_t a = 0; a < mesh.size(); ++a) {
        for (std::size_t b = a + 1; b < mesh.size(); ++b) {
            OuterFocSample s = outer_foc_estimate(p, X, mesh[a], mesh[b], m);
            if (options.richardson && mesh[a] - 2.0 * m >= 0.0 &&
                mesh[b] + 2.0 * m <= 1.0) {
                const OuterFocSample s2 = outer_foc_estimate(p, X, mesh[a], mesh[b], 2.0 * m);
                s.symmetric = (4.0 * s.symmetric - s2.symmetric) / 3.0;
            }
            max_outer = std::max(max_outer, std::abs(s.symmetric));
            report.outer_foc_residuals.push_back(s);
        }
    }
    report.max_abs_residuals = {max_env, max_outer};

    double env_tol, outer_tol;
    if (options.tolerance) {
        env_tol = outer_tol = options.tolerance->abs_tol();
    } else {
        double bound = 0.0;
        if (p.t_partial_bound) {
            bound = *p.t_partial_bound;
        } else {
            const GridFn partials = partial_along_rule(p, X);
            for (double v : partials.values())
                bound = std::max(bound, std::abs(v));
        }
        double scale = 1.0;
        for (double v : report.value_fn.values()) scale = std::max(scale, std::abs(v));
        const double floor = 1e-12 * scale;
        env_tol = outer_tol = std::max(10.0 * bound * h, floor);
    }
    report.envelope_tolerance = env_tol;
    report.outer_tolerance = outer_tol;

    const bool env_ok = max_env <= env_tol;
    const bool outer_ok = max_outer <= outer_tol;
    report.verdict = (env_ok == outer_ok)
                         ? (env_ok ? EquivalenceVerdict::BothHold
                                   : EquivalenceVerdict::BothFail)
                         : EquivalenceVerdict::Inconsistent;
    return report;
}

template <class Action>
EnvelopeReport check_main_theorem(const DecisionProblem<Action>& p,
                                  const DecisionRule<Action>& X, Tolerance tol) {
    TheoremCheckOptions o;
    o.tolerance = tol;
    return check_main_theorem(p, X, o);
}

/// Builds the rule t -> maximizer(t) on an n-point grid and runs the main
/// theorem check on it; an optimal rule should yield BothHold.
///
/// When candidate actions are supplied, each grid type spot-checks the
/// asserted maximizer against them and a candidate beating it by more than
/// the tolerance raises NotOptimalError.
template <class Action>
EnvelopeReport check_necessity(const DecisionProblem<Action>& p,
                               const std::function<Action(double)>& maximizer,
                               std::size_t n_points, Tolerance tol,
                               const std::vector<Action>& candidates = {}) {
    auto X = DecisionRule<Action>::sample(n_points, maximizer);
    for (std::size_t i = 0; i < X.size(); ++i) {
        const double t = X.t(i);
        const double best = p.eval(X.actions[i], t);
        for (const Action& c : candidates) {
            const double v = p.eval(c, t);
            if (v > best + tol.abs_tol())
                throw NotOptimalError("check_necessity: candidate beats asserted "
                                      "maximizer at t = " + std::to_string(t));
        }
    }
    return check_main_theorem(p, X, tol);
}

} // namespace envtk
