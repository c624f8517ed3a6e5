// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "envtk/blackwell.hpp"
#include "envtk/errors.hpp"
#include "envtk/grid_fn.hpp"
#include "envtk/payment.hpp"
#include "envtk/rng.hpp"
#include "envtk/screening.hpp"
#include "envtk/tolerance.hpp"

namespace envtk {

/// Indirect value of information V(mu, t): the buyer's optimized expected
/// payoff at belief mu and type t. Must be convex in mu; convexity is probed
/// on sampled mixtures, not proved.
struct ValueOfInformation {
    std::function<double(const Belief&, double)> value;     // V(mu, t)
    std::function<double(const Belief&, double)> t_partial; // V_2(mu, t)
    double bound = 0.0;                                     // sup |V_2|
};

/// Euclidean-norm scoring value V(mu,t) = t * ||mu||_2, the value of
/// announcing the posterior as a forecast under the quadratic-norm rule.
inline ValueOfInformation scoring_l2_value() {
    auto norm = [](const Belief& mu) {
        double s = 0.0;
        for (std::size_t w = 0; w < mu.n_states(); ++w) s += mu[w] * mu[w];
        return std::sqrt(s);
    };
    return ValueOfInformation{
        [norm](const Belief& mu, double t) { return t * norm(mu); },
        [norm](const Belief& mu, double) { return norm(mu); },
        1.0};
}

/// Buyer preference over (signal, payment, type): f(y,p,t) = g(E_y[V(.,t)], p).
struct InfoPreference {
    std::function<double(double, double)> g;           // g(v, p)
    std::function<double(double, double)> g_v_partial; // g_1(v, p), optional
    double g_v_partial_bound = 0.0;
    ValueOfInformation voi;
};

/// E_y[V(., t)] = sum_i w_i V(mu_i, t).
inline double expected_value(const ValueOfInformation& voi, const PosteriorDistribution& y,
                             double t) {
    return y.expect([&](const Belief& mu) { return voi.value(mu, t); });
}

/// Registry of posterior distributions; payment synthesis sees only opaque
/// handles into it and stays ignorant of the Blackwell structure.
class PosteriorRegistry {
public:
    std::size_t add(PosteriorDistribution y) {
        items_.push_back(std::move(y));
        return items_.size() - 1;
    }
    const PosteriorDistribution& at(std::size_t handle) const {
        if (handle >= items_.size())
            throw ArgumentError("PosteriorRegistry: bad handle");
        return items_[handle];
    }
    std::size_t size() const { return items_.size(); }

private:
    std::vector<PosteriorDistribution> items_;
};

using InfoOutcome = std::size_t;

namespace detail {

inline void probe_value_convexity(const ValueOfInformation& voi,
                                  const PosteriorRegistry& reg) {
    std::mt19937_64 gen(0x5eedu);
    std::vector<const Belief*> beliefs;
    for (std::size_t h = 0; h < reg.size(); ++h)
        for (const Belief& mu : reg.at(h).support()) beliefs.push_back(&mu);
    if (beliefs.size() < 2) return;

    constexpr double lambdas[] = {0.25, 0.5, 0.75};
    constexpr double types[] = {0.0, 0.5, 1.0};
    const std::size_t trials = std::min<std::size_t>(64, beliefs.size() * 4);
    for (std::size_t k = 0; k < trials; ++k) {
        const Belief& a = *beliefs[uniform_index(gen, beliefs.size())];
        const Belief& b = *beliefs[uniform_index(gen, beliefs.size())];
        if (a.n_states() != b.n_states()) continue;
        for (double lam : lambdas) {
            std::vector<double> mix(a.n_states());
            for (std::size_t w = 0; w < a.n_states(); ++w)
                mix[w] = lam * a[w] + (1.0 - lam) * b[w];
            const Belief m(std::move(mix));
            for (double t : types) {
                const double lhs = voi.value(m, t);
                const double rhs = lam * voi.value(a, t) + (1.0 - lam) * voi.value(b, t);
                if (lhs > rhs + 1e-10)
                    throw ModelViolationError(
                        "info preference: value of information is not convex in the belief");
            }
        }
    }
}

} // namespace detail

/// Assembles the synthesis-layer preference for an information market.
/// Outcome handles index the supplied registry, which must outlive the
/// returned object. The type derivative uses the chain rule when g_1 is
/// supplied, else a central finite difference in t.
inline Preference<InfoOutcome> build_info_preference(
    const InfoPreference& ip, std::shared_ptr<const PosteriorRegistry> registry,
    std::pair<double, double> payment_hint = {0.0, 1.0}) {
    if (!registry || registry->size() == 0)
        throw ArgumentError("build_info_preference: empty registry");
    detail::probe_value_convexity(ip.voi, *registry);

    const auto voi = ip.voi;
    const auto g = ip.g;
    Preference<InfoOutcome> pref;
    pref.payoff = [registry, voi, g](const InfoOutcome& h, double p, double t) {
        return g(expected_value(voi, registry->at(h), t), p);
    };
    if (ip.g_v_partial) {
        const auto g1 = ip.g_v_partial;
        pref.t_partial = [registry, voi, g, g1](const InfoOutcome& h, double p, double t) {
            const PosteriorDistribution& y = registry->at(h);
            const double v = expected_value(voi, y, t);
            const double dv = y.expect([&](const Belief& mu) { return voi.t_partial(mu, t); });
            return g1(v, p) * dv;
        };
    } else {
        pref.t_partial = [registry, voi, g](const InfoOutcome& h, double p, double t) {
            const PosteriorDistribution& y = registry->at(h);
            const double step = kDefaultFdStep;
            const double hi = std::min(t + step, 1.0);
            const double lo = std::max(t - step, 0.0);
            return (g(expected_value(voi, y, hi), p) - g(expected_value(voi, y, lo), p)) /
                   (hi - lo);
        };
    }
    pref.t_partial_bound = ip.g_v_partial_bound * ip.voi.bound;
    pref.payment_range_hint = payment_hint;

    // The strict-decrease-in-p probe mirrors the synthesis layer's preflight;
    // run it here on a coarse lattice so assembly fails fast.
    const Belief& probe_mu = registry->at(0).belief(0);
    (void)probe_mu;
    const double v0 = expected_value(ip.voi, registry->at(0), 0.5);
    double prev = ip.g(v0, payment_hint.first);
    const double width = payment_hint.second - payment_hint.first;
    for (int j = 1; j < 9; ++j) {
        const double p = payment_hint.first + width * j / 8.0;
        const double cur = ip.g(v0, p);
        if (!(cur < prev))
            throw ModelViolationError("info preference: g is not strictly decreasing in p");
        prev = cur;
    }
    return pref;
}

/// Result of pricing a Blackwell-increasing information menu.
struct MenuResult {
    GridFn payments;
    ICReport ic;
    SharingReport sharing;
};

/// Prices an information allocation indexed by the type grid: checks that
/// consecutive entries are Blackwell-nondecreasing (transitivity extends the
/// check to all pairs), synthesizes envelope payments with the Blackwell
/// order as the outcome comparator, and certifies IC and sharing-proofness.
inline MenuResult price_information_menu(const InfoPreference& ip,
                                         const std::vector<PosteriorDistribution>& alloc,
                                         double k, Tolerance tol,
                                         std::pair<double, double> payment_hint = {0.0, 1.0}) {
    if (alloc.size() < 3)
        throw ArgumentError("price_information_menu: need at least 3 grid points");

    for (std::size_t i = 0; i + 1 < alloc.size(); ++i) {
        if (blackwell_leq(alloc[i], alloc[i + 1], tol).feasible) continue;
        const bool reversed = blackwell_leq(alloc[i + 1], alloc[i], tol).feasible;
        throw PreconditionError(
            std::string("price_information_menu: allocation is ") +
            (reversed ? "Blackwell-decreasing" : "Blackwell-incomparable") +
            " at consecutive pair (" + std::to_string(i) + "," + std::to_string(i + 1) +
            ")");
    }

    auto registry = std::make_shared<PosteriorRegistry>();
    Allocation<InfoOutcome> Y;
    Y.outcomes.reserve(alloc.size());
    for (const auto& y : alloc) Y.outcomes.push_back(registry->add(y));

    // Pairwise order decisions are LP solves; memoize them since the
    // monotonicity scan and the sharing check revisit pairs.
    auto cache = std::make_shared<std::map<std::pair<InfoOutcome, InfoOutcome>,
                                           std::partial_ordering>>();
    const std::shared_ptr<const PosteriorRegistry> reg = registry;
    Y.order_cmp = [reg, cache, tol](const InfoOutcome& a, const InfoOutcome& b) {
        if (a == b) return std::partial_ordering::equivalent;
        const auto key = std::minmax(a, b);
        auto it = cache->find(key);
        std::partial_ordering lo_vs_hi = std::partial_ordering::unordered;
        if (it != cache->end()) {
            lo_vs_hi = it->second;
        } else {
            const bool fwd = blackwell_leq(reg->at(key.first), reg->at(key.second), tol).feasible;
            const bool bwd = blackwell_leq(reg->at(key.second), reg->at(key.first), tol).feasible;
            lo_vs_hi = fwd ? (bwd ? std::partial_ordering::equivalent
                                  : std::partial_ordering::less)
                           : (bwd ? std::partial_ordering::greater
                                  : std::partial_ordering::unordered);
            cache->emplace(key, lo_vs_hi);
        }
        if (a < b) return lo_vs_hi;
        if (lo_vs_hi == std::partial_ordering::less) return std::partial_ordering::greater;
        if (lo_vs_hi == std::partial_ordering::greater) return std::partial_ordering::less;
        return lo_vs_hi;
    };

    const Preference<InfoOutcome> pref =
        build_info_preference(ip, registry, payment_hint);
    auto [payments, ic] = implement_increasing(pref, Y, k, tol);
    SharingReport sharing = sharing_proof(std::span(alloc.data(), alloc.size()), tol);
    return MenuResult{std::move(payments), std::move(ic), std::move(sharing)};
}

} // namespace envtk
