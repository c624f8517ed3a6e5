// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <compare>
#include <vector>

#include "envtk/screening.hpp"

using namespace envtk;

namespace {

std::partial_ordering real_order(const double& a, const double& b) {
    if (a < b) return std::partial_ordering::less;
    if (a > b) return std::partial_ordering::greater;
    return std::partial_ordering::equivalent;
}

Preference<double> quasilinear_bilinear() {
    Preference<double> pref;
    pref.payoff = [](const double& y, double p, double t) { return y * t - p; };
    pref.t_partial = [](const double& y, double, double) { return y; };
    pref.t_partial_bound = 1.0;
    pref.payment_range_hint = {-2.0, 2.0};
    return pref;
}

Allocation<double> ordered_allocation(std::size_t n, double (*fn)(double)) {
    auto a = Allocation<double>::sample(n, fn);
    a.order_cmp = real_order;
    return a;
}

// Brute-force oracle for step allocations: payments are constant per level
// (taxation principle); search each level's payment on a fine lattice,
// minimizing the worst mimicking gain against all earlier levels, then
// re-check IC exhaustively. Independent of the synthesis path.
struct StepOracle {
    GridFn payments;
    double worst_violation;
};

StepOracle brute_force_step_payments(const Preference<double>& pref,
                                     const Allocation<double>& Y, double k) {
    const std::size_t n = Y.size();
    // collect levels in grid order
    std::vector<double> levels;
    std::vector<std::size_t> level_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (levels.empty() || Y.outcomes[i] != levels.back())
            levels.push_back(Y.outcomes[i]);
        level_of[i] = levels.size() - 1;
    }
    // first level pinned by V(0) = k
    std::vector<double> level_payment(levels.size());
    level_payment[0] = invert_in_payment(pref, levels[0], 0.0, k, Tolerance(1e-12));

    for (std::size_t l = 1; l < levels.size(); ++l) {
        // lattice search around the previous level's payment
        double best_p = 0.0;
        double best_gain = std::numeric_limits<double>::infinity();
        for (int step = 0; step <= 2000; ++step) {
            const double p = level_payment[l - 1] - 1.0 + step * 1e-3;
            double gain = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (level_of[i] > l) continue;
                const double t = Y.t(i);
                const double own =
                    pref.eval(levels[level_of[i]],
                              level_of[i] < l ? level_payment[level_of[i]] : p, t);
                for (std::size_t l2 = 0; l2 <= l; ++l2) {
                    const double other =
                        pref.eval(levels[l2], l2 < l ? level_payment[l2] : p, t);
                    gain = std::max(gain, other - own);
                }
            }
            if (gain < best_gain) {
                best_gain = gain;
                best_p = p;
            }
        }
        level_payment[l] = best_p;
    }

    std::vector<double> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = level_payment[level_of[i]];
    GridFn payments(std::move(p));
    const ICReport rep =
        ic_report(Mechanism<double>(pref, Y, payments), Tolerance(1e-9));
    return {std::move(payments), rep.worst_violation};
}

} // namespace

TEST_CASE("ic_report on the textbook quadratic menu", "[screening]") {
    const auto pref = quasilinear_bilinear();
    auto Y = ordered_allocation(101, [](double t) { return t; });
    const GridFn P = GridFn::sample(101, [](double t) { return t * t / 2.0; });
    const auto rep = ic_report(Mechanism<double>(pref, Y, P), Tolerance(1e-4));
    // oracle: U(r,t) - U(t,t) = -(t-r)^2/2 <= 0
    CHECK(rep.is_ic);
    CHECK(rep.worst_violation <= 1e-4);

    // free allocation: everyone grabs the top outcome
    const GridFn zero = GridFn::constant(101, 0.0);
    const auto rep2 = ic_report(Mechanism<double>(pref, Y, zero), Tolerance(1e-6));
    CHECK_FALSE(rep2.is_ic);
    // worst gain: type t mimicking r=1 gains t - t^2; max 0.25 at t=0.5
    CHECK(rep2.worst_violation == Catch::Approx(0.25).margin(1e-6));
    // the specific pair (r,t) = (1, 0.1): gain = 0.1 - 0.01 = 0.09
    CHECK(rep2.at(100, 10) - rep2.at(10, 10) == Catch::Approx(0.09).margin(1e-12));

    // constant mechanisms are trivially IC with zero violation
    auto Yc = ordered_allocation(101, [](double) { return 0.5; });
    const GridFn Pc = GridFn::constant(101, 0.2);
    const auto rep3 = ic_report(Mechanism<double>(pref, Yc, Pc), Tolerance(1e-12));
    CHECK(rep3.is_ic);
    CHECK(rep3.worst_violation == 0.0);
}

TEST_CASE("ic diagonal dominance mirrors is_ic", "[screening]") {
    const auto pref = quasilinear_bilinear();
    auto Y = ordered_allocation(51, [](double t) { return t; });
    const GridFn P = GridFn::sample(51, [](double t) { return t * t / 2.0; });
    const auto rep = ic_report(Mechanism<double>(pref, Y, P), Tolerance(1e-6));
    for (std::size_t t = 0; t < rep.n; ++t)
        for (std::size_t r = 0; r < rep.n; ++r)
            CHECK(rep.at(r, t) <= rep.at(t, t) + 1e-6);
}

TEST_CASE("single_crossing_differences_check", "[screening]") {
    const auto pref = quasilinear_bilinear();
    std::vector<double> t_grid;
    for (int i = 0; i <= 40; ++i) t_grid.push_back(i / 40.0);
    const Tolerance tol(1e-9);

    using Pair = std::pair<OutcomePayment<double>, OutcomePayment<double>>;

    // Delta(t) = t - 0.5 crosses once from below
    std::vector<Pair> ok{{{0.0, 0.0}, {1.0, 0.5}}};
    const auto rep = single_crossing_differences_check<double>(
        pref, std::span<const Pair>(ok), real_order, t_grid, false, tol);
    CHECK(rep.holds);

    // mislabeled ordering is an argument error
    std::vector<Pair> bad_order{{{1.0, 0.0}, {0.0, 0.5}}};
    CHECK_THROWS_AS(single_crossing_differences_check<double>(
                        pref, std::span<const Pair>(bad_order), real_order, t_grid,
                        false, tol),
                    ArgumentError);

    // oscillating difference violates single crossing
    Preference<double> wavy;
    wavy.payoff = [](const double& y, double p, double t) {
        return y * std::sin(6.0 * t) - p;
    };
    wavy.t_partial = [](const double& y, double, double t) {
        return 6.0 * y * std::cos(6.0 * t);
    };
    wavy.t_partial_bound = 6.0;
    std::vector<Pair> osc{{{0.0, 0.0}, {1.0, 0.0}}};
    const auto rep2 = single_crossing_differences_check<double>(
        wavy, std::span<const Pair>(osc), real_order, t_grid, false, tol);
    CHECK_FALSE(rep2.holds);
    REQUIRE(rep2.violation.has_value());
    // sin(6t) > 0 before t = pi/6, < 0 after
    CHECK(rep2.violation->t_broken > 3.14159 / 6.0);
}

TEST_CASE("strict mode arms inside the dead zone", "[screening]") {
    // Delta(t) = -t: starts at 0 (dead zone) then goes negative
    Preference<double> pref;
    pref.payoff = [](const double& y, double p, double t) { return -y * t - p; };
    pref.t_partial = [](const double& y, double, double) { return -y; };
    pref.t_partial_bound = 1.0;
    std::vector<double> t_grid{0.0, 0.25, 0.5, 0.75, 1.0};
    using Pair = std::pair<OutcomePayment<double>, OutcomePayment<double>>;
    std::vector<Pair> pairs{{{0.0, 0.0}, {1.0, 0.0}}};
    const Tolerance tol(1e-9);

    const auto weak = single_crossing_differences_check<double>(
        pref, std::span<const Pair>(pairs), real_order, t_grid, false, tol);
    CHECK(weak.holds); // never strictly positive, so nothing to defend

    const auto strict = single_crossing_differences_check<double>(
        pref, std::span<const Pair>(pairs), real_order, t_grid, true, tol);
    CHECK_FALSE(strict.holds); // armed at Delta(0) = 0, broken later
}

TEST_CASE("is_nondecreasing", "[screening]") {
    auto inc = ordered_allocation(21, [](double t) { return t; });
    CHECK(is_nondecreasing(inc).nondecreasing);

    auto dec = ordered_allocation(21, [](double t) { return 1.0 - t; });
    const auto rep = is_nondecreasing(dec);
    CHECK_FALSE(rep.nondecreasing);
    REQUIRE(rep.violation.has_value());
    CHECK(rep.violation->first == 0);
    CHECK(rep.violation->second == 1);

    // incomparable everywhere is vacuously non-decreasing
    auto free = Allocation<double>::sample(21, [](double t) { return t; });
    free.order_cmp = [](const double&, const double&) {
        return std::partial_ordering::unordered;
    };
    CHECK(is_nondecreasing(free).nondecreasing);

    auto no_cmp = Allocation<double>::sample(21, [](double t) { return t; });
    CHECK_THROWS_AS(is_nondecreasing(no_cmp), ArgumentError);
}

TEST_CASE("implement_increasing: identity allocation", "[screening]") {
    const auto pref = quasilinear_bilinear();
    auto Y = ordered_allocation(201, [](double t) { return t; });
    const double h = Y.step();
    auto [P, rep] = implement_increasing(pref, Y, 0.0, Tolerance(10.0 * h));
    CHECK(rep.is_ic);
    // oracle: Mussa-Rosen closed form P = t^2/2
    for (std::size_t i = 0; i < P.size(); i += 20)
        CHECK(P[i] == Catch::Approx(P.t(i) * P.t(i) / 2.0).margin(5.0 * h));
}

TEST_CASE("implement_increasing: cubic payment allocation", "[screening]") {
    Preference<double> pref;
    pref.payoff = [](const double& y, double p, double t) { return y * t - p * p * p; };
    pref.t_partial = [](const double& y, double, double) { return y; };
    pref.t_partial_bound = 1.0;
    pref.payment_range_hint = {-2.0, 2.0};
    auto Y = ordered_allocation(201, [](double t) { return t; });
    const double h = Y.step();
    auto [P, rep] = implement_increasing(pref, Y, 0.0, Tolerance(10.0 * h));
    CHECK(rep.is_ic);
    for (std::size_t i = 0; i < P.size(); i += 20)
        CHECK(P[i] == Catch::Approx(std::cbrt(P.t(i) * P.t(i) / 2.0)).margin(5.0 * h));
}

TEST_CASE("implement_increasing: two-level step allocation", "[screening]") {
    const auto pref = quasilinear_bilinear();
    auto Y = ordered_allocation(201, [](double t) { return t >= 0.5 ? 1.0 : 0.0; });
    const double h = Y.step();
    auto [P, rep] = implement_increasing(pref, Y, 0.0, Tolerance(10.0 * h));
    CHECK(rep.is_ic);
    // oracle: P = Y(t)*t - int_0^t Y = 0 below the step, 0.5 above
    for (std::size_t i = 0; i < P.size(); i += 20) {
        const double expect = P.t(i) >= 0.5 ? 0.5 : 0.0;
        CHECK(P[i] == Catch::Approx(expect).margin(5.0 * h));
    }
}

TEST_CASE("implement_increasing rejects bad allocations", "[screening]") {
    const auto pref = quasilinear_bilinear();
    auto dec = ordered_allocation(21, [](double t) { return 1.0 - t; });
    CHECK_THROWS_AS(implement_increasing(pref, dec, 0.0, Tolerance(1e-6)),
                    PreconditionError);

    auto free = Allocation<double>::sample(21, [](double t) { return t; });
    free.order_cmp = [](const double& a, const double& b) {
        if (a == b) return std::partial_ordering::equivalent;
        return std::partial_ordering::unordered;
    };
    CHECK_THROWS_AS(implement_increasing(pref, free, 0.0, Tolerance(1e-6)),
                    PreconditionError);
}

TEST_CASE("step allocations match the brute-force payment search", "[screening]") {
    const auto pref = quasilinear_bilinear();
    for (int k_levels : {2, 4, 8}) {
        auto Y = ordered_allocation(101, [](double) { return 0.0; });
        const int kl = k_levels;
        Y = Allocation<double>::sample(101, [kl](double t) {
            const int level = std::min(kl - 1, static_cast<int>(t * kl));
            return static_cast<double>(level) / (kl - 1);
        });
        Y.order_cmp = real_order;
        const double h = Y.step();

        auto [P, rep] = implement_increasing(pref, Y, 0.0, Tolerance(10.0 * h));
        const auto oracle = brute_force_step_payments(pref, Y, 0.0);
        CHECK(std::abs(rep.worst_violation - oracle.worst_violation) <= 10.0 * h);
        CHECK(rep.is_ic);
    }
}

TEST_CASE("taxation principle: equal outcomes get equal payments", "[screening]") {
    const auto pref = quasilinear_bilinear();
    auto Y = ordered_allocation(101, [](double t) { return t >= 0.5 ? 1.0 : 0.0; });
    auto [P, rep] = implement_increasing(pref, Y, 0.0, Tolerance(0.05));
    REQUIRE(rep.is_ic);
    for (std::size_t i = 0; i + 1 < P.size(); ++i) {
        if (Y.outcomes[i] == Y.outcomes[i + 1])
            CHECK(std::abs(P[i + 1] - P[i]) <= 0.05 + 1e-9);
    }
}

TEST_CASE("converse_check", "[screening]") {
    const auto pref = quasilinear_bilinear();

    // constructed IC mechanisms pass
    auto Y = ordered_allocation(101, [](double t) { return t; });
    auto [P, rep] = implement_increasing(pref, Y, 0.0, Tolerance(0.1));
    const auto conv =
        converse_check(Mechanism<double>(pref, Y, P), Tolerance(0.1));
    CHECK(conv.verdict == ConverseVerdict::OK);
    CHECK(conv.ic);
    CHECK(conv.scd_hypothesis_holds);

    // decreasing allocation: IC must fail, implication vacuous, verdict OK
    auto dec = ordered_allocation(101, [](double t) { return 1.0 - t; });
    for (double p0 : {0.0, 0.3}) {
        const GridFn P2 = GridFn::constant(101, p0);
        const auto conv2 =
            converse_check(Mechanism<double>(pref, dec, P2), Tolerance(1e-6));
        CHECK_FALSE(conv2.ic);
        CHECK(conv2.verdict == ConverseVerdict::OK);
    }
}
