// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <string>

#include "envtk/serialize.hpp"

using namespace envtk;

TEST_CASE("EnvelopeReport JSON carries the contract fields", "[serialize]") {
    DecisionProblem<double> p;
    p.objective = [](const double& x, double t) { return x * t; };
    p.t_partial = [](const double& x, double) { return x; };
    const auto X = DecisionRule<double>::sample(11, [](double) { return 0.3; });
    const auto rep = check_main_theorem(p, X);

    const json j = to_json(rep);
    REQUIRE(j.contains("value_fn"));
    REQUIRE(j.contains("envelope_residual"));
    REQUIRE(j.contains("outer_foc_residuals"));
    REQUIRE(j.contains("max_abs_residuals"));
    REQUIRE(j.contains("verdict"));
    CHECK(j["verdict"] == "BothHold");
    CHECK(j["value_fn"]["n_points"] == 11);
    CHECK(j["value_fn"]["values"].size() == 11);
    CHECK(j["max_abs_residuals"].size() == 2);
    CHECK(j["outer_foc_residuals"].size() > 0);
    CHECK(j["outer_foc_residuals"][0].contains("r"));
    CHECK(j["outer_foc_residuals"][0].contains("symmetric"));

    // serialization is deterministic
    CHECK(to_json(rep).dump(2) == j.dump(2));
}

TEST_CASE("ICReport JSON and CSV", "[serialize]") {
    Preference<double> pref;
    pref.payoff = [](const double& y, double p, double t) { return y * t - p; };
    pref.t_partial = [](const double& y, double, double) { return y; };
    pref.t_partial_bound = 1.0;
    pref.payment_range_hint = {-2.0, 2.0};
    auto Y = Allocation<double>::sample(5, [](double t) { return t; });
    const GridFn P = GridFn::constant(5, 0.0);
    const auto rep = ic_report(Mechanism<double>(pref, Y, P), Tolerance(1e-9));

    const json j = to_json(rep);
    REQUIRE(j.contains("mimic_matrix"));
    REQUIRE(j.contains("worst_violation"));
    REQUIRE(j.contains("violating_pairs"));
    REQUIRE(j.contains("is_ic"));
    CHECK(j["mimic_matrix"].size() == 5);
    CHECK(j["is_ic"] == false);

    const std::string matrix_csv = mimic_matrix_csv(rep);
    CHECK(std::count(matrix_csv.begin(), matrix_csv.end(), '\n') == 5);
    const std::string viol_csv = violations_csv(rep);
    CHECK(viol_csv.rfind("r_index,t_index,gain\n", 0) == 0);
    CHECK(std::count(viol_csv.begin(), viol_csv.end(), '\n') ==
          1 + static_cast<long>(rep.violating_pairs.size()));
}

TEST_CASE("PosteriorDistribution JSON schema", "[serialize]") {
    const PosteriorDistribution y(
        {Belief({0.25, 0.75}), Belief({0.75, 0.25})}, {0.5, 0.5});
    const json j = to_json(y);
    REQUIRE(j.contains("mu0"));
    REQUIRE(j.contains("support"));
    REQUIRE(j.contains("weights"));
    CHECK(j["mu0"][0].get<double>() == Catch::Approx(0.5));
    CHECK(j["support"].size() == 2);
    CHECK(j["weights"][0].get<double>() == Catch::Approx(0.5));
}

TEST_CASE("grid CSV layout", "[serialize]") {
    const GridFn v = GridFn::sample(5, [](double t) { return t; });
    const GridFn r = GridFn::constant(5, 0.0);
    const std::string csv = grid_csv({"t", "value", "residual"}, {&v, &r});
    CHECK(csv.rfind("t,value,residual\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);

    CHECK_THROWS_AS(grid_csv({"t"}, {}), ArgumentError);
}

TEST_CASE("certificate CSV is the dense coupling matrix", "[serialize]") {
    const auto none = PosteriorDistribution::point_mass(Belief({0.5, 0.5}));
    const auto full = PosteriorDistribution::full_information(Belief({0.5, 0.5}));
    const auto cert = blackwell_leq(none, full, Tolerance(1e-8));
    REQUIRE(cert.feasible);
    const std::string csv = certificate_csv(cert);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1);
    CHECK(std::count(csv.begin(), csv.end(), ',') == 1);
}
