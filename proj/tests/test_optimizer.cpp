#include "ecosim/optimizer.hpp"

#include "ecosim/errors.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <random>

using namespace ecosim;
using namespace ecotest;

TEST_SUITE("optimizer") {

TEST_CASE("revenue optimum of the worked example") {
    OptimizationResult res = brute_force_revenue_opt(example1());
    CHECK(res.scheme.training_rounds() == std::vector<int>{1, 4, 7, 9, 12, 14, 17});
    CHECK(res.optimality == Optimality::Exact);
    CHECK(res.ties == 1);
    double v = simulate(example1(), res.scheme).average_revenue;
    CHECK(res.objective == doctest::Approx(v).epsilon(1e-12));
}

TEST_CASE("free training means training every round") {
    Instance inst(1.0, 0.2, 0.0, DecayUtility::exp_decay(3.0, 0.5, 0.0),
                  NetworkUtility::linear(1.0, 1.0), Sensitivity::finite(1.0), 0.5, 8);
    OptimizationResult res = brute_force_revenue_opt(inst);
    // training is free and every training weakly raises later proportions;
    // the last round is a revenue tie broken toward not training
    auto rounds = res.scheme.training_rounds();
    CHECK(rounds.size() >= 7);
    for (int t = 1; t <= 7; ++t) CHECK(res.scheme.trains_at(t));
}

TEST_CASE("single-round horizon") {
    Instance inst = example1().with_horizon(1);
    OptimizationResult res = brute_force_revenue_opt(inst);
    CHECK(res.scheme.training_rounds() == std::vector<int>{1});
    CHECK(res.objective == doctest::Approx(1.0 * 1.0 - 0.6 - 0.504));
}

TEST_CASE("capacity cap") {
    CHECK_THROWS_AS(brute_force_revenue_opt(example1().with_horizon(30)), CapacityError);
    BruteForceOptions opts;
    opts.max_horizon = 10;
    CHECK_THROWS_AS(brute_force_revenue_opt(example1().with_horizon(12), opts), CapacityError);
    CHECK_THROWS_AS(price_of_anarchy(example1().with_horizon(30)), CapacityError);
}

TEST_CASE("indifferent users make every scheme tie") {
    // beta = 0 pins every later proportion at 1/2; with free training the
    // revenue is scheme-independent, so all 2^(T-1) schemes tie and the
    // lexicographically smallest wins.
    Instance inst(1.0, 0.2, 0.0, DecayUtility::exp_decay(3.0, 0.5, 0.0),
                  NetworkUtility::linear(1.0, 1.0), Sensitivity::finite(0.0), 1.0, 5);
    OptimizationResult res = brute_force_revenue_opt(inst);
    CHECK(res.ties == 16);
    CHECK(res.scheme.bit_string() == "10000");
}

TEST_CASE("parallel enumeration matches sequential") {
    Instance inst = example1().with_horizon(14);
    OptimizationResult seq = brute_force_revenue_opt(inst);
    BruteForceOptions par;
    par.threads = 4;
    OptimizationResult res = brute_force_revenue_opt(inst, par);
    CHECK(res.scheme == seq.scheme);
    CHECK(res.objective == seq.objective);
    CHECK(res.ties == seq.ties);
}

TEST_CASE("welfare optimum trains every round") {
    OptimizationResult res = brute_force_welfare_opt(example1().with_horizon(12));
    CHECK(res.scheme == all_ones_scheme(12));

    Instance strict = unbounded_poa_instance(10);
    OptimizationResult sres = brute_force_welfare_opt(strict);
    CHECK(sres.scheme == all_ones_scheme(10));
    CHECK(sres.objective == doctest::Approx(10 * 3.0));
}

TEST_CASE("property: brute force dominates random schemes") {
    std::mt19937 rng(606);
    Instance inst = random_eligible_instance(rng, 12);
    OptimizationResult rev = brute_force_revenue_opt(inst);
    OptimizationResult wel = brute_force_welfare_opt(inst);
    for (int it = 0; it < 1000; ++it) {
        TrainingScheme s = random_scheme(rng, 12);
        Trajectory traj = simulate(inst, s);
        CHECK(traj.average_revenue <= rev.objective + 1e-15);
        CHECK(traj.total_welfare <= wel.objective + 1e-12);
    }
}

TEST_CASE("dp approximation beats the guarantee on the worked example") {
    Instance inst = example1();
    double eps = 0.01;  // admissible: bound is ~0.0118 for this instance
    auto bound = arms_eps_bound(inst);
    REQUIRE(bound.has_value());
    CHECK(eps < *bound);
    OptimizationResult approx = arms(inst, eps);
    CHECK(approx.guaranteed);
    CHECK(approx.optimality == Optimality::ApproxEps);
    OptimizationResult exact = brute_force_revenue_opt(inst);
    CHECK(approx.objective >= exact.objective - eps * inst.r * inst.T);
    CHECK(approx.objective <= exact.objective + 1e-15);
    double v = simulate(inst, approx.scheme).average_revenue;
    CHECK(approx.objective == doctest::Approx(v).epsilon(1e-12));
}

TEST_CASE("prohibitive training cost trains once") {
    Instance inst(1.0, 0.1, 25.0, DecayUtility::exp_decay(3.0, 0.5, 0.0),
                  NetworkUtility::linear(1.0, 1.0), Sensitivity::finite(1.0), 1.0, 12);
    OptimizationResult res = arms(inst, 0.01);
    CHECK(res.scheme.training_rounds() == std::vector<int>{1});
}

TEST_CASE("two-round dp against a hand-rolled induction") {
    Instance inst = example1().with_horizon(2);
    double eps = 0.5;
    DpTable table = arms_table(inst, eps);
    CHECK(table.cells() == 3);  // grid {0, 0.5, 1}

    // terminal row is zero
    for (int i = 0; i < 3; ++i)
        for (int s = 0; s <= 2; ++s) CHECK(table.value(i, 3, s) == 0.0);

    // at the last round no future value remains: skip wins (training costs)
    for (int i = 0; i < 3; ++i) {
        for (int s = 0; s <= 1; ++s) {
            CHECK(table.value(i, 2, s) ==
                  doctest::Approx(inst.r * std::min(i * eps, 1.0)));
            CHECK_FALSE(table.train_action(i, 2, s));
        }
    }

    // one round earlier both branches carry the discretized future by hand
    auto cell = [&](double p) { return std::min(2, static_cast<int>(std::floor(p / eps))); };
    for (int i = 0; i < 3; ++i) {
        double p = std::min(i * eps, 1.0);
        double skip = inst.r * p + table.value(cell(transition(inst, p, 0)), 2, 1);
        double train = inst.r * p - inst.c_train + table.value(cell(transition(inst, p, 0)), 2, 1);
        CHECK(table.value(i, 1, 0) == doctest::Approx(std::max(skip, train)));
    }

    // extraction agrees with enumerating both length-2 schemes
    OptimizationResult res = arms(inst, eps);
    double v10 = simulate(inst, scheme_from_rounds(2, {1})).average_revenue;
    double v11 = simulate(inst, scheme_from_rounds(2, {1, 2})).average_revenue;
    CHECK(res.objective == doctest::Approx(std::max(v10, v11)));
}

TEST_CASE("dp rejects a non-positive grid step") {
    CHECK_THROWS_AS(arms(example1(), 0.0), std::invalid_argument);
    CHECK_THROWS_AS(arms(example1(), -0.1), std::invalid_argument);
}

TEST_CASE("property: dp value grows with the proportion cell") {
    std::mt19937 rng(707);
    for (int it = 0; it < 20; ++it) {
        Instance inst = random_eligible_instance(rng, 6 + static_cast<int>(rng() % 6));
        DpTable table = arms_table(inst, 0.05);
        for (int t = 2; t <= inst.T; ++t) {
            for (int s = 0; s <= t - 1; ++s) {
                for (int i = 1; i < table.cells(); ++i) {
                    CHECK(table.value(i, t, s) >= table.value(i - 1, t, s));
                }
            }
        }
    }
}

TEST_CASE("property: dp respects the approximation bound") {
    std::mt19937 rng(808);
    int done = 0;
    while (done < 10) {
        Instance inst = random_eligible_instance(rng, 6 + static_cast<int>(rng() % 7));
        auto bound = arms_eps_bound(inst);
        if (!bound) continue;
        double eps = std::min(0.9 * *bound, 0.2);
        if (!(eps > 1e-5)) continue;  // keep the table desk-sized
        OptimizationResult approx = arms(inst, eps);
        OptimizationResult exact = brute_force_revenue_opt(inst);
        CHECK(approx.guaranteed);
        CHECK(approx.objective >= exact.objective - eps * inst.r * inst.T - 1e-12);
        ++done;
    }
}

TEST_CASE("price of anarchy on the strict-users family") {
    Instance inst = unbounded_poa_instance(20);
    double poa = price_of_anarchy(inst);
    // closed form: T R^c(0) / sum_t R^c(t-1)
    double denom = 0.0;
    for (int t = 1; t <= 20; ++t) denom += 3.0 * std::pow(0.5, t - 1);
    CHECK(poa == doctest::Approx(20 * 3.0 / denom).epsilon(1e-6));
    CHECK(poa == doctest::Approx(10.0).epsilon(1e-4));

    double poa24 = price_of_anarchy(unbounded_poa_instance(24));
    CHECK(poa24 > poa);
}

TEST_CASE("price of anarchy is one on a single-round horizon") {
    CHECK(price_of_anarchy(example1().with_horizon(1)) == doctest::Approx(1.0));
}

TEST_CASE("property: price of anarchy is at least one") {
    std::mt19937 rng(909);
    for (int it = 0; it < 30; ++it) {
        Instance inst = random_eligible_instance(rng, 4 + static_cast<int>(rng() % 7));
        CHECK(price_of_anarchy(inst) >= 1.0 - 1e-12);
    }
}

TEST_CASE("training gap certificate on the worked example") {
    auto cert = training_gap_bound(example1());
    REQUIRE(cert.has_value());
    CHECK(cert->t0 == 8);
    CHECK(cert->fixed_point == doctest::Approx(0.34).epsilon(0.015));
    CHECK(cert->fixed_point < 0.6);
    CHECK(cert->decrease_onset >= 1);
    CHECK(cert->cert_revenue >= 0.0);

    // the cyclic certificate scheme from the analysis: revenue of the
    // 3-cyclic scheme on the cold-start variant, maintenance cost dropped
    Instance cold = example1().with_p1(0.0).with_horizon(cert->t0);
    Trajectory traj = simulate(cold, scheme_from_rounds(cert->t0, {1, 4, 7}));
    double dropped = 0.0;
    for (int t = 0; t < cert->t0; ++t) dropped += traj.v[t] + cold.c_m;
    CHECK(dropped > 0.397);
}

TEST_CASE("no certificate when the platform stays profitable") {
    // decay floor keeps the no-training proportion above c_m / r forever
    Instance inst(1.0, 0.1, 0.5, DecayUtility::exp_decay(3.0, 0.5, 0.4),
                  NetworkUtility::linear(1.0, 1.0), Sensitivity::finite(1.0), 1.0, 20);
    auto cert = training_gap_bound(inst);
    CHECK_FALSE(cert.has_value());
}

TEST_CASE("property: brute optima respect the certified gap") {
    auto cert = training_gap_bound(example1());
    REQUIRE(cert.has_value());
    for (int T : {10, 12, 14}) {
        OptimizationResult res = brute_force_revenue_opt(example1().with_horizon(T));
        auto rounds = res.scheme.training_rounds();
        for (std::size_t i = 0; i + 1 < rounds.size(); ++i) {
            if (rounds[i] <= T - cert->t0) {
                CHECK(rounds[i + 1] - rounds[i] <= cert->t0);
            }
        }
    }
}

}  // TEST_SUITE
