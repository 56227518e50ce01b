#include <doctest.h>

#include <cmath>
#include <random>

#include "slicesim/policy.hpp"
#include "test_util.hpp"

using namespace slicesim;
using namespace slicesim::test;

TEST_CASE("heterogeneity_ratio") {
    const ResourceVector equal = heterogeneity_ratio(vec({1, 1, 1}));
    CHECK((equal == vec({3, 3, 3})).all());

    CHECK((heterogeneity_ratio(vec({1.0})) == vec({1.0})).all());

    const ResourceVector skewed = heterogeneity_ratio(vec({1, 2, 1}));
    CHECK(near(skewed[0], 4.0));
    CHECK(near(skewed[1], 2.0));
    CHECK(near(skewed[2], 4.0));

    CHECK_THROWS_AS(heterogeneity_ratio(vec({1, 0, 1})), std::invalid_argument);
}

TEST_CASE("linear normalized utilization floors the scaled load") {
    const ResourceVector ones = vec({1, 1, 1});
    CHECK((lin_normalized_utilization(vec({0, 0, 0}), ones, 100.0, 3) == levels({0, 0, 0})).all());
    // sqrt(300) = 17.3205...: 0.5 -> 8.66, 0.2 -> 3.46
    CHECK((lin_normalized_utilization(vec({0.5, 0.2, 0.0}), ones, 100.0, 3) ==
           levels({8, 3, 0})).all());
    CHECK((lin_normalized_utilization(ones, ones, 100.0, 3) == levels({17, 17, 17})).all());
    // Perfect square: theta * m = 36 makes the full-load level exact.
    CHECK((lin_normalized_utilization(ones, ones, 12.0, 3) == levels({6, 6, 6})).all());

    CHECK_THROWS_AS(lin_normalized_utilization(vec({0.5}), vec({1.0}), 0.5, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(lin_normalized_utilization(vec({1.5}), vec({1.0}), 100.0, 1),
                    std::invalid_argument);
}

TEST_CASE("linear admission cost matches the hand-computed example") {
    const ResourceVector kappa = vec({3, 3, 3});
    CHECK(lin_admission_cost(levels({0, 0, 0}), vec({0.7, 0.1, 0.9}), kappa, 3) == 0.0);
    // max(8, 3, 0) * sqrt(2) * 0.1 = 0.8 * sqrt(2)
    CHECK(near(lin_admission_cost(levels({8, 3, 0}), vec({0.1, 0.1, 0.1}), kappa, 3),
               0.8 * std::sqrt(2.0)));
    CHECK(lin_admission_cost(levels({5, 5, 5}), vec({0, 0, 0}), kappa, 3) == 0.0);
    CHECK_THROWS_AS(lin_admission_cost(levels({1, 1}), vec({0.1, 0.1, 0.1}), kappa, 3),
                    std::invalid_argument);
}

TEST_CASE("exponential normalized utilization floors the scaled load") {
    const ResourceVector ones = vec({1, 1, 1});
    const ResourceVector kappa = vec({3, 3, 3});
    CHECK((exp_normalized_utilization(vec({0, 0, 0}), ones, 100.0, kappa) ==
           levels({0, 0, 0})).all());
    // ln(300) = 5.7038...: 0.5 -> 2.85, 0.2 -> 1.14
    CHECK((exp_normalized_utilization(vec({0.5, 0.2, 0.0}), ones, 100.0, kappa) ==
           levels({2, 1, 0})).all());
    CHECK((exp_normalized_utilization(ones, ones, 100.0, kappa) == levels({5, 5, 5})).all());
    // log2(300) = 8.2288...
    CHECK((exp_normalized_utilization(ones, ones, 100.0, kappa, LogBase::Two) ==
           levels({8, 8, 8})).all());

    CHECK_THROWS_AS(exp_normalized_utilization(vec({0.5}), vec({1.0}), 0.9, vec({1.0})),
                    std::invalid_argument);
}

TEST_CASE("exponential admission cost matches the hand-computed example") {
    CHECK(exp_admission_cost(levels({0, 0, 0}), vec({0.9, 0.9, 0.9})) == 0.0);
    CHECK(near(exp_admission_cost(levels({2, 1, 0}), vec({0.1, 0.1, 0.1})), 0.4));
    CHECK(near(exp_admission_cost(levels({10, 0, 0}), vec({1, 0, 0})), 1023.0));
    CHECK_THROWS_AS(exp_admission_cost(levels({1, 1}), vec({0.1, 0.1, 0.1})),
                    std::invalid_argument);
}

TEST_CASE("decide combines the revenue test with the capacity fit") {
    SystemState state(vec({1, 1, 1}));
    // lifetime 5 x unit value 2 x (weights . demand) 0.5 = revenue 5
    const SliceRequest request = make_request(1, 1, 5, vec({0.5, 0.5, 0.5}), 2.0);
    CHECK(near(request.revenue, 5.0));
    CHECK(decide(request, 1.13, state).accepted);

    SliceRequest cheap = make_request(2, 1, 1, vec({0.4, 0.4, 0.4}), 1.0);
    CHECK(cheap.revenue < 1.13);
    CHECK_FALSE(decide(cheap, 1.13, state).accepted);

    state.commit(3, vec({0.5, 0.5, 0.5}), 9);
    SliceRequest wide = make_request(4, 1, 1, vec({0.6, 0.0, 0.0}), 100.0);
    CHECK_FALSE(decide(wide, 0.0, state).accepted);

    CHECK_THROWS_AS(decide(cheap, -1.0, state), std::invalid_argument);
}

TEST_CASE("a request exactly at the threshold is admitted") {
    SystemState state(vec({1, 1, 1}));
    SliceRequest request = make_request(1, 1, 2, vec({0.3, 0.3, 0.3}), 1.0);
    CHECK(decide(request, request.revenue, state).accepted);
}

TEST_CASE("admission costs are monotone in utilization and demand") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const ResourceVector ones = vec({1, 1, 1});
    const ResourceVector kappa = vec({3, 3, 3});
    const double theta = 100.0;

    for (int trial = 0; trial < 500; ++trial) {
        ResourceVector u = vec({uniform(rng), uniform(rng), uniform(rng)}) * 0.9;
        ResourceVector r = vec({uniform(rng), uniform(rng), uniform(rng)});
        const Eigen::Index j = static_cast<Eigen::Index>(rng() % 3);

        const LevelVector q0 = lin_normalized_utilization(u, ones, theta, 3);
        const LevelVector e0 = exp_normalized_utilization(u, ones, theta, kappa);
        const double lin0 = lin_admission_cost(q0, r, kappa, 3);
        const double exp0 = exp_admission_cost(e0, r);

        ResourceVector u_up = u;
        u_up[j] = u[j] + (1.0 - u[j]) * uniform(rng);
        const LevelVector q1 = lin_normalized_utilization(u_up, ones, theta, 3);
        const LevelVector e1 = exp_normalized_utilization(u_up, ones, theta, kappa);
        CHECK((q1 >= q0).all());
        CHECK((e1 >= e0).all());
        CHECK(lin_admission_cost(q1, r, kappa, 3) >= lin0);
        CHECK(exp_admission_cost(e1, r) >= exp0);

        ResourceVector r_up = r;
        r_up[j] += uniform(rng);
        CHECK(lin_admission_cost(q0, r_up, kappa, 3) >= lin0);
        CHECK(exp_admission_cost(e0, r_up) >= exp0);
    }
}

TEST_CASE("cost scaling in demand: LinRP homogeneous, ExpRP additive") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    const ResourceVector kappa = vec({3, 3, 3});
    for (int trial = 0; trial < 200; ++trial) {
        const LevelVector q = levels({static_cast<int>(rng() % 18), static_cast<int>(rng() % 18),
                                      static_cast<int>(rng() % 18)});
        const ResourceVector r1 = vec({uniform(rng), uniform(rng), uniform(rng)});
        const ResourceVector r2 = vec({uniform(rng), uniform(rng), uniform(rng)});
        const double c = 0.1 + 5.0 * uniform(rng);
        CHECK(near(lin_admission_cost(q, (c * r1).eval(), kappa, 3),
                   c * lin_admission_cost(q, r1, kappa, 3), 1e-9 * (1.0 + c)));
        CHECK(near(exp_admission_cost(q, (r1 + r2).eval()),
                   exp_admission_cost(q, r1) + exp_admission_cost(q, r2), 1e-6));
    }
}

TEST_CASE("levels at full utilization hit the exact floor bound") {
    const ResourceVector capacities = vec({1.0, 2.0, 0.5});
    const ResourceVector kappa = heterogeneity_ratio(capacities);
    for (double theta : {2.0, 10.0, 100.0, 1000.0, 3000.0}) {
        const LevelVector lin = lin_normalized_utilization(capacities, capacities, theta, 3);
        const int expected_lin = static_cast<int>(std::floor(std::sqrt(theta * 3.0)));
        CHECK((lin == expected_lin).all());

        const LevelVector exp = exp_normalized_utilization(capacities, capacities, theta, kappa);
        for (Eigen::Index j = 0; j < 3; ++j)
            CHECK(exp[j] == static_cast<int>(std::floor(std::log(theta * kappa[j]))));
    }
}

TEST_CASE("PolicyParams validation") {
    CHECK_NOTHROW(PolicyParams::fcfs(3));
    CHECK_NOTHROW(PolicyParams::linrp(100.0, vec({3, 3, 3})));
    CHECK_NOTHROW(PolicyParams::exprp(100.0, vec({3, 3, 3})));
    CHECK_THROWS_AS(PolicyParams::linrp(1.0, vec({3, 3, 3})), std::invalid_argument);
    CHECK_THROWS_AS(PolicyParams::exprp(0.5, vec({3, 3, 3})), std::invalid_argument);
    CHECK_THROWS_AS(PolicyParams::linrp(100.0, vec({0.5, 3, 3})), std::invalid_argument);
}

TEST_CASE("policy names round-trip") {
    for (PolicyKind kind : {PolicyKind::FCFS, PolicyKind::LinRP, PolicyKind::ExpRP})
        CHECK(parse_policy(policy_name(kind)) == kind);
    CHECK_THROWS_AS(parse_policy("greedy"), std::invalid_argument);
}
