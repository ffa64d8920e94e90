/*
 * Copyright (c) 2026 The ipscore Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "ipscore/json_io.hpp"
#include "ipscore/scoring_precise.hpp"

using namespace ipscore;

namespace {

Distribution bern(double x) { return Distribution::bernoulli(OutcomeSpace::binary(), x); }

// grid argmax of the expected score against a fixed binary belief
double grid_argmax_report(const PreciseScoringRule& rule, const Distribution& belief) {
    double best_q = 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= 100; ++i) {
        const double q = i / 100.0;
        const double v = expected_score(rule, bern(q), belief);
        if (v > best) {
            best = v;
            best_q = q;
        }
    }
    return best_q;
}

}  // namespace

TEST_CASE("score evaluation") {
    const auto quad = PreciseScoringRule::quadratic({}, 1.0);
    CHECK(score(quad, bern(0.5), 1) == Catch::Approx(0.5));

    const auto log_rule = PreciseScoringRule::logarithmic({}, 1.0);
    CHECK(score(log_rule, bern(1.0), 1) == Catch::Approx(0.0));
    CHECK(score(log_rule, bern(1.0), 0) == neg_infinity);

    CHECK_THROWS_AS(score(quad, bern(0.5), 2), std::invalid_argument);

    const auto shifted = PreciseScoringRule::quadratic({1.0, -1.0}, 2.0);
    // a_o + b (2 q_o - sum q^2) at q = Bern(0.25)
    const double ssq = 0.25 * 0.25 + 0.75 * 0.75;
    CHECK(score(shifted, bern(0.25), 1) == Catch::Approx(-1.0 + 2.0 * (0.5 - ssq)));
}

TEST_CASE("expected score") {
    const auto quad = PreciseScoringRule::quadratic({}, 1.0);
    CHECK(expected_score(quad, bern(0.5), bern(0.5)) == Catch::Approx(0.5));

    // point-mass belief reduces to the raw score
    const auto log_rule = PreciseScoringRule::logarithmic({}, 1.0);
    CHECK(expected_score(log_rule, bern(0.3), bern(1.0)) == Catch::Approx(std::log(0.3)));
    CHECK(expected_score(log_rule, bern(0.5), bern(0.5)) == Catch::Approx(std::log(0.5)));

    // 0 * (-inf) = 0: belief gives no mass to the -inf outcome
    CHECK(expected_score(log_rule, bern(1.0), bern(1.0)) == Catch::Approx(0.0));
    CHECK(expected_score(log_rule, bern(1.0), bern(0.5)) == neg_infinity);
}

TEST_CASE("log and quadratic rules are strictly proper on samples") {
    for (std::size_t n = 2; n <= 4; ++n) {
        const auto space = OutcomeSpace::indexed(n);
        const auto quad = verify_strict_properness(PreciseScoringRule::quadratic({}, 1.0), space,
                                                   1000, 7 + n);
        CHECK(quad.ok());
        const auto log_rep = verify_strict_properness(PreciseScoringRule::logarithmic({}, 1.0),
                                                      space, 1000, 11 + n);
        CHECK(log_rep.ok());
    }
}

TEST_CASE("a constant rule is all ties") {
    const auto rep = verify_strict_properness(constant_rule(3.0), OutcomeSpace::binary(), 200, 5);
    CHECK(rep.violations.size() == 200);
}

TEST_CASE("gneiting construction from sum of squares matches the quadratic family") {
    const auto rule = sum_of_squares_rule();
    // s(q,o) = G - sum G' q + G'(o) = 2 q_o - sum q^2
    const auto quad = PreciseScoringRule::quadratic({}, 1.0);
    for (int i = 0; i <= 10; ++i) {
        const Distribution q = bern(i / 10.0);
        CHECK(score(rule, q, 0) == Catch::Approx(score(quad, q, 0)).margin(1e-12));
        CHECK(score(rule, q, 1) == Catch::Approx(score(quad, q, 1)).margin(1e-12));
    }
    CHECK(verify_strict_properness(rule, OutcomeSpace::indexed(3), 1000, 99).ok());

    // brute force on a 0.01 grid of binary (p, q): truth is the argmax
    for (int i = 0; i <= 100; i += 10) {
        const double p = i / 100.0;
        CHECK(grid_argmax_report(rule, bern(p)) == Catch::Approx(p).margin(1e-9));
    }
}

TEST_CASE("expected score equals the potential") {
    const auto space = OutcomeSpace::indexed(3);
    CHECK(expected_score_is_G(sum_of_squares_rule(), space, 500, 21) <= 1e-9);
    CHECK(expected_score_is_G(negative_entropy_rule(), space, 500, 22) <= 1e-9);
    CHECK(expected_score_is_G(constant_rule(1.5), space, 200, 23) <= 1e-9);

    CHECK_THROWS_AS(expected_score_is_G(PreciseScoringRule::quadratic({}, 1.0), space, 10),
                    std::invalid_argument);
}

TEST_CASE("negative entropy potential reproduces the log score") {
    const auto rule = negative_entropy_rule();
    const auto log_rule = PreciseScoringRule::logarithmic({}, 1.0);
    for (int i = 1; i < 10; ++i) {
        const Distribution q = bern(i / 10.0);
        CHECK(score(rule, q, 1) == Catch::Approx(score(log_rule, q, 1)).margin(1e-12));
    }
    CHECK(verify_strict_properness(rule, OutcomeSpace::binary(), 1000, 31).ok());
}

TEST_CASE("affine reparameterisation never moves the argmax") {
    Rng rng(63);
    const auto space = OutcomeSpace::binary();
    for (int trial = 0; trial < 20; ++trial) {
        const Distribution belief = sample_distribution(space, rng);
        const auto base = PreciseScoringRule::quadratic({0.0, 0.0}, 1.0);
        const auto scaled = PreciseScoringRule::quadratic({2.5, 2.5}, 3.0);
        CHECK(grid_argmax_report(base, belief) ==
              Catch::Approx(grid_argmax_report(scaled, belief)).margin(1e-12));

        const auto base_log = PreciseScoringRule::logarithmic({0.0, 0.0}, 1.0);
        const auto scaled_log = PreciseScoringRule::logarithmic({-1.0, -1.0}, 0.25);
        CHECK(grid_argmax_report(base_log, belief) ==
              Catch::Approx(grid_argmax_report(scaled_log, belief)).margin(1e-12));
    }
}

TEST_CASE("maximum expected score is convex along simplex segments") {
    Rng rng(77);
    const auto space = OutcomeSpace::indexed(3);
    auto self_score = [](const PreciseScoringRule& r, const Distribution& q) {
        return expected_score(r, q, q);
    };
    const auto quad = PreciseScoringRule::quadratic({}, 1.0);
    const auto log_rule = PreciseScoringRule::logarithmic({}, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const Distribution x = sample_distribution(space, rng);
        const Distribution y = sample_distribution(space, rng);
        const Distribution mid = mixture({0.5, 0.5}, {x, y});
        for (const auto* rule : {&quad, &log_rule}) {
            const double lhs = self_score(*rule, mid);
            const double rhs = 0.5 * self_score(*rule, x) + 0.5 * self_score(*rule, y);
            CHECK(lhs <= rhs + 1e-9);
        }
    }
}

TEST_CASE("precise rule JSON spec") {
    const json spec{{"kind", "quadratic"}, {"a", {0.5, -0.5}}, {"b", 2.0}};
    const PreciseScoringRule rule = precise_rule_from_json(spec);
    CHECK(rule.kind() == ScoreKind::quadratic);
    CHECK(rule.scale() == 2.0);
    CHECK(rule.offset(0) == 0.5);

    CHECK_THROWS_AS(precise_rule_from_json(json{{"kind", "brier"}}), std::invalid_argument);
    CHECK_THROWS_AS(precise_rule_from_json(json{{"kind", "quadratic"}, {"b", -1.0}}),
                    std::invalid_argument);
}
