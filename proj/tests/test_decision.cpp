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

#include <random>

#include "ipscore/decision.hpp"
#include "ipscore/json_io.hpp"
#include "ipscore/sampling.hpp"

using namespace ipscore;

namespace {

Distribution bern(double x) { return Distribution::bernoulli(OutcomeSpace::binary(), x); }

DecisionProblem unit_grid(double step = 0.01) {
    return DecisionProblem::action_grid(OutcomeSpace::binary(), 0.0, 1.0, step);
}

}  // namespace

TEST_CASE("best action under the squared-distance grid is the mean") {
    const DecisionProblem p = unit_grid();
    const BestAction ba = best_action(p, bern(0.3));
    CHECK(p.action_value(ba.index) == Catch::Approx(0.30));
    CHECK(ba.unique);
    CHECK(ba.value == Catch::Approx(-(0.3 * 0.49 + 0.7 * 0.09)));
}

TEST_CASE("constant utilities tie every action") {
    const DecisionProblem p(OutcomeSpace::binary(), {"a", "b", "c"},
                            {{1.0, 1.0}, {1.0, 1.0}, {1.0, 1.0}});
    const BestAction ba = best_action(p, bern(0.5));
    CHECK(ba.index == 0);
    CHECK_FALSE(ba.unique);
}

TEST_CASE("two-action diagonal utility ties at the uniform belief") {
    const DecisionProblem p(OutcomeSpace::binary(), {"a0", "a1"}, {{1.0, 0.0}, {0.0, 1.0}});
    const BestAction ba = best_action(p, bern(0.5));
    CHECK(ba.index == 0);
    CHECK_FALSE(ba.unique);
    CHECK(ba.value == Catch::Approx(0.5));
    CHECK(best_action(p, bern(0.7)).index == 1);
    CHECK(best_action(p, bern(0.7)).unique);
}

TEST_CASE("unique-argmax certification at grid resolution") {
    const DecisionProblem p = unit_grid(0.01);

    // beliefs aligned with the action grid resolve uniquely
    CHECK(certify_unique_argmax(p, 0.02).all_unique);

    // beliefs exactly between two grid actions tie them
    const ArgmaxCertificate cert = certify_unique_argmax(p, 0.005);
    CHECK_FALSE(cert.all_unique);
    REQUIRE_FALSE(cert.ties.empty());
    // every reported tie is a cell midpoint
    for (const Distribution& q : cert.ties) {
        const double frac = q[1] * 100.0 - std::floor(q[1] * 100.0);
        CHECK(std::abs(frac - 0.5) <= 1e-9);
    }

    const DecisionProblem flat(OutcomeSpace::binary(), {"a", "b"}, {{0.0, 0.0}, {0.0, 0.0}});
    CHECK_FALSE(certify_unique_argmax(flat, 0.05).all_unique);

    CHECK_THROWS_AS(certify_unique_argmax(p, 0.5), std::invalid_argument);
}

TEST_CASE("action fingerprint of interval beliefs") {
    const DecisionProblem p = unit_grid();

    const ActionFingerprint fp = action_fingerprint(p, CredalSet({bern(0.4), bern(0.6)}));
    REQUIRE(fp.actions.size() == 2);
    CHECK(p.action_value(fp.actions[0]) == Catch::Approx(0.40));
    CHECK(p.action_value(fp.actions[1]) == Catch::Approx(0.60));
    CHECK(fp.all_unique);

    const ActionFingerprint single = action_fingerprint(p, CredalSet({bern(0.3)}));
    REQUIRE(single.actions.size() == 1);
    CHECK(p.action_value(single.actions[0]) == Catch::Approx(0.30));
}

TEST_CASE("fingerprints separate non-equivalent credal sets") {
    const DecisionProblem p = unit_grid();
    Rng rng(40);
    std::uniform_int_distribution<int> tick(0, 100);
    int checked = 0;
    while (checked < 100) {
        double a1 = tick(rng) / 100.0;
        double a2 = tick(rng) / 100.0;
        double b1 = tick(rng) / 100.0;
        double b2 = tick(rng) / 100.0;
        if (a1 > a2) {
            std::swap(a1, a2);
        }
        if (b1 > b2) {
            std::swap(b1, b2);
        }
        // only pairs whose extreme sets differ by more than one grid step
        if (std::abs(a1 - b1) <= 0.011 && std::abs(a2 - b2) <= 0.011) {
            continue;
        }
        const ActionFingerprint fa = action_fingerprint(p, CredalSet::interval(p.space(), a1, a2));
        const ActionFingerprint fb = action_fingerprint(p, CredalSet::interval(p.space(), b1, b2));
        CHECK(fa.actions != fb.actions);
        ++checked;
    }
}

TEST_CASE("argmax is invariant under positive affine utility maps") {
    Rng rng(41);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto space = OutcomeSpace::binary();
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<double>> table(5, std::vector<double>(2));
        for (auto& row : table) {
            row[0] = u(rng);
            row[1] = u(rng);
        }
        std::vector<std::vector<double>> scaled = table;
        for (auto& row : scaled) {
            row[0] = 3.0 * row[0] + 0.7;
            row[1] = 3.0 * row[1] + 0.7;
        }
        const DecisionProblem p(space, {"a", "b", "c", "d", "e"}, table);
        const DecisionProblem ps(space, {"a", "b", "c", "d", "e"}, scaled);
        const Distribution belief = sample_distribution(space, rng);
        CHECK(best_action(p, belief).index == best_action(ps, belief).index);
    }
}

TEST_CASE("weak dominance is respected") {
    Rng rng(42);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const auto space = OutcomeSpace::binary();
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<double>> table(4, std::vector<double>(2));
        for (auto& row : table) {
            row[0] = u(rng);
            row[1] = u(rng);
        }
        // action 0 weakly dominates action 1 by construction
        table[0][0] = table[1][0] + 0.1;
        table[0][1] = table[1][1] + 0.2;
        const DecisionProblem p(space, {"a", "b", "c", "d"}, table);
        const Distribution belief = sample_distribution(space, rng);
        CHECK(best_action(p, belief).index != 1);
    }
}

TEST_CASE("decision problem JSON forms") {
    const auto space = OutcomeSpace::binary();
    const json grid_spec{{"actions", {{"grid", {0.0, 1.0, 0.25}}}}, {"utility", "neg_squared"}};
    const DecisionProblem p = decision_problem_from_json(grid_spec, space);
    CHECK(p.action_count() == 5);
    CHECK(p.utility(2, 1) == Catch::Approx(-0.25));  // -(1 - 0.5)^2

    const json table_spec{{"actions", {"hold", "move"}},
                          {"utility", {{0.0, 0.0}, {-0.5, 0.5}}}};
    const DecisionProblem q = decision_problem_from_json(table_spec, space);
    CHECK(q.action_count() == 2);
    CHECK(q.action_label(1) == "move");
    CHECK(q.utility(1, 0) == -0.5);

    CHECK_THROWS_AS(decision_problem_from_json(json{{"actions", {"x", "y"}}}, space),
                    std::invalid_argument);
    const json bad{{"actions", {{"grid", {0.0, 1.0, 0.25}}}}, {"utility", {{1.0, 0.0}}}};
    CHECK_THROWS_AS(decision_problem_from_json(bad, space), std::invalid_argument);
}
