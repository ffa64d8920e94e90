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

#include <algorithm>
#include <random>

#include "ipscore/aggregation.hpp"
#include "ipscore/harness.hpp"
#include "ipscore/json_io.hpp"
#include "ipscore/sampling.hpp"

using namespace ipscore;

namespace {

Distribution bern(double x) { return Distribution::bernoulli(OutcomeSpace::binary(), x); }

std::vector<UtilityProfile> integer_profiles() {
    // small exhaustive battery of 2-member, 3-input profiles on {-1, 0, 1}
    std::vector<UtilityProfile> out;
    for (int a = -1; a <= 1; ++a) {
        for (int b = -1; b <= 1; ++b) {
            for (int c = -1; c <= 1; ++c) {
                for (int d = -1; d <= 1; ++d) {
                    out.emplace_back(2, 3,
                                     std::vector<double>{double(a), double(b), double(c),
                                                         double(d), double(a - b), double(c + d)});
                }
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("aggregate the three rule kinds") {
    const UtilityProfile profile(2, 1, {0.2, 0.8});
    CHECK(aggregate(AggregationRule::utilitarian(), profile)[0] == Catch::Approx(0.5));
    CHECK(aggregate(AggregationRule::egalitarian(), profile)[0] == Catch::Approx(0.2));
    CHECK(aggregate(AggregationRule::fixed_linear({0.25, 0.75}), profile)[0] ==
          Catch::Approx(0.65));

    CHECK_THROWS_AS(aggregate(AggregationRule::fixed_linear({1.0}), profile),
                    std::invalid_argument);
    CHECK_THROWS_AS(AggregationRule::fixed_linear({0.5, 0.4}), std::invalid_argument);
}

TEST_CASE("partial order over inputs") {
    const UtilityProfile dominance(2, 2, {1.0, 0.0, 1.0, 0.0});
    CHECK(compare_inputs(dominance, 0, 1) == PairOrder::first_dominates);
    CHECK(compare_inputs(dominance, 1, 0) == PairOrder::second_dominates);

    const UtilityProfile crossed(2, 2, {1.0, 0.0, 0.0, 1.0});
    CHECK(compare_inputs(crossed, 0, 1) == PairOrder::incomparable);

    const UtilityProfile tied(2, 2, {0.5, 0.5, 0.5, 0.5});
    CHECK(compare_inputs(tied, 0, 1) == PairOrder::indifferent);

    const auto rel = partial_order(crossed);
    CHECK(rel[0][0] == PairOrder::indifferent);
    CHECK(rel[0][1] == PairOrder::incomparable);
}

TEST_CASE("pareto efficiency holds for the built-in rules") {
    const auto profiles = harness::random_profiles(1000, 2, 3, 2025);
    CHECK(check_pareto_efficiency(AggregationRule::utilitarian(), profiles).ok());
    CHECK(check_pareto_efficiency(AggregationRule::egalitarian(), profiles).ok());
    CHECK(check_pareto_efficiency(AggregationRule::fixed_linear({0.2, 0.5, 0.3}), profiles).ok());

    // exhaustive confirmation on small integer profiles
    const auto small = integer_profiles();
    CHECK(check_pareto_efficiency(AggregationRule::utilitarian(), small).ok());
    CHECK(check_pareto_efficiency(AggregationRule::egalitarian(), small).ok());
}

TEST_CASE("pareto efficiency catches an adversarial rule") {
    // negating the first member's utilities can invert dominated pairs
    const Aggregator negate_first = [](const UtilityProfile& p) {
        std::vector<double> out(p.inputs(), 0.0);
        for (std::size_t i = 0; i < p.inputs(); ++i) {
            out[i] = -p.at(0, i);
            for (std::size_t r = 1; r < p.members(); ++r) {
                out[i] += p.at(r, i);
            }
        }
        return out;
    };
    const auto profiles = harness::random_profiles(200, 2, 2, 4);
    CHECK_FALSE(check_pareto_efficiency(negate_first, profiles).ok());
}

TEST_CASE("IIA holds for the built-in rules") {
    const auto profiles = harness::random_profiles(1000, 3, 3, 35);
    CHECK(check_iia(AggregationRule::utilitarian(), profiles).ok());
    CHECK(check_iia(AggregationRule::egalitarian(), profiles).ok());
    CHECK(check_iia(AggregationRule::fixed_linear({0.6, 0.3, 0.1}), profiles).ok());

    std::vector<UtilityProfile> too_small{UtilityProfile(2, 2, {1.0, 0.0, 0.0, 1.0})};
    CHECK_THROWS_AS(check_iia(AggregationRule::utilitarian(), too_small), std::invalid_argument);
}

TEST_CASE("IIA catches a rank-normalising rule") {
    // weights shift with the profile's column range, so deleting an input
    // can flip the order of the remaining ones
    const Aggregator rank_normalising = [](const UtilityProfile& p) {
        double lo = p.at(0, 0);
        double hi = lo;
        for (std::size_t r = 0; r < p.members(); ++r) {
            for (std::size_t i = 0; i < p.inputs(); ++i) {
                lo = std::min(lo, p.at(r, i));
                hi = std::max(hi, p.at(r, i));
            }
        }
        const double span = hi > lo ? hi - lo : 1.0;
        std::vector<double> out(p.inputs(), 0.0);
        for (std::size_t i = 0; i < p.inputs(); ++i) {
            for (std::size_t r = 0; r < p.members(); ++r) {
                const double z = (p.at(r, i) - lo) / span;
                out[i] += z * z;  // convex in the normalised score
            }
        }
        return out;
    };
    const auto profiles = harness::random_profiles(300, 3, 2, 36);
    CHECK_FALSE(check_iia(rank_normalising, profiles).ok());
}

TEST_CASE("fixed-linear aggregation equals the mixture expectation") {
    Rng rng(606);
    const auto space = OutcomeSpace::indexed(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        // random 3-member credal set and random 4-action utility table
        std::vector<Distribution> members;
        for (int i = 0; i < 3; ++i) {
            members.push_back(sample_distribution(space, rng));
        }
        std::vector<std::vector<double>> table(4, std::vector<double>(3));
        for (auto& row : table) {
            for (double& x : row) {
                x = u(rng);
            }
        }
        const DecisionProblem problem(space, {"a", "b", "c", "d"}, table);
        const std::vector<double> lambda = sample_simplex_vector(3, rng);

        const UtilityProfile profile = detail::action_profile(problem, members);
        const std::vector<double> lhs = aggregate(AggregationRule::fixed_linear(lambda), profile);
        const std::vector<double> rhs = problem.expected_utilities(mixture(lambda, members));
        for (std::size_t a = 0; a < lhs.size(); ++a) {
            CHECK(lhs[a] == Catch::Approx(rhs[a]).margin(1e-12));
        }
    }
}

TEST_CASE("egalitarian aggregation is permutation invariant in the member axis") {
    Rng rng(607);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::vector<double>> rows(4, std::vector<double>(3));
        for (auto& row : rows) {
            for (double& x : row) {
                x = u(rng);
            }
        }
        auto shuffled = rows;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        const auto a = aggregate(AggregationRule::egalitarian(), UtilityProfile(rows));
        const auto b = aggregate(AggregationRule::egalitarian(), UtilityProfile(shuffled));
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i] == b[i]);
        }
    }
}

TEST_CASE("find_dictator on interval beliefs") {
    const CredalSet belief({bern(0.4), bern(0.6)});
    const auto probes = harness::dictator_probe_battery(belief, 91);

    const auto mid = find_dictator(AggregationRule::fixed_linear({0.5, 0.5}), probes, belief);
    REQUIRE(mid.has_value());
    CHECK(same_point(*mid, bern(0.5)));

    const auto skew = find_dictator(AggregationRule::fixed_linear({0.25, 0.75}), probes, belief);
    REQUIRE(skew.has_value());
    CHECK(same_point(*skew, bern(0.25 * 0.4 + 0.75 * 0.6)));

    const auto util = find_dictator(AggregationRule::utilitarian(), probes, belief);
    REQUIRE(util.has_value());
    CHECK(same_point(*util, bern(0.5)));

    CHECK_FALSE(find_dictator(AggregationRule::egalitarian(), probes, belief).has_value());

    // a singleton set is its own dictator under any rule
    const CredalSet precise({bern(0.3)});
    const auto self = find_dictator(AggregationRule::egalitarian(),
                                    harness::dictator_probe_battery(precise, 92), precise);
    REQUIRE(self.has_value());
    CHECK(same_point(*self, bern(0.3)));
}

TEST_CASE("aggregation rule JSON forms") {
    CHECK(aggregation_rule_from_json(json{{"kind", "egalitarian"}}).kind ==
          AggregationRule::Kind::egalitarian);
    const auto fl = aggregation_rule_from_json(json{{"kind", "fixed_linear"},
                                                    {"lambda", {0.25, 0.75}}});
    CHECK(fl.lambda == std::vector<double>{0.25, 0.75});
    CHECK(aggregation_rule_to_json(fl).at("kind") == "fixed_linear");
    CHECK_THROWS_AS(aggregation_rule_from_json(json{{"kind", "median"}}), std::invalid_argument);
}
