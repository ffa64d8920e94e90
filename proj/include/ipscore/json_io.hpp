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

#ifndef IPSCORE_JSON_IO_HPP
#define IPSCORE_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "ipscore/aggregation.hpp"
#include "ipscore/decision.hpp"
#include "ipscore/ip_scoring.hpp"
#include "ipscore/probability.hpp"
#include "ipscore/scoring_precise.hpp"

namespace ipscore {

using json = nlohmann::json;

// CredalSet <-> {"outcomes": [...], "generators": [[...], ...]}

inline json credal_set_to_json(const CredalSet& set) {
    json j;
    j["outcomes"] = set.space()->labels();
    json gens = json::array();
    for (const Distribution& g : set.generators()) {
        gens.push_back(g.probs());
    }
    j["generators"] = gens;
    return j;
}

inline CredalSet credal_set_from_json(const json& j) {
    if (!j.contains("outcomes") || !j.contains("generators")) {
        throw std::invalid_argument("credal set JSON needs 'outcomes' and 'generators'");
    }
    auto space = std::make_shared<const OutcomeSpace>(j.at("outcomes").get<std::vector<std::string>>());
    std::vector<Distribution> gens;
    for (const auto& row : j.at("generators")) {
        gens.emplace_back(space, row.get<std::vector<double>>());
    }
    return CredalSet(std::move(gens));
}

// DecisionProblem <-> {"actions": {"grid":[lo,hi,step]} | ["a1",...],
//                      "utility": "neg_squared" | [[...], ...]}

inline DecisionProblem decision_problem_from_json(const json& j, const OutcomeSpacePtr& space) {
    if (!j.contains("actions") || !j.contains("utility")) {
        throw std::invalid_argument("decision problem JSON needs 'actions' and 'utility'");
    }
    const json& actions = j.at("actions");
    const json& utility = j.at("utility");
    if (actions.is_object() && actions.contains("grid")) {
        const auto grid = actions.at("grid").get<std::vector<double>>();
        if (grid.size() != 3) {
            throw std::invalid_argument("action grid must be [lo, hi, step]");
        }
        if (!utility.is_string() || utility.get<std::string>() != "neg_squared") {
            throw std::invalid_argument("grid actions require the 'neg_squared' utility");
        }
        return DecisionProblem::action_grid(space, grid[0], grid[1], grid[2]);
    }
    if (!actions.is_array()) {
        throw std::invalid_argument("actions must be a grid object or a label list");
    }
    if (!utility.is_array()) {
        throw std::invalid_argument("labelled actions require an explicit utility table");
    }
    return DecisionProblem(space, actions.get<std::vector<std::string>>(),
                           utility.get<std::vector<std::vector<double>>>());
}

inline json decision_problem_to_json(const DecisionProblem& p) {
    json j;
    json labels = json::array();
    json table = json::array();
    for (std::size_t a = 0; a < p.action_count(); ++a) {
        labels.push_back(p.action_label(a));
        json row = json::array();
        for (std::size_t o = 0; o < p.outcome_count(); ++o) {
            row.push_back(p.utility(a, o));
        }
        table.push_back(row);
    }
    j["actions"] = labels;
    j["utility"] = table;
    return j;
}

// AggregationRule <-> {"kind":"utilitarian"|"egalitarian"} |
//                     {"kind":"fixed_linear","lambda":[...]}

inline json aggregation_rule_to_json(const AggregationRule& r) {
    switch (r.kind) {
        case AggregationRule::Kind::utilitarian:
            return json{{"kind", "utilitarian"}};
        case AggregationRule::Kind::egalitarian:
            return json{{"kind", "egalitarian"}};
        case AggregationRule::Kind::fixed_linear:
            return json{{"kind", "fixed_linear"}, {"lambda", r.lambda}};
    }
    throw std::logic_error("aggregation_rule_to_json: unknown kind");
}

inline AggregationRule aggregation_rule_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "utilitarian") {
        return AggregationRule::utilitarian();
    }
    if (kind == "egalitarian") {
        return AggregationRule::egalitarian();
    }
    if (kind == "fixed_linear") {
        return AggregationRule::fixed_linear(j.at("lambda").get<std::vector<double>>());
    }
    throw std::invalid_argument("unknown aggregation kind '" + kind + "'");
}

// PreciseScoringRule spec <-> {"kind":"quadratic"|"logarithmic","a":[...],"b":1.0}
// (gneiting rules carry callables and have no JSON form)

inline PreciseScoringRule precise_rule_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    std::vector<double> a;
    if (j.contains("a")) {
        a = j.at("a").get<std::vector<double>>();
    }
    const double b = j.value("b", 1.0);
    if (kind == "quadratic") {
        return PreciseScoringRule::quadratic(std::move(a), b);
    }
    if (kind == "logarithmic") {
        return PreciseScoringRule::logarithmic(std::move(a), b);
    }
    throw std::invalid_argument("unknown precise scoring kind '" + kind + "'");
}

// ThetaDistribution <-> {"kind":"uniform","support":[lo,hi],"nodes":N} |
//                       {"kind":"discrete","atoms":[{"lambda":[...],"weight":w}]}

inline ThetaDistribution theta_from_json(const json& j) {
    const std::string kind = j.value("kind", "uniform");
    if (kind == "uniform") {
        double lo = 0.0;
        double hi = 1.0;
        if (j.contains("support")) {
            const auto s = j.at("support").get<std::vector<double>>();
            if (s.size() != 2) {
                throw std::invalid_argument("theta support must be [lo, hi]");
            }
            lo = s[0];
            hi = s[1];
        }
        const auto nodes = j.value("nodes", std::size_t{1001});
        return ThetaDistribution::uniform(lo, hi, nodes);
    }
    if (kind == "discrete") {
        std::vector<ThetaDistribution::Atom> atoms;
        for (const auto& a : j.at("atoms")) {
            atoms.push_back({a.at("lambda").get<std::vector<double>>(), a.at("weight").get<double>()});
        }
        return ThetaDistribution::discrete(std::move(atoms));
    }
    throw std::invalid_argument("unknown theta kind '" + kind + "'");
}

inline json theta_to_json(const ThetaDistribution& t) {
    if (t.kind == ThetaDistribution::Kind::uniform) {
        return json{{"kind", "uniform"}, {"support", {t.lower, t.upper}}, {"nodes", t.nodes}};
    }
    json atoms = json::array();
    for (const auto& a : t.atoms) {
        atoms.push_back(json{{"lambda", a.lambda}, {"weight", a.weight}});
    }
    return json{{"kind", "discrete"}, {"atoms", atoms}};
}

/// Verifier verdict with interval descriptors for the argmax set.
inline json properness_report_to_json(const PropernessReport& rep,
                                      const std::vector<IntervalReport>& grid) {
    json j;
    j["is_proper"] = rep.is_proper;
    j["is_strict"] = rep.is_strict;
    j["max_value"] = rep.max_value;
    j["truthful_value"] = rep.truthful_value;
    json argmax = json::array();
    for (std::size_t i : rep.argmax) {
        argmax.push_back({grid[i].lower, grid[i].upper});
    }
    j["argmax"] = argmax;
    json violations = json::array();
    for (std::size_t i : rep.violations) {
        violations.push_back({grid[i].lower, grid[i].upper});
    }
    j["violations"] = violations;
    return j;
}

}  // namespace ipscore

#endif  // IPSCORE_JSON_IO_HPP
