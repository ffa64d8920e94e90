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

#ifndef IPSCORE_HARNESS_HPP
#define IPSCORE_HARNESS_HPP

#include <cstdio>
#include <fstream>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "ipscore/json_io.hpp"
#include "ipscore/sampling.hpp"

namespace ipscore::harness {

enum class Mode { dictator, minmax, randomized };

inline Mode mode_from_string(const std::string& s) {
    if (s == "dictator") {
        return Mode::dictator;
    }
    if (s == "minmax") {
        return Mode::minmax;
    }
    if (s == "randomized") {
        return Mode::randomized;
    }
    throw std::invalid_argument("unknown mode '" + s + "'");
}

inline const char* mode_name(Mode m) {
    switch (m) {
        case Mode::dictator:
            return "dictator";
        case Mode::minmax:
            return "minmax";
        case Mode::randomized:
            return "randomized";
    }
    return "?";
}

/**
 * One landscape / verification run. Defaults reproduce the binary
 * simulation: belief [0.4, 0.6], the squared-distance utility on the unit
 * action grid (step 0.01), unit business share, no fee, report grid step
 * 0.01 and theta = U[0, 1] on 1001 quadrature nodes.
 */
struct RunConfig {
    CredalSet belief;
    DecisionProblem problem;
    Mode mode = Mode::randomized;
    std::vector<double> lambda{0.5, 0.5};  // dictator mode
    ThetaDistribution theta = ThetaDistribution::uniform();
    double grid_step = 0.01;
    double business_share = 1.0;
    double fixed_fee = 0.0;
    std::string out_path;
    std::uint64_t seed = 0;

    static RunConfig defaults(Mode mode) {
        const OutcomeSpacePtr space = OutcomeSpace::binary();
        RunConfig cfg{CredalSet::interval(space, 0.4, 0.6),
                      DecisionProblem::action_grid(space, 0.0, 1.0, 0.01)};
        cfg.mode = mode;
        return cfg;
    }

    void validate() const {
        if (!(grid_step > 0.0) || grid_step > 1.0) {
            throw std::invalid_argument("grid_step must lie in (0, 1]");
        }
        if (business_share < 0.0 || fixed_fee < 0.0) {
            throw std::invalid_argument("k and c must be non-negative");
        }
        if (mode == Mode::dictator && lambda.size() != belief.extreme_points().size() &&
            belief.extreme_points().size() > 1) {
            throw std::invalid_argument("dictator mode: lambda length must match the belief's extreme points");
        }
    }
};

inline RunConfig config_from_json(const json& j) {
    const std::string mode_str = j.value("mode", std::string("randomized"));
    RunConfig cfg = RunConfig::defaults(mode_from_string(mode_str));
    if (j.contains("belief")) {
        cfg.belief = credal_set_from_json(j.at("belief"));
    }
    if (j.contains("problem")) {
        cfg.problem = decision_problem_from_json(j.at("problem"), cfg.belief.space());
    }
    if (j.contains("lambda")) {
        cfg.lambda = j.at("lambda").get<std::vector<double>>();
    }
    if (j.contains("theta")) {
        cfg.theta = theta_from_json(j.at("theta"));
    }
    cfg.grid_step = j.value("grid_step", cfg.grid_step);
    cfg.business_share = j.value("k", cfg.business_share);
    cfg.fixed_fee = j.value("c", cfg.fixed_fee);
    cfg.out_path = j.value("out", cfg.out_path);
    cfg.seed = j.value("seed", cfg.seed);
    return cfg;
}

/// The report -> V map the configured mode induces.
inline std::function<double(const CredalSet&)> make_valuer(const RunConfig& cfg) {
    switch (cfg.mode) {
        case Mode::dictator: {
            TailoredRule rule(cfg.problem, AggregationRule::fixed_linear(cfg.lambda),
                              cfg.business_share, cfg.fixed_fee);
            return [rule, belief = cfg.belief](const CredalSet& report) {
                return forecaster_value(rule, belief, report);
            };
        }
        case Mode::minmax: {
            TailoredRule rule(cfg.problem, AggregationRule::egalitarian(), cfg.business_share,
                              cfg.fixed_fee);
            return [rule, belief = cfg.belief](const CredalSet& report) {
                return forecaster_value(rule, belief, report);
            };
        }
        case Mode::randomized: {
            TailoredRule base(cfg.problem, AggregationRule::utilitarian(), cfg.business_share,
                              cfg.fixed_fee);
            return [base, theta = cfg.theta, belief = cfg.belief](const CredalSet& report) {
                return randomized_value(theta, base, belief, report);
            };
        }
    }
    throw std::logic_error("make_valuer: unknown mode");
}

/// Sweeps the interval lattice and evaluates V at every report.
inline ScoreLandscape cmd_landscape(const RunConfig& cfg) {
    cfg.validate();
    const auto grid = interval_report_grid(cfg.belief.space(), cfg.grid_step);
    const auto value = make_valuer(cfg);
    ScoreLandscape ls;
    ls.grid_step = cfg.grid_step;
    ls.rule_description = mode_name(cfg.mode);
    ls.rows.reserve(grid.size());
    for (const IntervalReport& r : grid) {
        ls.rows.push_back({r.lower, r.upper, value(r.set)});
    }
    return ls;
}

/// CSV rows in row-major grid order, values printed with 12 significant
/// digits. Identical config in, byte-identical file out.
inline void write_landscape_csv(const ScoreLandscape& ls, std::ostream& os) {
    os << "q1,q2,value\n";
    char buf[64];
    for (const auto& row : ls.rows) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g", row.q1, row.q2, row.value);
        os << buf << '\n';
    }
}

inline void write_landscape_csv(const ScoreLandscape& ls, const std::string& path) {
    std::ofstream os(path);
    if (!os) {
        throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    write_landscape_csv(ls, os);
    if (!os.good()) {
        throw std::runtime_error("failed writing '" + path + "'");
    }
}

struct VerifyOutcome {
    PropernessReport report;
    bool verdict_ok = false;  // mode-specific expectation met
    json verdict_json;
};

/**
 * Runs the properness verifier over the configured report lattice. The
 * expected verdict is strict properness for the randomized mode and
 * proper-but-not-strict for the deterministic dictator and minmax modes.
 */
inline VerifyOutcome cmd_verify(const RunConfig& cfg) {
    cfg.validate();
    const auto grid = interval_report_grid(cfg.belief.space(), cfg.grid_step);
    std::vector<CredalSet> reports;
    reports.reserve(grid.size());
    for (const IntervalReport& r : grid) {
        reports.push_back(r.set);
    }
    const auto value = make_valuer(cfg);
    VerifyOutcome out;
    out.report = verify_properness(value, cfg.belief, reports);
    switch (cfg.mode) {
        case Mode::randomized:
            out.verdict_ok = out.report.is_proper && out.report.is_strict;
            break;
        case Mode::dictator:
        case Mode::minmax:
            out.verdict_ok = out.report.is_proper && !out.report.is_strict;
            break;
    }
    out.verdict_json = properness_report_to_json(out.report, grid);
    out.verdict_json["mode"] = mode_name(cfg.mode);
    out.verdict_json["verdict_ok"] = out.verdict_ok;
    return out;
}

/**
 * Probe battery for the dictator search on a binary-outcome credal set:
 * the squared-distance grid problem, two-action threshold problems whose
 * switch points sweep the belief's mean range at half-step offsets, and
 * seeded random utility tables. The offsets keep every switch point away
 * from candidate mixture means, so the search is deterministic.
 */
inline std::vector<DecisionProblem> dictator_probe_battery(const CredalSet& set,
                                                           std::uint64_t seed,
                                                           std::size_t random_tables = 50) {
    const OutcomeSpacePtr& space = set.space();
    if (space->size() != 2) {
        throw std::invalid_argument("dictator_probe_battery: binary outcome space required");
    }
    std::vector<DecisionProblem> probes;
    probes.push_back(DecisionProblem::action_grid(space, 0.0, 1.0, 0.01));

    const double lo = set.extreme_points().front()[1];
    const double hi = set.extreme_points().back()[1];
    const double tstep = 0.001;
    for (std::size_t i = 0;; ++i) {
        const double t = lo + tstep * (static_cast<double>(i) + 0.5);
        if (t >= hi) {
            break;
        }
        // action 1 pays iff the mean exceeds t / stays below t
        probes.emplace_back(space, std::vector<std::string>{"hold", "up"},
                            std::vector<std::vector<double>>{{0.0, 0.0}, {-t, 1.0 - t}});
        probes.emplace_back(space, std::vector<std::string>{"hold", "down"},
                            std::vector<std::vector<double>>{{0.0, 0.0}, {t, t - 1.0}});
    }

    Rng rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (std::size_t i = 0; i < random_tables; ++i) {
        std::vector<std::vector<double>> table(8, std::vector<double>(2));
        std::vector<std::string> labels(8);
        for (std::size_t a = 0; a < 8; ++a) {
            labels[a] = "a" + std::to_string(a);
            table[a][0] = u(rng);
            table[a][1] = u(rng);
        }
        probes.emplace_back(space, std::move(labels), std::move(table));
    }
    return probes;
}

inline std::vector<UtilityProfile> random_profiles(std::size_t count, std::size_t min_inputs,
                                                   std::size_t members, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_int_distribution<std::size_t> extra(0, 2);
    std::vector<UtilityProfile> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const std::size_t m = min_inputs + extra(rng);
        std::vector<double> v(members * m);
        for (double& x : v) {
            x = u(rng);
        }
        out.emplace_back(members, m, std::move(v));
    }
    return out;
}

/**
 * Social-choice verdicts for one aggregation rule: Pareto efficiency and
 * IIA over seeded random profiles, and the dictator search over the default
 * belief [0.4, 0.6] with the probe battery.
 */
inline json cmd_axioms(const AggregationRule& rule, std::size_t trials, std::uint64_t seed) {
    const std::size_t members = rule.kind == AggregationRule::Kind::fixed_linear
                                    ? rule.lambda.size()
                                    : std::size_t{2};
    const auto pe_profiles = random_profiles(trials, 2, members, seed);
    const auto iia_profiles = random_profiles(trials, 3, members, seed + 1);
    const ParetoReport pe = check_pareto_efficiency(rule, pe_profiles);
    const IiaReport iia = check_iia(rule, iia_profiles);

    const OutcomeSpacePtr space = OutcomeSpace::binary();
    const CredalSet belief = CredalSet::interval(space, 0.4, 0.6);
    std::optional<Distribution> dictator;
    if (rule.kind != AggregationRule::Kind::fixed_linear || rule.lambda.size() == 2) {
        dictator = find_dictator(rule, dictator_probe_battery(belief, seed + 2), belief, 0.01);
    }

    json j;
    j["rule"] = aggregation_rule_to_json(rule);
    j["pareto_efficiency"] = {{"pass", pe.ok()},
                              {"pairs_checked", pe.pairs_checked},
                              {"violations", pe.violations.size()}};
    j["iia"] = {{"pass", iia.ok()},
                {"comparisons", iia.comparisons},
                {"flips", iia.flips.size()}};
    if (dictator) {
        j["dictator"] = {{"found", true}, {"distribution", dictator->probs()}};
    } else {
        j["dictator"] = {{"found", false}};
    }
    return j;
}

/**
 * Impossibility demonstration: random score tables on the default lattice
 * are never proper unless constant, the constant preset is proper, and the
 * set-Brier preset (quadratic score of the generator centroid) is refuted
 * with a violating pair.
 */
inline json cmd_impossibility(std::size_t random_tables, std::uint64_t seed) {
    const OutcomeSpacePtr space = OutcomeSpace::binary();
    const std::vector<CredalSet> lattice = default_impossibility_lattice(space);
    if (lattice.size() > 10) {
        throw std::invalid_argument("cmd_impossibility: lattice exceeds 10 reports");
    }

    Rng rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::size_t proper_nonconstant = 0;
    std::size_t proper_constant = 0;
    for (std::size_t t = 0; t < random_tables; ++t) {
        std::vector<std::vector<double>> table(lattice.size(), std::vector<double>(2));
        for (auto& row : table) {
            row[0] = u(rng);
            row[1] = u(rng);
        }
        const ImpossibilityReport rep = impossibility_check(lattice, table);
        if (rep.proper) {
            (rep.constant ? proper_constant : proper_nonconstant) += 1;
        }
    }

    const std::vector<std::vector<double>> constant_table(lattice.size(), {0.25, -0.5});
    const ImpossibilityReport const_rep = impossibility_check(lattice, constant_table);

    // set-wise Brier through the centroid of each report's generators
    const PreciseScoringRule brier = PreciseScoringRule::quadratic({}, 1.0);
    std::vector<std::vector<double>> centroid_table;
    for (const CredalSet& r : lattice) {
        const std::vector<double> w(r.generator_count(), 1.0 / static_cast<double>(r.generator_count()));
        const Distribution centroid = mixture(w, r.generators());
        centroid_table.push_back({score(brier, centroid, 0), score(brier, centroid, 1)});
    }
    const ImpossibilityReport centroid_rep = impossibility_check(lattice, centroid_table);

    json j;
    j["lattice_size"] = lattice.size();
    j["random_tables"] = random_tables;
    j["proper_nonconstant"] = proper_nonconstant;
    j["proper_constant"] = proper_constant;
    j["constant_preset"] = {{"proper", const_rep.proper}, {"constant", const_rep.constant}};
    json cb = {{"proper", centroid_rep.proper}, {"constant", centroid_rep.constant}};
    if (centroid_rep.violation) {
        cb["violation"] = {{"belief", centroid_rep.violation->belief_index},
                           {"report", centroid_rep.violation->report_index},
                           {"extreme", centroid_rep.violation->extreme_index}};
    }
    j["centroid_brier"] = cb;
    return j;
}

/// One-shot tailored score evaluation.
inline double cmd_score(const RunConfig& cfg, const CredalSet& report, std::size_t outcome) {
    cfg.validate();
    const AggregationRule rule = cfg.mode == Mode::minmax
                                     ? AggregationRule::egalitarian()
                                     : AggregationRule::fixed_linear(cfg.lambda);
    const TailoredRule tailored(cfg.problem, rule, cfg.business_share, cfg.fixed_fee);
    return tailored_score(tailored, report, outcome);
}

}  // namespace ipscore::harness

#endif  // IPSCORE_HARNESS_HPP
