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

// Command line front end.
//
//   ipscore landscape     sweep the interval report lattice, write a CSV
//   ipscore verify        properness verdict for the configured mode
//   ipscore axioms        PE / IIA / dictator checks for a rule
//   ipscore impossibility enumeration demo on the report lattice
//   ipscore score         one-shot tailored score
//
// Exit codes: 0 = success / verdict met, 1 = verdict failed or runtime
// error, 2 = usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ipscore/ipscore.hpp"

namespace {

using ipscore::json;
namespace hns = ipscore::harness;

struct CommonFlags {
    std::string config_path;
    std::string mode;
    std::optional<double> step;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::optional<std::size_t> quadrature_nodes;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON configuration file");
    cmd->add_option("--mode", flags.mode, "dictator | minmax | randomized");
    cmd->add_option("--step", flags.step, "report grid step");
    cmd->add_option("--seed", flags.seed, "RNG seed");
    cmd->add_option("--out", flags.out, "output path");
    cmd->add_option("--quadrature-nodes", flags.quadrature_nodes,
                    "trapezoid nodes for a uniform theta");
}

hns::RunConfig build_config(const CommonFlags& flags) {
    json j = json::object();
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) {
            throw CLI::ValidationError("--config", "cannot read '" + flags.config_path + "'");
        }
        in >> j;
    }
    if (!flags.mode.empty()) {
        j["mode"] = flags.mode;
    }
    hns::RunConfig cfg = hns::config_from_json(j);
    if (flags.step) {
        cfg.grid_step = *flags.step;
    }
    if (flags.seed) {
        cfg.seed = *flags.seed;
    }
    if (!flags.out.empty()) {
        cfg.out_path = flags.out;
    }
    if (flags.quadrature_nodes) {
        if (cfg.theta.kind != ipscore::ThetaDistribution::Kind::uniform) {
            throw CLI::ValidationError("--quadrature-nodes", "theta is not uniform");
        }
        cfg.theta.nodes = *flags.quadrature_nodes;
    }
    cfg.validate();
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scoring rules for imprecise (credal-set) forecasts"};
    app.require_subcommand(1);

    CommonFlags flags;

    auto* landscape = app.add_subcommand("landscape", "expected-score sweep over interval reports");
    add_common(landscape, flags);

    auto* verify = app.add_subcommand("verify", "properness verdict for the configured mode");
    add_common(verify, flags);

    auto* axioms = app.add_subcommand("axioms", "Pareto/IIA/dictatorship checks for a rule");
    std::string rule_spec = R"({"kind":"utilitarian"})";
    std::size_t trials = 1000;
    std::uint64_t axioms_seed = 7;
    axioms->add_option("--rule", rule_spec, "aggregation rule JSON");
    axioms->add_option("--trials", trials, "number of random profiles");
    axioms->add_option("--seed", axioms_seed, "RNG seed");

    auto* impossibility = app.add_subcommand("impossibility", "proper-implies-constant demo");
    std::size_t tables = 10000;
    std::uint64_t imp_seed = 99;
    impossibility->add_option("--tables", tables, "number of random score tables");
    impossibility->add_option("--seed", imp_seed, "RNG seed");

    auto* score_cmd = app.add_subcommand("score", "one-shot tailored score");
    std::string report_spec;
    std::size_t outcome = 0;
    add_common(score_cmd, flags);
    score_cmd->add_option("--report", report_spec, "credal set JSON")->required();
    score_cmd->add_option("--outcome", outcome, "realised outcome index")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (landscape->parsed()) {
            const hns::RunConfig cfg = build_config(flags);
            const ipscore::ScoreLandscape ls = hns::cmd_landscape(cfg);
            if (cfg.out_path.empty()) {
                hns::write_landscape_csv(ls, std::cout);
            } else {
                hns::write_landscape_csv(ls, cfg.out_path);
                std::cerr << "wrote " << ls.rows.size() << " rows to " << cfg.out_path << "\n";
            }
            return 0;
        }
        if (verify->parsed()) {
            const hns::RunConfig cfg = build_config(flags);
            const hns::VerifyOutcome outcome_ = hns::cmd_verify(cfg);
            std::cout << outcome_.verdict_json.dump(2) << "\n";
            return outcome_.verdict_ok ? 0 : 1;
        }
        if (axioms->parsed()) {
            const ipscore::AggregationRule rule =
                ipscore::aggregation_rule_from_json(json::parse(rule_spec));
            std::cout << hns::cmd_axioms(rule, trials, axioms_seed).dump(2) << "\n";
            return 0;
        }
        if (impossibility->parsed()) {
            const json j = hns::cmd_impossibility(tables, imp_seed);
            std::cout << j.dump(2) << "\n";
            const bool clean = j.at("proper_nonconstant").get<std::size_t>() == 0;
            return clean ? 0 : 1;
        }
        if (score_cmd->parsed()) {
            const hns::RunConfig cfg = build_config(flags);
            const ipscore::CredalSet report = ipscore::credal_set_from_json(json::parse(report_spec));
            std::printf("%.12g\n", hns::cmd_score(cfg, report, outcome));
            return 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
