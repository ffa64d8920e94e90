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

#ifndef IPSCORE_IP_SCORING_HPP
#define IPSCORE_IP_SCORING_HPP

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ipscore/aggregation.hpp"
#include "ipscore/decision.hpp"
#include "ipscore/probability.hpp"

namespace ipscore {

/// Margin for "this report ties the maximum" in the properness verifiers.
inline constexpr double properness_margin = 1e-9;

/**
 * A tailored score pays the forecaster an affine share of the decision
 * maker's realised utility at the action the report recommends:
 *
 *   s(Q, o) = business_share * u(a*_{Q,rho}, o) + fixed_fee
 *
 * where a*_{Q,rho} maximises the rho-aggregated expected utility over the
 * report's extreme points.
 */
struct TailoredRule {
    DecisionProblem problem;
    AggregationRule rule;
    double business_share = 1.0;  // k
    double fixed_fee = 0.0;       // c

    TailoredRule(DecisionProblem p, AggregationRule r, double k = 1.0, double c = 0.0)
        : problem(std::move(p)), rule(std::move(r)), business_share(k), fixed_fee(c) {
        if (k < 0.0 || c < 0.0) {
            throw std::invalid_argument("TailoredRule: business share and fee must be non-negative");
        }
    }
};

/// The action a tailored rule commits to for a report.
inline std::size_t tailored_action(const TailoredRule& rule, const CredalSet& report) {
    const UtilityProfile profile = detail::action_profile(rule.problem, report.extreme_points());
    return argmax_index(effective_aggregate(rule.rule, profile));
}

inline double tailored_score(const TailoredRule& rule, const CredalSet& report, std::size_t outcome) {
    if (outcome >= rule.problem.outcome_count()) {
        throw std::invalid_argument("tailored_score: outcome index out of range");
    }
    const std::size_t a = tailored_action(rule, report);
    return rule.business_share * rule.problem.utility(a, outcome) + rule.fixed_fee;
}

/**
 * The forecaster's aggregated expected score V^P_rho(Q): per-outcome scores
 * of the report, expected under every extreme point of the belief, then
 * folded by the same aggregation rule.
 */
inline double forecaster_value(const TailoredRule& rule, const CredalSet& belief,
                               const CredalSet& report) {
    if (!same_space(belief.space(), report.space())) {
        throw std::invalid_argument("forecaster_value: outcome spaces differ");
    }
    const std::size_t n = rule.problem.outcome_count();
    const std::size_t a = tailored_action(rule, report);

    const std::vector<Distribution>& ext = belief.extreme_points();
    std::vector<double> per_member(ext.size(), 0.0);
    for (std::size_t r = 0; r < ext.size(); ++r) {
        double e = 0.0;
        for (std::size_t o = 0; o < n; ++o) {
            e += ext[r][o] * rule.problem.utility(a, o);
        }
        per_member[r] = rule.business_share * e + rule.fixed_fee;
    }
    const UtilityProfile profile(ext.size(), 1, std::move(per_member));
    return effective_aggregate(rule.rule, profile)[0];
}

/**
 * A distribution theta over fixed-linear aggregation rules.
 *
 * Two shapes: uniform over a scalar lambda in [lo, hi] (the two-extreme
 * case, realised by trapezoid quadrature nodes), or a discrete list of
 * (lambda vector, weight) atoms. The fallback score Pi covers rules with
 * theta(rho) = 0 in the randomised-rule definition; with a full-support
 * theta it never enters any expectation. Default fallback: constant zero.
 */
struct ThetaDistribution {
    enum class Kind { uniform, discrete };

    struct Atom {
        std::vector<double> lambda;
        double weight = 0.0;
    };

    Kind kind = Kind::uniform;
    double lower = 0.0;
    double upper = 1.0;
    std::size_t nodes = 1001;
    std::vector<Atom> atoms;
    std::function<double(const CredalSet&, std::size_t)> fallback;

    static ThetaDistribution uniform(double lo = 0.0, double hi = 1.0, std::size_t nodes = 1001) {
        if (!(lo >= 0.0 && lo < hi && hi <= 1.0)) {
            throw std::invalid_argument("ThetaDistribution: need 0 <= lo < hi <= 1");
        }
        ThetaDistribution t;
        t.kind = Kind::uniform;
        t.lower = lo;
        t.upper = hi;
        t.nodes = nodes;
        return t;
    }

    static ThetaDistribution discrete(std::vector<Atom> atoms) {
        double sum = 0.0;
        for (const Atom& a : atoms) {
            if (a.weight < 0.0) {
                throw std::invalid_argument("ThetaDistribution: negative weight");
            }
            sum += a.weight;
        }
        if (atoms.empty() || std::abs(sum - 1.0) > 1e-9) {
            throw std::invalid_argument("ThetaDistribution: weights must sum to one");
        }
        ThetaDistribution t;
        t.kind = Kind::discrete;
        t.atoms = std::move(atoms);
        return t;
    }

    /// Positive density at every lambda of the reference grid [0, 1].
    bool full_support() const {
        if (kind == Kind::uniform) {
            return lower <= mass_tolerance && upper >= 1.0 - mass_tolerance;
        }
        return false;  // a discrete theta never covers the continuum
    }

    double fallback_score(const CredalSet& report, std::size_t outcome) const {
        return fallback ? fallback(report, outcome) : 0.0;
    }
};

namespace detail {

inline TailoredRule with_fixed_lambda(const TailoredRule& base, std::vector<double> lambda) {
    return TailoredRule(base.problem, AggregationRule::fixed_linear(std::move(lambda)),
                        base.business_share, base.fixed_fee);
}

}  // namespace detail

/**
 * One draw of the randomised tailored rule: the tailored score when theta
 * puts mass at the drawn lambda, otherwise the fallback Pi.
 */
inline double randomized_score(const ThetaDistribution& theta, const TailoredRule& base,
                               const CredalSet& report, std::size_t outcome,
                               const std::vector<double>& lambda) {
    bool in_support = false;
    if (theta.kind == ThetaDistribution::Kind::uniform) {
        in_support = lambda.size() == 2 && lambda[0] >= theta.lower - mass_tolerance &&
                     lambda[0] <= theta.upper + mass_tolerance;
    } else {
        for (const auto& atom : theta.atoms) {
            if (atom.weight > 0.0 && atom.lambda.size() == lambda.size()) {
                double d = 0.0;
                for (std::size_t i = 0; i < lambda.size(); ++i) {
                    d = std::max(d, std::abs(atom.lambda[i] - lambda[i]));
                }
                if (d <= mass_tolerance) {
                    in_support = true;
                    break;
                }
            }
        }
    }
    if (!in_support) {
        return theta.fallback_score(report, outcome);
    }
    return tailored_score(detail::with_fixed_lambda(base, lambda), report, outcome);
}

/**
 * V^P_theta(Q) = E_{rho ~ theta}[V^P_rho(Q)].
 *
 * Discrete theta: the weighted sum over atoms. Uniform theta: composite
 * trapezoid quadrature over lambda with the configured node count; the rule
 * at node lambda is fixed_linear(lambda, 1-lambda), weighting the
 * canonically-first (lower) extreme point. V is piecewise smooth in lambda
 * with kinks where the recommended action switches, so dense uniform nodes
 * are the right tool. Rules with theta(rho) = 0 carry no weight in the
 * expectation, which is where the fallback Pi would sit.
 */
inline double randomized_value(const ThetaDistribution& theta, const TailoredRule& base,
                               const CredalSet& belief, const CredalSet& report) {
    if (theta.kind == ThetaDistribution::Kind::discrete) {
        double v = 0.0;
        for (const auto& atom : theta.atoms) {
            if (atom.weight == 0.0) {
                continue;
            }
            v += atom.weight * forecaster_value(detail::with_fixed_lambda(base, atom.lambda),
                                                belief, report);
        }
        return v;
    }
    if (theta.nodes < 3) {
        throw std::invalid_argument("randomized_value: need at least three quadrature nodes");
    }
    if (belief.extreme_points().size() > 2 || report.extreme_points().size() > 2) {
        throw std::invalid_argument(
            "randomized_value: scalar-lambda randomization needs at most two extreme points");
    }
    const std::size_t n = theta.nodes;
    const double h = (theta.upper - theta.lower) / static_cast<double>(n - 1);
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lam = theta.lower + h * static_cast<double>(i);
        const double w = (i == 0 || i + 1 == n) ? 0.5 : 1.0;
        v += w * forecaster_value(detail::with_fixed_lambda(base, {lam, 1.0 - lam}), belief, report);
    }
    // normalise: theta is uniform on [lower, upper]
    return v / static_cast<double>(n - 1);
}

/// A report together with the scalar interval descriptor used on binary
/// outcome spaces.
struct IntervalReport {
    double lower = 0.0;
    double upper = 0.0;
    CredalSet set;
};

/// All reports {(q1, q2) : 0 <= q1 <= q2 <= 1} on a step grid, in row-major
/// order (q1 outer, q2 inner).
inline std::vector<IntervalReport> interval_report_grid(const OutcomeSpacePtr& space, double step) {
    if (!space || space->size() != 2) {
        throw std::invalid_argument("interval_report_grid: binary outcome space required");
    }
    if (!(step > 0.0) || step > 1.0) {
        throw std::invalid_argument("interval_report_grid: step must lie in (0, 1]");
    }
    const auto ticks = static_cast<std::size_t>(std::llround(1.0 / step));
    if (std::abs(static_cast<double>(ticks) * step - 1.0) > 1e-9) {
        throw std::invalid_argument("interval_report_grid: step must divide 1");
    }
    std::vector<IntervalReport> out;
    out.reserve((ticks + 1) * (ticks + 2) / 2);
    for (std::size_t i = 0; i <= ticks; ++i) {
        for (std::size_t j = i; j <= ticks; ++j) {
            const double q1 = static_cast<double>(i) / static_cast<double>(ticks);
            const double q2 = static_cast<double>(j) / static_cast<double>(ticks);
            out.push_back({q1, q2, CredalSet::interval(space, q1, q2)});
        }
    }
    return out;
}

/// Expected-score landscape over the interval lattice.
struct ScoreLandscape {
    struct Row {
        double q1 = 0.0;
        double q2 = 0.0;
        double value = 0.0;
    };
    std::vector<Row> rows;
    double grid_step = 0.0;
    std::string rule_description;
};

struct PropernessReport {
    double max_value = 0.0;
    double truthful_value = 0.0;
    std::size_t truthful_index = 0;
    std::vector<std::size_t> argmax;      // all reports within properness_margin of the max
    std::vector<std::size_t> violations;  // reports strictly above the truthful value
    bool is_proper = false;
    bool is_strict = false;
};

/**
 * Brute-force properness verdict over an explicit report grid.
 *
 * is_proper: no grid report beats the truthful report by more than the
 * margin. is_strict: every member of the argmax set is credal-equivalent
 * to the belief. The grid must contain a report equivalent to the belief.
 */
inline PropernessReport verify_properness(const std::function<double(const CredalSet&)>& value,
                                          const CredalSet& belief,
                                          const std::vector<CredalSet>& reports) {
    std::optional<std::size_t> truthful;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (credal_equivalent(reports[i], belief)) {
            truthful = i;
            break;
        }
    }
    if (!truthful) {
        throw std::invalid_argument("verify_properness: grid does not contain the truthful report");
    }
    std::vector<double> values(reports.size());
    for (std::size_t i = 0; i < reports.size(); ++i) {
        values[i] = value(reports[i]);
    }
    PropernessReport rep;
    rep.truthful_index = *truthful;
    rep.truthful_value = values[*truthful];
    rep.max_value = values[argmax_index(values)];
    rep.is_proper = rep.max_value - rep.truthful_value <= properness_margin;
    rep.is_strict = true;
    for (std::size_t i = 0; i < reports.size(); ++i) {
        if (values[i] >= rep.max_value - properness_margin) {
            rep.argmax.push_back(i);
            if (!credal_equivalent(reports[i], belief)) {
                rep.is_strict = false;
            }
        }
        if (values[i] > rep.truthful_value + properness_margin) {
            rep.violations.push_back(i);
        }
    }
    return rep;
}

struct ImpossibilityReport {
    bool proper = true;
    bool constant = true;

    struct Violation {
        std::size_t belief_index;
        std::size_t report_index;
        std::size_t extreme_index;  // which member of the belief is beaten
    };
    std::optional<Violation> violation;
};

/**
 * Checks a candidate IP score table against the dominance definition of
 * properness by enumeration over a finite report lattice: for every lattice
 * belief P and non-equivalent report Q, E_p[s(P)] >= E_p[s(Q)] must hold at
 * every extreme point p of P. Also reports whether the table is constant
 * across reports. The lattice must contain a singleton for every member
 * distribution and the vacuous set.
 */
inline ImpossibilityReport impossibility_check(const std::vector<CredalSet>& lattice,
                                               const std::vector<std::vector<double>>& table) {
    if (lattice.empty() || table.size() != lattice.size()) {
        throw std::invalid_argument("impossibility_check: table must have one row per report");
    }
    const OutcomeSpacePtr& space = lattice.front().space();
    const std::size_t n = space->size();
    for (const auto& row : table) {
        if (row.size() != n) {
            throw std::invalid_argument("impossibility_check: score row has wrong length");
        }
    }
    // lattice well-formedness: singletons for every member, plus the vacuous set
    const CredalSet vac = CredalSet::vacuous(space);
    bool has_vacuous = false;
    for (const CredalSet& r : lattice) {
        if (credal_equivalent(r, vac)) {
            has_vacuous = true;
        }
    }
    for (const CredalSet& r : lattice) {
        for (const Distribution& g : r.generators()) {
            bool found = false;
            for (const CredalSet& s : lattice) {
                const auto& ext = s.extreme_points();
                if (ext.size() == 1 && same_point(ext.front(), g)) {
                    found = true;
                    break;
                }
            }
            if (!found) {
                throw std::invalid_argument(
                    "impossibility_check: lattice lacks a singleton for a member distribution");
            }
        }
    }
    if (!has_vacuous) {
        throw std::invalid_argument("impossibility_check: lattice lacks the vacuous set");
    }

    ImpossibilityReport rep;
    for (std::size_t i = 0; i < lattice.size() && rep.constant; ++i) {
        for (std::size_t o = 0; o < n; ++o) {
            if (std::abs(table[i][o] - table[0][o]) > argmax_tie_tolerance) {
                rep.constant = false;
                break;
            }
        }
    }
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        const auto& ext = lattice[i].extreme_points();
        for (std::size_t j = 0; j < lattice.size(); ++j) {
            if (i == j || credal_equivalent(lattice[i], lattice[j])) {
                continue;
            }
            for (std::size_t e = 0; e < ext.size(); ++e) {
                double truthful = 0.0;
                double deviant = 0.0;
                for (std::size_t o = 0; o < n; ++o) {
                    truthful += ext[e][o] * table[i][o];
                    deviant += ext[e][o] * table[j][o];
                }
                if (deviant > truthful + argmax_tie_tolerance) {
                    rep.proper = false;
                    if (!rep.violation) {
                        rep.violation = ImpossibilityReport::Violation{i, j, e};
                    }
                }
            }
        }
    }
    return rep;
}

/// The five-report binary lattice used by the impossibility demonstration:
/// singletons at 0, 1/2 and 1, the interval [0, 1/2], and the vacuous set.
inline std::vector<CredalSet> default_impossibility_lattice(const OutcomeSpacePtr& space) {
    std::vector<CredalSet> lattice;
    lattice.push_back(CredalSet::singleton(Distribution::bernoulli(space, 0.0)));
    lattice.push_back(CredalSet::singleton(Distribution::bernoulli(space, 0.5)));
    lattice.push_back(CredalSet::singleton(Distribution::bernoulli(space, 1.0)));
    lattice.push_back(CredalSet::interval(space, 0.0, 0.5));
    lattice.push_back(CredalSet::vacuous(space));
    return lattice;
}

/**
 * Hunts for the non-strictness witness promised for Pareto-efficient rules:
 * a report strictly inside the belief's hull, not equivalent to it, whose
 * forecaster value ties the truthful one. Binary outcome spaces only;
 * candidates are interval reports ordered by width (precise points first).
 * Empty result means none at this grid resolution.
 */
inline std::optional<IntervalReport> non_strictness_witness(const DecisionProblem& problem,
                                                            const AggregationRule& rule,
                                                            const CredalSet& belief,
                                                            double step = 0.01, double k = 1.0,
                                                            double c = 0.0) {
    if (belief.extreme_points().size() < 2) {
        return std::nullopt;  // precise beliefs are out of scope of the lemma
    }
    if (belief.space()->size() != 2) {
        throw std::invalid_argument("non_strictness_witness: binary outcome space required");
    }
    const double lo = belief.extreme_points().front()[1];
    const double hi = belief.extreme_points().back()[1];
    const TailoredRule tailored(problem, rule, k, c);
    const double truthful = forecaster_value(tailored, belief, belief);

    const auto ticks = static_cast<std::size_t>(std::llround(1.0 / step));
    const auto lo_tick = static_cast<std::size_t>(std::ceil(lo * static_cast<double>(ticks) - 1e-9));
    const auto hi_tick = static_cast<std::size_t>(std::floor(hi * static_cast<double>(ticks) + 1e-9));
    for (std::size_t width = 0; width + lo_tick <= hi_tick; ++width) {
        for (std::size_t i = lo_tick; i + width <= hi_tick; ++i) {
            const double q1 = static_cast<double>(i) / static_cast<double>(ticks);
            const double q2 = static_cast<double>(i + width) / static_cast<double>(ticks);
            IntervalReport report{q1, q2, CredalSet::interval(belief.space(), q1, q2)};
            if (credal_equivalent(report.set, belief)) {
                continue;
            }
            if (std::abs(forecaster_value(tailored, belief, report.set) - truthful) <=
                properness_margin) {
                return report;
            }
        }
    }
    return std::nullopt;
}

}  // namespace ipscore

#endif  // IPSCORE_IP_SCORING_HPP
