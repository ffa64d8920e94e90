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

#ifndef IPSCORE_AGGREGATION_HPP
#define IPSCORE_AGGREGATION_HPP

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "ipscore/decision.hpp"
#include "ipscore/probability.hpp"

namespace ipscore {

/**
 * Expected utilities of m inputs under k member distributions: a k x m
 * table, one row per member. The row order is the canonical extreme point
 * order of the credal set it came from.
 */
class UtilityProfile {
  public:
    UtilityProfile(std::size_t members, std::size_t inputs, std::vector<double> values)
        : members_(members), inputs_(inputs), values_(std::move(values)) {
        if (members_ < 1 || inputs_ < 1 || values_.size() != members_ * inputs_) {
            throw std::invalid_argument("UtilityProfile: shape does not match data");
        }
    }

    explicit UtilityProfile(const std::vector<std::vector<double>>& rows)
        : members_(rows.size()), inputs_(rows.empty() ? 0 : rows.front().size()) {
        if (members_ < 1 || inputs_ < 1) {
            throw std::invalid_argument("UtilityProfile: empty table");
        }
        values_.reserve(members_ * inputs_);
        for (const auto& row : rows) {
            if (row.size() != inputs_) {
                throw std::invalid_argument("UtilityProfile: ragged rows");
            }
            values_.insert(values_.end(), row.begin(), row.end());
        }
    }

    std::size_t members() const { return members_; }
    std::size_t inputs() const { return inputs_; }
    double at(std::size_t member, std::size_t input) const {
        return values_[member * inputs_ + input];
    }

    UtilityProfile with_input_removed(std::size_t input) const {
        if (inputs_ < 2 || input >= inputs_) {
            throw std::invalid_argument("with_input_removed: bad input index");
        }
        std::vector<double> v;
        v.reserve(members_ * (inputs_ - 1));
        for (std::size_t k = 0; k < members_; ++k) {
            for (std::size_t i = 0; i < inputs_; ++i) {
                if (i != input) {
                    v.push_back(at(k, i));
                }
            }
        }
        return UtilityProfile(members_, inputs_ - 1, std::move(v));
    }

  private:
    std::size_t members_;
    std::size_t inputs_;
    std::vector<double> values_;  // row-major member x input
};

/**
 * A positive linear aggregation of member utilities.
 *
 *   utilitarian  - column mean, w(q) = 1/k
 *   egalitarian  - column minimum; the implicit one-hot weight vector may
 *                  differ between inputs
 *   fixed_linear - a constant simplex weight vector over the members
 */
struct AggregationRule {
    enum class Kind { utilitarian, egalitarian, fixed_linear };

    Kind kind = Kind::utilitarian;
    std::vector<double> lambda;  // fixed_linear only

    static AggregationRule utilitarian() { return {Kind::utilitarian, {}}; }
    static AggregationRule egalitarian() { return {Kind::egalitarian, {}}; }
    static AggregationRule fixed_linear(std::vector<double> lambda) {
        double sum = 0.0;
        for (double l : lambda) {
            if (l < -mass_tolerance) {
                throw std::invalid_argument("fixed_linear: negative weight");
            }
            sum += l;
        }
        if (lambda.empty() || std::abs(sum - 1.0) > 1e-9) {
            throw std::invalid_argument("fixed_linear: lambda must be a simplex vector");
        }
        return {Kind::fixed_linear, std::move(lambda)};
    }
};

/// Aggregated utility of every input. A fixed_linear lambda must match the
/// member count exactly.
inline std::vector<double> aggregate(const AggregationRule& rule, const UtilityProfile& profile) {
    const std::size_t k = profile.members();
    const std::size_t m = profile.inputs();
    std::vector<double> out(m, 0.0);
    switch (rule.kind) {
        case AggregationRule::Kind::utilitarian:
            for (std::size_t i = 0; i < m; ++i) {
                double s = 0.0;
                for (std::size_t r = 0; r < k; ++r) {
                    s += profile.at(r, i);
                }
                out[i] = s / static_cast<double>(k);
            }
            break;
        case AggregationRule::Kind::egalitarian:
            for (std::size_t i = 0; i < m; ++i) {
                double lo = profile.at(0, i);
                for (std::size_t r = 1; r < k; ++r) {
                    lo = std::min(lo, profile.at(r, i));
                }
                out[i] = lo;
            }
            break;
        case AggregationRule::Kind::fixed_linear:
            if (rule.lambda.size() != k) {
                throw std::invalid_argument("aggregate: lambda length does not match member count");
            }
            for (std::size_t i = 0; i < m; ++i) {
                double s = 0.0;
                for (std::size_t r = 0; r < k; ++r) {
                    s += rule.lambda[r] * profile.at(r, i);
                }
                out[i] = s;
            }
            break;
    }
    return out;
}

/// Aggregation of a one-member profile is the identity for every rule: a
/// convex combination of a single utility is that utility. This lets a
/// fixed_linear rule sized for k extremes act on precise reports too.
inline std::vector<double> effective_aggregate(const AggregationRule& rule,
                                               const UtilityProfile& profile) {
    if (profile.members() == 1) {
        std::vector<double> row(profile.inputs());
        for (std::size_t i = 0; i < row.size(); ++i) {
            row[i] = profile.at(0, i);
        }
        return row;
    }
    return aggregate(rule, profile);
}

using Aggregator = std::function<std::vector<double>(const UtilityProfile&)>;

inline Aggregator as_aggregator(AggregationRule rule) {
    return [rule = std::move(rule)](const UtilityProfile& p) { return aggregate(rule, p); };
}

/// Pairwise relation induced by member-wise dominance.
enum class PairOrder {
    first_dominates,   // i >= j under every member
    second_dominates,  // j >= i under every member
    indifferent,       // both directions (member-wise equal)
    incomparable,      // dominance fails both ways
};

inline PairOrder compare_inputs(const UtilityProfile& profile, std::size_t i, std::size_t j) {
    bool geq = true;
    bool leq = true;
    for (std::size_t r = 0; r < profile.members(); ++r) {
        geq = geq && profile.at(r, i) >= profile.at(r, j);
        leq = leq && profile.at(r, i) <= profile.at(r, j);
    }
    if (geq && leq) {
        return PairOrder::indifferent;
    }
    if (geq) {
        return PairOrder::first_dominates;
    }
    if (leq) {
        return PairOrder::second_dominates;
    }
    return PairOrder::incomparable;
}

/// Full pairwise relation table (inputs x inputs).
inline std::vector<std::vector<PairOrder>> partial_order(const UtilityProfile& profile) {
    const std::size_t m = profile.inputs();
    std::vector<std::vector<PairOrder>> rel(m, std::vector<PairOrder>(m, PairOrder::indifferent));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            rel[i][j] = compare_inputs(profile, i, j);
        }
    }
    return rel;
}

struct ParetoReport {
    struct Violation {
        std::size_t profile_index;
        std::size_t dominant;
        std::size_t dominated;
    };
    std::size_t pairs_checked = 0;
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// For every sampled profile, every member-wise dominated pair must keep
/// its order after aggregation.
inline ParetoReport check_pareto_efficiency(const Aggregator& agg,
                                            const std::vector<UtilityProfile>& profiles) {
    if (profiles.empty()) {
        throw std::invalid_argument("check_pareto_efficiency: need at least one profile");
    }
    ParetoReport rep;
    for (std::size_t p = 0; p < profiles.size(); ++p) {
        const UtilityProfile& prof = profiles[p];
        const std::vector<double> agged = agg(prof);
        for (std::size_t i = 0; i < prof.inputs(); ++i) {
            for (std::size_t j = 0; j < prof.inputs(); ++j) {
                if (i == j) {
                    continue;
                }
                const PairOrder rel = compare_inputs(prof, i, j);
                if (rel == PairOrder::first_dominates || rel == PairOrder::indifferent) {
                    ++rep.pairs_checked;
                    if (!(agged[i] >= agged[j] - argmax_tie_tolerance)) {
                        rep.violations.push_back({p, i, j});
                    }
                }
            }
        }
    }
    return rep;
}

inline ParetoReport check_pareto_efficiency(const AggregationRule& rule,
                                            const std::vector<UtilityProfile>& profiles) {
    return check_pareto_efficiency(as_aggregator(rule), profiles);
}

struct IiaReport {
    struct Flip {
        std::size_t profile_index;
        std::size_t first;
        std::size_t second;
        std::size_t removed;
    };
    std::size_t comparisons = 0;
    std::vector<Flip> flips;
    bool ok() const { return flips.empty(); }
};

namespace detail {

inline int order_sign(double d) {
    if (d > argmax_tie_tolerance) {
        return 1;
    }
    if (d < -argmax_tie_tolerance) {
        return -1;
    }
    return 0;
}

}  // namespace detail

/**
 * Deletes each third input in turn and reports every pair whose aggregated
 * order flips. Profiles need at least three inputs.
 */
inline IiaReport check_iia(const Aggregator& agg, const std::vector<UtilityProfile>& profiles) {
    IiaReport rep;
    for (std::size_t p = 0; p < profiles.size(); ++p) {
        const UtilityProfile& prof = profiles[p];
        if (prof.inputs() < 3) {
            throw std::invalid_argument("check_iia: profiles need at least three inputs");
        }
        const std::vector<double> full = agg(prof);
        for (std::size_t z = 0; z < prof.inputs(); ++z) {
            const UtilityProfile reduced = prof.with_input_removed(z);
            const std::vector<double> red = agg(reduced);
            for (std::size_t i = 0; i < prof.inputs(); ++i) {
                for (std::size_t j = i + 1; j < prof.inputs(); ++j) {
                    if (i == z || j == z) {
                        continue;
                    }
                    const std::size_t ri = i - (i > z ? 1 : 0);
                    const std::size_t rj = j - (j > z ? 1 : 0);
                    ++rep.comparisons;
                    const int before = detail::order_sign(full[i] - full[j]);
                    const int after = detail::order_sign(red[ri] - red[rj]);
                    if (before != after) {
                        rep.flips.push_back({p, i, j, z});
                    }
                }
            }
        }
    }
    return rep;
}

inline IiaReport check_iia(const AggregationRule& rule, const std::vector<UtilityProfile>& profiles) {
    return check_iia(as_aggregator(rule), profiles);
}

namespace detail {

/// Builds one profile row per extreme point: expected utility of every
/// action under that member.
inline UtilityProfile action_profile(const DecisionProblem& problem,
                                     const std::vector<Distribution>& members) {
    const std::size_t k = members.size();
    const std::size_t m = problem.action_count();
    std::vector<double> values;
    values.reserve(k * m);
    for (const Distribution& q : members) {
        const std::vector<double> eu = problem.expected_utilities(q);
        values.insert(values.end(), eu.begin(), eu.end());
    }
    return UtilityProfile(k, m, std::move(values));
}

template <typename Fn>
void mixture_grid_recurse(std::size_t ticks, std::size_t k, std::vector<std::size_t>& part,
                          std::size_t depth, std::size_t remaining, Fn&& fn) {
    if (depth == k - 1) {
        part[depth] = remaining;
        std::vector<double> w(k);
        for (std::size_t i = 0; i < k; ++i) {
            w[i] = static_cast<double>(part[i]) / static_cast<double>(ticks);
        }
        fn(w);
        return;
    }
    for (std::size_t t = 0; t <= remaining; ++t) {
        part[depth] = t;
        mixture_grid_recurse(ticks, k, part, depth + 1, remaining - t, fn);
    }
}

}  // namespace detail

/**
 * Searches co(set) for a precise belief whose induced best action matches
 * the aggregated best action on every probe problem. Candidates are the
 * mixtures of the extreme points on a weight grid of the given step; the
 * first match in enumeration order is returned. "No result" means none at
 * this resolution, not a proof of non-dictatorship.
 */
inline std::optional<Distribution> find_dictator(const AggregationRule& rule,
                                                 const std::vector<DecisionProblem>& problems,
                                                 const CredalSet& set, double mixture_step = 0.01) {
    if (problems.empty()) {
        throw std::invalid_argument("find_dictator: need at least one probe problem");
    }
    if (!(mixture_step > 0.0) || mixture_step > 1.0) {
        throw std::invalid_argument("find_dictator: bad mixture step");
    }
    const std::vector<Distribution>& ext = set.extreme_points();
    const std::size_t k = ext.size();

    // aggregated best action per problem, computed once
    std::vector<std::size_t> agg_best(problems.size());
    for (std::size_t pi = 0; pi < problems.size(); ++pi) {
        const UtilityProfile prof = detail::action_profile(problems[pi], ext);
        agg_best[pi] = argmax_index(effective_aggregate(rule, prof));
    }

    std::optional<Distribution> found;
    const auto ticks = static_cast<std::size_t>(std::llround(1.0 / mixture_step));
    std::vector<std::size_t> part(k, 0);
    detail::mixture_grid_recurse(ticks, k, part, 0, ticks, [&](const std::vector<double>& w) {
        if (found) {
            return;
        }
        const Distribution candidate = mixture(w, ext);
        for (std::size_t pi = 0; pi < problems.size(); ++pi) {
            if (best_action(problems[pi], candidate).index != agg_best[pi]) {
                return;
            }
        }
        found = candidate;
    });
    return found;
}

}  // namespace ipscore

#endif  // IPSCORE_AGGREGATION_HPP
