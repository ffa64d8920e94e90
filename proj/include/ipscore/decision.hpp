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

#ifndef IPSCORE_DECISION_HPP
#define IPSCORE_DECISION_HPP

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "ipscore/probability.hpp"

namespace ipscore {

/// Two expected utilities within this of each other count as a tie when
/// deciding whether an argmax is unique.
inline constexpr double argmax_tie_tolerance = 1e-12;

/**
 * A finite decision problem: an ordered action list and a finite utility
 * table u(a, o). Actions may carry a numeric value (the [0,1] grid used by
 * the binary simulation) or be purely labelled.
 */
class DecisionProblem {
  public:
    DecisionProblem(OutcomeSpacePtr space, std::vector<std::string> action_labels,
                    std::vector<std::vector<double>> utility)
        : space_(std::move(space)), labels_(std::move(action_labels)) {
        if (!space_ || space_->size() < 2) {
            throw std::invalid_argument("DecisionProblem: need an outcome space with n >= 2");
        }
        if (labels_.size() < 2 || utility.size() != labels_.size()) {
            throw std::invalid_argument("DecisionProblem: need m >= 2 actions with matching utility rows");
        }
        const std::size_t n = space_->size();
        utility_.reserve(labels_.size() * n);
        for (const auto& row : utility) {
            if (row.size() != n) {
                throw std::invalid_argument("DecisionProblem: utility row has wrong length");
            }
            for (double u : row) {
                if (!std::isfinite(u)) {
                    throw std::invalid_argument("DecisionProblem: utilities must be finite");
                }
                utility_.push_back(u);
            }
        }
    }

    std::size_t action_count() const { return labels_.size(); }
    std::size_t outcome_count() const { return space_->size(); }
    const OutcomeSpacePtr& space() const { return space_; }
    const std::string& action_label(std::size_t a) const { return labels_.at(a); }
    double utility(std::size_t a, std::size_t o) const { return utility_[a * space_->size() + o]; }

    bool has_action_values() const { return !values_.empty(); }
    double action_value(std::size_t a) const { return values_.at(a); }
    const std::vector<double>& action_values() const { return values_; }

    /// Expected utility of every action under a precise belief.
    std::vector<double> expected_utilities(const Distribution& belief) const {
        if (!same_space(space_, belief.space())) {
            throw std::invalid_argument("expected_utilities: outcome spaces differ");
        }
        const std::size_t n = space_->size();
        std::vector<double> eu(action_count(), 0.0);
        for (std::size_t a = 0; a < action_count(); ++a) {
            double e = 0.0;
            for (std::size_t o = 0; o < n; ++o) {
                e += belief[o] * utility_[a * n + o];
            }
            eu[a] = e;
        }
        return eu;
    }

    /**
     * Uniform action grid over [lo, hi] with the given step and the squared
     * distance penalty u(a, o) = -(value(o) - a)^2, where an outcome's value
     * is its index. The unique maximiser under a precise belief is then the
     * grid point nearest to the belief's mean outcome.
     */
    static DecisionProblem action_grid(const OutcomeSpacePtr& space, double lo, double hi,
                                       double step) {
        if (!(step > 0.0) || hi <= lo) {
            throw std::invalid_argument("action_grid: need lo < hi and step > 0");
        }
        const auto count = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
        if (count < 2) {
            throw std::invalid_argument("action_grid: need at least two grid actions");
        }
        std::vector<std::string> labels(count);
        std::vector<double> values(count);
        std::vector<std::vector<double>> util(count, std::vector<double>(space->size()));
        char buf[32];
        for (std::size_t a = 0; a < count; ++a) {
            const double v = lo + static_cast<double>(a) * step;
            values[a] = v;
            std::snprintf(buf, sizeof buf, "%g", v);
            labels[a] = buf;
            for (std::size_t o = 0; o < space->size(); ++o) {
                const double d = static_cast<double>(o) - v;
                util[a][o] = -d * d;
            }
        }
        DecisionProblem p(space, std::move(labels), std::move(util));
        p.values_ = std::move(values);
        return p;
    }

  private:
    OutcomeSpacePtr space_;
    std::vector<std::string> labels_;
    std::vector<double> values_;   // numeric action values, empty when labelled only
    std::vector<double> utility_;  // row-major m x n
};

struct BestAction {
    std::size_t index = 0;  // lowest index attaining the maximum
    double value = 0.0;
    bool unique = true;  // false when a second action is within argmax_tie_tolerance
};

/// First index attaining the maximum of a utility vector.
inline std::size_t argmax_index(const std::vector<double>& values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) {
            best = i;
        }
    }
    return best;
}

inline BestAction best_action(const DecisionProblem& problem, const Distribution& belief) {
    const std::vector<double> eu = problem.expected_utilities(belief);
    BestAction out;
    out.index = argmax_index(eu);
    out.value = eu[out.index];
    std::size_t within = 0;
    for (double e : eu) {
        if (e >= out.value - argmax_tie_tolerance) {
            ++within;
        }
    }
    out.unique = within == 1;
    return out;
}

struct ArgmaxCertificate {
    bool all_unique = true;
    std::vector<Distribution> ties;  // beliefs where the maximiser was not unique
};

namespace detail {

template <typename Fn>
void simplex_grid_recurse(const OutcomeSpacePtr& space, std::size_t ticks,
                          std::vector<std::size_t>& part, std::size_t depth,
                          std::size_t remaining, Fn&& fn) {
    const std::size_t n = space->size();
    if (depth == n - 1) {
        part[depth] = remaining;
        std::vector<double> probs(n);
        for (std::size_t o = 0; o < n; ++o) {
            probs[o] = static_cast<double>(part[o]) / static_cast<double>(ticks);
        }
        fn(Distribution(space, std::move(probs)));
        return;
    }
    for (std::size_t k = 0; k <= remaining; ++k) {
        part[depth] = k;
        simplex_grid_recurse(space, ticks, part, depth + 1, remaining - k, fn);
    }
}

/// Visits every grid belief (k_0/T, ..., k_{n-1}/T) with sum k_i = T.
template <typename Fn>
void for_each_simplex_grid_point(const OutcomeSpacePtr& space, std::size_t ticks, Fn&& fn) {
    std::vector<std::size_t> part(space->size(), 0);
    simplex_grid_recurse(space, ticks, part, 0, ticks, fn);
}

}  // namespace detail

/**
 * Sweeps beliefs over a simplex grid and reports whether the best action is
 * unique at every grid point. Necessary-condition check at grid resolution,
 * not a proof. Intended for binary or small outcome spaces.
 */
inline ArgmaxCertificate certify_unique_argmax(const DecisionProblem& problem, double grid_step) {
    if (!(grid_step > 0.0) || grid_step > 0.1) {
        throw std::invalid_argument("certify_unique_argmax: grid step must lie in (0, 0.1]");
    }
    const auto ticks = static_cast<std::size_t>(std::llround(1.0 / grid_step));
    ArgmaxCertificate cert;
    detail::for_each_simplex_grid_point(problem.space(), ticks, [&](const Distribution& q) {
        if (!best_action(problem, q).unique) {
            cert.all_unique = false;
            cert.ties.push_back(q);
        }
    });
    return cert;
}

/**
 * The credal set's image in action space: the set of best actions over its
 * extreme points. A faithful identifier of the set whenever the problem has
 * a unique maximiser at every belief; all_unique=false flags that the
 * precondition failed at some extreme point.
 */
struct ActionFingerprint {
    std::vector<std::size_t> actions;  // sorted, duplicate-free
    bool all_unique = true;
};

inline ActionFingerprint action_fingerprint(const DecisionProblem& problem, const CredalSet& set) {
    ActionFingerprint fp;
    for (const Distribution& q : set.extreme_points()) {
        const BestAction ba = best_action(problem, q);
        fp.all_unique = fp.all_unique && ba.unique;
        fp.actions.push_back(ba.index);
    }
    std::sort(fp.actions.begin(), fp.actions.end());
    fp.actions.erase(std::unique(fp.actions.begin(), fp.actions.end()), fp.actions.end());
    return fp;
}

}  // namespace ipscore

#endif  // IPSCORE_DECISION_HPP
