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

#ifndef IPSCORE_SCORING_PRECISE_HPP
#define IPSCORE_SCORING_PRECISE_HPP

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "ipscore/probability.hpp"
#include "ipscore/sampling.hpp"

namespace ipscore {

/// Scores are extended reals: -infinity is the regularity sentinel for a
/// logarithmic score of an outcome the report gave zero mass. Expectations
/// use the convention 0 * (-inf) = 0.
inline constexpr double neg_infinity = -std::numeric_limits<double>::infinity();

/// A pair counts as a strict-properness violation only when the truthful
/// margin fails to clear this; it separates genuine ties from rounding.
inline constexpr double strictness_margin = 1e-12;

enum class ScoreKind {
    logarithmic,
    quadratic,
    gneiting,  // built from a convex potential and its subgradient
};

/**
 * A regular precise scoring rule.
 *
 * The logarithmic and quadratic families carry per-outcome offsets a_o and
 * a positive scale b. A gneiting rule is assembled from a convex potential
 * G on the simplex and a subgradient of G, via
 *
 *   s(q, o) = G(q) - sum_o' G'(q)(o') q(o') + G'(q)(o)
 *
 * which is (strictly) proper exactly when G is (strictly) convex.
 */
class PreciseScoringRule {
  public:
    using Potential = std::function<double(const Distribution&)>;
    using Subgradient = std::function<std::vector<double>(const Distribution&)>;

    static PreciseScoringRule logarithmic(std::vector<double> offsets, double scale) {
        return PreciseScoringRule(ScoreKind::logarithmic, std::move(offsets), scale);
    }

    static PreciseScoringRule quadratic(std::vector<double> offsets, double scale) {
        return PreciseScoringRule(ScoreKind::quadratic, std::move(offsets), scale);
    }

    static PreciseScoringRule gneiting(Potential g, Subgradient dg) {
        PreciseScoringRule r(ScoreKind::gneiting, {}, 1.0);
        r.potential_ = std::move(g);
        r.subgradient_ = std::move(dg);
        return r;
    }

    ScoreKind kind() const { return kind_; }
    const std::vector<double>& offsets() const { return offsets_; }
    double scale() const { return scale_; }
    double potential(const Distribution& q) const { return potential_(q); }
    std::vector<double> subgradient(const Distribution& q) const { return subgradient_(q); }

    double offset(std::size_t o) const { return offsets_.empty() ? 0.0 : offsets_.at(o); }

  private:
    PreciseScoringRule(ScoreKind kind, std::vector<double> offsets, double scale)
        : kind_(kind), offsets_(std::move(offsets)), scale_(scale) {
        if (kind != ScoreKind::gneiting && scale_ <= 0.0) {
            throw std::invalid_argument("PreciseScoringRule: scale b must be positive");
        }
    }

    ScoreKind kind_;
    std::vector<double> offsets_;
    double scale_;
    Potential potential_;
    Subgradient subgradient_;
};

/// s(report, outcome). Returns -infinity only for a logarithmic score of a
/// zero-mass outcome (regularity, not an error).
inline double score(const PreciseScoringRule& rule, const Distribution& report, std::size_t outcome) {
    if (outcome >= report.size()) {
        throw std::invalid_argument("score: outcome index out of range");
    }
    if (!rule.offsets().empty() && rule.offsets().size() != report.size()) {
        throw std::invalid_argument("score: offset vector does not match outcome count");
    }
    switch (rule.kind()) {
        case ScoreKind::logarithmic: {
            const double q = report[outcome];
            if (q == 0.0) {
                return neg_infinity;
            }
            return rule.offset(outcome) + rule.scale() * std::log(q);
        }
        case ScoreKind::quadratic: {
            double ssq = 0.0;
            for (std::size_t o = 0; o < report.size(); ++o) {
                ssq += report[o] * report[o];
            }
            return rule.offset(outcome) + rule.scale() * (2.0 * report[outcome] - ssq);
        }
        case ScoreKind::gneiting: {
            const double g = rule.potential(report);
            const std::vector<double> dg = rule.subgradient(report);
            if (dg.size() != report.size()) {
                throw std::invalid_argument("score: subgradient has wrong length");
            }
            double correction = 0.0;
            for (std::size_t o = 0; o < report.size(); ++o) {
                if (report[o] != 0.0) {  // 0 * (-inf) = 0
                    correction += dg[o] * report[o];
                }
            }
            return g - correction + dg[outcome];
        }
    }
    throw std::logic_error("score: unknown kind");
}

/// E_{o ~ belief}[s(report, o)] with 0 * (-inf) = 0.
inline double expected_score(const PreciseScoringRule& rule, const Distribution& report,
                             const Distribution& belief) {
    if (!same_space(report.space(), belief.space())) {
        throw std::invalid_argument("expected_score: outcome spaces differ");
    }
    double e = 0.0;
    for (std::size_t o = 0; o < belief.size(); ++o) {
        if (belief[o] == 0.0) {
            continue;
        }
        const double s = score(rule, report, o);
        if (s == neg_infinity) {
            return neg_infinity;
        }
        e += belief[o] * s;
    }
    return e;
}

struct StrictPropernessReport {
    struct Violation {
        Distribution belief;
        Distribution report;
        double truthful;
        double deviant;
    };
    std::size_t trials = 0;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

/**
 * Samples `trials` pairs (p, q) with p != q (L-inf above 1e-6) uniformly on
 * the simplex and flags every pair where reporting the truth fails to beat
 * the deviation by more than strictness_margin.
 */
inline StrictPropernessReport verify_strict_properness(const PreciseScoringRule& rule,
                                                       const OutcomeSpacePtr& space,
                                                       std::size_t trials, std::uint64_t rng_seed) {
    if (trials < 1) {
        throw std::invalid_argument("verify_strict_properness: need at least one trial");
    }
    Rng rng(rng_seed);
    StrictPropernessReport out;
    out.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        Distribution p = sample_distribution(space, rng);
        Distribution q = sample_distribution(space, rng);
        while (linf_distance(p, q) <= 1e-6) {
            q = sample_distribution(space, rng);
        }
        const double truthful = expected_score(rule, p, p);
        const double deviant = expected_score(rule, q, p);
        if (!(truthful > deviant + strictness_margin)) {
            out.violations.push_back({p, q, truthful, deviant});
        }
    }
    return out;
}

/**
 * For a gneiting rule, the maximum expected score E_q[s(q, o)] must equal
 * the potential G(q) identically. Returns the largest deviation seen over
 * sampled reports; the contract is <= 1e-9.
 */
inline double expected_score_is_G(const PreciseScoringRule& rule, const OutcomeSpacePtr& space,
                                  std::size_t samples, std::uint64_t rng_seed = 4242) {
    if (rule.kind() != ScoreKind::gneiting) {
        throw std::invalid_argument("expected_score_is_G: rule is not gneiting-constructed");
    }
    Rng rng(rng_seed);
    double worst = 0.0;
    for (std::size_t t = 0; t < samples; ++t) {
        const Distribution q = sample_distribution(space, rng);
        const double dev = std::abs(expected_score(rule, q, q) - rule.potential(q));
        worst = std::max(worst, dev);
    }
    return worst;
}

// Stock potentials for tests and the CLI.

/// G(q) = sum q^2, strictly convex; reproduces the quadratic score family.
inline PreciseScoringRule sum_of_squares_rule() {
    return PreciseScoringRule::gneiting(
        [](const Distribution& q) {
            double s = 0.0;
            for (std::size_t o = 0; o < q.size(); ++o) {
                s += q[o] * q[o];
            }
            return s;
        },
        [](const Distribution& q) {
            std::vector<double> g(q.size());
            for (std::size_t o = 0; o < q.size(); ++o) {
                g[o] = 2.0 * q[o];
            }
            return g;
        });
}

/// G(q) = sum q ln q (negative entropy), strictly convex; reproduces the
/// logarithmic score.
inline PreciseScoringRule negative_entropy_rule() {
    return PreciseScoringRule::gneiting(
        [](const Distribution& q) {
            double s = 0.0;
            for (std::size_t o = 0; o < q.size(); ++o) {
                if (q[o] > 0.0) {
                    s += q[o] * std::log(q[o]);
                }
            }
            return s;
        },
        [](const Distribution& q) {
            std::vector<double> g(q.size());
            for (std::size_t o = 0; o < q.size(); ++o) {
                g[o] = q[o] > 0.0 ? 1.0 + std::log(q[o]) : neg_infinity;
            }
            return g;
        });
}

/// Proper but not strictly: a linear potential scores every report alike.
inline PreciseScoringRule constant_rule(double value) {
    return PreciseScoringRule::gneiting(
        [value](const Distribution&) { return value; },
        [](const Distribution& q) { return std::vector<double>(q.size(), 0.0); });
}

}  // namespace ipscore

#endif  // IPSCORE_SCORING_PRECISE_HPP
