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

#ifndef IPSCORE_PROBABILITY_HPP
#define IPSCORE_PROBABILITY_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipscore {

/// Tolerance for "two distributions are the same point" and for the convex
/// hull membership test. Double precision on <= ~10 outcomes leaves about
/// six orders of margin below this.
inline constexpr double hull_tolerance = 1e-9;

/// Tolerance on probability mass normalisation.
inline constexpr double mass_tolerance = 1e-12;

/// Largest number of distinct credal-set generators the hull machinery
/// accepts. The membership test enumerates generator subsets, which is
/// exact and solver-free but only sensible at desk scale.
inline constexpr std::size_t max_generators = 12;

/**
 * A finite, ordered set of at least two uniquely named outcomes.
 *
 * Immutable after construction. Distributions and decision problems refer
 * to a space through a shared pointer; two spaces are interchangeable when
 * their label lists are equal.
 */
class OutcomeSpace {
  public:
    explicit OutcomeSpace(std::vector<std::string> labels)
        : labels_(std::move(labels)) {
        if (labels_.size() < 2) {
            throw std::invalid_argument("OutcomeSpace: need at least two outcomes");
        }
        for (std::size_t i = 0; i < labels_.size(); ++i) {
            for (std::size_t j = i + 1; j < labels_.size(); ++j) {
                if (labels_[i] == labels_[j]) {
                    throw std::invalid_argument("OutcomeSpace: duplicate label '" + labels_[i] + "'");
                }
            }
        }
    }

    std::size_t size() const { return labels_.size(); }
    const std::string& label(std::size_t o) const { return labels_.at(o); }
    const std::vector<std::string>& labels() const { return labels_; }

    bool operator==(const OutcomeSpace& other) const { return labels_ == other.labels_; }
    bool operator!=(const OutcomeSpace& other) const { return !(*this == other); }

    /// Space with labels "o0", "o1", ... "o{n-1}".
    static std::shared_ptr<const OutcomeSpace> indexed(std::size_t n) {
        std::vector<std::string> labels;
        labels.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            labels.push_back("o" + std::to_string(i));
        }
        return std::make_shared<const OutcomeSpace>(std::move(labels));
    }

    static std::shared_ptr<const OutcomeSpace> binary() { return indexed(2); }

  private:
    std::vector<std::string> labels_;
};

using OutcomeSpacePtr = std::shared_ptr<const OutcomeSpace>;

inline bool same_space(const OutcomeSpacePtr& a, const OutcomeSpacePtr& b) {
    return a == b || (a && b && *a == *b);
}

/**
 * A point on the probability simplex over an OutcomeSpace.
 *
 * Entries are non-negative and sum to one within mass_tolerance; the
 * constructor folds any residual float drift back into the vector.
 * Immutable and safe to share across threads.
 */
class Distribution {
  public:
    Distribution(OutcomeSpacePtr space, std::vector<double> probs)
        : space_(std::move(space)), probs_(std::move(probs)) {
        if (!space_) {
            throw std::invalid_argument("Distribution: null outcome space");
        }
        if (probs_.size() != space_->size()) {
            throw std::invalid_argument("Distribution: wrong number of entries");
        }
        double sum = 0.0;
        for (double& p : probs_) {
            if (p < 0.0) {
                if (p < -mass_tolerance) {
                    throw std::invalid_argument("Distribution: negative probability");
                }
                p = 0.0;
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > mass_tolerance) {
            throw std::invalid_argument("Distribution: mass does not sum to one");
        }
        for (double& p : probs_) {
            p /= sum;
        }
    }

    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t o) const { return probs_[o]; }
    double at(std::size_t o) const { return probs_.at(o); }
    const std::vector<double>& probs() const { return probs_; }
    const OutcomeSpacePtr& space() const { return space_; }

    /// Two-outcome distribution [1-x, x]; x is the mass on the second outcome.
    static Distribution bernoulli(const OutcomeSpacePtr& space, double x) {
        if (!space || space->size() != 2) {
            throw std::invalid_argument("bernoulli: space must have exactly two outcomes");
        }
        return Distribution(space, {1.0 - x, x});
    }

    /// Point mass on outcome o.
    static Distribution dirac(const OutcomeSpacePtr& space, std::size_t o) {
        if (!space || o >= space->size()) {
            throw std::invalid_argument("dirac: outcome out of range");
        }
        std::vector<double> p(space->size(), 0.0);
        p[o] = 1.0;
        return Distribution(space, std::move(p));
    }

  private:
    OutcomeSpacePtr space_;
    std::vector<double> probs_;
};

inline double linf_distance(const Distribution& a, const Distribution& b) {
    if (!same_space(a.space(), b.space())) {
        throw std::invalid_argument("linf_distance: outcome spaces differ");
    }
    double d = 0.0;
    for (std::size_t o = 0; o < a.size(); ++o) {
        d = std::max(d, std::abs(a[o] - b[o]));
    }
    return d;
}

inline bool same_point(const Distribution& a, const Distribution& b, double tol = hull_tolerance) {
    return linf_distance(a, b) <= tol;
}

/// Convex combination of distributions over one space. Weights live on the
/// simplex; the result is renormalised only to absorb float drift.
inline Distribution mixture(const std::vector<double>& weights,
                            const std::vector<Distribution>& dists) {
    if (weights.empty() || weights.size() != dists.size()) {
        throw std::invalid_argument("mixture: weights and distributions must match and be non-empty");
    }
    double wsum = 0.0;
    for (double w : weights) {
        if (w < -mass_tolerance) {
            throw std::invalid_argument("mixture: negative weight");
        }
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > mass_tolerance) {
        throw std::invalid_argument("mixture: weights do not sum to one");
    }
    const OutcomeSpacePtr& space = dists.front().space();
    for (const Distribution& d : dists) {
        if (!same_space(space, d.space())) {
            throw std::invalid_argument("mixture: outcome spaces differ");
        }
    }
    std::vector<double> out(space->size(), 0.0);
    for (std::size_t j = 0; j < dists.size(); ++j) {
        for (std::size_t o = 0; o < out.size(); ++o) {
            out[o] += weights[j] * dists[j][o];
        }
    }
    return Distribution(space, std::move(out));
}

namespace detail {

/// Order on probability vectors comparing from the last outcome down.
/// For two-outcome sets this sorts by the mass on the upper outcome, so the
/// lower end of an interval report always comes first.
inline bool colex_less(const Distribution& a, const Distribution& b) {
    for (std::size_t i = a.size(); i-- > 0;) {
        if (a[i] != b[i]) {
            return a[i] < b[i];
        }
    }
    return false;
}

/// Solves the small dense system G w = rhs in place. Returns false when the
/// pivot collapses (singular up to 1e-13).
inline bool solve_dense(std::vector<double>& g, std::vector<double>& rhs, std::size_t s) {
    for (std::size_t col = 0; col < s; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < s; ++r) {
            if (std::abs(g[r * s + col]) > std::abs(g[pivot * s + col])) {
                pivot = r;
            }
        }
        if (std::abs(g[pivot * s + col]) < 1e-13) {
            return false;
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < s; ++c) {
                std::swap(g[col * s + c], g[pivot * s + c]);
            }
            std::swap(rhs[col], rhs[pivot]);
        }
        for (std::size_t r = 0; r < s; ++r) {
            if (r == col) {
                continue;
            }
            const double f = g[r * s + col] / g[col * s + col];
            if (f == 0.0) {
                continue;
            }
            for (std::size_t c = col; c < s; ++c) {
                g[r * s + c] -= f * g[col * s + c];
            }
            rhs[r] -= f * rhs[col];
        }
    }
    for (std::size_t i = 0; i < s; ++i) {
        rhs[i] /= g[i * s + i];
    }
    return true;
}

/**
 * Linear feasibility test: is `target` a convex combination of `points`
 * within `tol` in the L-inf norm?
 *
 * Solver-free: by Caratheodory a feasible point is already a combination of
 * at most n+1 of the candidates, so all small subsets are enumerated and
 * each one is checked through a least-squares solve plus a residual and
 * non-negativity test.
 */
inline bool in_convex_hull(const Distribution& target,
                           const std::vector<const Distribution*>& points,
                           double tol = hull_tolerance) {
    if (points.empty()) {
        return false;
    }
    const std::size_t n = target.size();
    const std::size_t m = points.size();
    const std::size_t cap = std::min(m, n + 1);
    if (m > max_generators) {
        throw std::invalid_argument("in_convex_hull: more than 12 candidate points");
    }

    std::vector<std::size_t> subset;
    std::vector<double> gram, rhs, w;

    // Subsets in increasing-size order; singletons reduce to a point match.
    for (std::size_t size = 1; size <= cap; ++size) {
        subset.assign(size, 0);
        std::iota(subset.begin(), subset.end(), std::size_t{0});
        while (true) {
            // rows of A are the n outcome coordinates plus the weight-sum row
            bool feasible = false;
            if (size == 1) {
                feasible = same_point(target, *points[subset[0]], tol);
            } else {
                const std::size_t s = size;
                gram.assign(s * s, 0.0);
                rhs.assign(s, 0.0);
                for (std::size_t i = 0; i < s; ++i) {
                    const Distribution& gi = *points[subset[i]];
                    for (std::size_t j = 0; j < s; ++j) {
                        const Distribution& gj = *points[subset[j]];
                        double dot = 1.0;  // ones row
                        for (std::size_t o = 0; o < n; ++o) {
                            dot += gi[o] * gj[o];
                        }
                        gram[i * s + j] = dot;
                    }
                    double dotb = 1.0;
                    for (std::size_t o = 0; o < n; ++o) {
                        dotb += gi[o] * target[o];
                    }
                    rhs[i] = dotb;
                }
                if (solve_dense(gram, rhs, s)) {
                    w = rhs;
                    bool nonneg = true;
                    double wsum = 0.0;
                    for (double wi : w) {
                        nonneg = nonneg && wi >= -tol;
                        wsum += wi;
                    }
                    if (nonneg && std::abs(wsum - 1.0) <= tol) {
                        double resid = 0.0;
                        for (std::size_t o = 0; o < n; ++o) {
                            double v = 0.0;
                            for (std::size_t i = 0; i < s; ++i) {
                                v += w[i] * (*points[subset[i]])[o];
                            }
                            resid = std::max(resid, std::abs(v - target[o]));
                        }
                        feasible = resid <= tol;
                    }
                }
            }
            if (feasible) {
                return true;
            }
            // next combination
            std::size_t k = size;
            while (k-- > 0) {
                if (subset[k] + (size - k) < m) {
                    ++subset[k];
                    for (std::size_t j = k + 1; j < size; ++j) {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
                if (k == 0) {
                    goto next_size;
                }
            }
        }
    next_size:;
    }
    return false;
}

}  // namespace detail

/**
 * A credal set given by a finite generating list of distributions.
 *
 * Only the convex hull of the generators matters for scoring and decision
 * making, so the set caches its extreme points (the minimal sub-list with
 * the same hull) on first use. The cache is shared between copies and
 * filled at most once, so const access is safe from multiple threads.
 */
class CredalSet {
  public:
    explicit CredalSet(std::vector<Distribution> generators)
        : generators_(std::move(generators)), cache_(std::make_shared<Cache>()) {
        if (generators_.empty()) {
            throw std::invalid_argument("CredalSet: empty generating set");
        }
        for (const Distribution& g : generators_) {
            if (!same_space(space(), g.space())) {
                throw std::invalid_argument("CredalSet: generators on different outcome spaces");
            }
        }
    }

    const std::vector<Distribution>& generators() const { return generators_; }
    const OutcomeSpacePtr& space() const { return generators_.front().space(); }
    std::size_t generator_count() const { return generators_.size(); }
    bool is_precise() const { return extreme_points().size() == 1; }

    /**
     * The extreme points of the generated hull, in a canonical order
     * (ascending by mass on the last outcome, then the next-to-last, ...).
     * A generator is dropped exactly when the other generators reproduce it
     * as a convex combination within hull_tolerance.
     */
    const std::vector<Distribution>& extreme_points() const {
        std::call_once(cache_->once, [this] { cache_->extremes = compute_extremes(generators_); });
        return cache_->extremes;
    }

    static CredalSet singleton(Distribution d) { return CredalSet({std::move(d)}); }

    /// Binary-outcome interval [lo, hi]: generators {Bern(lo), Bern(hi)}.
    static CredalSet interval(const OutcomeSpacePtr& space, double lo, double hi) {
        if (lo > hi + mass_tolerance) {
            throw std::invalid_argument("CredalSet::interval: lower end above upper end");
        }
        std::vector<Distribution> gens;
        gens.push_back(Distribution::bernoulli(space, lo));
        if (hi - lo > mass_tolerance) {
            gens.push_back(Distribution::bernoulli(space, hi));
        }
        return CredalSet(std::move(gens));
    }

    /// The vacuous set: all of Delta(O), generated by the Dirac vertices.
    static CredalSet vacuous(const OutcomeSpacePtr& space) {
        std::vector<Distribution> gens;
        for (std::size_t o = 0; o < space->size(); ++o) {
            gens.push_back(Distribution::dirac(space, o));
        }
        return CredalSet(std::move(gens));
    }

  private:
    struct Cache {
        std::once_flag once;
        std::vector<Distribution> extremes;
    };

    static std::vector<Distribution> compute_extremes(const std::vector<Distribution>& gens) {
        // collapse duplicate generators first so a repeated point is not
        // misread as a convex combination of itself
        std::vector<Distribution> unique;
        for (const Distribution& g : gens) {
            bool seen = false;
            for (const Distribution& u : unique) {
                if (same_point(g, u)) {
                    seen = true;
                    break;
                }
            }
            if (!seen) {
                unique.push_back(g);
            }
        }
        if (unique.size() > max_generators) {
            throw std::invalid_argument("CredalSet: more than 12 distinct generators");
        }
        std::vector<Distribution> extremes;
        if (unique.size() == 1) {
            extremes = unique;
        } else {
            std::vector<const Distribution*> others;
            for (std::size_t i = 0; i < unique.size(); ++i) {
                others.clear();
                for (std::size_t j = 0; j < unique.size(); ++j) {
                    if (j != i) {
                        others.push_back(&unique[j]);
                    }
                }
                if (!detail::in_convex_hull(unique[i], others)) {
                    extremes.push_back(unique[i]);
                }
            }
        }
        std::sort(extremes.begin(), extremes.end(), detail::colex_less);
        return extremes;
    }

    std::vector<Distribution> generators_;
    std::shared_ptr<Cache> cache_;
};

/// Free-function form of the extreme point computation.
inline const std::vector<Distribution>& extreme_points(const CredalSet& set) {
    return set.extreme_points();
}

/// Equality of beliefs for elicitation: same convex hull, decided by
/// matching extreme point lists pairwise within hull_tolerance.
inline bool credal_equivalent(const CredalSet& a, const CredalSet& b) {
    if (!same_space(a.space(), b.space())) {
        throw std::invalid_argument("credal_equivalent: outcome spaces differ");
    }
    const auto& ea = a.extreme_points();
    const auto& eb = b.extreme_points();
    if (ea.size() != eb.size()) {
        return false;
    }
    for (std::size_t i = 0; i < ea.size(); ++i) {
        if (!same_point(ea[i], eb[i])) {
            return false;
        }
    }
    return true;
}

/// Closed interval of plausible expected scores.
struct UtilityRange {
    double lower = 0.0;
    double upper = 0.0;
};

/**
 * Range of E_p[score] over the belief. The optimum over a credal set is
 * always attained at an extreme point, so only those are scanned.
 */
inline UtilityRange utility_range(const CredalSet& belief, const std::vector<double>& score_values) {
    if (score_values.size() != belief.space()->size()) {
        throw std::invalid_argument("utility_range: score vector has wrong length");
    }
    UtilityRange r;
    bool first = true;
    for (const Distribution& p : belief.extreme_points()) {
        double e = 0.0;
        for (std::size_t o = 0; o < score_values.size(); ++o) {
            e += p[o] * score_values[o];
        }
        if (first) {
            r.lower = r.upper = e;
            first = false;
        } else {
            r.lower = std::min(r.lower, e);
            r.upper = std::max(r.upper, e);
        }
    }
    return r;
}

}  // namespace ipscore

#endif  // IPSCORE_PROBABILITY_HPP
