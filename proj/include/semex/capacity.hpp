// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "semex/rng.hpp"
#include "semex/special.hpp"
#include "semex/zeroset.hpp"

namespace semex {

// Escape/capacity estimation for the nondecreasing renewal walk.  The
// key exactness property: once a walk passes max(A) it can never hit A
// again, so every escape indicator is decided in finitely many steps
// with no truncation bias.  Full ranges A_0(0,n) reach ~n^{1/beta},
// far past 2^64, hence the 128-bit position type.
using walk_pos = unsigned __int128;

struct capacity_estimate {
    double value = 0.0;
    double se = 0.0;
    std::int64_t horizon = 0; // spatial horizon that decided escapes
    std::int64_t reps = 0;    // total escape reps spent
    double bias_bound = 0.0;  // one-sided truncation bias, 0 when exact
};

namespace detail {

// One escape trial from A[start]: true iff the walk passes max(A)
// without landing on another point of A.
template <class Int>
bool escape_trial(const std::vector<Int>& A, std::size_t start, const step_law& law,
                  rng& g) {
    Int pos = A[start];
    const Int last = A.back();
    std::size_t lo = start + 1;
    while (true) {
        std::int64_t gap = law.sample(g);
        if (static_cast<Int>(gap) > last - pos) return true;
        pos += static_cast<Int>(gap);
        auto it = std::lower_bound(A.begin() + static_cast<std::ptrdiff_t>(lo), A.end(), pos);
        lo = static_cast<std::size_t>(it - A.begin());
        if (lo < A.size() && A[lo] == pos) return false;
    }
}

} // namespace detail

template <class Int>
double escape_probability(const std::vector<Int>& A, Int a, const step_law& law,
                          std::int64_t reps, rng& g) {
    auto it = std::lower_bound(A.begin(), A.end(), a);
    if (it == A.end() || *it != a)
        throw std::invalid_argument("escape_probability: a not in A");
    if (A.size() == 1) return 1.0;
    std::size_t idx = static_cast<std::size_t>(it - A.begin());
    std::int64_t hits = 0;
    for (std::int64_t r = 0; r < reps; ++r)
        hits += detail::escape_trial(A, idx, law, g) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(reps);
}

// cap(A) = sum over a in A of the escape probability from a.  A pilot
// pass sizes the trial counts, then the remaining budget flows to the
// points whose indicator variance is largest.
template <class Int>
capacity_estimate capacity(const std::vector<Int>& A, const step_law& law,
                           std::int64_t reps_per_point, rng& g) {
    if (A.empty()) throw std::invalid_argument("capacity: empty set");
    capacity_estimate est;
    est.horizon = static_cast<std::int64_t>(static_cast<double>(A.back() - A.front()));
    const std::size_t m = A.size();
    if (m == 1) {
        est.value = 1.0;
        est.reps = 0;
        return est;
    }
    const std::int64_t budget = reps_per_point * static_cast<std::int64_t>(m);
    const std::int64_t pilot = std::max<std::int64_t>(16, std::min<std::int64_t>(48, reps_per_point));
    std::vector<std::int64_t> succ(m, 0), used(m, 0);
    for (std::size_t i = 0; i + 1 < m; ++i) {
        for (std::int64_t r = 0; r < pilot; ++r)
            succ[i] += detail::escape_trial(A, i, law, g) ? 1 : 0;
        used[i] = pilot;
    }
    succ[m - 1] = 0; // last point always escapes
    std::int64_t spent = pilot * static_cast<std::int64_t>(m - 1);
    if (budget > spent) {
        std::int64_t extra_total = budget - spent;
        std::vector<double> weight(m, 0.0);
        double wsum = 0.0;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            double p = (static_cast<double>(succ[i]) + 1.0) / (static_cast<double>(used[i]) + 2.0);
            weight[i] = p * (1.0 - p) + 0.01;
            wsum += weight[i];
        }
        for (std::size_t i = 0; i + 1 < m && wsum > 0.0; ++i) {
            auto extra = static_cast<std::int64_t>(std::floor(
                static_cast<double>(extra_total) * weight[i] / wsum));
            for (std::int64_t r = 0; r < extra; ++r)
                succ[i] += detail::escape_trial(A, i, law, g) ? 1 : 0;
            used[i] += extra;
            spent += extra;
        }
    }
    double value = 1.0, var = 0.0; // last point contributes exactly 1
    for (std::size_t i = 0; i + 1 < m; ++i) {
        double p = static_cast<double>(succ[i]) / static_cast<double>(used[i]);
        value += p;
        var += p * (1.0 - p) / static_cast<double>(used[i]);
    }
    est.value = value;
    est.se = std::sqrt(var);
    est.reps = spent;
    return est;
}

// Unbiased capacity estimate from a stratified point subsample, for
// sets too large to visit every point.  Strata are equal index blocks
// with one uniformly placed point each.
template <class Int>
capacity_estimate capacity_subsampled(const std::vector<Int>& A, const step_law& law,
                                      std::size_t sample_points, std::int64_t reps_per_point,
                                      rng& g) {
    const std::size_t m = A.size();
    if (sample_points >= m) return capacity(A, law, reps_per_point, g);
    capacity_estimate est;
    est.horizon = static_cast<std::int64_t>(static_cast<double>(A.back() - A.front()));
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t s = 0; s < sample_points; ++s) {
        double lo = static_cast<double>(s) / static_cast<double>(sample_points);
        double off = (static_cast<double>(s) + g.uniform01()) / static_cast<double>(sample_points);
        (void)lo;
        auto idx = static_cast<std::size_t>(off * static_cast<double>(m));
        if (idx >= m) idx = m - 1;
        double p;
        if (idx + 1 == m) {
            p = 1.0;
        } else {
            std::int64_t hit = 0;
            for (std::int64_t r = 0; r < reps_per_point; ++r)
                hit += detail::escape_trial(A, idx, law, g) ? 1 : 0;
            p = static_cast<double>(hit) / static_cast<double>(reps_per_point);
        }
        sum += p;
        sumsq += p * p;
        est.reps += reps_per_point;
    }
    double mean = sum / static_cast<double>(sample_points);
    double var = std::max(0.0, sumsq / static_cast<double>(sample_points) - mean * mean);
    est.value = mean * static_cast<double>(m);
    est.se = static_cast<double>(m) * std::sqrt(var / static_cast<double>(sample_points));
    return est;
}

// First `count` points of the walk range from 0 (A_0(0,count)).
inline std::vector<walk_pos> sample_range_points(std::size_t count, const step_law& law,
                                                 rng& g) {
    std::vector<walk_pos> a;
    a.reserve(count);
    walk_pos pos = 0;
    a.push_back(pos);
    while (a.size() < count) {
        pos += static_cast<walk_pos>(law.sample(g));
        a.push_back(pos);
    }
    return a;
}

struct c_infty_estimates {
    capacity_estimate intersection; // route (a): P{A_0 and an independent copy share only 0}
    capacity_estimate cap_ratio;    // route (b): cap(A_0(0,n))/n
};

// Spatial horizon that caps route (a): beyond displacement M the
// remaining intersection probability is below tol, by the square
// summability of the point-hitting probabilities
// P{k in A_0} ~ k^{beta-1}/(Gamma(beta)Gamma(1-beta)L).
inline std::int64_t intersection_horizon(const step_law& law, double tol) {
    double cu = 1.0 / (law.L * gamma_fn(law.beta) * gamma_fn(1.0 - law.beta));
    double m = std::pow(cu * cu / ((1.0 - 2.0 * law.beta) * tol), 1.0 / (1.0 - 2.0 * law.beta));
    return static_cast<std::int64_t>(std::ceil(std::max(m, 1e4)));
}

inline c_infty_estimates estimate_c_infty(const step_law& law, std::int64_t n,
                                          std::int64_t reps, rng& g,
                                          double tol = 1e-4,
                                          std::size_t subsample_points = 2000,
                                          std::int64_t reps_per_point = 16,
                                          int range_draws = 8) {
    if (n < 1000) throw std::invalid_argument("estimate_c_infty: n >= 1000 required");
    c_infty_estimates out;

    // route (a): two independent ranges from 0, tracked to displacement M
    const std::int64_t M = intersection_horizon(law, tol);
    std::int64_t only_zero = 0;
    std::vector<walk_pos> a;
    for (std::int64_t r = 0; r < reps; ++r) {
        a.clear();
        walk_pos pos = 0;
        while (pos <= static_cast<walk_pos>(M)) {
            pos += static_cast<walk_pos>(law.sample(g));
            a.push_back(pos);
        }
        bool meet = false;
        walk_pos q = 0;
        std::size_t lo = 0;
        while (q <= static_cast<walk_pos>(M)) {
            q += static_cast<walk_pos>(law.sample(g));
            auto it = std::lower_bound(a.begin() + static_cast<std::ptrdiff_t>(lo), a.end(), q);
            lo = static_cast<std::size_t>(it - a.begin());
            if (lo < a.size() && a[lo] == q) { meet = true; break; }
        }
        only_zero += meet ? 0 : 1;
    }
    double pa = static_cast<double>(only_zero) / static_cast<double>(reps);
    out.intersection.value = pa;
    out.intersection.se = std::sqrt(std::max(0.0, pa * (1.0 - pa)) / static_cast<double>(reps));
    out.intersection.horizon = M;
    out.intersection.reps = reps;
    out.intersection.bias_bound = tol; // one-sided: misses meetings beyond M

    // route (b): cap(A_0(0,n))/n averaged over fresh range draws
    double sum = 0.0, sumsq = 0.0;
    std::int64_t spent = 0;
    for (int d = 0; d < range_draws; ++d) {
        auto range = sample_range_points(static_cast<std::size_t>(n), law, g);
        auto est = capacity_subsampled(range, law, subsample_points, reps_per_point, g);
        double ratio = est.value / static_cast<double>(n);
        sum += ratio;
        sumsq += ratio * ratio;
        spent += est.reps;
    }
    double mean = sum / range_draws;
    double var = std::max(0.0, sumsq / range_draws - mean * mean);
    out.cap_ratio.value = mean;
    out.cap_ratio.se = std::sqrt(var / range_draws);
    out.cap_ratio.horizon = n;
    out.cap_ratio.reps = spent;
    return out;
}

// Conditional hitting probability p(I_{k;n}) by two independent routes:
// (a) frequency that a fresh window-started range meets the set, and
// (b) cap(I_{k;n})/w_n from the last-visit decomposition.
struct p_bar_estimate {
    double direct = 0.0;
    double direct_se = 0.0;
    double via_cap = 0.0;
    double via_cap_se = 0.0;
};

inline p_bar_estimate estimate_p_bar(const zero_set& k_set, wandering_cache& wc,
                                     std::int64_t direct_reps, std::int64_t cap_reps_per_point,
                                     rng& g) {
    if (direct_reps < 1) throw std::invalid_argument("estimate_p_bar: reps >= 1 required");
    p_bar_estimate e;
    std::int64_t meet = 0;
    for (std::int64_t r = 0; r < direct_reps; ++r) {
        zero_set fresh = sample_zero_set(k_set.n, wc, g);
        meet += intersects(fresh, k_set) ? 1 : 0;
    }
    e.direct = static_cast<double>(meet) / static_cast<double>(direct_reps);
    e.direct_se = std::sqrt(std::max(0.0, e.direct * (1.0 - e.direct)) /
                            static_cast<double>(direct_reps));
    auto cap = capacity(k_set.points, wc.law(), cap_reps_per_point, g);
    double w = wc.w(k_set.n);
    e.via_cap = cap.value / w;
    e.via_cap_se = cap.se / w;
    return e;
}

} // namespace semex
