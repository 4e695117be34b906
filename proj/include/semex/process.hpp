// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "semex/analytic.hpp"
#include "semex/params.hpp"
#include "semex/rng.hpp"
#include "semex/zeroset.hpp"

namespace semex {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// One realization of the large-jump series
//   X_t = sum_j V1(w_n / Gamma_j) 1{ t in I_{j;n} },  0 <= t <= n.
// Only arrivals with Gamma_j < w_n * nu(x0) are kept; V1 vanishes for
// the rest, so the truncation is exact.  The realization stores the
// zero sets plus one aggregated sparse support array; X is zero off
// the union of the sets.
struct process_realization {
    std::int64_t n = 0;
    double w_n = 0.0;
    double arrival_cutoff = 0.0;          // w_n * nu(x0)
    std::vector<double> gammas;           // Gamma_j, increasing
    std::vector<double> jump_values;      // V1(w_n/Gamma_j), nonincreasing
    std::vector<zero_set> sets;           // aligned with gammas
    std::vector<std::int64_t> support;    // sorted union of set points
    std::vector<double> field;            // X_t at support[i]
    bool degenerate = false;              // no arrivals below the cutoff

    double value_at(std::int64_t t) const {
        auto it = std::lower_bound(support.begin(), support.end(), t);
        if (it == support.end() || *it != t) return 0.0;
        return field[static_cast<std::size_t>(it - support.begin())];
    }
};

inline process_realization simulate_process(std::int64_t n, const model_params& p,
                                            wandering_cache& wc, rng& g) {
    if (n < 1) throw std::invalid_argument("simulate_process: n >= 1 required");
    process_realization r;
    r.n = n;
    r.w_n = wc.w(n);
    r.arrival_cutoff = r.w_n * tail_nu_bar(p.x0, p);
    double gamma = 0.0;
    while (true) {
        gamma += g.exponential();
        if (gamma >= r.arrival_cutoff) break;
        r.gammas.push_back(gamma);
        r.jump_values.push_back(V1(r.w_n / gamma, p));
        r.sets.push_back(sample_zero_set(n, wc, g));
    }
    r.degenerate = r.gammas.empty();

    std::size_t total = 0;
    for (const auto& s : r.sets) total += s.points.size();
    std::vector<std::pair<std::int64_t, double>> acc;
    acc.reserve(total);
    for (std::size_t j = 0; j < r.sets.size(); ++j)
        for (std::int64_t t : r.sets[j].points) acc.emplace_back(t, r.jump_values[j]);
    std::sort(acc.begin(), acc.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [t, v] : acc) {
        if (!r.support.empty() && r.support.back() == t) {
            r.field.back() += v;
        } else {
            r.support.push_back(t);
            r.field.push_back(v);
        }
    }
    return r;
}

// Closed subinterval B = [lo,hi] of [0,1], evaluated over the integer
// window nB.  Returns 0 when the window misses the support entirely
// (the process is zero there); the -inf sentinel is reserved for the
// per-(k,i) decomposition, whose domains can be genuinely empty.
inline double sup_measure(const process_realization& r, double lo, double hi) {
    if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi))
        throw std::invalid_argument("sup_measure: bad interval");
    auto t_lo = static_cast<std::int64_t>(std::ceil(lo * static_cast<double>(r.n)));
    auto t_hi = static_cast<std::int64_t>(std::floor(hi * static_cast<double>(r.n)));
    auto a = std::lower_bound(r.support.begin(), r.support.end(), t_lo);
    auto b = std::upper_bound(r.support.begin(), r.support.end(), t_hi);
    double m = 0.0;
    for (auto it = a; it != b; ++it)
        m = std::max(m, r.field[static_cast<std::size_t>(it - r.support.begin())]);
    return m;
}

// Running maximum M_n(t) = max_{i <= nt} X_i on the requested grid.
inline std::vector<double> running_max(const process_realization& r,
                                       const std::vector<double>& t_grid) {
    std::vector<double> out;
    out.reserve(t_grid.size());
    double m = 0.0;
    std::size_t pos = 0;
    for (double t : t_grid) {
        auto limit = static_cast<std::int64_t>(std::floor(t * static_cast<double>(r.n)));
        while (pos < r.support.size() && r.support[pos] <= limit) {
            m = std::max(m, r.field[pos]);
            ++pos;
        }
        out.push_back(m);
    }
    return out;
}

// Per-cluster decomposition of the sup-measure over disjointified
// domains hat I_{k;n} and hat I_{k,i;n}; empty domains carry -inf.
struct maxima_record {
    double full = 0.0;                        // M_n(B)
    double bracket = neg_inf;                 // M_{[K];n}(B)
    std::vector<double> per_k;                // M_{k;n}(B)
    std::vector<std::vector<double>> per_ki;  // M_{k,i;n}(B)
};

inline maxima_record decomposed_maxima(const process_realization& r, double lo, double hi,
                                       int K, int I) {
    if (K < 1 || I < 1) throw std::invalid_argument("decomposed_maxima: K,I >= 1 required");
    maxima_record rec;
    rec.full = sup_measure(r, lo, hi);
    auto t_lo = static_cast<std::int64_t>(std::ceil(lo * static_cast<double>(r.n)));
    auto t_hi = static_cast<std::int64_t>(std::floor(hi * static_cast<double>(r.n)));
    auto max_over = [&](const std::vector<std::int64_t>& pts) {
        double m = neg_inf;
        for (std::int64_t t : pts)
            if (t >= t_lo && t <= t_hi) m = std::max(m, r.value_at(t));
        return m;
    };
    const int kmax = std::min<std::int64_t>(K, static_cast<std::int64_t>(r.sets.size()));
    std::vector<std::int64_t> union_before; // points of I_1..I_{k-1}
    for (int k = 1; k <= kmax; ++k) {
        const auto& ik = r.sets[static_cast<std::size_t>(k - 1)].points;
        rec.per_k.push_back(max_over(set_difference_sorted(ik, union_before)));
        std::vector<std::int64_t> merged;
        std::set_union(union_before.begin(), union_before.end(), ik.begin(), ik.end(),
                       std::back_inserter(merged));
        union_before = std::move(merged);

        // intersections of I_k with the later sets of this realization
        std::vector<double> row;
        std::vector<std::int64_t> running;
        for (std::size_t j = static_cast<std::size_t>(k); j < r.sets.size(); ++j) {
            if (static_cast<int>(row.size()) >= I) break;
            auto common = intersect(r.sets[static_cast<std::size_t>(k - 1)], r.sets[j]);
            if (common.empty()) continue;
            row.push_back(max_over(set_difference_sorted(common, running)));
            std::vector<std::int64_t> merged2;
            std::set_union(running.begin(), running.end(), common.begin(), common.end(),
                           std::back_inserter(merged2));
            running = std::move(merged2);
        }
        rec.per_ki.push_back(std::move(row));
    }
    for (double v : rec.per_k) rec.bracket = std::max(rec.bracket, v);
    return rec;
}

// (M_n(B) - b_n)/a_n for a batch of intervals, one realization.
inline std::vector<double> normalized_sup(const process_realization& r,
                                          const normalizer_table& t,
                                          const std::vector<std::pair<double, double>>& intervals) {
    std::vector<double> out;
    out.reserve(intervals.size());
    for (const auto& [lo, hi] : intervals)
        out.push_back((sup_measure(r, lo, hi) - t.b_n) / t.a_n);
    return out;
}

} // namespace semex
