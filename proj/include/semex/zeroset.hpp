// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "semex/params.hpp"
#include "semex/rng.hpp"

namespace semex {

// Return-time law of the renewal realization: tail F(n) = (n+1)^{-beta} L,
// so F(0) = 1 and the gap pmf is P{phi = n} = F(n-1) - F(n), n >= 1.
struct step_law {
    double beta = 0.25;
    double L = 1.0;

    explicit step_law(const model_params& p) : beta(p.beta), L(p.L.value) {}
    step_law(double b, double l) : beta(b), L(l) {}

    double tail(std::int64_t n) const {
        if (n <= 0) return 1.0;
        return L * std::pow(static_cast<double>(n) + 1.0, -beta);
    }

    double pmf(std::int64_t n) const {
        if (n < 1) return 0.0;
        return tail(n - 1) - tail(n);
    }

    // One gap by inverse transform.  floor((L/u)^{1/beta}) inverts the
    // tail exactly; the log guard keeps astronomically rare huge gaps
    // from overflowing (the sentinel exceeds every horizon in use).
    std::int64_t sample(rng& g) const {
        double u = g.uniform01();
        double lg = (std::log(L) - std::log(u)) / beta;
        if (lg > 61.0 * 0.6931471805599453) return std::int64_t(1) << 62;
        auto n = static_cast<std::int64_t>(std::floor(std::exp(lg)));
        return n < 1 ? 1 : n;
    }
};

// Exact prefix sums w_n = sum_{j<=n} F(j) of the step-law tail (the
// wandering rate).  Scalar values for arbitrary n are memoized; full
// prefix arrays, needed for initial-position sampling, are kept only
// for horizons actually sampled.
class wandering_cache {
  public:
    explicit wandering_cache(step_law law) : law_(law) {}

    double w(std::int64_t n) {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = scalar_.find(n);
        if (it != scalar_.end()) return it->second;
        double acc = 0.0, comp = 0.0;
        for (std::int64_t j = 0; j <= n; ++j) {
            double y = law_.tail(j) - comp;
            double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
        }
        scalar_[n] = acc;
        return acc;
    }

    // Prefix array W[j] = w_j for j = 0..n.
    const std::vector<double>& prefix(std::int64_t n) {
        std::lock_guard<std::mutex> lk(mu_);
        auto it = prefix_.find(n);
        if (it != prefix_.end()) return it->second;
        std::vector<double> pre(static_cast<std::size_t>(n) + 1);
        double acc = 0.0;
        for (std::int64_t j = 0; j <= n; ++j) {
            acc += law_.tail(j);
            pre[static_cast<std::size_t>(j)] = acc;
        }
        scalar_[n] = acc;
        auto [pos, _] = prefix_.emplace(n, std::move(pre));
        return pos->second;
    }

    const step_law& law() const { return law_; }

  private:
    step_law law_;
    std::map<std::int64_t, double> scalar_;
    std::map<std::int64_t, std::vector<double>> prefix_;
    std::mutex mu_;
};

// Zero set I_{k;n}: the renewal range restricted to {0,...,n}.
struct zero_set {
    std::int64_t n = 0;
    std::vector<std::int64_t> points; // sorted, deduplicated, nonempty
};

// First zero in the window, distributed as P(j) proportional to F(j)
// on {0,...,n} (last-exit dual of the stationary delay).  Small
// horizons invert cached prefix sums; large ones use exact rejection
// from the continuous (x+1)^{-beta} envelope, O(1) memory.
inline constexpr std::int64_t prefix_sampler_limit = std::int64_t(1) << 21;

inline std::int64_t sample_initial_position_rejection(std::int64_t n, const step_law& law,
                                                      rng& g) {
    const double om = 1.0 - law.beta;
    const double gmax = (std::pow(static_cast<double>(n) + 2.0, om) - 1.0) / om;
    while (true) {
        double x = std::pow(1.0 + om * g.uniform01() * gmax, 1.0 / om) - 1.0;
        auto j = static_cast<std::int64_t>(std::floor(x));
        if (j > n) continue;
        double qj = (std::pow(static_cast<double>(j) + 2.0, om) -
                     std::pow(static_cast<double>(j) + 1.0, om)) / om;
        if (g.uniform01() * 1.5 * qj <= law.tail(j)) return j;
    }
}

inline std::int64_t sample_initial_position(std::int64_t n, wandering_cache& wc, rng& g) {
    if (n < 0) throw std::invalid_argument("sample_initial_position: n < 0");
    if (n == 0) return 0;
    if (n > prefix_sampler_limit) return sample_initial_position_rejection(n, wc.law(), g);
    const auto& pre = wc.prefix(n);
    double u = g.uniform01() * pre.back();
    auto it = std::upper_bound(pre.begin(), pre.end(), u);
    if (it == pre.end()) --it;
    return static_cast<std::int64_t>(it - pre.begin());
}

inline zero_set sample_zero_set(std::int64_t n, wandering_cache& wc, rng& g) {
    zero_set z;
    z.n = n;
    std::int64_t pos = sample_initial_position(n, wc, g);
    z.points.push_back(pos);
    const step_law& law = wc.law();
    while (true) {
        std::int64_t gap = law.sample(g);
        if (gap > n - pos) break; // censored last gap
        pos += gap;
        z.points.push_back(pos);
    }
    return z;
}

inline std::vector<std::int64_t> intersect(const zero_set& a, const zero_set& b) {
    if (a.n != b.n) throw std::invalid_argument("intersect: horizon mismatch");
    std::vector<std::int64_t> out;
    auto ia = a.points.begin();
    auto ib = b.points.begin();
    while (ia != a.points.end() && ib != b.points.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else { out.push_back(*ia); ++ia; ++ib; }
    }
    return out;
}

inline bool intersects(const zero_set& a, const zero_set& b) {
    auto ia = a.points.begin();
    auto ib = b.points.begin();
    while (ia != a.points.end() && ib != b.points.end()) {
        if (*ia < *ib) ++ia;
        else if (*ib < *ia) ++ib;
        else return true;
    }
    return false;
}

// Intersection indices j_{k,i;n}, the common sets I_{k,i;n} and their
// disjointified versions.  j offsets are counted from the index of the
// anchor set; candidate sets are fresh i.i.d. draws.
struct intersection_record {
    std::int64_t k = 0;
    std::vector<std::int64_t> j_indices;                    // absolute indices j_{k,i;n}
    std::vector<std::vector<std::int64_t>> common_sets;     // I_{k,i;n}
    std::vector<std::vector<std::int64_t>> disjointified;   // hat I_{k,i;n}
    bool partial = false; // budget exhausted before max_i intersections
};

inline std::vector<std::int64_t>
set_difference_sorted(const std::vector<std::int64_t>& a, const std::vector<std::int64_t>& b) {
    std::vector<std::int64_t> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

inline intersection_record
find_intersections(const zero_set& k_set, std::int64_t k_index, wandering_cache& wc,
                   int max_i, std::int64_t budget, rng& g) {
    if (max_i < 1) throw std::invalid_argument("find_intersections: max_i < 1");
    intersection_record rec;
    rec.k = k_index;
    std::vector<std::int64_t> running_union;
    std::int64_t j = k_index;
    while (static_cast<int>(rec.j_indices.size()) < max_i) {
        if (j - k_index >= budget) { rec.partial = true; break; }
        ++j;
        zero_set cand = sample_zero_set(k_set.n, wc, g);
        auto common = intersect(k_set, cand);
        if (common.empty()) continue;
        rec.j_indices.push_back(j);
        rec.disjointified.push_back(set_difference_sorted(common, running_union));
        std::vector<std::int64_t> merged;
        std::set_union(running_union.begin(), running_union.end(), common.begin(),
                       common.end(), std::back_inserter(merged));
        running_union = std::move(merged);
        rec.common_sets.push_back(std::move(common));
    }
    return rec;
}

} // namespace semex
