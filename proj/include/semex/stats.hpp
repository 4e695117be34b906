// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "semex/special.hpp"

namespace semex {

struct empirical_distribution {
    std::vector<double> sample; // sorted ascending
    std::string metadata;

    empirical_distribution() = default;
    explicit empirical_distribution(std::vector<double> xs, std::string meta = {})
        : sample(std::move(xs)), metadata(std::move(meta)) {
        if (sample.empty()) throw std::invalid_argument("empirical_distribution: empty sample");
        std::sort(sample.begin(), sample.end());
    }

    std::size_t n() const { return sample.size(); }

    // Right-continuous ECDF.
    double ecdf(double x) const {
        auto it = std::upper_bound(sample.begin(), sample.end(), x);
        return static_cast<double>(it - sample.begin()) / static_cast<double>(sample.size());
    }

    double quantile(double q) const {
        if (!(q >= 0.0 && q <= 1.0)) throw std::domain_error("quantile: q outside [0,1]");
        if (q <= 0.0) return sample.front();
        auto idx = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sample.size()))) - 1;
        if (idx >= sample.size()) idx = sample.size() - 1;
        return sample[idx];
    }

    double mean() const {
        double s = 0.0;
        for (double x : sample) s += x;
        return s / static_cast<double>(sample.size());
    }
};

// sup_x |F_n(x) - F(x)| against a theoretical CDF.
inline double ks_distance(const empirical_distribution& d,
                          const std::function<double(double)>& cdf) {
    double n = static_cast<double>(d.n());
    double dist = 0.0;
    for (std::size_t i = 0; i < d.n(); ++i) {
        double f = cdf(d.sample[i]);
        dist = std::max(dist, std::max(f - static_cast<double>(i) / n,
                                       static_cast<double>(i + 1) / n - f));
    }
    return dist;
}

// KS distance for integer-valued (tied) samples: sup over the jump
// points of either CDF, i.e. the distinct sample values and their left
// neighbors.  The continuous formula above overstates the distance in
// the presence of ties.
inline double ks_distance_discrete(const empirical_distribution& d,
                                   const std::function<double(double)>& cdf) {
    double dist = 0.0;
    double n = static_cast<double>(d.n());
    std::size_t i = 0;
    while (i < d.n()) {
        double v = d.sample[i];
        std::size_t j = i;
        while (j < d.n() && d.sample[j] == v) ++j;
        double fn_left = static_cast<double>(i) / n;
        double fn_right = static_cast<double>(j) / n;
        dist = std::max(dist, std::fabs(fn_right - cdf(v)));
        dist = std::max(dist, std::fabs(fn_left - cdf(v - 1.0)));
        i = j;
    }
    return dist;
}

inline double ks_two_sample(const empirical_distribution& a,
                            const empirical_distribution& b) {
    double na = static_cast<double>(a.n()), nb = static_cast<double>(b.n());
    std::size_t i = 0, j = 0;
    double dist = 0.0;
    while (i < a.n() && j < b.n()) {
        double xa = a.sample[i], xb = b.sample[j];
        double x = std::min(xa, xb);
        while (i < a.n() && a.sample[i] <= x) ++i;
        while (j < b.n() && b.sample[j] <= x) ++j;
        dist = std::max(dist, std::fabs(static_cast<double>(i) / na -
                                        static_cast<double>(j) / nb));
    }
    return dist;
}

// Asymptotic p-value for the one-sample statistic.
inline double ks_p_value(double dist, std::size_t n) {
    return kolmogorov_q(dist * std::sqrt(static_cast<double>(n)));
}

// Kendall trend test over an ordered grid.  Exact one-sided p-value for
// a decreasing trend (small grids only, which is all we run), computed
// from the inversion-number distribution of a uniform permutation.
struct trend_result {
    double tau = 0.0;
    double p_decreasing = 1.0;
    bool decreasing = false; // tau < 0 and p < 0.05
};

inline trend_result trend_test(const std::vector<double>& values) {
    const int m = static_cast<int>(values.size());
    if (m < 2) throw std::invalid_argument("trend_test: need at least 2 values");
    int discordant = 0, pairs = 0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            if (values[j] < values[i]) ++discordant;
            ++pairs;
        }
    trend_result r;
    r.tau = (static_cast<double>(pairs - discordant) - discordant) / pairs;
    auto counts = inversion_counts(m);
    double total = 0.0, ge = 0.0;
    for (std::size_t k = 0; k < counts.size(); ++k) {
        total += counts[k];
        if (static_cast<int>(k) >= discordant) ge += counts[k];
    }
    r.p_decreasing = ge / total;
    r.decreasing = (r.tau < 0.0) && (r.p_decreasing < 0.05);
    return r;
}

// Pearson chi-square GOF against given cell probabilities.
struct gof_result {
    double statistic = 0.0;
    int dof = 0;
    double p_value = 1.0;
};

inline gof_result chi_square_gof(const std::vector<std::int64_t>& observed,
                                 const std::vector<double>& probs, std::int64_t total) {
    if (observed.size() != probs.size() || observed.empty())
        throw std::invalid_argument("chi_square_gof: size mismatch");
    gof_result r;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        double expect = probs[i] * static_cast<double>(total);
        if (expect <= 0.0) continue;
        double d = static_cast<double>(observed[i]) - expect;
        r.statistic += d * d / expect;
        ++r.dof;
    }
    r.dof -= 1;
    if (r.dof < 1) r.dof = 1;
    r.p_value = chi_square_tail(r.statistic, r.dof);
    return r;
}

} // namespace semex
