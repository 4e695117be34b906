// SPDX-License-Identifier: Apache-2.0
//
// Test-side oracles, independent of the implementation paths they
// check.  Nothing here is included from the library.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <unordered_set>
#include <vector>

namespace oracle {

// Composite Simpson at fixed resolution; no shared code with the
// adaptive routine in the library.
inline double simpson_fixed(const std::function<double(double)>& f, double a, double b,
                            int panels) {
    double h = (b - a) / (2.0 * panels);
    double s = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i) s += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Levy(1/2) first-passage law: the beta=1/2 positive stable with
// Laplace transform exp(-sqrt(theta)) has CDF erfc(1/(2 sqrt(s))).
inline double levy_half_cdf(double s) {
    if (s <= 0.0) return 0.0;
    return std::erfc(1.0 / (2.0 * std::sqrt(s)));
}

inline std::vector<std::int64_t> hash_intersection(const std::vector<std::int64_t>& a,
                                                   const std::vector<std::int64_t>& b) {
    std::unordered_set<std::int64_t> sa(a.begin(), a.end());
    std::vector<std::int64_t> out;
    for (auto x : b)
        if (sa.count(x)) out.push_back(x);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Slope of a least-squares line through (log t, log y).
inline double loglog_slope(const std::vector<double>& ts, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = static_cast<int>(ts.size());
    for (int i = 0; i < n; ++i) {
        double x = std::log(ts[i]), y = std::log(ys[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace oracle
