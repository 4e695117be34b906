// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "semex/rng.hpp"

namespace semex {

inline constexpr double pi_const = 3.14159265358979323846;

// One positive strictly beta-stable variate with Laplace transform
// E exp(-theta S) = exp(-scale * theta^beta), via Kanter's two-uniform
// representation (Kanter 1975; Devroye 1986, IX.6):
//
//   S = sin(b pi U) * [sin((1-b) pi U)]^{(1-b)/b} / [sin(pi U)]^{1/b}
//       * E^{-(1-b)/b},   U ~ U(0,1), E ~ Exp(1).
inline double sample_stable(double beta, double scale, rng& g) {
    double u = g.uniform01();
    double e = g.exponential();
    double r = (1.0 - beta) / beta;
    double s = std::sin(beta * pi_const * u) *
               std::exp(r * std::log(std::sin((1.0 - beta) * pi_const * u) / e) -
                        (1.0 / beta) * std::log(std::sin(pi_const * u)));
    return std::pow(scale, 1.0 / beta) * s;
}

// Z^*(0): the stationary start of the shifted subordinator,
// P{Z^*(0) <= x} = x^{1-beta} on [0,1], by inverse transform.
inline double sample_shift_start(double beta, rng& g) {
    return std::pow(g.uniform01(), 1.0 / (1.0 - beta));
}

// Exact draws of the inverse process at a fixed level, no path needed:
// P{Z^{<-}(1) > t} = P{Z(t) < 1} = P{Z(1)^{-beta} > t}, so
// Z^{<-}(1) =d S^{-beta}.  The shifted set needs Z^{*<-}(1) =
// Z^{<-}(1 - Z^*(0)) =d (1-Z^*(0))^beta S^{-beta}.
inline double sample_ml_inverse_at_one(double beta, rng& g) {
    return std::pow(sample_stable(beta, 1.0, g), -beta);
}

inline double sample_shifted_inverse_at_one(double beta, rng& g) {
    double z0 = sample_shift_start(beta, g);
    return std::pow(1.0 - z0, beta) * sample_ml_inverse_at_one(beta, g);
}

// Discretized subordinator on a local-time grid: a geometric ramp of
// step sizes near t = 0 (range gaps at small local times dominate the
// discretization error) followed by a constant step dt, run until the
// value passes target_level.
struct subordinator_path {
    double beta = 0.25;
    double shift = 0.0;           // Z^*(0); 0 for the unshifted set
    std::vector<double> times;    // local-time grid, increasing, times[0] = 0
    std::vector<double> values;   // Z(t_i) (+ shift), nondecreasing
};

inline subordinator_path sample_path(double beta, double target_level, double dt,
                                     double shift, rng& g) {
    if (!(dt > 0.0)) throw std::invalid_argument("sample_path: dt must be positive");
    subordinator_path p;
    p.beta = beta;
    p.shift = shift;
    p.times.push_back(0.0);
    p.values.push_back(shift);
    double t = 0.0, v = shift;
    const int ramp = 16;
    double step = dt * std::pow(0.5, ramp);
    double incr_scale = std::pow(step, 1.0 / beta);
    int ramp_left = ramp;
    std::size_t cap = 1;
    cap <<= 28;
    while (v <= target_level) {
        if (p.times.size() > cap)
            throw std::runtime_error("sample_path: step budget exhausted");
        t += step;
        v += incr_scale * sample_stable(beta, 1.0, g);
        p.times.push_back(t);
        p.values.push_back(v);
        if (ramp_left > 0) {
            --ramp_left;
            step *= 2.0;
            incr_scale = std::pow(step, 1.0 / beta);
        }
    }
    return p;
}

// Z^{<-}(level) = inf{ t : Z(t) > level }, value-interpolated between the
// straddling grid points.  Empty when the path never reaches the level
// (caller extends or resamples).
inline std::optional<double> first_passage(const subordinator_path& p, double level) {
    if (level < p.values.front()) return 0.0;
    auto it = std::upper_bound(p.values.begin(), p.values.end(), level);
    if (it == p.values.end()) return std::nullopt;
    std::size_t i = static_cast<std::size_t>(it - p.values.begin());
    double v0 = p.values[i - 1], v1 = p.values[i];
    double t0 = p.times[i - 1], t1 = p.times[i];
    if (v1 <= v0) return t1;
    return t0 + (t1 - t0) * (level - v0) / (v1 - v0);
}

// epsilon-resolution sample of the regenerative set restricted to [0,1].
struct regenerative_set_sample {
    subordinator_path path;
    double resolution = 0.0;        // epsilon
    std::vector<double> hits;       // discretized range clipped to [0,1]
    double inv_at_1 = 0.0;          // Z^{*<-}(1) on the grid
};

inline regenerative_set_sample sample_regenerative(double beta, double epsilon,
                                                   bool shifted, rng& g,
                                                   double dt = 1e-4) {
    if (!(epsilon > 0.0 && epsilon <= 0.01))
        throw std::invalid_argument("sample_regenerative: epsilon outside (0, 0.01]");
    regenerative_set_sample s;
    double shift = shifted ? sample_shift_start(beta, g) : 0.0;
    s.path = sample_path(beta, 1.0, dt, shift, g);
    s.resolution = epsilon;
    for (double v : s.path.values) {
        if (v > 1.0) break;
        s.hits.push_back(v);
    }
    auto fp = first_passage(s.path, 1.0);
    s.inv_at_1 = fp ? *fp : s.path.times.back();
    return s;
}

// Points J_i = eta^{<-}(U_i) with eta(t) = Z^{*<-}(t)/Z^{*<-}(1): the
// Taylor-Wendel constant c_beta cancels in the ratio, so the normalized
// measure never needs it (kept as a symbolic 1).  On the grid the local
// time of values[i] is times[i+1], so the inverse snaps each draw to a
// hit of the discretized range.
inline std::vector<double> sample_j_points(const regenerative_set_sample& s, int count,
                                           rng& g) {
    if (!(s.inv_at_1 > 0.0))
        throw std::invalid_argument("sample_j_points: degenerate normalizer");
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        double target = g.uniform01() * s.inv_at_1;
        auto it = std::lower_bound(s.path.times.begin(), s.path.times.end(), target);
        std::size_t idx = static_cast<std::size_t>(it - s.path.times.begin());
        if (idx > 0) --idx;
        if (idx >= s.hits.size()) idx = s.hits.size() - 1;
        out.push_back(s.path.values[idx]);
    }
    return out;
}

struct moment_estimate {
    double value = 0.0;
    double se = 0.0;
    std::int64_t reps = 0;
};

// Monte Carlo E (Z^{<-}(1))^q.  The closed form Gamma(1+q)/Gamma(1+beta q)
// serves as the oracle in tests; the estimate is what downstream
// constants consume.
inline moment_estimate ml_fractional_moment(double beta, double q, std::int64_t reps,
                                            rng& g) {
    if (!(q > 0.0)) throw std::invalid_argument("ml_fractional_moment: q must be positive");
    double sum = 0.0, sumsq = 0.0;
    for (std::int64_t i = 0; i < reps; ++i) {
        double x = std::pow(sample_stable(beta, 1.0, g), -beta * q);
        sum += x;
        sumsq += x * x;
    }
    moment_estimate m;
    m.reps = reps;
    m.value = sum / static_cast<double>(reps);
    double var = std::max(0.0, sumsq / static_cast<double>(reps) - m.value * m.value);
    m.se = std::sqrt(var / static_cast<double>(reps));
    return m;
}

} // namespace semex
