// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "semex/analytic.hpp"
#include "semex/params.hpp"
#include "semex/rng.hpp"
#include "semex/special.hpp"
#include "semex/subordinator.hpp"

namespace semex {

// Truncated sampler of the limiting random sup-measure on [0,1]:
// points (Lambda_{k,i}, W_{k,i}) for k <= K, i <= I with
//   Lambda_{k,i} = -log Gamma_k + (1/C)( -log Gamma_{k,i} + log Z_k^{*<-}(1) ),
//   W_{k,i} = J_{k,i}.
// With paths disabled the sampler draws the same joint law of
// (Gamma_k, Gamma_{k,i}, Z_k^{*<-}(1)) through the exact first-passage
// transform and supports [0,1] evaluation only.
struct limit_sample {
    int K = 0, I = 0;
    bool has_paths = false;
    std::vector<double> gamma_k;                 // Gamma_k
    std::vector<double> z_inv_1;                 // Z_k^{*<-}(1)
    std::vector<std::vector<double>> gamma_ki;   // Gamma_{k,i}
    std::vector<std::vector<double>> lambdas;    // Lambda_{k,i}, decreasing in i
    std::vector<std::vector<double>> j_points;   // J_{k,i}; empty without paths
    std::vector<regenerative_set_sample> sets;   // kept only with paths
    double truncation_bound = 0.0;               // for [0,1] evaluation
};

// Tail bound for the clusters dropped beyond K: for q in (1,C),
//   P{ exists k > K : Lambda_{k,1} > x }
//     <= e^{-qx} E e^{qD} sum_{k>K} E Gamma_k^{-q}
// with D = (1/C)(log Z^{*<-}(1) - log Gamma_{1,1}),
//   E e^{qD} = Gamma(1-q/C) (1-beta) B(1-beta, 1+beta q/C)
//              Gamma(1+q/C)/Gamma(1+beta q/C),
//   sum_{k>K} E Gamma_k^{-q} = Gamma(K+1-q) / ((q-1) Gamma(K)).
// Within a retained cluster the dropped i > I never beat i = 1, so this
// is the whole [0,1] truncation error.  Minimized over a q grid.
inline double dropped_cluster_bound(double x, int K, const model_params& p) {
    double C = C_ab(p);
    double best = 1.0;
    for (int s = 1; s <= 63; ++s) {
        double q = 1.0 + (C - 1.0) * static_cast<double>(s) / 64.0;
        if (q >= static_cast<double>(K)) break;
        double kappa = gamma_fn(1.0 - q / C) * (1.0 - p.beta) *
                       beta_fn(1.0 - p.beta, 1.0 + p.beta * q / C) *
                       gamma_fn(1.0 + q / C) / gamma_fn(1.0 + p.beta * q / C);
        double tail_sum = std::exp(log_gamma(K + 1.0 - q) - log_gamma(static_cast<double>(K))) /
                          (q - 1.0);
        best = std::min(best, std::exp(-q * x) * kappa * tail_sum);
    }
    return std::max(best, 0.0);
}

inline limit_sample sample_limit(const model_params& p, int K, int I, rng& g,
                                 bool with_paths = true, double dt = 1e-3,
                                 double epsilon = 0.01) {
    if (K < 1 || I < 1) throw std::invalid_argument("sample_limit: K,I >= 1 required");
    limit_sample s;
    s.K = K;
    s.I = I;
    s.has_paths = with_paths;
    const double C = C_ab(p);
    double arr = 0.0;
    for (int k = 0; k < K; ++k) {
        arr += g.exponential();
        s.gamma_k.push_back(arr);
        double tau;
        if (with_paths) {
            auto reg = sample_regenerative(p.beta, epsilon, true, g, dt);
            tau = reg.inv_at_1;
            s.j_points.push_back(sample_j_points(reg, I, g));
            s.sets.push_back(std::move(reg));
        } else {
            tau = sample_shifted_inverse_at_one(p.beta, g);
        }
        s.z_inv_1.push_back(tau);
        std::vector<double> gki, lam;
        gki.reserve(static_cast<std::size_t>(I));
        lam.reserve(static_cast<std::size_t>(I));
        double a = 0.0;
        for (int i = 0; i < I; ++i) {
            a += g.exponential();
            gki.push_back(a);
            lam.push_back(-std::log(arr) + (-std::log(a) + std::log(tau)) / C);
        }
        s.gamma_ki.push_back(std::move(gki));
        s.lambdas.push_back(std::move(lam));
    }
    double sup1 = neg_inf;
    for (int k = 0; k < K; ++k) sup1 = std::max(sup1, s.lambdas[static_cast<std::size_t>(k)][0]);
    s.truncation_bound = dropped_cluster_bound(sup1, K, p);
    return s;
}

// sup of Lambda over retained points with W in [lo,hi]; -inf if none.
inline double eval_M(const limit_sample& s, double lo, double hi) {
    if (lo <= 0.0 && hi >= 1.0) {
        double m = neg_inf;
        for (const auto& row : s.lambdas) m = std::max(m, row[0]);
        return m;
    }
    if (!s.has_paths)
        throw std::logic_error("eval_M: subinterval evaluation needs a path-mode sample");
    double m = neg_inf;
    for (std::size_t k = 0; k < s.lambdas.size(); ++k)
        for (std::size_t i = 0; i < s.lambdas[k].size(); ++i) {
            double w = s.j_points[k][i];
            if (w >= lo && w <= hi) m = std::max(m, s.lambdas[k][i]);
        }
    return m;
}

inline double eval_M_at(const limit_sample& s, double t) { return eval_M(s, 0.0, t); }

// Truncation bound for a subinterval evaluation: the dropped-cluster
// term at the realized level plus, per retained cluster, the chance
// that points past I land in B above the realized level.  lambda_k =
// Z_k^{*<-}(1) Gamma_k^{-C} e^{-Cx} is the mean number of cluster-k
// levels above x; dropped ones are those past the first I.
inline double truncation_bound_interval(const limit_sample& s, const model_params& p,
                                        double lo, double hi) {
    if (!s.has_paths)
        throw std::logic_error("truncation_bound_interval: needs a path-mode sample");
    double x = eval_M(s, lo, hi);
    double C = C_ab(p);
    double kpart = dropped_cluster_bound(std::max(x, eval_M(s, 0.0, 1.0) - 40.0), s.K, p);
    double ipart = 0.0;
    for (std::size_t k = 0; k < s.lambdas.size(); ++k) {
        const auto& reg = s.sets[k];
        double la = first_passage(reg.path, std::min(hi, 1.0)).value_or(reg.inv_at_1);
        double lb = first_passage(reg.path, std::max(lo, 0.0)).value_or(reg.inv_at_1);
        double eta = std::max(0.0, la - lb) / reg.inv_at_1;
        double lambda;
        if (x == neg_inf) {
            lambda = 2.0 * static_cast<double>(s.I); // forces the clamp below
        } else {
            lambda = s.z_inv_1[k] * std::exp(-C * (x + std::log(s.gamma_k[k])));
        }
        double excess;
        double m1 = static_cast<double>(s.I) + 1.0;
        if (lambda >= m1) {
            excess = 1.0;
        } else {
            excess = std::min(1.0, 2.0 * std::pow(2.718281828459045 * lambda / m1, m1));
        }
        ipart += std::min(1.0, eta * excess);
    }
    return std::min(1.0, kpart + ipart);
}

// Closed-form marginal: P{M(t) <= x} = exp(-K(a,b) t^{1-b+b/C} e^{-x}).
inline double marginal_cdf(double t, double x, const model_params& p, double K_value) {
    if (!(t > 0.0)) throw std::domain_error("marginal_cdf: t must be positive");
    double C = C_ab(p);
    double expo = 1.0 - p.beta + p.beta / C;
    return std::exp(-K_value * std::pow(t, expo) * std::exp(-x));
}

struct mc_probability {
    double prob = 0.0;
    double se = 0.0;
    double integral = 0.0;
    double integral_se = 0.0;
};

namespace detail {

// Inverse-process values Z^{<-}((t - y)_+) for all quadrature nodes of
// one path, for the joint-increment functional.  The substitution
// y = u^{1/(1-beta)} flattens the y^{-beta} weight: with t_k the last
// partition point, the functional is
//   integral_0^{t_k^{1-beta}} E[ (sum_i e^{-C x_i} dZ_i(u))^{1/C} ] du.
inline double joint_path_integral(const subordinator_path& path,
                                  const std::vector<double>& ts,
                                  const std::vector<double>& xs, double C, double beta,
                                  int nodes) {
    const double T = ts.back();
    const double U = std::pow(T, 1.0 - beta);
    const double du = U / nodes;
    double acc = 0.0;
    const std::size_t k = ts.size();
    for (int j = 0; j < nodes; ++j) {
        double u = (static_cast<double>(j) + 0.5) * du;
        double y = std::pow(u, 1.0 / (1.0 - beta));
        double prev = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double arg = ts[i] - y;
            double zi = arg <= 0.0 ? 0.0 : first_passage(path, arg).value_or(path.times.back());
            sum += std::exp(-C * xs[i]) * (zi - prev);
            prev = zi;
        }
        if (sum > 0.0) acc += std::pow(sum, 1.0 / C) * du;
    }
    return acc;
}

} // namespace detail

// P{ M((t_{i-1}, t_i]) <= x_i for all i } by quadrature in y and Monte
// Carlo over inverse-process paths (paths shared across nodes).
inline mc_probability joint_increment_prob(const std::vector<double>& ts,
                                           const std::vector<double>& xs,
                                           const model_params& p, std::int64_t mc_paths,
                                           rng& g, int nodes = 2048, double dt = 1e-3) {
    if (ts.empty() || ts.size() != xs.size())
        throw std::invalid_argument("joint_increment_prob: partition/level size mismatch");
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (!(ts[i] > (i == 0 ? 0.0 : ts[i - 1])))
            throw std::invalid_argument("joint_increment_prob: partition not increasing");
    const double C = C_ab(p);
    double sum = 0.0, sumsq = 0.0;
    for (std::int64_t r = 0; r < mc_paths; ++r) {
        auto path = sample_path(p.beta, ts.back(), dt, 0.0, g);
        double v = detail::joint_path_integral(path, ts, xs, C, p.beta, nodes);
        sum += v;
        sumsq += v * v;
    }
    mc_probability out;
    double mean = sum / static_cast<double>(mc_paths);
    double var = std::max(0.0, sumsq / static_cast<double>(mc_paths) - mean * mean);
    out.integral = mean;
    out.integral_se = std::sqrt(var / static_cast<double>(mc_paths));
    double gfac = gamma_fn(1.0 - 1.0 / C);
    out.prob = std::exp(-gfac * mean);
    out.se = out.prob * gfac * out.integral_se;
    return out;
}

// Scalar convexity check t2^C - t1^C + t3^C < (t2 - t1 + t3)^C for C>1:
// returns the (positive) difference of the two sides.
inline double convexity_gap(double C, double t1, double t2, double t3) {
    return std::pow(t2 - t1 + t3, C) - (std::pow(t2, C) - std::pow(t1, C) + std::pow(t3, C));
}

struct gap_estimate {
    double gap = 0.0;       // split-form integral minus joint-form integral (> 0)
    double se = 0.0;
    double split = 0.0;     // integral entering the time-changed Gumbel law
    double joint = 0.0;     // integral entering the true limit law
};

// Both sides of the would-be time-change identity for two intervals,
// by shared-path Monte Carlo.  The split form corresponds to the
// power-time-changed Gumbel extremal process; a positive gap is what
// rules the time change out.
inline gap_estimate counterexample_check(double t1, double t2, double x1, double x2,
                                         const model_params& p, std::int64_t mc_paths,
                                         rng& g, int nodes = 512, double dt = 1e-3) {
    if (!(t1 > 0.0 && t2 > t1 && x1 <= x2))
        throw std::invalid_argument("counterexample_check: need 0 < t1 < t2 and x1 <= x2");
    const double C = C_ab(p);
    const double beta = p.beta;
    const double U = std::pow(t2, 1.0 - beta);
    const double du = U / nodes;
    double sum = 0.0, sumsq = 0.0, ssplit = 0.0, sjoint = 0.0;
    for (std::int64_t r = 0; r < mc_paths; ++r) {
        auto path = sample_path(beta, t2, dt, 0.0, g);
        double split = 0.0, joint = 0.0;
        for (int j = 0; j < nodes; ++j) {
            double u = (static_cast<double>(j) + 0.5) * du;
            double y = std::pow(u, 1.0 / (1.0 - beta));
            double z1 = t1 - y <= 0.0 ? 0.0
                                      : first_passage(path, t1 - y).value_or(path.times.back());
            double z2 = t2 - y <= 0.0 ? 0.0
                                      : first_passage(path, t2 - y).value_or(path.times.back());
            double s = std::exp(-x1) * std::pow(z1, 1.0 / C) +
                       std::exp(-x2) * (std::pow(z2, 1.0 / C) - std::pow(z1, 1.0 / C));
            double b = std::exp(-C * x1) * z1 + std::exp(-C * x2) * (z2 - z1);
            split += s * du;
            joint += (b > 0.0 ? std::pow(b, 1.0 / C) : 0.0) * du;
        }
        double d = split - joint;
        sum += d;
        sumsq += d * d;
        ssplit += split;
        sjoint += joint;
    }
    gap_estimate out;
    out.gap = sum / static_cast<double>(mc_paths);
    double var = std::max(0.0, sumsq / static_cast<double>(mc_paths) - out.gap * out.gap);
    out.se = std::sqrt(var / static_cast<double>(mc_paths));
    out.split = ssplit / static_cast<double>(mc_paths);
    out.joint = sjoint / static_cast<double>(mc_paths);
    return out;
}

} // namespace semex
