// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

#include "semex/params.hpp"
#include "semex/special.hpp"
#include "semex/zeroset.hpp"

namespace semex {

namespace detail {

// Adaptive Simpson on [a,b] to absolute tolerance tol.
template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
    if (b <= a) return 0.0;
    double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

} // namespace detail

// Log-tail integral Q(x) = int_1^x du / (u^{1-alpha} L_alpha(u)), so that
// the truncated tail is H(x) = exp(-Q(x)).  Closed form for constant
// L_alpha, adaptive quadrature (relative 1e-11) otherwise.
inline double log_tail_integral(double x, const model_params& p) {
    if (x < 1.0) throw std::domain_error("log_tail_integral: x < 1");
    if (x == 1.0) return 0.0;
    if (p.L_alpha.k == slowly_varying::kind::constant)
        return (std::pow(x, p.alpha) - 1.0) / (p.alpha * p.L_alpha.value);
    // substitute u = e^v: integrand e^{alpha v} / (1+v)^p, smooth on [0, log x]
    double alpha = p.alpha, q = p.L_alpha.value;
    auto f = [alpha, q](double v) {
        return std::exp(alpha * v) / std::pow(1.0 + v, q);
    };
    double lim = std::log(x);
    double rough = std::exp(alpha * lim) / alpha;
    return detail::adaptive_simpson(f, 0.0, lim, 1e-11 * rough);
}

inline double tail_H_bar(double x, const model_params& p) {
    return std::exp(-log_tail_integral(x, p));
}

// nu(x) = gamma * H(x): the model takes the tail equivalence as exact
// equality from x0 on.
inline double tail_nu_bar(double x, const model_params& p) {
    if (x < p.x0) throw std::domain_error("tail_nu_bar: x below truncation point");
    return p.gamma * tail_H_bar(x, p);
}

// log(1/nu(x)) = Q(x) - log gamma, usable far beyond double overflow.
inline double log_one_over_nu(double x, const model_params& p) {
    if (x < p.x0) throw std::domain_error("log_one_over_nu: x below truncation point");
    return log_tail_integral(x, p) - std::log(p.gamma);
}

// Inverse of Q: smallest s >= 1 with Q(s) >= q.
inline double inverse_log_tail_integral(double q, const model_params& p) {
    if (q <= 0.0) return 1.0;
    if (p.L_alpha.k == slowly_varying::kind::constant)
        return std::pow(1.0 + p.alpha * p.L_alpha.value * q, 1.0 / p.alpha);
    double lo = 1.0, hi = 2.0;
    while (log_tail_integral(hi, p) < q) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("inverse_log_tail_integral: no bracket");
    }
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        (log_tail_integral(mid, p) < q ? lo : hi) = mid;
        if ((hi - lo) <= 1e-12 * hi) break;
    }
    return 0.5 * (lo + hi);
}

// V with the argument passed as log y, needed because 1/nu(x) exceeds
// double range already for moderate x.
inline double V_log(double log_y, const model_params& p) {
    double target = log_y + std::log(p.gamma);
    double qx0 = log_tail_integral(p.x0, p);
    if (target <= qx0) return p.x0;
    return inverse_log_tail_integral(target, p);
}

// V(y) = (1/nu)^{<-}(y) = inf{ s >= x0 : 1/nu(s) >= y }.
inline double V(double y, const model_params& p) {
    if (!(y > 0.0)) throw std::domain_error("V: y must be positive");
    return V_log(std::log(y), p);
}

// Truncated variant: vanishes on y <= 1/nu(x0).
inline double V1(double y, const model_params& p) {
    if (!(y > 0.0)) return 0.0;
    if (std::log(y) <= log_one_over_nu(p.x0, p)) return 0.0;
    return V(y, p);
}

inline double h_aux(double x, const model_params& p) {
    if (x < 1.0) throw std::domain_error("h_aux: x < 1");
    return std::pow(x, 1.0 - p.alpha) * p.L_alpha(x);
}

// G = (1/(gamma H))^{<-} on y >= 1/gamma; with nu pinned to gamma*H this
// coincides with V wherever the inverse lands at or above x0.
inline double G_fn(double y, const model_params& p) {
    if (!(y >= 1.0 / p.gamma)) throw std::domain_error("G_fn: y below 1/gamma");
    return inverse_log_tail_integral(std::log(y) + std::log(p.gamma), p);
}

// Slowly varying part of the inverse: scrL(x) = x^{-1/alpha} Q^{<-}(x).
inline double scrL(double x, const model_params& p) {
    if (!(x > 0.0)) throw std::domain_error("scrL: x must be positive");
    return std::pow(x, -1.0 / p.alpha) * inverse_log_tail_integral(x, p);
}

// C_{alpha,beta} = ((1-beta)/beta)^{1/alpha - 1} > 1.
inline double C_ab(const model_params& p) {
    return std::pow((1.0 - p.beta) / p.beta, 1.0 / p.alpha - 1.0);
}

// K(alpha,beta) = (1-beta) Gamma(1-1/C) B(1-beta, 1+beta/C) E(Z^{<-}(1))^{1/C};
// the Mittag-Leffler fractional moment is supplied by the caller.
inline double K_ab(const model_params& p, double ml_moment_value) {
    if (!(ml_moment_value > 0.0)) throw std::domain_error("K_ab: moment must be positive");
    double C = C_ab(p);
    return (1.0 - p.beta) * gamma_fn(1.0 - 1.0 / C) *
           beta_fn(1.0 - p.beta, 1.0 + p.beta / C) * ml_moment_value;
}

// psi, psi~ and the partition points r_m driving the small-arrival
// bounds: psi(r) = ((1-b)^{1/a} + b^{1/a}) / (1-b-r)^{1/a} - 1.
inline double psi(double r, const model_params& p) {
    if (!(r >= 0.0 && r < 1.0 - p.beta)) throw std::domain_error("psi: r outside [0,1-beta)");
    double num = std::pow(1.0 - p.beta, 1.0 / p.alpha) + std::pow(p.beta, 1.0 / p.alpha);
    return num / std::pow(1.0 - p.beta - r, 1.0 / p.alpha) - 1.0;
}

inline double psi_tilde(double r, const model_params& p) {
    double ps = psi(r, p);
    double fl = std::floor(ps);
    return (1.0 - p.beta - r) * (fl + std::pow(ps - fl, p.alpha));
}

// Closed-form solution of psi(r_m) = m.
inline double psi_root(int m, const model_params& p) {
    if (m < 1) throw std::domain_error("psi_root: m >= 1 required");
    double num = std::pow(1.0 - p.beta, 1.0 / p.alpha) + std::pow(p.beta, 1.0 / p.alpha);
    return 1.0 - p.beta - std::pow(num / (m + 1.0), p.alpha);
}

// Normalizing constants for horizon n.  theta_n = 1/(Gamma(1-beta) F(n))
// is the inverse-process normalizer matching the renewal CLT for the
// step law; a_n and b_n are the Gumbel-style scaling and centering.
struct normalizer_table {
    std::int64_t n = 0;
    double w_n = 0.0;
    double theta_n = 0.0;
    double a_n = 0.0;
    double b_n = 0.0;
    double c_inf = 0.0;
};

inline double theta_seq(std::int64_t n, const step_law& law) {
    return 1.0 / (gamma_fn(1.0 - law.beta) * law.tail(n));
}

inline normalizer_table make_normalizers(std::int64_t n, double c_inf,
                                         const model_params& p, wandering_cache& wc) {
    if (n < 1) throw std::domain_error("make_normalizers: n >= 1 required");
    if (!(c_inf > 0.0 && c_inf < 1.0))
        throw std::domain_error("make_normalizers: c_inf must lie in (0,1)");
    normalizer_table t;
    t.n = n;
    t.c_inf = c_inf;
    t.w_n = wc.w(n);
    t.theta_n = theta_seq(n, wc.law());
    double vw = V(t.w_n, p);
    t.a_n = h_aux(vw, p);
    t.b_n = vw + V(c_inf * t.theta_n, p);
    return t;
}

} // namespace semex
