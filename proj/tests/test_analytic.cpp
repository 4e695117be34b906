// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "semex/analytic.hpp"

using namespace semex;

namespace {
const model_params d = model_params::defaults(); // alpha .5, beta .25, gamma 1, x0 1
}

TEST_CASE("tail_H_bar closed forms and domain") {
    CHECK(tail_H_bar(1.0, d) == doctest::Approx(1.0));
    CHECK(tail_H_bar(4.0, d) == doctest::Approx(std::exp(-2.0)).epsilon(1e-12));
    CHECK_THROWS_AS(tail_H_bar(0.5, d), std::domain_error);
    // strictly decreasing; past the double underflow point the log-scale
    // integral carries the comparison
    double prev = -1.0;
    for (double x = 1.0; x <= 1e6; x *= 2.3) {
        double q = log_tail_integral(x, d);
        CHECK(q > prev);
        prev = q;
        if (tail_H_bar(x, d) > 0.0 && x > 1.0) CHECK(tail_H_bar(x, d) < tail_H_bar(x / 2.3, d));
    }
}

TEST_CASE("tail_H_bar with log factor matches fixed-resolution Simpson") {
    model_params p = d;
    p.L_alpha = slowly_varying::log_power(1.0);
    auto integrand = [&](double v) { return std::exp(p.alpha * v) / (1.0 + v); };
    double q = oracle::simpson_fixed(integrand, 0.0, std::log(10.0), 20000);
    CHECK(tail_H_bar(10.0, p) == doctest::Approx(std::exp(-q)).epsilon(1e-8));
    // and the negative exponent branch
    model_params pm = d;
    pm.L_alpha = slowly_varying::log_power(-0.5);
    pm.x0 = 3.0;
    auto integrand2 = [&](double v) { return std::exp(pm.alpha * v) * std::sqrt(1.0 + v); };
    double q2 = oracle::simpson_fixed(integrand2, 0.0, std::log(50.0), 20000);
    CHECK(tail_H_bar(50.0, pm) == doctest::Approx(std::exp(-q2)).epsilon(1e-8));
}

TEST_CASE("V closed form, truncation and round trip") {
    CHECK(V(std::exp(2.0), d) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(V1(0.5, d) == 0.0);       // below 1/nu(x0) = 1
    CHECK(V1(1.0, d) == 0.0);
    CHECK(V1(std::exp(2.0), d) == doctest::Approx(4.0));

    // inverse round trip through the log-scale evaluator, x up to 1e6
    for (double x = 1.0; x <= 1e6; x *= 3.7) {
        double v = V_log(log_one_over_nu(x, d), d);
        CHECK(v == doctest::Approx(x).epsilon(1e-8));
    }

    // general-parameter round trip at y = 1e3
    model_params p = d;
    p.alpha = 0.7;
    p.gamma = 2.0;
    double v = V(1e3, p);
    CHECK(1.0 / tail_nu_bar(v, p) == doctest::Approx(1e3).epsilon(1e-8));

    // quadrature branch round trip
    model_params lp = d;
    lp.L_alpha = slowly_varying::log_power(0.7);
    for (double x = 2.0; x <= 1e5; x *= 9.0) {
        double vv = V_log(log_one_over_nu(x, lp), lp);
        CHECK(vv == doctest::Approx(x).epsilon(1e-8));
    }
}

TEST_CASE("h auxiliary function") {
    CHECK(h_aux(4.0, d) == doctest::Approx(2.0));
    CHECK(h_aux(1.0, d) == doctest::Approx(1.0));
    model_params p = d;
    p.alpha = 0.3;
    p.L_alpha = slowly_varying::log_power(1.0);
    // L(u) = (1 + log u)^p, so h(e) = e^{0.7} * 2
    CHECK(h_aux(std::exp(1.0), p) == doctest::Approx(2.0 * std::exp(0.7)).epsilon(1e-12));
    // nondecreasing from x0 on
    double prev = 0.0;
    for (double x = 1.0; x < 1e8; x *= 1.7) {
        double v = h_aux(x, d);
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("G coincides with V for gamma = 1 and satisfies the derivative identity") {
    for (double y = 1.0; y <= 1e9; y *= 11.0)
        CHECK(G_fn(y, d) == doctest::Approx(V(y, d)).epsilon(1e-10));
    CHECK_THROWS_AS(G_fn(0.2, model_params{.gamma = 2.0}), std::domain_error);

    // x G'(x) = h(G(x)), central difference at x = 100
    double x = 100.0, step = 1e-4 * x;
    double gp = (G_fn(x + step, d) - G_fn(x - step, d)) / (2.0 * step);
    CHECK(x * gp == doctest::Approx(h_aux(G_fn(x, d), d)).epsilon(1e-6));

    // scrL tends to alpha^{1/alpha} = 0.25
    CHECK(scrL(1e6, d) == doctest::Approx(0.25).epsilon(0.01));
}

TEST_CASE("limit relation V(x) ~ (log x)^{1/alpha} scrL(log x)") {
    double x = 1e12;
    double lx = std::log(x);
    double ratio = V(x, d) / (std::pow(lx, 1.0 / d.alpha) * scrL(lx, d));
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("pi-variation of V: (V(tx)-V(x))/h(V(x)) -> log t") {
    double x = 1e12;
    double hv = h_aux(V(x, d), d);
    for (double t : {0.5, 2.0}) {
        double err = (V(t * x, d) - V(x, d)) / hv - std::log(t);
        CHECK(std::fabs(err) <= 0.05);
    }
    // At t = 10 the closed form gives the exact discrepancy
    // (ln 10)^2 / (4 (1 + ln(x)/2)) ~ 0.0895, above the 0.05 band the
    // acceptance suite requests; the suite reports that sub-check red.
    double err10 = (V(10.0 * x, d) - V(x, d)) / hv - std::log(10.0);
    double a = 1.0 + 0.5 * std::log(x);
    CHECK(err10 == doctest::Approx(std::pow(0.5 * std::log(10.0), 2.0) / a).epsilon(1e-6));
}

TEST_CASE("C and K constants") {
    CHECK(C_ab(d) == doctest::Approx(3.0).epsilon(1e-12));
    model_params p = d;
    p.beta = 0.1;
    CHECK(C_ab(p) == doctest::Approx(9.0).epsilon(1e-12));
    p.alpha = 0.999;
    p.beta = 0.25;
    CHECK(C_ab(p) > 1.0);
    CHECK(C_ab(p) < 1.01);

    CHECK(K_ab(d, 1.0) ==
          doctest::Approx(0.75 * gamma_fn(2.0 / 3.0) * beta_fn(0.75, 13.0 / 12.0))
              .epsilon(1e-12));
    for (int i = 1; i <= 10; ++i)
        for (int j = 1; j <= 10; ++j) {
            model_params q = d;
            q.alpha = i / 11.0;
            q.beta = j / 21.0;
            CHECK(C_ab(q) > 1.0);
            CHECK(K_ab(q, 1.0) > 0.0);
        }
}

TEST_CASE("psi family") {
    CHECK(psi(0.0, d) == doctest::Approx(0.625 / 0.5625 - 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(psi(0.75, d), std::domain_error);
    CHECK_THROWS_AS(psi(-0.01, d), std::domain_error);

    double r1 = psi_root(1, d);
    CHECK(psi(r1, d) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(r1 == doctest::Approx(0.75 - std::sqrt(0.3125)).epsilon(1e-12));

    // psi increasing, psi~ > r + beta on the open interval, divergence at the edge
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
        double r = (1.0 - d.beta) * i / 201.0;
        double ps = psi(r, d);
        CHECK(ps > prev);
        prev = ps;
        if (i > 0) CHECK(psi_tilde(r, d) > r + d.beta);
    }
    CHECK(psi_tilde(1.0 - d.beta - 1e-6, d) > 1e3 * (1.0 - d.beta));

    // r_m < m/(m+1) - beta on an (alpha,beta) grid, m = 1..20
    for (int i = 1; i <= 10; ++i)
        for (int j = 1; j <= 10; ++j) {
            model_params q = d;
            q.alpha = 0.1 + 0.8 * (i - 1) / 9.0;
            q.beta = 0.05 + 0.4 * (j - 1) / 9.0;
            for (int m = 1; m <= 20; ++m)
                CHECK(psi_root(m, q) < static_cast<double>(m) / (m + 1.0) - q.beta);
        }
}

TEST_CASE("normalizer table") {
    wandering_cache wc{step_law{d}};
    CHECK(wc.w(1) == doctest::Approx(1.0 + std::pow(2.0, -0.25)).epsilon(1e-14));
    CHECK(wc.w(2) ==
          doctest::Approx(1.0 + std::pow(2.0, -0.25) + std::pow(3.0, -0.25)).epsilon(1e-14));

    auto t6 = make_normalizers(1000000, 0.5, d, wc);
    double karamata = std::pow(1e6, 0.75) / 0.75;
    CHECK(t6.w_n / karamata > 0.98);
    CHECK(t6.w_n / karamata < 1.02);
    CHECK(t6.a_n > 0.0);
    CHECK(t6.theta_n == doctest::Approx(std::pow(1e6 + 1.0, 0.25) / gamma_fn(0.75)));

    // a_n / b_n decreasing along the horizon grid
    double prev = 1e9;
    for (double n : {1e3, 1e4, 1e5, 1e6, 1e7}) {
        auto t = make_normalizers(static_cast<std::int64_t>(n), 0.5, d, wc);
        double ratio = t.a_n / t.b_n;
        CHECK(ratio < prev);
        prev = ratio;
    }
    CHECK_THROWS_AS(make_normalizers(10, 1.5, d, wc), std::domain_error);
}
