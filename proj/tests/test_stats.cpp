// SPDX-License-Identifier: Apache-2.0
#include "doctest.h"

#include <cmath>
#include <vector>

#include "semex/rng.hpp"
#include "semex/stats.hpp"

using namespace semex;

TEST_CASE("ecdf step values and range") {
    empirical_distribution d{{3.0, 1.0, 2.0}};
    CHECK(d.sample.front() == 1.0);
    CHECK(d.ecdf(0.5) == 0.0);
    CHECK(d.ecdf(1.0) == doctest::Approx(1.0 / 3.0));
    CHECK(d.ecdf(2.5) == doctest::Approx(2.0 / 3.0));
    CHECK(d.ecdf(3.0) == 1.0);
    CHECK(d.ecdf(99.0) == 1.0);
    CHECK_THROWS_AS(empirical_distribution{std::vector<double>{}}, std::invalid_argument);
}

TEST_CASE("ks distances") {
    rng g(7); // fixed seed
    std::vector<double> u;
    for (int i = 0; i < 4000; ++i) u.push_back(g.uniform01());
    empirical_distribution d{u};
    auto ident = [](double x) { return x < 0 ? 0.0 : (x > 1 ? 1.0 : x); };
    CHECK(ks_distance(d, ident) < 0.05);
    CHECK(ks_two_sample(d, d) == 0.0);

    // KS below the 95% asymptotic critical value about 95% of the time
    int ok = 0;
    for (int trial = 0; trial < 100; ++trial) {
        rng gt = rng::stream(42, 1, static_cast<std::uint64_t>(trial));
        std::vector<double> s;
        for (int i = 0; i < 2000; ++i) s.push_back(gt.uniform01());
        empirical_distribution ds{s};
        if (ks_distance(ds, ident) < 1.36 / std::sqrt(2000.0)) ++ok;
    }
    CHECK(ok >= 88);
    CHECK(ok <= 100);

    // symmetry and triangle consistency on a triple
    rng g2(9);
    std::vector<double> a, b, c;
    for (int i = 0; i < 500; ++i) {
        a.push_back(g2.normal());
        b.push_back(g2.normal() + 0.3);
        c.push_back(g2.normal() - 0.2);
    }
    empirical_distribution da{a}, db{b}, dc{c};
    CHECK(ks_two_sample(da, db) == doctest::Approx(ks_two_sample(db, da)).epsilon(1e-12));
    CHECK(ks_two_sample(da, db) <= ks_two_sample(da, dc) + ks_two_sample(dc, db) + 1e-12);
}

TEST_CASE("kolmogorov distribution endpoints") {
    CHECK(kolmogorov_cdf(0.4) > 0.0);
    CHECK(kolmogorov_cdf(0.4) < 0.01);
    CHECK(kolmogorov_q(1.36) == doctest::Approx(0.049).epsilon(0.05));
    CHECK(kolmogorov_cdf(3.5) == doctest::Approx(1.0));
}

TEST_CASE("trend test exact small-sample tail") {
    auto counts3 = inversion_counts(3);
    REQUIRE(counts3.size() == 4);
    CHECK(counts3[0] == 1);
    CHECK(counts3[1] == 2);
    CHECK(counts3[2] == 2);
    CHECK(counts3[3] == 1);

    auto r3 = trend_test({3.0, 2.0, 1.0});
    CHECK(r3.tau == doctest::Approx(-1.0));
    CHECK(r3.p_decreasing == doctest::Approx(1.0 / 6.0));
    CHECK_FALSE(r3.decreasing); // three points can never clear p < 0.05

    auto r5 = trend_test({5.0, 4.0, 3.0, 2.0, 1.0});
    CHECK(r5.p_decreasing == doctest::Approx(1.0 / 120.0));
    CHECK(r5.decreasing);

    // one discordant pair among five still clears the bar
    auto r5b = trend_test({5.0, 4.0, 3.0, 1.0, 2.0});
    CHECK(r5b.p_decreasing == doctest::Approx(5.0 / 120.0));
    CHECK(r5b.decreasing);

    auto up = trend_test({1.0, 2.0, 3.0, 4.0, 5.0});
    CHECK_FALSE(up.decreasing);
}

TEST_CASE("chi-square gof sanity") {
    // fair 4-sided die, observed close to expectation
    gof_result r = chi_square_gof({250, 245, 260, 245}, {0.25, 0.25, 0.25, 0.25}, 1000);
    CHECK(r.dof == 3);
    CHECK(r.p_value > 0.5);
    gof_result bad = chi_square_gof({400, 200, 200, 200}, {0.25, 0.25, 0.25, 0.25}, 1000);
    CHECK(bad.p_value < 1e-6);
}

TEST_CASE("quantile and mean") {
    empirical_distribution d{{1.0, 2.0, 3.0, 4.0}};
    CHECK(d.quantile(0.5) == 2.0);
    CHECK(d.quantile(1.0) == 4.0);
    CHECK(d.mean() == doctest::Approx(2.5));
}
