// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <string>

#include "relaylab/errors.hpp"
#include "relaylab/model.hpp"

using namespace relaylab;

TEST_CASE("defaults are valid") {
    SystemParams p;
    CHECK_NOTHROW(validate(p));
    CHECK(p.rho_i == doctest::Approx(db_to_linear(9.5)).epsilon(1e-14));
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(db_to_linear(-30.0) == doctest::Approx(1e-3));
}

TEST_CASE("validation names the offending field") {
    auto expect_field = [](SystemParams p, const std::string& field) {
        try {
            validate(p);
            FAIL("accepted invalid " << field);
        } catch (const DomainError& e) {
            CHECK(std::string(e.what()).find(field) != std::string::npos);
        }
    };
    SystemParams p;
    p.n_antennas = 0;
    expect_field(p, "n_antennas");
    p = {};
    p.eta = 1.5;
    expect_field(p, "eta");
    p = {};
    p.theta = -0.1;
    expect_field(p, "theta");
    p = {};
    p.rho1 = 0.0;
    expect_field(p, "rho1");
    p = {};
    p.rho_i = -1.0;
    expect_field(p, "rho_i");
    p = {};
    p.d_i = 0.0;
    expect_field(p, "d_i");
    p = {};
    p.gamma_th = 0.0;
    expect_field(p, "gamma_th");
}

TEST_CASE("rng streams are reproducible and distinct") {
    Rng a({42, 3}), b({42, 3}), c({42, 4}), d({43, 3});
    bool differs_c = false, differs_d = false;
    for (int i = 0; i < 100; ++i) {
        const double x = a.uniform();
        CHECK(x == b.uniform());
        CHECK(x > 0.0);
        CHECK(x <= 1.0);
        differs_c = differs_c || x != c.uniform();
        differs_d = differs_d || x != d.uniform();
    }
    CHECK(differs_c);
    CHECK(differs_d);
}

TEST_CASE("complex normal moments") {
    Rng r({7, 0});
    const int n = 200000;
    std::complex<double> mean{};
    double power = 0.0, fourth = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto z = r.complex_normal();
        mean += z;
        power += std::norm(z);
        fourth += std::norm(z) * std::norm(z);
    }
    mean /= n;
    CHECK(std::abs(mean) < 0.01);
    CHECK(power / n == doctest::Approx(1.0).epsilon(0.01));
    // |z|^2 ~ Exp(1): E|z|^4 = 2.
    CHECK(fourth / n == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("channel draws have N entries and Gamma(N) energy") {
    SystemParams p;
    p.n_antennas = 3;
    Rng r({1, 1});
    double e = 0.0;
    const int n = 50000;
    for (int i = 0; i < n; ++i) {
        const auto d = draw_channels(p, r);
        REQUIRE(d.h1.size() == 3);
        REQUIRE(d.h2.size() == 3);
        REQUIRE(d.h_i.size() == 3);
        for (const auto& v : d.h1) e += std::norm(v);
    }
    CHECK(e / n == doctest::Approx(3.0).epsilon(0.02));
}

TEST_CASE("channel vectors are independent") {
    SystemParams p;
    p.n_antennas = 2;
    Rng r({3, 0});
    const int n = 100000;
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (int i = 0; i < n; ++i) {
        const auto d = draw_channels(p, r);
        double x = 0.0, y = 0.0;
        for (const auto& v : d.h1) x += std::norm(v);
        for (const auto& v : d.h_i) y += std::norm(v);
        sx += x;
        sy += y;
        sxx += x * x;
        syy += y * y;
        sxy += x * y;
    }
    const double cov = sxy / n - sx / n * sy / n;
    const double corr = cov / std::sqrt((sxx / n - sx * sx / n / n) * (syy / n - sy * sy / n / n));
    CHECK(std::abs(corr) < 0.01);
}

TEST_CASE("gamma cdf closed forms") {
    for (double x : {0.01, 0.5, 3.0, 20.0}) {
        CHECK(gamma_cdf(1, x) == doctest::Approx(-std::expm1(-x)).epsilon(1e-14));
        CHECK(gamma_cdf(2, x) == doctest::Approx(1.0 - std::exp(-x) * (1.0 + x)).epsilon(1e-12));
    }
    CHECK(gamma_cdf(3, 0.0) == 0.0);
    // Small argument keeps relative precision: P(3, x) ~ x^3/6.
    CHECK(gamma_cdf(3, 1e-6) == doctest::Approx(1e-18 / 6.0).epsilon(1e-5));
    CHECK_THROWS_AS(gamma_cdf(0, 1.0), DomainError);
}
