// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <random>

#include "relaylab/analysis.hpp"
#include "relaylab/errors.hpp"
#include "relaylab/optimum.hpp"

using namespace relaylab;
namespace opt = relaylab::optimum;

namespace {

SystemParams random_params(std::mt19937_64& eng, int n) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    SystemParams p;
    p.n_antennas = n;
    p.eta = 0.1 + 0.9 * u(eng);
    p.rho1 = db_to_linear(20.0 + 40.0 * u(eng));
    p.rho_i = db_to_linear(-10.0 + 40.0 * u(eng));
    p.d1 = 0.5 + 1.5 * u(eng);
    p.d2 = 0.5 + 1.5 * u(eng);
    p.d_i = 0.5 + 1.5 * u(eng);
    p.gamma_th = db_to_linear(-5.0 + 10.0 * u(eng));
    return p;
}

// High-SNR outage as a function of theta. ZF keeps its second-hop term, the
// only part that depends on theta through the harvested power.
double surrogate(Scheme s, SystemParams p, double theta) {
    p.theta = theta;
    return analysis::outage_high_snr(s, p, s == Scheme::ZfMrt ? analysis::HighSnrForm::ZfTwoTerm
                                                              : analysis::HighSnrForm::Standard);
}

}  // namespace

TEST_CASE("single-antenna MRC closed form agrees with the root finder") {
    std::mt19937_64 eng(31);
    for (int i = 0; i < 50; ++i) {
        const auto p = random_params(eng, 1);
        if (std::abs(p.rho1 / p.d1_tau() - p.rho_i / p.di_tau()) < 1e-9 * p.rho1) continue;
        const auto sol = opt::optimal_theta(Scheme::MrcMrt, p);
        CHECK(sol.theta_star == doctest::Approx(opt::theta_closed_form_mrc(p)).epsilon(1e-8));
    }
    // Equal powers: the log ratio tends to its derivative.
    SystemParams p;
    p.rho_i = p.rho1;
    const double x = p.d2_tau() / p.eta;
    CHECK(opt::theta_closed_form_mrc(p) == doctest::Approx(std::sqrt(x) / (1.0 + std::sqrt(x))));
}

TEST_CASE("the first-order condition has exactly one root") {
    std::mt19937_64 eng(41);
    for (Scheme s : kAllSchemes) {
        for (int i = 0; i < 100; ++i) {
            const int n = 1 + int(eng() % 5);
            if (s == Scheme::ZfMrt && n < 2) continue;
            const auto p = random_params(eng, n);
            const auto poly = opt::theta_polynomial(s, p);
            int changes = 0;
            double prev = opt::theta_condition(poly, 1e-4);
            for (int k = 2; k < 10000; ++k) {
                const double v = opt::theta_condition(poly, k * 1e-4);
                if ((v > 0.0) != (prev > 0.0)) ++changes;
                prev = v;
            }
            INFO(scheme_name(s) << " N=" << n);
            CHECK(changes == 1);
            const auto sol = opt::optimal_theta(s, p);
            CHECK(sol.residual < 1e-9);
            CHECK(sol.theta_star > 0.0);
            CHECK(sol.theta_star < 1.0);
        }
    }
}

TEST_CASE("the root minimizes the high-SNR outage locally") {
    std::mt19937_64 eng(51);
    for (Scheme s : kAllSchemes) {
        for (int i = 0; i < 20; ++i) {
            const int n = 2 + int(eng() % 3);
            auto p = random_params(eng, n);
            p.rho1 = db_to_linear(60.0);
            const double t = opt::optimal_theta(s, p).theta_star;
            const double f = surrogate(s, p, t);
            for (double d : {-0.05, 0.05}) {
                const double u = t + d;
                if (u <= 0.0 || u >= 1.0) continue;
                INFO(scheme_name(s) << " theta*=" << t);
                CHECK(f <= surrogate(s, p, u));
            }
        }
    }
}

TEST_CASE("closed-form trends") {
    SystemParams p;
    p.rho1 = 1000.0;
    double prev = 0.0;
    for (double eta : {0.9, 0.7, 0.5, 0.3, 0.1}) {
        p.eta = eta;
        const double t = opt::theta_closed_form_mrc(p);
        CHECK(t > prev);
        prev = t;
    }
    p.eta = 0.8;
    prev = 0.0;
    for (double db : {20.0, 30.0, 40.0, 50.0}) {
        p.rho1 = db_to_linear(db);
        const double t = opt::theta_closed_form_mrc(p);
        CHECK(t > prev);
        prev = t;
    }
    p.rho1 = 1000.0;
    prev = 1.0;
    for (double db : {-10.0, 0.0, 10.0, 20.0}) {
        p.rho_i = db_to_linear(db);
        const double t = opt::theta_closed_form_mrc(p);
        CHECK(t < prev);
        prev = t;
    }
}

TEST_CASE("theta scans") {
    SystemParams p;
    p.n_antennas = 2;
    p.rho1 = db_to_linear(20.0);
    CHECK_THROWS_AS(opt::mc_theta_scan(Scheme::MrcMrt, p, 10, 10000, 1), DomainError);
    const auto s = opt::mc_theta_scan(Scheme::MrcMrt, p, 25, 100000, 1);
    REQUIRE(s.theta.size() == 25);
    CHECK(s.theta.front() == doctest::Approx(0.02));
    CHECK(s.theta.back() == doctest::Approx(0.98));
    CHECK(s.estimate.front().mean > s.estimate[12].mean);
    CHECK(s.estimate.back().mean > s.estimate[12].mean);
    CHECK(s.best_theta > 0.1);
    CHECK(s.best_theta < 0.9);
    const auto c = opt::mc_capacity_theta_scan(Scheme::MrcMrt, p, 25, 50000, 1);
    CHECK(c.estimate.front().mean < c.estimate[12].mean);
    CHECK(c.best_theta > 0.1);
    CHECK(c.best_theta < 0.9);
}
