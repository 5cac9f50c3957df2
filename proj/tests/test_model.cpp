#include <doctest.h>

#include <cmath>
#include <random>

#include "ceabc/errors.hpp"
#include "ceabc/model.hpp"
#include "ceabc/params.hpp"

using namespace ceabc;

TEST_CASE("transmission rate equals the average of the plateaus at t_beta") {
    ParamVector x = default_nominal();
    x.beta0() = 0.2;
    x.beta_inf() = 0.5;
    x.eta() = 3.0;
    x.t_beta() = 40.0;
    CHECK(transmission_rate(40.0, x) == doctest::Approx(0.35).epsilon(1e-14));

    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> u(0.05, 0.6);
    for (int k = 0; k < 100; ++k) {
        x.beta0() = u(gen);
        x.beta_inf() = u(gen);
        x.eta() = 10.0 * u(gen);
        x.t_beta() = 200.0 * u(gen);
        const double mid = 0.5 * (x.beta0() + x.beta_inf());
        CHECK(std::abs(transmission_rate(x.t_beta(), x) - mid) < 1e-12);
    }
}

TEST_CASE("transmission rate approaches its plateaus far from the transition") {
    ParamVector x = default_nominal();
    x.beta0() = 0.3;
    x.beta_inf() = 0.1;
    x.eta() = 2.0;
    x.t_beta() = 50.0;
    CHECK(transmission_rate(-1000.0, x) == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(transmission_rate(1000.0, x) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("transmission rate frozen value") {
    ParamVector x = default_nominal();
    x.beta0() = 0.12;
    x.beta_inf() = 0.31;
    x.eta() = 2.0;
    x.t_beta() = 10.0;
    // 0.12 + 0.095*(1 + tanh(5.8))
    CHECK(transmission_rate(15.8, x) ==
          doctest::Approx(0.30999825845929324).epsilon(1e-15));
}

TEST_CASE("transmission rate stays between the plateaus") {
    ParamVector x = default_nominal();
    x.beta0() = 0.45;
    x.beta_inf() = 0.08;
    x.eta() = 7.0;
    x.t_beta() = 30.0;
    for (double t = -10.0; t <= 120.0; t += 0.5) {
        const double b = transmission_rate(t, x);
        CHECK(b <= 0.45 + 1e-15);
        CHECK(b >= 0.08 - 1e-15);
    }
}

TEST_CASE("compartment derivatives match a hand-computed instance") {
    const ParamVector x = default_nominal();
    StateVector u;
    u.s() = 9000.0;
    u.e() = 100.0;
    u.i() = 50.0;
    u.a() = 20.0;
    u.h() = 10.0;
    u.r() = 0.0;
    u.d() = 0.0;
    u.n() = 9180.0;
    const StateVector du = rhs(0.0, u, x);
    CHECK(du.s() == doctest::Approx(-10.084033613445378).epsilon(1e-14));
    CHECK(du.e() == doctest::Approx(-9.9159663865546221).epsilon(1e-14));
    CHECK(du.i() == doctest::Approx(12.353571428571431).epsilon(1e-14));
    CHECK(du.a() == doctest::Approx(2.5714271428571425).epsilon(1e-14));
    CHECK(du.h() == doctest::Approx(-0.64289285714285704).epsilon(1e-14));
    CHECK(du.r() == doctest::Approx(5.7142857142857135).epsilon(1e-14));
    CHECK(du.d() == doctest::Approx(0.0036085714285714289).epsilon(1e-14));
    CHECK(du.n() == -du.d());
}

TEST_CASE("derivatives conserve the living-plus-dead total") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> pop(10.0, 1e5);
    const ParamVector x = default_nominal();
    for (int k = 0; k < 50; ++k) {
        StateVector u;
        double alive = 0.0;
        for (std::size_t c = 0; c < 6; ++c) {
            u[c] = pop(gen);
            alive += u[c];
        }
        u.d() = pop(gen);
        u.n() = alive;
        const StateVector du = rhs(3.0 * k, u, x);
        double dalive = 0.0;
        for (std::size_t c = 0; c < 6; ++c) dalive += du[c];
        // S+E+I+A+H+R changes exactly opposite to D, and N tracks it.
        CHECK(std::abs(dalive + du.d()) < 1e-9 * alive);
        CHECK(du.n() == -du.d());
    }
}

TEST_CASE("derivatives require a positive population") {
    StateVector u;
    u.n() = 0.0;
    CHECK_THROWS_AS(rhs(0.0, u, default_nominal()), NonpositivePopulation);
    u.n() = -5.0;
    CHECK_THROWS_AS(rhs(0.0, u, default_nominal()), NonpositivePopulation);
}

TEST_CASE("admissions flux is the hospitalization inflow") {
    ParamVector x = default_nominal();
    StateVector u;
    u.i() = 345.0;
    u.n() = 1000.0;
    CHECK(admissions_flux(u, x) == doctest::Approx(x.rho() * 345.0).epsilon(1e-15));
}
