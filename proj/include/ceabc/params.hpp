#pragma once

#include <array>
#include <cstddef>
#include <string_view>

namespace ceabc {

inline constexpr std::size_t kNumParams = 12;

// Epidemiological parameter vector. Component order is fixed; every consumer
// (sampler, optimizer, CSV writers) indexes against this order.
struct ParamVector {
    std::array<double, kNumParams> v{};

    double& operator[](std::size_t i) { return v[i]; }
    double operator[](std::size_t i) const { return v[i]; }

    double& beta0() { return v[0]; }      // initial transmission rate (1/day)
    double& alpha() { return v[1]; }      // incubation rate (1/day)
    double& f_e() { return v[2]; }        // symptomatic fraction, in [0,1]
    double& gamma() { return v[3]; }      // recovery rate (1/day)
    double& rho() { return v[4]; }        // hospitalization rate (1/day)
    double& delta() { return v[5]; }      // death rate (1/day)
    double& kappa_a() { return v[6]; }    // asymptomatic mortality factor
    double& kappa_h() { return v[7]; }    // hospitalized mortality factor
    double& eps_h() { return v[8]; }      // hospitalized infectivity factor
    double& beta_inf() { return v[9]; }   // final transmission rate (1/day)
    double& eta() { return v[10]; }       // transition sharpness (1/day)
    double& t_beta() { return v[11]; }    // transition instant (day)

    double beta0() const { return v[0]; }
    double alpha() const { return v[1]; }
    double f_e() const { return v[2]; }
    double gamma() const { return v[3]; }
    double rho() const { return v[4]; }
    double delta() const { return v[5]; }
    double kappa_a() const { return v[6]; }
    double kappa_h() const { return v[7]; }
    double eps_h() const { return v[8]; }
    double beta_inf() const { return v[9]; }
    double eta() const { return v[10]; }
    double t_beta() const { return v[11]; }

    bool operator==(const ParamVector&) const = default;
};

inline constexpr std::array<std::string_view, kNumParams> kParamNames = {
    "beta0", "alpha",  "f_e",   "gamma",    "rho", "delta",
    "kappa_a", "kappa_h", "eps_h", "beta_inf", "eta", "t_beta"};

// Box constraints for the parameter vector, lower <= upper componentwise.
struct ParamBounds {
    ParamVector lower;
    ParamVector upper;

    bool well_formed() const {
        for (std::size_t i = 0; i < kNumParams; ++i)
            if (!(lower[i] <= upper[i])) return false;
        return true;
    }
    bool contains(const ParamVector& x) const {
        for (std::size_t i = 0; i < kNumParams; ++i)
            if (x[i] < lower[i] || x[i] > upper[i]) return false;
        return true;
    }
    double range(std::size_t i) const { return upper[i] - lower[i]; }
};

// Plausible nominal values for an urban COVID-19 outbreak.
inline ParamVector default_nominal() {
    ParamVector x;
    x.beta0() = 1.0 / 7.0;
    x.alpha() = 1.0 / 5.0;
    x.f_e() = 0.8;
    x.gamma() = 1.0 / 14.0;
    x.rho() = 1.0 / 700.0;
    x.delta() = 1.0 / 14000.0;
    x.kappa_a() = 0.0010;
    x.kappa_h() = 0.05;
    x.eps_h() = 0.2;
    x.beta_inf() = 1.0 / 7.0;
    x.eta() = 5.0;
    x.t_beta() = 60.0;
    return x;
}

// Default search box around the nominal values.
inline ParamBounds default_bounds() {
    ParamBounds b;
    b.lower.beta0() = 1.0 / 14.0;
    b.upper.beta0() = 1.0 / 2.0;
    b.lower.alpha() = 1.0 / 10.0;
    b.upper.alpha() = 1.0 / 2.0;
    b.lower.f_e() = 0.7;
    b.upper.f_e() = 0.9;
    b.lower.gamma() = 1.0 / 21.0;
    b.upper.gamma() = 1.0 / 7.0;
    b.lower.rho() = 1.0 / 2100.0;
    b.upper.rho() = 1.0 / 100.0;
    b.lower.delta() = 1.0 / 21000.0;
    b.upper.delta() = 1.0 / 100.0;
    b.lower.kappa_a() = 0.0005;
    b.upper.kappa_a() = 0.0050;
    b.lower.kappa_h() = 0.01;
    b.upper.kappa_h() = 0.10;
    b.lower.eps_h() = 0.1;
    b.upper.eps_h() = 0.5;
    b.lower.beta_inf() = 1.0 / 14.0;
    b.upper.beta_inf() = 1.0 / 2.0;
    b.lower.eta() = 0.0;
    b.upper.eta() = 10.0;
    b.lower.t_beta() = 0.0;
    b.upper.t_beta() = 120.0;
    return b;
}

}  // namespace ceabc
