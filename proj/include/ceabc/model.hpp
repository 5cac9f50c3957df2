#pragma once

#include <array>
#include <cstddef>

#include "ceabc/params.hpp"

namespace ceabc {

inline constexpr std::size_t kNumCompartments = 8;

// Mean-field compartment sizes. All components are nonnegative along any
// trajectory started from nonnegative data; S+E+I+A+H+R-N and N+D are
// conserved by the exact dynamics.
struct StateVector {
    std::array<double, kNumCompartments> u{};

    double& operator[](std::size_t i) { return u[i]; }
    double operator[](std::size_t i) const { return u[i]; }

    double& s() { return u[0]; }
    double& e() { return u[1]; }
    double& i() { return u[2]; }
    double& a() { return u[3]; }
    double& h() { return u[4]; }
    double& r() { return u[5]; }
    double& d() { return u[6]; }
    double& n() { return u[7]; }

    double s() const { return u[0]; }
    double e() const { return u[1]; }
    double i() const { return u[2]; }
    double a() const { return u[3]; }
    double h() const { return u[4]; }
    double r() const { return u[5]; }
    double d() const { return u[6]; }
    double n() const { return u[7]; }

    bool operator==(const StateVector&) const = default;
};

inline constexpr std::array<const char*, kNumCompartments> kCompartmentNames = {
    "S", "E", "I", "A", "H", "R", "D", "N"};

// Transmission rate beta(t): smooth tanh transition from beta0 to beta_inf
// centered at t_beta with sharpness eta. Total function; value always lies
// in the closed interval between beta0 and beta_inf.
double transmission_rate(double t, const ParamVector& x) noexcept;

// Time derivative of the compartment vector. Requires u.n() > 0 (force of
// infection divides by N); throws NonpositivePopulation otherwise.
// Identity: sum of the first six derivatives equals -dD, and dN = -dD.
StateVector rhs(double t, const StateVector& u, const ParamVector& x);

// Hospital admissions flux rho*I, integrated alongside the state to expose
// cumulative admissions (not itself a compartment).
double admissions_flux(const StateVector& u, const ParamVector& x) noexcept;

}  // namespace ceabc
