#include "ceabc/model.hpp"

#include <cmath>

#include "ceabc/errors.hpp"

namespace ceabc {

double transmission_rate(double t, const ParamVector& x) noexcept {
    const double b0 = x.beta0();
    const double b1 = x.beta_inf();
    return b0 + 0.5 * (b1 - b0) * (1.0 + std::tanh(0.5 * x.eta() * (t - x.t_beta())));
}

StateVector rhs(double t, const StateVector& u, const ParamVector& x) {
    if (!(u.n() > 0.0))
        throw NonpositivePopulation("rhs: population N must be positive, got " +
                                    std::to_string(u.n()));

    const double beta = transmission_rate(t, x);
    // Hospitalized individuals transmit at a reduced rate eps_h * beta.
    const double force = beta * u.s() * (u.i() + u.a() + x.eps_h() * u.h()) / u.n();

    const double dS = -force;
    const double dE = force - x.alpha() * u.e();
    const double dI = x.f_e() * x.alpha() * u.e() - (x.gamma() + x.rho() + x.delta()) * u.i();
    const double dA = (1.0 - x.f_e()) * x.alpha() * u.e() -
                      (x.kappa_a() * x.delta() + x.gamma()) * u.a();
    const double dH = x.rho() * u.i() - (x.gamma() + x.kappa_h() * x.delta()) * u.h();
    const double dR = x.gamma() * (u.i() + u.a() + u.h());
    const double dD = x.delta() * (u.i() + x.kappa_a() * u.a() + x.kappa_h() * u.h());

    StateVector du;
    du.s() = dS;
    du.e() = dE;
    du.i() = dI;
    du.a() = dA;
    du.h() = dH;
    du.r() = dR;
    du.d() = dD;
    du.n() = -dD;
    return du;
}

double admissions_flux(const StateVector& u, const ParamVector& x) noexcept {
    return x.rho() * u.i();
}

}  // namespace ceabc
