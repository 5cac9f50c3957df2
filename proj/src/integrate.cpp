#include "ceabc/integrate.hpp"

#include <cmath>
#include <string>

#include "ceabc/errors.hpp"

namespace ceabc {

namespace {

// State + cumulative-admissions accumulator advanced with one RK4 tableau so
// the auxiliary output has the same order of accuracy as the state.
struct Augmented {
    StateVector u;
    double adm;
};

Augmented rk4_step(double t, const Augmented& y, double h, const ParamVector& x) {
    auto f = [&x](double tt, const StateVector& uu) { return rhs(tt, uu, x); };
    auto advance = [](const StateVector& uu, const StateVector& k, double c) {
        StateVector out;
        for (std::size_t i = 0; i < kNumCompartments; ++i) out[i] = uu[i] + c * k[i];
        return out;
    };

    const StateVector k1 = f(t, y.u);
    const double a1 = admissions_flux(y.u, x);
    const StateVector u2 = advance(y.u, k1, 0.5 * h);
    const StateVector k2 = f(t + 0.5 * h, u2);
    const double a2 = admissions_flux(u2, x);
    const StateVector u3 = advance(y.u, k2, 0.5 * h);
    const StateVector k3 = f(t + 0.5 * h, u3);
    const double a3 = admissions_flux(u3, x);
    const StateVector u4 = advance(y.u, k3, h);
    const StateVector k4 = f(t + h, u4);
    const double a4 = admissions_flux(u4, x);

    Augmented out;
    for (std::size_t i = 0; i < kNumCompartments; ++i)
        out.u[i] = y.u[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    out.adm = y.adm + (h / 6.0) * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
    return out;
}

}  // namespace

Trajectory integrate(const StateVector& u0, const ParamVector& x, const TimeGrid& grid) {
    if (!grid.well_formed()) throw Error("integrate: malformed time grid");
    if (!(u0.n() > 0.0))
        throw NonpositivePopulation("integrate: initial population N must be positive");

    // Alive + dead total is conserved; it anchors the blowup and clamp scales.
    const double total0 = u0.n() + u0.d();
    const double blowup_limit = 10.0 * total0;
    const double clamp_tol = 1e-9 * total0;

    auto check = [&](const StateVector& u, double t) {
        for (std::size_t i = 0; i < kNumCompartments; ++i) {
            if (std::isnan(u[i]))
                throw IntegrationBlowup("integrate: NaN in component " +
                                        std::string(kCompartmentNames[i]) + " at t=" +
                                        std::to_string(t));
            if (u[i] > blowup_limit)
                throw IntegrationBlowup("integrate: component " +
                                        std::string(kCompartmentNames[i]) +
                                        " exceeded 10x initial population at t=" +
                                        std::to_string(t));
        }
    };
    auto clamp = [&](StateVector& u, double t) {
        for (std::size_t i = 0; i < kNumCompartments; ++i) {
            if (u[i] < 0.0) {
                if (u[i] < -clamp_tol)
                    throw IntegrationBlowup("integrate: component " +
                                            std::string(kCompartmentNames[i]) +
                                            " went negative (" + std::to_string(u[i]) +
                                            ") at t=" + std::to_string(t));
                u[i] = 0.0;
            }
        }
    };

    const std::size_t n_out = grid.n_outputs();
    const double h = grid.output_step / grid.substeps_per_output;

    Trajectory traj;
    traj.times.reserve(n_out);
    traj.states.reserve(n_out);
    traj.admissions.reserve(n_out);

    Augmented y{u0, 0.0};
    check(y.u, grid.t0);
    clamp(y.u, grid.t0);
    traj.times.push_back(grid.t0);
    traj.states.push_back(y.u);
    traj.admissions.push_back(y.adm);

    for (std::size_t k = 1; k < n_out; ++k) {
        const double t_base = grid.t0 + static_cast<double>(k - 1) * grid.output_step;
        for (int s = 0; s < grid.substeps_per_output; ++s) {
            const double t = t_base + s * h;
            y = rk4_step(t, y, h, x);
            clamp(y.u, t + h);
            check(y.u, t + h);
        }
        traj.times.push_back(grid.t0 + static_cast<double>(k) * grid.output_step);
        traj.states.push_back(y.u);
        traj.admissions.push_back(y.adm);
    }
    return traj;
}

QoISeries extract_qoi(const Trajectory& traj) {
    QoISeries q;
    q.hospitalized.reserve(traj.size());
    q.total_deaths.reserve(traj.size());
    for (const StateVector& u : traj.states) {
        q.hospitalized.push_back(u.h());
        q.total_deaths.push_back(u.d());
    }
    return q;
}

}  // namespace ceabc
