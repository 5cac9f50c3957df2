#pragma once

#include <cstddef>
#include <vector>

#include "ceabc/model.hpp"
#include "ceabc/params.hpp"

namespace ceabc {

// Daily output grid with internal substepping. The output step is what the
// rest of the pipeline sees; substeps only refine the integrator.
struct TimeGrid {
    double t0 = 0.0;
    double t_end = 0.0;
    double output_step = 1.0;
    int substeps_per_output = 10;

    bool well_formed() const {
        return t_end > t0 && output_step > 0.0 && substeps_per_output >= 1;
    }
    // Number of output instants including both endpoints.
    std::size_t n_outputs() const {
        return static_cast<std::size_t>((t_end - t0) / output_step + 0.5) + 1;
    }
};

struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    std::vector<double> admissions;  // cumulative hospital admissions

    std::size_t size() const { return times.size(); }
    bool empty() const { return times.empty(); }
};

// Classical fixed-step RK4 over the grid. Throws IntegrationBlowup when a
// component exceeds 10x the initial alive+dead total or turns NaN;
// NonpositivePopulation propagates from the right-hand side. Components
// dipping below zero by less than 1e-9 of the initial total are clamped.
Trajectory integrate(const StateVector& u0, const ParamVector& x, const TimeGrid& grid);

struct QoISeries {
    std::vector<double> hospitalized;
    std::vector<double> total_deaths;
};

// Observable series used for calibration, in grid order.
QoISeries extract_qoi(const Trajectory& traj);

}  // namespace ceabc
