#pragma once

#include <vector>

#include "ceabc/integrate.hpp"
#include "ceabc/model.hpp"
#include "ceabc/params.hpp"

namespace ceabc {

// Reference observation used to pick a state off the virgin trajectory.
struct ICReference {
    enum class Component { Hospitalized, Deaths };
    Component component = Component::Hospitalized;
    double ref_value = 0.0;  // >= 0
};

// Outbreak-from-scratch scenario: everyone susceptible except e0 exposed.
struct VirginConfig {
    double n0 = 5.5e6;
    double e0 = 1.0;
    double horizon = 730.0;  // days
    ParamVector params = default_nominal();

    StateVector initial_state() const;
    void validate() const;  // throws ConfigError
};

// Integrates the virgin scenario on a daily grid. Callers reuse one
// trajectory across multiple reference matches.
Trajectory virgin_run(const VirginConfig& cfg, int substeps_per_output = 10);

// State at the output instant whose component value is closest to the
// reference; ties broken by the earliest instant.
StateVector find_state_matching(const Trajectory& traj, const ICReference& ref);

// Componentwise convex combination. Weights must be nonnegative and sum to
// 1 (throws WeightSumInvalid otherwise).
StateVector blend_states(const std::vector<StateVector>& states,
                         const std::vector<double>& weights);

// Full three-step construction: virgin run, one state matched per reference,
// blend with weights (omega, 1-omega) on the H- and D-matched states.
StateVector infer_initial_condition(const VirginConfig& cfg, double h_ref, double d_ref,
                                    double omega, int substeps_per_output = 10);

}  // namespace ceabc
