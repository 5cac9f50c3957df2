#include "ceabc/ic.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ceabc/errors.hpp"

namespace ceabc {

StateVector VirginConfig::initial_state() const {
    StateVector u;
    u.s() = n0 - e0;
    u.e() = e0;
    u.n() = n0;
    return u;
}

void VirginConfig::validate() const {
    if (!(n0 > 0.0)) throw ConfigError("virgin: n0 must be positive");
    if (e0 < 0.0) throw ConfigError("virgin: e0 must be nonnegative");
    if (e0 > n0) throw ConfigError("virgin: e0 cannot exceed n0");
    if (!(horizon > 0.0)) throw ConfigError("virgin: horizon must be positive");
}

Trajectory virgin_run(const VirginConfig& cfg, int substeps_per_output) {
    cfg.validate();
    TimeGrid grid{0.0, cfg.horizon, 1.0, substeps_per_output};
    return integrate(cfg.initial_state(), cfg.params, grid);
}

StateVector find_state_matching(const Trajectory& traj, const ICReference& ref) {
    if (traj.empty()) throw Error("find_state_matching: empty trajectory");
    if (ref.ref_value < 0.0) throw Error("find_state_matching: negative reference");

    std::size_t best = 0;
    double best_gap = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const StateVector& u = traj.states[k];
        const double value =
            ref.component == ICReference::Component::Hospitalized ? u.h() : u.d();
        const double gap = std::abs(value - ref.ref_value);
        if (gap < best_gap) {  // strict: ties keep the earliest instant
            best_gap = gap;
            best = k;
        }
    }
    return traj.states[best];
}

StateVector blend_states(const std::vector<StateVector>& states,
                         const std::vector<double>& weights) {
    if (states.empty() || states.size() != weights.size())
        throw Error("blend_states: need one weight per state");
    double wsum = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw WeightSumInvalid("blend_states: negative weight");
        wsum += w;
    }
    if (std::abs(wsum - 1.0) > 1e-9)
        throw WeightSumInvalid("blend_states: weights sum to " + std::to_string(wsum));

    StateVector out;
    for (std::size_t i = 0; i < kNumCompartments; ++i) {
        double v = 0.0;
        for (std::size_t k = 0; k < states.size(); ++k) v += weights[k] * states[k][i];
        out[i] = v;
    }
    return out;
}

StateVector infer_initial_condition(const VirginConfig& cfg, double h_ref, double d_ref,
                                    double omega, int substeps_per_output) {
    if (omega < 0.0 || omega > 1.0)
        throw ConfigError("infer_initial_condition: omega must lie in [0,1]");
    const Trajectory traj = virgin_run(cfg, substeps_per_output);
    const StateVector h_state =
        find_state_matching(traj, {ICReference::Component::Hospitalized, h_ref});
    const StateVector d_state =
        find_state_matching(traj, {ICReference::Component::Deaths, d_ref});
    return blend_states({h_state, d_state}, {omega, 1.0 - omega});
}

}  // namespace ceabc
