#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "ceabc/misfit.hpp"
#include "ceabc/params.hpp"
#include "ceabc/sampling.hpp"

namespace ceabc {

struct CEConfig {
    std::size_t n_samples = 100;
    double elite_fraction = 0.10;
    double smoothing_a = 0.7;
    double smoothing_b = 0.8;
    int smoothing_q = 5;
    std::size_t max_iter = 150;
    ToleranceConfig tol;      // convergence test on consecutive sigma vectors
    unsigned threads = 1;     // forward-evaluation workers

    void validate() const;    // throws ConfigError
    std::size_t n_elite() const;  // max(1, round(elite_fraction * n_samples))
};

struct CEIterationRecord {
    std::size_t iter = 0;     // 1-based
    ParamVector mu;
    std::array<double, kNumParams> sigma{};
    double gamma_hat = 0.0;   // worst misfit inside the elite set
    double best_j = 0.0;      // running best misfit so far
};

struct CEResult {
    ParamVector x_opt;
    double j_opt = 0.0;       // minimum misfit among all evaluated samples
    DistributionState final_dist;
    std::vector<CEIterationRecord> history;
    std::size_t iterations_run = 0;
    bool converged = false;
};

// Maps a parameter vector to model QoI series shaped like the target.
// Implementations may throw; the optimizer treats a throwing evaluation as
// misfit +infinity.
using ForwardFn = std::function<ModelSeries(const ParamVector&)>;

struct EliteSelection {
    std::vector<std::size_t> indices;  // positions of the elite samples
    double gamma_hat = 0.0;            // max misfit over the elite set
};

// Picks the n_elite smallest-misfit samples; ties broken by lower index.
// Non-finite misfits are treated as +infinity. Throws EmptyElite when
// n_elite == 0.
EliteSelection select_elite(const std::vector<double>& j_values, std::size_t n_elite);

// Smoothing factor b_l = b - b(1 - 1/l)^q applied to the sigma update.
double smoothing_factor(std::size_t iter, const CEConfig& cfg);

// Refits mean/std to the elite set (population convention for the standard
// deviation) and applies the smoothing scheme:
//   mu    <- a*mu_hat + (1-a)*mu_prev
//   sigma <- b_l*sigma_hat + (1-b_l)*sigma_prev
// The mean is clamped into bounds; sigma is floored at 1e-12 of the range.
DistributionState update_distribution(const std::vector<ParamVector>& elite,
                                      const DistributionState& prev, std::size_t iter,
                                      const CEConfig& cfg);

// Cross-entropy minimization of misfit(forward(x), data) over the box.
// Starts from mu = box midpoint, sigma = range/sqrt(12); redraws n_samples
// per iteration; stops when the weighted RMS distance between consecutive
// sigma vectors is <= 1 (tested from the second iteration on) or at
// max_iter. Deterministic for a fixed seed, independent of thread count.
CEResult ce_optimize(const ForwardFn& forward, const QoITarget& data,
                     const ParamBounds& bounds, const CEConfig& cfg, RngSeed seed);

// Same optimizer over a direct objective; used where the misfit/forward
// split has no meaning (analytic test problems, external objectives).
using ObjectiveFn = std::function<double(const ParamVector&)>;
CEResult ce_optimize_objective(const ObjectiveFn& objective, const ParamBounds& bounds,
                               const CEConfig& cfg, RngSeed seed);

}  // namespace ceabc
