#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ceabc/abc.hpp"
#include "ceabc/ce.hpp"
#include "ceabc/integrate.hpp"
#include "ceabc/misfit.hpp"
#include "ceabc/params.hpp"

namespace ceabc {

struct ParamSummary {
    std::string name;
    double mean = 0.0;
    double stddev = 0.0;
    double min = 0.0;
    double max = 0.0;
    std::vector<double> bin_edges;
    std::vector<std::size_t> bin_counts;
};

// Figure-ready posterior digest. Pure function of the accepted set: equal
// inputs give bit-identical summaries.
struct PosteriorSummary {
    std::vector<ParamSummary> params;   // fixed parameter order
    double acceptance_rate = 0.0;
    std::size_t n_accepted = 0;
    std::size_t n_evaluated = 0;
    ParamVector best_x;
    double best_j = 0.0;
};

PosteriorSummary summarize(const ABCResult& result, const ParamBounds& bounds,
                           int bins = 20);  // throws NoAcceptedSamples

// Full-precision decimal formatting (shortest round-trip-exact form is not
// required; %.17g is stable and reproducible).
std::string format_full(double v);

// --- CSV writers -------------------------------------------------------

// `t,S,E,I,A,H,R,D,N`, one row per output instant.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj);

// `t,cumulative_admissions`.
void write_admissions_csv(const std::filesystem::path& path, const Trajectory& traj);

// `iter,mu_1..mu_12,sigma_1..sigma_12,gamma_hat,best_j`.
void write_ce_history_csv(const std::filesystem::path& path, const CEResult& result);

// One row per accepted sample: the 12 parameters then j.
void write_accepted_samples_csv(const std::filesystem::path& path, const ABCResult& result);
ABCResult load_accepted_samples_csv(const std::filesystem::path& path);

// `t,lower,median,upper` for one QoI envelope.
void write_envelope_csv(const std::filesystem::path& path, const std::vector<double>& times,
                        const Envelope& env);

// Single data row `S,E,I,A,H,R,D,N`.
void write_initial_condition_csv(const std::filesystem::path& path, const StateVector& u);

// `param,bin_lower,bin_upper,count` across all parameters.
void write_histogram_csv(const std::filesystem::path& path, const PosteriorSummary& summary);

}  // namespace ceabc
