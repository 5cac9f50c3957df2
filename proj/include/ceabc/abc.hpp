#pragma once

#include <cstddef>
#include <vector>

#include "ceabc/ce.hpp"
#include "ceabc/misfit.hpp"
#include "ceabc/params.hpp"
#include "ceabc/sampling.hpp"

namespace ceabc {

struct ABCConfig {
    std::size_t n_samples = 2000;
    double tol = 0.1;
    unsigned threads = 1;

    void validate() const;  // throws ConfigError
};

struct AcceptedSample {
    ParamVector x;
    ModelSeries qoi;   // forward output, one series per target block
    double j = 0.0;
};

// Posterior representation: the accepted sample set itself. An empty set is
// a distinguished outcome (callers may raise tol), not a crash.
struct ABCResult {
    std::vector<AcceptedSample> accepted;   // in draw order
    std::size_t best_index = 0;             // minimal-j accepted sample
    double acceptance_rate = 0.0;
    std::size_t n_evaluated = 0;

    bool empty() const { return accepted.empty(); }
    const AcceptedSample& best() const;     // throws NoAcceptedSamples
};

// Rejection ABC: draws n_samples from the prior, keeps those with strict
// j < tol. Failed forward evaluations count as rejected. Deterministic for
// a fixed seed, independent of thread count.
ABCResult abc_infer(const DistributionState& prior, const ForwardFn& forward,
                    const QoITarget& data, const ABCConfig& cfg, RngSeed seed);

struct ParamPosterior {
    double mean = 0.0;
    double stddev = 0.0;                    // population convention
    std::vector<double> bin_edges;          // bins + 1 edges spanning the bounds
    std::vector<std::size_t> bin_counts;
};

// Per-parameter marginal summaries over the accepted set. Histogram bins
// span the search bounds so plots are comparable across runs. Throws
// NoAcceptedSamples on an empty result.
std::vector<ParamPosterior> posterior_stats(const ABCResult& result,
                                            const ParamBounds& bounds, int bins = 20);

struct Envelope {
    std::vector<double> lower;
    std::vector<double> median;
    std::vector<double> upper;
};

// Pointwise credible envelope per target block: median plus the symmetric
// (1-level)/2 quantiles over accepted QoI series, linear-interpolation
// quantile convention. lower <= median <= upper at every instant.
std::vector<Envelope> credible_envelope(const ABCResult& result, double level = 0.95);

// Linear-interpolation empirical quantile of an unsorted copy of xs.
double quantile(std::vector<double> xs, double p);

}  // namespace ceabc
