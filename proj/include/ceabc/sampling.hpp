#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "ceabc/params.hpp"

namespace ceabc {

// Sampling distribution carried between CE iterations and into ABC:
// independent truncated Gaussians, one per parameter. sigma holds standard
// deviations. Invariant: lower <= mu <= upper and sigma > 0 componentwise.
struct DistributionState {
    ParamVector mu;
    std::array<double, kNumParams> sigma{};
    ParamBounds bounds;

    void validate() const;  // throws Error on invariant violation
};

// Tolerances for the weighted RMS norm. atol may hold a single value
// (broadcast) or one value per component.
struct ToleranceConfig {
    std::vector<double> atol{0.001};
    double rtol = 0.05;
};

struct RngSeed {
    std::uint64_t seed = 0;
};

// splitmix64 step; used to derive independent per-sample streams from one
// root seed so parallel and serial runs see identical draws.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

// Uniform double in [0,1) from the top 53 bits of a 64-bit draw.
double uniform01(std::mt19937_64& gen);

// One draw from Normal(mu, sigma^2) truncated to [lo, hi]. Inverse-CDF via
// the Phi-ratio transform; rejection fallback when the window mass is below
// 1e-8; throws TruncationTooTight below 1e-12 mass. lo == hi returns lo.
double truncated_normal_sample(double mu, double sigma, double lo, double hi,
                               std::mt19937_64& gen);

// Analytic CDF of the same truncated normal (oracle for tests and quantile
// work). Requires lo < hi and positive window mass.
double truncated_normal_cdf(double x, double mu, double sigma, double lo, double hi);

// Mean and standard deviation of Normal(mu, sigma^2) truncated to [lo, hi].
void truncated_normal_moments(double mu, double sigma, double lo, double hi,
                              double& out_mean, double& out_std);

// n independent parameter draws; component j of draw k comes from the
// truncated Gaussian (mu_j, sigma_j, bounds_j). Bit-for-bit reproducible for
// a fixed (dist, n, seed) triple regardless of caller threading.
std::vector<ParamVector> sample_truncated_gaussian(const DistributionState& dist,
                                                   std::size_t n, RngSeed seed);

// Weighted RMS norm of a - b with weights w_j = 1/(atol_j + 0.5|a_j+b_j|rtol):
//   sqrt( (1/N) sum_j (w_j (a_j - b_j))^2 ).
// Throws ZeroDenominator when a weight denominator vanishes.
double weighted_rms_norm(const std::vector<double>& a, const std::vector<double>& b,
                         const ToleranceConfig& tol);

}  // namespace ceabc
