#include "ceabc/sampling.hpp"

#include <algorithm>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <string>

#include "ceabc/errors.hpp"

namespace ceabc {

namespace {

const boost::math::normal_distribution<double> kStdNormal(0.0, 1.0);

double phi(double z) { return boost::math::pdf(kStdNormal, z); }
double Phi(double z) { return boost::math::cdf(kStdNormal, z); }
double PhiC(double z) { return boost::math::cdf(boost::math::complement(kStdNormal, z)); }
double PhiInv(double p) { return boost::math::quantile(kStdNormal, p); }
double PhiCInv(double q) {
    return boost::math::quantile(boost::math::complement(kStdNormal, q));
}

// Window mass Phi(b) - Phi(a), evaluated on the side where the CDF keeps
// relative precision.
double window_mass(double a, double b) {
    if (a >= 0.0) return PhiC(a) - PhiC(b);
    if (b <= 0.0) return Phi(b) - Phi(a);
    return Phi(b) - Phi(a);
}

constexpr double kInverseCdfMassFloor = 1e-8;
constexpr double kMassFloor = 1e-12;
constexpr int kMaxRejectionIters = 10000;

// One-sided exponential-tilted rejection for a wide right-tail window
// [a, b], a >= 0 (Robert's method with an upper cap).
double sample_tail_rejection(double a, double b, std::mt19937_64& gen) {
    const double alpha = 0.5 * (a + std::sqrt(a * a + 4.0));
    for (int it = 0; it < kMaxRejectionIters; ++it) {
        const double e = -std::log1p(-uniform01(gen)) / alpha;
        const double z = a + e;
        if (z > b) continue;
        const double d = z - alpha;
        if (uniform01(gen) <= std::exp(-0.5 * d * d)) return z;
    }
    throw TruncationTooTight("truncated normal: tail rejection did not terminate");
}

// Uniform-proposal rejection for a narrow window; exact because the accept
// ratio is the density normalized at its in-window mode.
double sample_uniform_rejection(double a, double b, std::mt19937_64& gen) {
    const double mode = std::clamp(0.0, a, b);
    for (int it = 0; it < kMaxRejectionIters; ++it) {
        const double z = a + (b - a) * uniform01(gen);
        if (uniform01(gen) <= std::exp(-0.5 * (z * z - mode * mode))) return z;
    }
    throw TruncationTooTight("truncated normal: rejection did not terminate");
}

double sample_standardized(double a, double b, double mass, std::mt19937_64& gen) {
    if (mass >= kInverseCdfMassFloor) {
        const double u = uniform01(gen);
        double z;
        if (a >= 0.0) {
            // Right tail: complementary CDF keeps precision.
            const double qa = PhiC(a), qb = PhiC(b);
            const double q = qa + u * (qb - qa);
            z = (q <= 0.0) ? b : PhiCInv(q);
        } else if (b <= 0.0) {
            const double pa = Phi(a), pb = Phi(b);
            const double p = pa + u * (pb - pa);
            z = (p <= 0.0) ? a : PhiInv(p);
        } else {
            const double pa = Phi(a), pb = Phi(b);
            z = PhiInv(pa + u * (pb - pa));
        }
        return std::clamp(z, a, b);
    }
    // Ill-conditioned inverse; pick the rejection proposal by geometry.
    if (a >= 0.0) {
        const double alpha = 0.5 * (a + std::sqrt(a * a + 4.0));
        if ((b - a) * alpha >= 1.0) return sample_tail_rejection(a, b, gen);
        return sample_uniform_rejection(a, b, gen);
    }
    if (b <= 0.0) {
        const double alpha = 0.5 * (-b + std::sqrt(b * b + 4.0));
        if ((b - a) * alpha >= 1.0) return -sample_tail_rejection(-b, -a, gen);
        return sample_uniform_rejection(a, b, gen);
    }
    return sample_uniform_rejection(a, b, gen);
}

}  // namespace

void DistributionState::validate() const {
    if (!bounds.well_formed()) throw Error("distribution: bounds not ordered");
    for (std::size_t i = 0; i < kNumParams; ++i) {
        if (mu[i] < bounds.lower[i] || mu[i] > bounds.upper[i])
            throw Error("distribution: mu outside bounds for " +
                        std::string(kParamNames[i]));
        if (!(sigma[i] > 0.0))
            throw Error("distribution: sigma must be positive for " +
                        std::string(kParamNames[i]));
    }
}

std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform01(std::mt19937_64& gen) {
    return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

double truncated_normal_sample(double mu, double sigma, double lo, double hi,
                               std::mt19937_64& gen) {
    if (lo > hi) throw Error("truncated normal: lo > hi");
    if (lo == hi) return lo;  // degenerate interval: the constant
    if (!(sigma > 0.0)) throw Error("truncated normal: sigma must be positive");

    const double a = (lo - mu) / sigma;
    const double b = (hi - mu) / sigma;
    const double mass = window_mass(a, b);
    if (mass < kMassFloor)
        throw TruncationTooTight("truncated normal: window mass " + std::to_string(mass) +
                                 " below 1e-12");
    const double z = sample_standardized(a, b, mass, gen);
    return std::clamp(mu + sigma * z, lo, hi);
}

double truncated_normal_cdf(double x, double mu, double sigma, double lo, double hi) {
    if (!(lo < hi)) throw Error("truncated normal cdf: need lo < hi");
    if (x <= lo) return 0.0;
    if (x >= hi) return 1.0;
    const double a = (lo - mu) / sigma;
    const double b = (hi - mu) / sigma;
    const double z = (x - mu) / sigma;
    const double mass = window_mass(a, b);
    if (mass <= 0.0) throw TruncationTooTight("truncated normal cdf: zero window mass");
    return std::clamp(window_mass(a, z) / mass, 0.0, 1.0);
}

void truncated_normal_moments(double mu, double sigma, double lo, double hi,
                              double& out_mean, double& out_std) {
    const double a = (lo - mu) / sigma;
    const double b = (hi - mu) / sigma;
    const double z = window_mass(a, b);
    if (z <= 0.0) throw TruncationTooTight("truncated normal moments: zero window mass");
    const double pa = phi(a), pb = phi(b);
    const double m = (pa - pb) / z;
    out_mean = mu + sigma * m;
    const double v = 1.0 + (a * pa - b * pb) / z - m * m;
    out_std = sigma * std::sqrt(std::max(v, 0.0));
}

std::vector<ParamVector> sample_truncated_gaussian(const DistributionState& dist,
                                                   std::size_t n, RngSeed seed) {
    dist.validate();
    std::vector<ParamVector> out(n);
    std::uint64_t root = seed.seed;
    for (std::size_t k = 0; k < n; ++k) {
        // One independent stream per draw; the split order fixes the result
        // regardless of how callers parallelize around this function.
        std::mt19937_64 gen(splitmix64(root));
        for (std::size_t j = 0; j < kNumParams; ++j)
            out[k][j] = truncated_normal_sample(dist.mu[j], dist.sigma[j],
                                                dist.bounds.lower[j],
                                                dist.bounds.upper[j], gen);
    }
    return out;
}

double weighted_rms_norm(const std::vector<double>& a, const std::vector<double>& b,
                         const ToleranceConfig& tol) {
    if (a.size() != b.size())
        throw ShapeMismatch("weighted rms norm: size " + std::to_string(a.size()) +
                            " vs " + std::to_string(b.size()));
    if (a.empty()) throw Error("weighted rms norm: empty vectors");
    if (!(tol.rtol > 0.0)) throw Error("weighted rms norm: rtol must be positive");
    if (tol.atol.size() != 1 && tol.atol.size() != a.size())
        throw ShapeMismatch("weighted rms norm: atol size " +
                            std::to_string(tol.atol.size()) + " vs vector size " +
                            std::to_string(a.size()));

    double acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) {
        const double atol_j = tol.atol[tol.atol.size() == 1 ? 0 : j];
        if (atol_j < 0.0) throw Error("weighted rms norm: atol must be nonnegative");
        const double denom = atol_j + 0.5 * std::abs(a[j] + b[j]) * tol.rtol;
        if (denom == 0.0)
            throw ZeroDenominator("weighted rms norm: zero weight denominator at index " +
                                  std::to_string(j));
        const double w = (a[j] - b[j]) / denom;
        acc += w * w;
    }
    return std::sqrt(acc / static_cast<double>(a.size()));
}

}  // namespace ceabc
