#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ceabc/errors.hpp"
#include "ceabc/params.hpp"
#include "ceabc/sampling.hpp"

using namespace ceabc;

namespace {

DistributionState flat_default() {
    DistributionState d;
    d.bounds = default_bounds();
    for (std::size_t j = 0; j < kNumParams; ++j) {
        d.mu[j] = 0.5 * (d.bounds.lower[j] + d.bounds.upper[j]);
        d.sigma[j] = d.bounds.range(j) / std::sqrt(12.0);
    }
    return d;
}

// Simpson quadrature of the truncated-normal density moments; independent
// of the closed-form implementation under test.
void quadrature_moments(double mu, double sigma, double lo, double hi, double& mean,
                        double& stddev) {
    const int n = 20000;  // even
    const double h = (hi - lo) / n;
    auto density = [&](double x) {
        const double z = (x - mu) / sigma;
        return std::exp(-0.5 * z * z);
    };
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double x = lo + i * h;
        const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
        const double f = w * density(x);
        m0 += f;
        m1 += f * x;
        m2 += f * x * x;
    }
    mean = m1 / m0;
    stddev = std::sqrt(std::max(0.0, m2 / m0 - mean * mean));
}

}  // namespace

TEST_CASE("weighted RMS norm hand instance") {
    // w = 1/(0.001 + 0.5*1.9*0.05); norm = 0.1*w
    const double v = weighted_rms_norm({1.0}, {0.9}, ToleranceConfig{{0.001}, 0.05});
    CHECK(v == doctest::Approx(0.1 / 0.0485).epsilon(1e-15));
}

TEST_CASE("weighted RMS norm basics") {
    const ToleranceConfig tol{{0.001}, 0.05};
    CHECK(weighted_rms_norm({1.0, 2.0}, {1.0, 2.0}, tol) == 0.0);
    CHECK(weighted_rms_norm({1.0, 2.0}, {0.8, 2.5}, tol) ==
          weighted_rms_norm({0.8, 2.5}, {1.0, 2.0}, tol));
}

TEST_CASE("weighted RMS norm matches a straight-line reimplementation") {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> a(7), b(7);
        for (int i = 0; i < 7; ++i) {
            a[i] = u(gen);
            b[i] = u(gen);
        }
        const ToleranceConfig tol{{0.01}, 0.1};
        double acc = 0.0;
        for (int i = 0; i < 7; ++i) {
            const double w = 1.0 / (0.01 + 0.5 * std::abs(a[i] + b[i]) * 0.1);
            acc += (w * (a[i] - b[i])) * (w * (a[i] - b[i]));
        }
        const double expect = std::sqrt(acc / 7.0);
        CHECK(weighted_rms_norm(a, b, tol) == doctest::Approx(expect).epsilon(1e-14));
    }
}

TEST_CASE("weighted RMS norm rejects vanishing denominators and shape errors") {
    CHECK_THROWS_AS(weighted_rms_norm({1.0}, {-1.0}, ToleranceConfig{{0.0}, 0.05}),
                    ZeroDenominator);
    CHECK_THROWS_AS(weighted_rms_norm({1.0, 2.0}, {1.0}, ToleranceConfig{{0.001}, 0.05}),
                    ShapeMismatch);
}

TEST_CASE("scalar atol broadcasts and vector atol applies per component") {
    const double broadcast =
        weighted_rms_norm({1.0, 4.0}, {1.1, 4.4}, ToleranceConfig{{0.001}, 0.05});
    const double per_component =
        weighted_rms_norm({1.0, 4.0}, {1.1, 4.4}, ToleranceConfig{{0.001, 0.001}, 0.05});
    CHECK(broadcast == per_component);
    const double uneven =
        weighted_rms_norm({1.0, 4.0}, {1.1, 4.4}, ToleranceConfig{{0.001, 10.0}, 0.05});
    CHECK(uneven < per_component);
}

TEST_CASE("splitmix64 walks deterministically and uniform01 stays in range") {
    std::uint64_t s1 = 42, s2 = 42;
    for (int k = 0; k < 10; ++k) CHECK(splitmix64(s1) == splitmix64(s2));
    CHECK(s1 == s2);
    std::uint64_t s3 = 42;
    const std::uint64_t first = splitmix64(s3);
    const std::uint64_t second = splitmix64(s3);
    CHECK(first != second);

    std::mt19937_64 gen(7);
    for (int k = 0; k < 1000; ++k) {
        const double u = uniform01(gen);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("tight sigma concentrates every draw at the mean") {
    DistributionState d = flat_default();
    for (std::size_t j = 0; j < kNumParams; ++j) d.sigma[j] = 1e-12 * d.bounds.range(j);
    const auto draws = sample_truncated_gaussian(d, 100, RngSeed{5});
    for (const ParamVector& x : draws)
        for (std::size_t j = 0; j < kNumParams; ++j)
            CHECK(std::abs(x[j] - d.mu[j]) < 1e-9 * std::max(1.0, std::abs(d.mu[j])));
}

TEST_CASE("sample mean converges to the centered mean") {
    const DistributionState d = flat_default();
    const std::size_t n = 100000;
    const auto draws = sample_truncated_gaussian(d, n, RngSeed{11});
    for (std::size_t j = 0; j < kNumParams; ++j) {
        double mean = 0.0;
        for (const ParamVector& x : draws) mean += x[j];
        mean /= static_cast<double>(n);
        double tn_mean = 0.0, tn_std = 0.0;
        truncated_normal_moments(d.mu[j], d.sigma[j], d.bounds.lower[j],
                                 d.bounds.upper[j], tn_mean, tn_std);
        CHECK(std::abs(mean - tn_mean) < 5.0 * tn_std / std::sqrt(double(n)));
    }
}

TEST_CASE("empirical distribution matches the analytic CDF") {
    DistributionState d = flat_default();
    // Asymmetric window for component 0 so the truncation actually bites.
    d.mu[0] = d.bounds.lower[0] + 0.2 * d.bounds.range(0);
    const std::size_t n = 100000;
    const auto draws = sample_truncated_gaussian(d, n, RngSeed{17});
    std::vector<double> xs(n);
    for (std::size_t k = 0; k < n; ++k) xs[k] = draws[k][0];
    std::sort(xs.begin(), xs.end());
    double ks = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double f = truncated_normal_cdf(xs[k], d.mu[0], d.sigma[0],
                                              d.bounds.lower[0], d.bounds.upper[0]);
        const double lo = static_cast<double>(k) / n;
        const double hi = static_cast<double>(k + 1) / n;
        ks = std::max(ks, std::max(std::abs(f - lo), std::abs(f - hi)));
    }
    CHECK(ks < 0.01);
}

TEST_CASE("draws never leave the box and replay bit for bit") {
    const DistributionState d = flat_default();
    const auto a = sample_truncated_gaussian(d, 500, RngSeed{123});
    const auto b = sample_truncated_gaussian(d, 500, RngSeed{123});
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k] == b[k]);
        CHECK(d.bounds.contains(a[k]));
    }
    const auto c = sample_truncated_gaussian(d, 500, RngSeed{124});
    CHECK(a[0].v != c[0].v);
}

TEST_CASE("degenerate interval returns the constant") {
    std::mt19937_64 gen(3);
    CHECK(truncated_normal_sample(0.4, 1.0, 0.7, 0.7, gen) == 0.7);
}

TEST_CASE("far-tail windows sample correctly or fail loudly") {
    std::mt19937_64 gen(9);
    // Window mass ~1e-9: below the inverse-CDF floor, above the hard floor;
    // the rejection fallback must keep every draw inside.
    for (int k = 0; k < 200; ++k) {
        const double v = truncated_normal_sample(0.0, 1.0, 6.0, 7.0, gen);
        CHECK(v >= 6.0);
        CHECK(v <= 7.0);
    }
    // Interior sliver around the mode, also below the inverse-CDF floor.
    for (int k = 0; k < 200; ++k) {
        const double v = truncated_normal_sample(0.0, 1.0, 0.0, 1e-10, gen);
        CHECK(v >= 0.0);
        CHECK(v <= 1e-10);
    }
    // Mass ~1e-545: unsampleable.
    CHECK_THROWS_AS(truncated_normal_sample(0.0, 1.0, 50.0, 51.0, gen),
                    TruncationTooTight);
}

TEST_CASE("analytic truncated CDF is a proper distribution function") {
    const double mu = 1.0, sigma = 2.0, lo = -1.0, hi = 4.0;
    CHECK(truncated_normal_cdf(lo, mu, sigma, lo, hi) == doctest::Approx(0.0));
    CHECK(truncated_normal_cdf(hi, mu, sigma, lo, hi) == doctest::Approx(1.0));
    double prev = 0.0;
    for (double x = lo; x <= hi; x += 0.05) {
        const double f = truncated_normal_cdf(x, mu, sigma, lo, hi);
        CHECK(f >= prev - 1e-12);
        prev = f;
    }
}

TEST_CASE("closed-form truncated moments match quadrature") {
    const struct {
        double mu, sigma, lo, hi;
    } cases[] = {
        {0.0, 1.0, -1.0, 1.0},
        {0.5, 0.25, 0.0, 2.0},
        {10.0, 3.0, 4.0, 11.0},
        {-2.0, 1.5, -3.0, 7.0},
    };
    for (const auto& c : cases) {
        double mean = 0.0, stddev = 0.0;
        truncated_normal_moments(c.mu, c.sigma, c.lo, c.hi, mean, stddev);
        double qmean = 0.0, qstd = 0.0;
        quadrature_moments(c.mu, c.sigma, c.lo, c.hi, qmean, qstd);
        CHECK(mean == doctest::Approx(qmean).epsilon(1e-8));
        CHECK(stddev == doctest::Approx(qstd).epsilon(1e-6));
    }
}

TEST_CASE("distribution state validation") {
    DistributionState d = flat_default();
    CHECK_NOTHROW(d.validate());
    d.sigma[3] = 0.0;
    CHECK_THROWS_AS(d.validate(), Error);
    d = flat_default();
    d.mu[0] = d.bounds.upper[0] + 1.0;
    CHECK_THROWS_AS(d.validate(), Error);
}
