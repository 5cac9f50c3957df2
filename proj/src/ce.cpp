#include "ceabc/ce.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "ceabc/errors.hpp"
#include "ceabc/parallel.hpp"

namespace ceabc {

void CEConfig::validate() const {
    if (n_samples < 2) throw ConfigError("ce: n_samples must be at least 2");
    if (!(smoothing_a > 0.0 && smoothing_a <= 1.0))
        throw ConfigError("ce: smoothing_a must lie in (0,1]");
    if (!(smoothing_b >= 0.8 && smoothing_b <= 0.99))
        throw ConfigError("ce: smoothing_b must lie in [0.8,0.99]");
    if (smoothing_q < 5 || smoothing_q > 10)
        throw ConfigError("ce: smoothing_q must lie in [5,10]");
    if (max_iter < 1) throw ConfigError("ce: max_iter must be at least 1");
    if (!(elite_fraction > 0.0))
        throw ConfigError("ce: elite_fraction must be positive");
    const std::size_t ne = n_elite();
    if (ne < 1 || ne >= n_samples)
        throw ConfigError("ce: elite count must satisfy 1 <= n_elite < n_samples");
}

std::size_t CEConfig::n_elite() const {
    const double raw = elite_fraction * static_cast<double>(n_samples);
    const auto rounded = static_cast<std::size_t>(std::llround(raw));
    return std::max<std::size_t>(1, rounded);
}

EliteSelection select_elite(const std::vector<double>& j_values, std::size_t n_elite) {
    if (n_elite == 0) throw EmptyElite("select_elite: n_elite is zero");
    if (n_elite > j_values.size())
        throw Error("select_elite: n_elite exceeds sample count");

    auto key = [&](std::size_t i) {
        const double j = j_values[i];
        return std::isfinite(j) ? j : std::numeric_limits<double>::infinity();
    };

    std::vector<std::size_t> order(j_values.size());
    std::iota(order.begin(), order.end(), 0);
    // Stable sort implements the tie rule: equal misfits keep index order.
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key(a) < key(b); });

    EliteSelection sel;
    sel.indices.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(n_elite));
    // Ascending order: the last elite carries the worst accepted misfit.
    sel.gamma_hat = key(sel.indices.back());
    return sel;
}

double smoothing_factor(std::size_t iter, const CEConfig& cfg) {
    const double b = cfg.smoothing_b;
    return b - b * std::pow(1.0 - 1.0 / static_cast<double>(iter), cfg.smoothing_q);
}

DistributionState update_distribution(const std::vector<ParamVector>& elite,
                                      const DistributionState& prev, std::size_t iter,
                                      const CEConfig& cfg) {
    if (elite.empty()) throw EmptyElite("update_distribution: empty elite set");
    if (iter < 1) throw Error("update_distribution: iteration index is 1-based");

    const double n = static_cast<double>(elite.size());
    ParamVector mean;
    std::array<double, kNumParams> stddev{};
    for (std::size_t j = 0; j < kNumParams; ++j) {
        double m = 0.0;
        for (const auto& x : elite) m += x[j];
        m /= n;
        double var = 0.0;
        for (const auto& x : elite) var += (x[j] - m) * (x[j] - m);
        var /= n;  // population convention
        mean[j] = m;
        stddev[j] = std::sqrt(var);
    }

    const double a = cfg.smoothing_a;
    const double bl = smoothing_factor(iter, cfg);

    DistributionState next;
    next.bounds = prev.bounds;
    for (std::size_t j = 0; j < kNumParams; ++j) {
        double mu = a * mean[j] + (1.0 - a) * prev.mu[j];
        mu = std::clamp(mu, prev.bounds.lower[j], prev.bounds.upper[j]);
        double sigma = bl * stddev[j] + (1.0 - bl) * prev.sigma[j];
        const double floor = 1e-12 * prev.bounds.range(j);
        sigma = std::max(sigma, floor);
        next.mu[j] = mu;
        next.sigma[j] = sigma;
    }
    return next;
}

namespace {

DistributionState initial_distribution(const ParamBounds& bounds) {
    DistributionState d;
    d.bounds = bounds;
    for (std::size_t j = 0; j < kNumParams; ++j) {
        d.mu[j] = 0.5 * (bounds.lower[j] + bounds.upper[j]);
        d.sigma[j] = bounds.range(j) / std::sqrt(12.0);
    }
    return d;
}

CEResult ce_core(const ObjectiveFn& objective, const ParamBounds& bounds,
                 const CEConfig& cfg, RngSeed seed) {
    cfg.validate();
    if (!bounds.well_formed()) throw Error("ce: bounds not ordered");

    DistributionState dist = initial_distribution(bounds);
    dist.validate();

    CEResult result;
    result.j_opt = std::numeric_limits<double>::infinity();
    result.converged = false;

    // Per-iteration sample seeds derived from the root seed keep the sample
    // stream independent of iteration internals.
    std::uint64_t seed_state = seed.seed;

    for (std::size_t iter = 1; iter <= cfg.max_iter; ++iter) {
        const RngSeed iter_seed{splitmix64(seed_state)};
        const std::vector<ParamVector> samples =
            sample_truncated_gaussian(dist, cfg.n_samples, iter_seed);

        // Evaluate into index-addressed slots; reduction below is serial so
        // the thread count never changes the result.
        std::vector<double> j_values(samples.size());
        parallel_for(samples.size(), cfg.threads, [&](std::size_t k) {
            double j;
            try {
                j = objective(samples[k]);
            } catch (const Error&) {
                j = std::numeric_limits<double>::infinity();
            }
            if (std::isnan(j)) j = std::numeric_limits<double>::infinity();
            j_values[k] = j;
        });

        bool any_finite = false;
        for (std::size_t k = 0; k < j_values.size(); ++k) {
            if (!std::isfinite(j_values[k])) continue;
            any_finite = true;
            if (j_values[k] < result.j_opt) {
                result.j_opt = j_values[k];
                result.x_opt = samples[k];
            }
        }
        if (!any_finite)
            throw AllSamplesFailed("ce: every forward evaluation failed at iteration " +
                                   std::to_string(iter));

        const EliteSelection sel = select_elite(j_values, cfg.n_elite());
        std::vector<ParamVector> elite;
        elite.reserve(sel.indices.size());
        for (std::size_t i : sel.indices) elite.push_back(samples[i]);

        const DistributionState prev = dist;
        dist = update_distribution(elite, prev, iter, cfg);

        CEIterationRecord rec;
        rec.iter = iter;
        rec.mu = dist.mu;
        rec.sigma = dist.sigma;
        rec.gamma_hat = sel.gamma_hat;
        rec.best_j = result.j_opt;
        result.history.push_back(rec);
        result.iterations_run = iter;

        // Convergence: consecutive sigma vectors close in the weighted RMS
        // sense. Undefined at the first iteration, so always run two.
        if (iter >= 2) {
            const std::vector<double> s_now(dist.sigma.begin(), dist.sigma.end());
            const std::vector<double> s_prev(prev.sigma.begin(), prev.sigma.end());
            if (weighted_rms_norm(s_now, s_prev, cfg.tol) <= 1.0) {
                result.converged = true;
                break;
            }
        }
    }

    result.final_dist = dist;
    return result;
}

}  // namespace

CEResult ce_optimize_objective(const ObjectiveFn& objective, const ParamBounds& bounds,
                               const CEConfig& cfg, RngSeed seed) {
    return ce_core(objective, bounds, cfg, seed);
}

CEResult ce_optimize(const ForwardFn& forward, const QoITarget& data,
                     const ParamBounds& bounds, const CEConfig& cfg, RngSeed seed) {
    data.validate();
    ObjectiveFn objective = [&](const ParamVector& x) {
        return misfit(forward(x), data);
    };
    return ce_core(objective, bounds, cfg, seed);
}

}  // namespace ceabc
