#include "ceabc/abc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ceabc/errors.hpp"
#include "ceabc/parallel.hpp"

namespace ceabc {

void ABCConfig::validate() const {
    if (n_samples < 1) throw ConfigError("abc: n_samples must be at least 1");
    if (!(tol > 0.0)) throw ConfigError("abc: tol must be positive");
}

const AcceptedSample& ABCResult::best() const {
    if (accepted.empty()) throw NoAcceptedSamples("abc: no accepted samples");
    return accepted[best_index];
}

ABCResult abc_infer(const DistributionState& prior, const ForwardFn& forward,
                    const QoITarget& data, const ABCConfig& cfg, RngSeed seed) {
    cfg.validate();
    prior.validate();
    data.validate();

    const std::vector<ParamVector> samples =
        sample_truncated_gaussian(prior, cfg.n_samples, seed);

    struct Eval {
        ModelSeries qoi;
        double j = std::numeric_limits<double>::infinity();
        bool ok = false;
    };
    std::vector<Eval> evals(samples.size());
    parallel_for(samples.size(), cfg.threads, [&](std::size_t k) {
        try {
            ModelSeries qoi = forward(samples[k]);
            const double j = misfit(qoi, data);
            if (!std::isnan(j)) {
                evals[k].qoi = std::move(qoi);
                evals[k].j = j;
                evals[k].ok = true;
            }
        } catch (const Error&) {
            // Failed forwards count as rejected.
        }
    });

    ABCResult result;
    result.n_evaluated = samples.size();
    double best_j = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (!evals[k].ok || !(evals[k].j < cfg.tol)) continue;  // strict predicate
        if (evals[k].j < best_j) {
            best_j = evals[k].j;
            result.best_index = result.accepted.size();
        }
        result.accepted.push_back({samples[k], std::move(evals[k].qoi), evals[k].j});
    }
    result.acceptance_rate = static_cast<double>(result.accepted.size()) /
                             static_cast<double>(result.n_evaluated);
    return result;
}

std::vector<ParamPosterior> posterior_stats(const ABCResult& result,
                                            const ParamBounds& bounds, int bins) {
    if (result.empty()) throw NoAcceptedSamples("posterior_stats: no accepted samples");
    if (bins < 1) throw Error("posterior_stats: bins must be at least 1");

    const double n = static_cast<double>(result.accepted.size());
    std::vector<ParamPosterior> out(kNumParams);
    for (std::size_t j = 0; j < kNumParams; ++j) {
        ParamPosterior& p = out[j];
        double m = 0.0;
        for (const auto& s : result.accepted) m += s.x[j];
        m /= n;
        double var = 0.0;
        for (const auto& s : result.accepted) var += (s.x[j] - m) * (s.x[j] - m);
        var /= n;  // population convention, same as the CE update
        p.mean = m;
        p.stddev = std::sqrt(var);

        // Bin edges span the search bounds, not the sample range, so
        // histograms are comparable across runs.
        const double lo = bounds.lower[j], hi = bounds.upper[j];
        p.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
        for (int e = 0; e <= bins; ++e)
            p.bin_edges[static_cast<std::size_t>(e)] =
                lo + (hi - lo) * static_cast<double>(e) / static_cast<double>(bins);
        p.bin_counts.assign(static_cast<std::size_t>(bins), 0);
        for (const auto& s : result.accepted) {
            const double width = (hi - lo) / static_cast<double>(bins);
            std::size_t idx =
                width > 0.0
                    ? static_cast<std::size_t>(
                          std::clamp((s.x[j] - lo) / width, 0.0,
                                     static_cast<double>(bins) - 1.0))
                    : 0;
            ++p.bin_counts[idx];
        }
    }
    return out;
}

double quantile(std::vector<double> xs, double p) {
    if (xs.empty()) throw Error("quantile: empty sample");
    if (p < 0.0 || p > 1.0) throw Error("quantile: p must lie in [0,1]");
    std::sort(xs.begin(), xs.end());
    if (xs.size() == 1) return xs[0];
    const double h = p * static_cast<double>(xs.size() - 1);
    const auto i = static_cast<std::size_t>(h);
    if (i + 1 >= xs.size()) return xs.back();
    const double frac = h - static_cast<double>(i);
    return xs[i] + frac * (xs[i + 1] - xs[i]);
}

std::vector<Envelope> credible_envelope(const ABCResult& result, double level) {
    if (result.empty()) throw NoAcceptedSamples("credible_envelope: no accepted samples");
    if (!(level > 0.0 && level < 1.0))
        throw Error("credible_envelope: level must lie in (0,1)");

    const std::size_t n_blocks = result.accepted.front().qoi.size();
    const double p_lo = 0.5 * (1.0 - level);
    const double p_hi = 0.5 * (1.0 + level);

    std::vector<Envelope> envelopes(n_blocks);
    for (std::size_t b = 0; b < n_blocks; ++b) {
        const std::size_t len = result.accepted.front().qoi[b].size();
        Envelope& env = envelopes[b];
        env.lower.resize(len);
        env.median.resize(len);
        env.upper.resize(len);
        std::vector<double> column(result.accepted.size());
        for (std::size_t t = 0; t < len; ++t) {
            for (std::size_t k = 0; k < result.accepted.size(); ++k)
                column[k] = result.accepted[k].qoi[b][t];
            env.lower[t] = quantile(column, p_lo);
            env.median[t] = quantile(column, 0.5);
            env.upper[t] = quantile(column, p_hi);
        }
    }
    return envelopes;
}

}  // namespace ceabc
