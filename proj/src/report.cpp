#include "ceabc/report.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "ceabc/errors.hpp"

namespace ceabc {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

PosteriorSummary summarize(const ABCResult& result, const ParamBounds& bounds, int bins) {
    const std::vector<ParamPosterior> stats = posterior_stats(result, bounds, bins);

    PosteriorSummary s;
    s.params.resize(kNumParams);
    for (std::size_t j = 0; j < kNumParams; ++j) {
        ParamSummary& p = s.params[j];
        p.name = kParamNames[j];
        p.mean = stats[j].mean;
        p.stddev = stats[j].stddev;
        p.bin_edges = stats[j].bin_edges;
        p.bin_counts = stats[j].bin_counts;
        p.min = result.accepted.front().x[j];
        p.max = result.accepted.front().x[j];
        for (const auto& a : result.accepted) {
            p.min = std::min(p.min, a.x[j]);
            p.max = std::max(p.max, a.x[j]);
        }
    }
    s.acceptance_rate = result.acceptance_rate;
    s.n_accepted = result.accepted.size();
    s.n_evaluated = result.n_evaluated;
    s.best_x = result.best().x;
    s.best_j = result.best().j;
    return s;
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    return out;
}

}  // namespace

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    auto out = open_out(path);
    out << "t,S,E,I,A,H,R,D,N\n";
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const StateVector& u = traj.states[k];
        out << format_full(traj.times[k]);
        // Column order S,E,I,A,H,R,D,N matches the state layout.
        for (std::size_t i = 0; i < kNumCompartments; ++i) out << ',' << format_full(u[i]);
        out << '\n';
    }
}

void write_admissions_csv(const std::filesystem::path& path, const Trajectory& traj) {
    auto out = open_out(path);
    out << "t,cumulative_admissions\n";
    for (std::size_t k = 0; k < traj.size(); ++k)
        out << format_full(traj.times[k]) << ',' << format_full(traj.admissions[k]) << '\n';
}

void write_ce_history_csv(const std::filesystem::path& path, const CEResult& result) {
    auto out = open_out(path);
    out << "iter";
    for (std::size_t j = 1; j <= kNumParams; ++j) out << ",mu_" << j;
    for (std::size_t j = 1; j <= kNumParams; ++j) out << ",sigma_" << j;
    out << ",gamma_hat,best_j\n";
    for (const CEIterationRecord& rec : result.history) {
        out << rec.iter;
        for (std::size_t j = 0; j < kNumParams; ++j) out << ',' << format_full(rec.mu[j]);
        for (std::size_t j = 0; j < kNumParams; ++j)
            out << ',' << format_full(rec.sigma[j]);
        out << ',' << format_full(rec.gamma_hat) << ',' << format_full(rec.best_j) << '\n';
    }
}

void write_accepted_samples_csv(const std::filesystem::path& path, const ABCResult& result) {
    auto out = open_out(path);
    for (std::size_t j = 0; j < kNumParams; ++j) out << kParamNames[j] << ',';
    out << "j\n";
    for (const AcceptedSample& a : result.accepted) {
        for (std::size_t j = 0; j < kNumParams; ++j) out << format_full(a.x[j]) << ',';
        out << format_full(a.j) << '\n';
    }
}

ABCResult load_accepted_samples_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");

    ABCResult result;
    double best_j = std::numeric_limits<double>::infinity();
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ss(line);
        AcceptedSample a;
        std::string cell;
        for (std::size_t j = 0; j < kNumParams; ++j) {
            if (!std::getline(ss, cell, ','))
                throw ParseError(path.string() + ":" + std::to_string(line_no) +
                                 ": short row");
            a.x[j] = std::stod(cell);
        }
        if (!std::getline(ss, cell, ','))
            throw ParseError(path.string() + ":" + std::to_string(line_no) + ": short row");
        a.j = std::stod(cell);
        if (a.j < best_j) {
            best_j = a.j;
            result.best_index = result.accepted.size();
        }
        result.accepted.push_back(std::move(a));
    }
    result.n_evaluated = result.accepted.size();
    result.acceptance_rate = result.accepted.empty() ? 0.0 : 1.0;
    return result;
}

void write_envelope_csv(const std::filesystem::path& path, const std::vector<double>& times,
                        const Envelope& env) {
    if (times.size() != env.lower.size() || times.size() != env.median.size() ||
        times.size() != env.upper.size())
        throw ShapeMismatch("envelope csv: series lengths disagree");
    auto out = open_out(path);
    out << "t,lower,median,upper\n";
    for (std::size_t k = 0; k < times.size(); ++k)
        out << format_full(times[k]) << ',' << format_full(env.lower[k]) << ','
            << format_full(env.median[k]) << ',' << format_full(env.upper[k]) << '\n';
}

void write_initial_condition_csv(const std::filesystem::path& path, const StateVector& u) {
    auto out = open_out(path);
    out << "S,E,I,A,H,R,D,N\n";
    for (std::size_t i = 0; i < kNumCompartments; ++i) {
        if (i) out << ',';
        out << format_full(u[i]);
    }
    out << '\n';
}

void write_histogram_csv(const std::filesystem::path& path, const PosteriorSummary& summary) {
    auto out = open_out(path);
    out << "param,bin_lower,bin_upper,count\n";
    for (const ParamSummary& p : summary.params)
        for (std::size_t b = 0; b < p.bin_counts.size(); ++b)
            out << p.name << ',' << format_full(p.bin_edges[b]) << ','
                << format_full(p.bin_edges[b + 1]) << ',' << p.bin_counts[b] << '\n';
}

}  // namespace ceabc
