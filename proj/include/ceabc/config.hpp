#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "ceabc/abc.hpp"
#include "ceabc/ce.hpp"
#include "ceabc/data.hpp"
#include "ceabc/ic.hpp"
#include "ceabc/params.hpp"

namespace ceabc {

// Declarative run configuration. File format: one `key = value` pair per
// line, dotted keys, `#` comments. CLI flags override file values.
struct RunConfig {
    ParamBounds bounds = default_bounds();
    ParamVector nominal = default_nominal();
    CEConfig ce;
    ABCConfig abc;
    double omega = 0.75;
    std::optional<double> ic_h_ref;    // reference hospitalizations
    std::optional<double> ic_d_ref;    // reference total deaths
    VirginConfig virgin;
    int substeps = 10;
    std::optional<std::uint64_t> seed;
    unsigned threads = 0;              // 0: use available parallelism
    double envelope_level = 0.95;
    int report_bins = 20;
    double data_reconcile_tol = 0.5;
    std::optional<Date> window_start;
    std::optional<Date> window_end;
    double predict_horizon = 30.0;
    double synthetic_days = 31.0;
    Date synthetic_start{2020, 5, 1};
    double synthetic_noise = 0.0;

    // Resolved worker count for forward evaluations.
    unsigned effective_threads() const;
};

// Parses a config file into key/value pairs; duplicate keys keep the last
// value. Throws ConfigError on syntax errors (with line numbers).
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

// Applies one dotted key. Unknown keys and malformed values raise
// ConfigError naming the key.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

// File plus override pairs (CLI flags), overrides applied last.
RunConfig load_run_config(const std::optional<std::filesystem::path>& file,
                          const std::map<std::string, std::string>& overrides);

}  // namespace ceabc
