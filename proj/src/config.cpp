#include "ceabc/config.hpp"

#include <fstream>
#include <string>

#include "ceabc/errors.hpp"
#include "ceabc/parallel.hpp"

namespace ceabc {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad number '" + value + "' for key '" + key + "'");
    }
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
    try {
        // stoull accepts a leading minus and wraps; reject it explicitly.
        if (value.find('-') != std::string::npos) throw std::invalid_argument(value);
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer '" + value + "' for key '" + key + "'");
    }
}

long to_long(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer '" + value + "' for key '" + key + "'");
    }
}

Date to_date(const std::string& key, const std::string& value) {
    try {
        return Date::parse(value);
    } catch (const ParseError& e) {
        throw ConfigError("config: key '" + key + "': " + e.what());
    }
}

// Index into the parameter vector for keys like nominal.beta0.
std::size_t param_index(const std::string& key, const std::string& name) {
    for (std::size_t j = 0; j < kNumParams; ++j)
        if (name == kParamNames[j]) return j;
    throw ConfigError("config: unknown parameter '" + name + "' in key '" + key + "'");
}

}  // namespace

unsigned RunConfig::effective_threads() const {
    return threads == 0 ? default_thread_count() : threads;
}

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path.string() + "'");

    std::map<std::string, std::string> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: " + path.string() + ":" + std::to_string(line_no) +
                              ": expected 'key = value', got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config: " + path.string() + ":" + std::to_string(line_no) +
                              ": empty key or value");
        entries[key] = value;  // last value wins
    }
    return entries;
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "omega") {
        cfg.omega = to_double(key, value);
        if (cfg.omega < 0.0 || cfg.omega > 1.0)
            throw ConfigError("config: omega must lie in [0,1]");
    } else if (key == "seed") {
        cfg.seed = to_u64(key, value);
    } else if (key == "threads") {
        cfg.threads = static_cast<unsigned>(to_long(key, value));
    } else if (key == "grid.substeps") {
        cfg.substeps = static_cast<int>(to_long(key, value));
        if (cfg.substeps < 1) throw ConfigError("config: grid.substeps must be >= 1");
    } else if (key == "envelope.level") {
        cfg.envelope_level = to_double(key, value);
        if (!(cfg.envelope_level > 0.0 && cfg.envelope_level < 1.0))
            throw ConfigError("config: envelope.level must lie in (0,1)");
    } else if (key == "report.bins") {
        cfg.report_bins = static_cast<int>(to_long(key, value));
        if (cfg.report_bins < 1) throw ConfigError("config: report.bins must be >= 1");
    } else if (key == "ce.n_samples") {
        cfg.ce.n_samples = static_cast<std::size_t>(to_long(key, value));
    } else if (key == "ce.elite_fraction") {
        cfg.ce.elite_fraction = to_double(key, value);
    } else if (key == "ce.smoothing_a") {
        cfg.ce.smoothing_a = to_double(key, value);
    } else if (key == "ce.smoothing_b") {
        cfg.ce.smoothing_b = to_double(key, value);
    } else if (key == "ce.smoothing_q") {
        cfg.ce.smoothing_q = static_cast<int>(to_long(key, value));
    } else if (key == "ce.max_iter") {
        cfg.ce.max_iter = static_cast<std::size_t>(to_long(key, value));
    } else if (key == "ce.atol") {
        cfg.ce.tol.atol = {to_double(key, value)};
    } else if (key == "ce.rtol") {
        cfg.ce.tol.rtol = to_double(key, value);
    } else if (key == "abc.n_samples") {
        cfg.abc.n_samples = static_cast<std::size_t>(to_long(key, value));
    } else if (key == "abc.tol") {
        cfg.abc.tol = to_double(key, value);
    } else if (key == "ic.h_ref") {
        cfg.ic_h_ref = to_double(key, value);
    } else if (key == "ic.d_ref") {
        cfg.ic_d_ref = to_double(key, value);
    } else if (key == "virgin.n0") {
        cfg.virgin.n0 = to_double(key, value);
    } else if (key == "virgin.e0") {
        cfg.virgin.e0 = to_double(key, value);
    } else if (key == "virgin.horizon") {
        cfg.virgin.horizon = to_double(key, value);
    } else if (key == "data.reconcile_tol") {
        cfg.data_reconcile_tol = to_double(key, value);
    } else if (key == "data.start") {
        cfg.window_start = to_date(key, value);
    } else if (key == "data.end") {
        cfg.window_end = to_date(key, value);
    } else if (key == "predict.horizon") {
        cfg.predict_horizon = to_double(key, value);
        if (cfg.predict_horizon < 0.0)
            throw ConfigError("config: predict.horizon must be nonnegative");
    } else if (key == "synthetic.days") {
        cfg.synthetic_days = to_double(key, value);
        if (!(cfg.synthetic_days > 0.0))
            throw ConfigError("config: synthetic.days must be positive");
    } else if (key == "synthetic.start_date") {
        cfg.synthetic_start = to_date(key, value);
    } else if (key == "synthetic.noise") {
        cfg.synthetic_noise = to_double(key, value);
        if (cfg.synthetic_noise < 0.0)
            throw ConfigError("config: synthetic.noise must be nonnegative");
    } else if (key.rfind("nominal.", 0) == 0) {
        cfg.nominal[param_index(key, key.substr(8))] = to_double(key, value);
    } else if (key.rfind("bounds.", 0) == 0) {
        const std::string rest = key.substr(7);
        const auto dot = rest.rfind('.');
        if (dot == std::string::npos)
            throw ConfigError("config: expected bounds.<param>.lower|upper, got '" + key +
                              "'");
        const std::string which = rest.substr(dot + 1);
        const std::size_t j = param_index(key, rest.substr(0, dot));
        if (which == "lower")
            cfg.bounds.lower[j] = to_double(key, value);
        else if (which == "upper")
            cfg.bounds.upper[j] = to_double(key, value);
        else
            throw ConfigError("config: expected bounds.<param>.lower|upper, got '" + key +
                              "'");
    } else {
        throw ConfigError("config: unknown key '" + key + "'");
    }
}

RunConfig load_run_config(const std::optional<std::filesystem::path>& file,
                          const std::map<std::string, std::string>& overrides) {
    RunConfig cfg;
    if (file) {
        for (const auto& [key, value] : read_config_file(*file))
            apply_config_entry(cfg, key, value);
    }
    for (const auto& [key, value] : overrides) apply_config_entry(cfg, key, value);

    // The virgin scenario runs at the configured nominal parameters.
    cfg.virgin.params = cfg.nominal;

    if (!cfg.bounds.well_formed()) throw ConfigError("config: bounds not ordered");
    cfg.ce.validate();
    cfg.abc.validate();
    cfg.virgin.validate();
    if (cfg.window_start && cfg.window_end && *cfg.window_end < *cfg.window_start)
        throw ConfigError("config: data.end before data.start");
    return cfg;
}

}  // namespace ceabc
