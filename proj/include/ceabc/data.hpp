#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "ceabc/integrate.hpp"
#include "ceabc/misfit.hpp"

namespace ceabc {

// Proleptic-Gregorian calendar date with day arithmetic; avoids any
// dependence on timezone databases.
struct Date {
    int year = 1970;
    unsigned month = 1;
    unsigned day = 1;

    bool well_formed() const;
    std::int64_t to_days() const;              // days since 1970-01-01
    static Date from_days(std::int64_t days);
    static Date parse(const std::string& iso); // "YYYY-MM-DD", throws ParseError
    std::string iso() const;

    auto operator<=>(const Date& o) const { return to_days() <=> o.to_days(); }
    bool operator==(const Date& o) const { return to_days() == o.to_days(); }
};

// Daily surveillance series. Invariants: equal lengths, strictly increasing
// daily dates, nonnegative values, nondecreasing total_deaths, and daily
// death increments reconciling with new_deaths within reconcile_tol.
struct SurveillanceDataset {
    std::vector<Date> dates;
    std::vector<double> hospitalized;
    std::vector<double> new_deaths;
    std::vector<double> total_deaths;

    std::size_t size() const { return dates.size(); }
    void validate(double reconcile_tol = 0.5) const;  // throws DataError subtypes
};

// Schema: header `date,hospitalized,new_deaths,total_deaths`, ISO dates,
// one row per day. Malformed rows are reported with their line numbers.
SurveillanceDataset load_surveillance_csv(const std::filesystem::path& path,
                                          double reconcile_tol = 0.5);

void write_surveillance_csv(const std::filesystem::path& path,
                            const SurveillanceDataset& ds);

// Inclusive date window; both endpoints must lie inside the dataset range.
SurveillanceDataset window(const SurveillanceDataset& ds, Date start, Date end);

// Two-block calibration target: (hospitalized, omega), (total_deaths, 1-omega).
QoITarget to_target(const SurveillanceDataset& ds, double omega);

// Builds a surveillance dataset from a model trajectory, optionally with
// multiplicative lognormal-free noise: value * (1 + noise * z), z ~ N(0,1),
// clamped at 0. total_deaths stays nondecreasing; new_deaths is its daily
// increment so the generated file always validates.
SurveillanceDataset synthesize_dataset(const Trajectory& traj, Date start_date,
                                       double noise_level, std::uint64_t seed);

}  // namespace ceabc
