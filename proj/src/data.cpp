#include "ceabc/data.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "ceabc/errors.hpp"
#include "ceabc/sampling.hpp"

namespace ceabc {

namespace {

constexpr std::array<unsigned, 12> kDaysInMonth = {31, 28, 31, 30, 31, 30,
                                                   31, 31, 30, 31, 30, 31};

bool is_leap(int y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(int y, unsigned m) {
    if (m == 2 && is_leap(y)) return 29;
    return kDaysInMonth[m - 1];
}

}  // namespace

bool Date::well_formed() const {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
}

// Howard Hinnant's days-from-civil algorithm.
std::int64_t Date::to_days() const {
    const int y = year - (month <= 2 ? 1 : 0);
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (month + (month > 2 ? -3 : 9)) + 2) / 5 + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

Date Date::from_days(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const int y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{y + (m <= 2 ? 1 : 0), m, d};
}

Date Date::parse(const std::string& iso) {
    int y = 0;
    unsigned m = 0, d = 0;
    char sep1 = 0, sep2 = 0;
    std::istringstream ss(iso);
    if (!(ss >> y >> sep1 >> m >> sep2 >> d) || sep1 != '-' || sep2 != '-' || !ss.eof())
        throw ParseError("bad date '" + iso + "', expected YYYY-MM-DD");
    Date date{y, m, d};
    if (!date.well_formed()) throw ParseError("invalid calendar date '" + iso + "'");
    return date;
}

std::string Date::iso() const {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02u-%02u", year, month, day);
    return buf;
}

void SurveillanceDataset::validate(double reconcile_tol) const {
    const std::size_t n = dates.size();
    if (hospitalized.size() != n || new_deaths.size() != n || total_deaths.size() != n)
        throw InvariantViolation("dataset: column lengths disagree");
    if (n == 0) throw InvariantViolation("dataset: empty");

    for (std::size_t i = 0; i < n; ++i) {
        if (hospitalized[i] < 0.0 || new_deaths[i] < 0.0 || total_deaths[i] < 0.0)
            throw InvariantViolation("dataset: negative value at " + dates[i].iso());
    }
    for (std::size_t i = 1; i < n; ++i) {
        const std::int64_t gap = dates[i].to_days() - dates[i - 1].to_days();
        if (gap <= 0)
            throw InvariantViolation("dataset: dates not increasing at " + dates[i].iso());
        if (gap != 1)
            throw GapInDates("dataset: missing " + std::to_string(gap - 1) +
                             " day(s) between " + dates[i - 1].iso() + " and " +
                             dates[i].iso());
        if (total_deaths[i] < total_deaths[i - 1])
            throw InvariantViolation("dataset: total_deaths decreases at " +
                                     dates[i].iso());
        const double increment = total_deaths[i] - total_deaths[i - 1];
        if (std::abs(increment - new_deaths[i]) > reconcile_tol)
            throw InvariantViolation(
                "dataset: new_deaths " + std::to_string(new_deaths[i]) +
                " does not reconcile with total_deaths increment " +
                std::to_string(increment) + " at " + dates[i].iso());
    }
}

SurveillanceDataset load_surveillance_csv(const std::filesystem::path& path,
                                          double reconcile_tol) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "'");

    SurveillanceDataset ds;
    std::string line;
    std::size_t line_no = 0;

    if (!std::getline(in, line)) throw ParseError(path.string() + ": empty file");
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "date,hospitalized,new_deaths,total_deaths")
        throw ParseError(path.string() + ":1: bad header '" + line + "'");

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const std::string where = path.string() + ":" + std::to_string(line_no);
        std::array<std::string, 4> fields;
        std::size_t field = 0, start = 0;
        for (std::size_t i = 0; i <= line.size(); ++i) {
            if (i == line.size() || line[i] == ',') {
                if (field >= 4) throw ParseError(where + ": too many columns");
                fields[field++] = line.substr(start, i - start);
                start = i + 1;
            }
        }
        if (field != 4) throw ParseError(where + ": expected 4 columns, got " +
                                         std::to_string(field));

        Date date;
        try {
            date = Date::parse(fields[0]);
        } catch (const ParseError& e) {
            throw ParseError(where + ": " + e.what());
        }
        auto number = [&](const std::string& s) {
            try {
                std::size_t pos = 0;
                const double v = std::stod(s, &pos);
                if (pos != s.size()) throw std::invalid_argument(s);
                return v;
            } catch (const std::exception&) {
                throw ParseError(where + ": bad number '" + s + "'");
            }
        };
        ds.dates.push_back(date);
        ds.hospitalized.push_back(number(fields[1]));
        ds.new_deaths.push_back(number(fields[2]));
        ds.total_deaths.push_back(number(fields[3]));
    }

    ds.validate(reconcile_tol);
    return ds;
}

void write_surveillance_csv(const std::filesystem::path& path,
                            const SurveillanceDataset& ds) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << "date,hospitalized,new_deaths,total_deaths\n";
    char buf[96];
    for (std::size_t i = 0; i < ds.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%s,%.17g,%.17g,%.17g",
                      ds.dates[i].iso().c_str(), ds.hospitalized[i], ds.new_deaths[i],
                      ds.total_deaths[i]);
        out << buf << '\n';
    }
}

SurveillanceDataset window(const SurveillanceDataset& ds, Date start, Date end) {
    if (ds.size() == 0) throw OutOfRange("window: empty dataset");
    if (end < start) throw OutOfRange("window: end before start");
    if (start < ds.dates.front() || ds.dates.back() < end)
        throw OutOfRange("window: [" + start.iso() + ", " + end.iso() +
                         "] outside dataset range [" + ds.dates.front().iso() + ", " +
                         ds.dates.back().iso() + "]");

    const auto offset =
        static_cast<std::size_t>(start.to_days() - ds.dates.front().to_days());
    const auto count = static_cast<std::size_t>(end.to_days() - start.to_days()) + 1;

    SurveillanceDataset out;
    out.dates.assign(ds.dates.begin() + offset, ds.dates.begin() + offset + count);
    out.hospitalized.assign(ds.hospitalized.begin() + offset,
                            ds.hospitalized.begin() + offset + count);
    out.new_deaths.assign(ds.new_deaths.begin() + offset,
                          ds.new_deaths.begin() + offset + count);
    out.total_deaths.assign(ds.total_deaths.begin() + offset,
                            ds.total_deaths.begin() + offset + count);
    return out;
}

QoITarget to_target(const SurveillanceDataset& ds, double omega) {
    QoITarget t = make_target(ds.hospitalized, ds.total_deaths, omega);
    t.validate();
    return t;
}

SurveillanceDataset synthesize_dataset(const Trajectory& traj, Date start_date,
                                       double noise_level, std::uint64_t seed) {
    if (traj.empty()) throw Error("synthesize_dataset: empty trajectory");
    if (noise_level < 0.0) throw Error("synthesize_dataset: negative noise level");

    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto perturb = [&](double v) {
        if (noise_level == 0.0) return v;
        return std::max(0.0, v * (1.0 + noise_level * normal(gen)));
    };

    SurveillanceDataset ds;
    const std::int64_t day0 = start_date.to_days();
    double prev_total = 0.0;
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const StateVector& u = traj.states[k];
        ds.dates.push_back(Date::from_days(day0 + static_cast<std::int64_t>(k)));
        ds.hospitalized.push_back(perturb(u.h()));
        // Keep total deaths nondecreasing under noise so the invariants of
        // the schema hold by construction.
        double total = perturb(u.d());
        if (k > 0) total = std::max(total, prev_total);
        ds.new_deaths.push_back(k == 0 ? 0.0 : total - prev_total);
        ds.total_deaths.push_back(total);
        prev_total = total;
    }
    return ds;
}

}  // namespace ceabc
