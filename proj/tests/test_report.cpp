#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "ceabc/abc.hpp"
#include "ceabc/ce.hpp"
#include "ceabc/errors.hpp"
#include "ceabc/ic.hpp"
#include "ceabc/params.hpp"
#include "ceabc/report.hpp"

using namespace ceabc;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("ceabc_report_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter()++));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    static int& counter() {
        static int c = 0;
        return c;
    }
};

std::string first_line(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::getline(in, line);
    return line;
}

std::size_t line_count(const fs::path& p) {
    std::ifstream in(p);
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) ++n;
    return n;
}

ABCResult two_sample_result() {
    ABCResult r;
    AcceptedSample s1, s2;
    for (std::size_t j = 0; j < kNumParams; ++j) {
        s1.x[j] = 0.1 + 0.01 * double(j);
        s2.x[j] = 0.9 - 0.03 * double(j);
    }
    s1.j = 1.0 / 3.0;
    s2.j = 0.0625;
    s1.qoi = {{1.0, 2.0}, {3.0, 4.0}};
    s2.qoi = {{1.5, 2.5}, {3.5, 4.5}};
    r.accepted = {s1, s2};
    r.best_index = 1;
    r.n_evaluated = 8;
    r.acceptance_rate = 0.25;
    return r;
}

}  // namespace

TEST_CASE("full-precision formatting round-trips doubles exactly") {
    const double values[] = {0.0,    1.0 / 3.0,          1e-300, 6553.0749844580032,
                             -2.5e7, 0.1 + 0.2,          1e300,  123456789.123456789,
                             -0.0,   2.2250738585072014e-308};
    for (double v : values) {
        const std::string s = format_full(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("trajectory and admissions files follow the pinned schemas") {
    TempDir tmp;
    VirginConfig cfg;
    cfg.horizon = 10.0;
    const Trajectory traj = virgin_run(cfg, 10);
    write_trajectory_csv(tmp.path / "traj.csv", traj);
    write_admissions_csv(tmp.path / "adm.csv", traj);
    CHECK(first_line(tmp.path / "traj.csv") == "t,S,E,I,A,H,R,D,N");
    CHECK(first_line(tmp.path / "adm.csv") == "t,cumulative_admissions");
    CHECK(line_count(tmp.path / "traj.csv") == traj.size() + 1);
    CHECK(line_count(tmp.path / "adm.csv") == traj.size() + 1);

    // Values round-trip through the text exactly.
    std::ifstream in(tmp.path / "traj.csv");
    std::string line;
    std::getline(in, line);  // header
    std::getline(in, line);  // t = 0 row
    std::istringstream ss(line);
    std::string cell;
    std::getline(ss, cell, ',');
    CHECK(std::strtod(cell.c_str(), nullptr) == 0.0);
    std::getline(ss, cell, ',');
    CHECK(std::strtod(cell.c_str(), nullptr) == traj.states[0].s());
}

TEST_CASE("optimizer history file has one row per iteration") {
    TempDir tmp;
    CEResult r;
    CEIterationRecord rec;
    rec.iter = 1;
    rec.gamma_hat = 0.5;
    rec.best_j = 0.25;
    r.history.push_back(rec);
    rec.iter = 2;
    rec.best_j = 0.125;
    r.history.push_back(rec);
    write_ce_history_csv(tmp.path / "hist.csv", r);
    const std::string header = first_line(tmp.path / "hist.csv");
    CHECK(header.substr(0, 10) == "iter,mu_1,");
    CHECK(header.find("mu_12") != std::string::npos);
    CHECK(header.find("sigma_12") != std::string::npos);
    CHECK(header.find("gamma_hat,best_j") != std::string::npos);
    CHECK(line_count(tmp.path / "hist.csv") == 3);
}

TEST_CASE("accepted samples round-trip bit for bit") {
    TempDir tmp;
    const ABCResult r = two_sample_result();
    write_accepted_samples_csv(tmp.path / "acc.csv", r);
    const std::string header = first_line(tmp.path / "acc.csv");
    CHECK(header.substr(0, 6) == "beta0,");
    CHECK(header.find("t_beta,j") != std::string::npos);

    const ABCResult back = load_accepted_samples_csv(tmp.path / "acc.csv");
    REQUIRE(back.accepted.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(back.accepted[k].x == r.accepted[k].x);
        CHECK(back.accepted[k].j == r.accepted[k].j);
    }
    CHECK(back.best_index == 1);

    // Re-writing the loaded set reproduces the identical file.
    write_accepted_samples_csv(tmp.path / "acc2.csv", back);
    std::ifstream a(tmp.path / "acc.csv"), b(tmp.path / "acc2.csv");
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}

TEST_CASE("envelope and initial-condition schemas") {
    TempDir tmp;
    Envelope env;
    env.lower = {1.0, 2.0};
    env.median = {1.5, 2.5};
    env.upper = {2.0, 3.0};
    write_envelope_csv(tmp.path / "env.csv", {0.0, 1.0}, env);
    CHECK(first_line(tmp.path / "env.csv") == "t,lower,median,upper");
    CHECK(line_count(tmp.path / "env.csv") == 3);
    CHECK_THROWS_AS(write_envelope_csv(tmp.path / "bad.csv", {0.0}, env), ShapeMismatch);

    StateVector u;
    u.s() = 5.0;
    u.n() = 6.0;
    write_initial_condition_csv(tmp.path / "ic.csv", u);
    CHECK(first_line(tmp.path / "ic.csv") == "S,E,I,A,H,R,D,N");
    CHECK(line_count(tmp.path / "ic.csv") == 2);
}

TEST_CASE("posterior digest aggregates the accepted set") {
    const ABCResult r = two_sample_result();
    ParamBounds box;
    for (std::size_t j = 0; j < kNumParams; ++j) {
        box.lower[j] = 0.0;
        box.upper[j] = 1.0;
    }
    const PosteriorSummary s = summarize(r, box, 10);
    CHECK(s.n_accepted == 2);
    CHECK(s.n_evaluated == 8);
    CHECK(s.acceptance_rate == 0.25);
    CHECK(s.best_j == 0.0625);
    CHECK(s.best_x == r.accepted[1].x);
    REQUIRE(s.params.size() == kNumParams);
    CHECK(s.params[0].name == "beta0");
    CHECK(s.params[11].name == "t_beta");
    for (std::size_t j = 0; j < kNumParams; ++j) {
        const double lo = std::min(r.accepted[0].x[j], r.accepted[1].x[j]);
        const double hi = std::max(r.accepted[0].x[j], r.accepted[1].x[j]);
        CHECK(s.params[j].min == lo);
        CHECK(s.params[j].max == hi);
        CHECK(s.params[j].mean == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-14));
    }

    TempDir tmp;
    write_histogram_csv(tmp.path / "hist.csv", s);
    CHECK(first_line(tmp.path / "hist.csv") == "param,bin_lower,bin_upper,count");
    CHECK(line_count(tmp.path / "hist.csv") == 1 + kNumParams * 10);
}
