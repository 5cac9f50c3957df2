// Python bindings for the calibration engine. Thin conversions only; all
// numerics live in the core library.

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ceabc/abc.hpp"
#include "ceabc/ce.hpp"
#include "ceabc/ic.hpp"
#include "ceabc/integrate.hpp"
#include "ceabc/misfit.hpp"
#include "ceabc/model.hpp"
#include "ceabc/params.hpp"
#include "ceabc/sampling.hpp"

namespace py = pybind11;

namespace {

ceabc::ParamVector to_params(const std::vector<double>& v) {
    if (v.size() != ceabc::kNumParams)
        throw std::invalid_argument("parameter vector must have 12 entries");
    ceabc::ParamVector x;
    for (std::size_t i = 0; i < ceabc::kNumParams; ++i) x[i] = v[i];
    return x;
}

ceabc::StateVector to_state(const std::vector<double>& v) {
    if (v.size() != ceabc::kNumCompartments)
        throw std::invalid_argument("state vector must have 8 entries");
    ceabc::StateVector u;
    for (std::size_t i = 0; i < ceabc::kNumCompartments; ++i) u[i] = v[i];
    return u;
}

std::vector<double> from_params(const ceabc::ParamVector& x) {
    return {x.v.begin(), x.v.end()};
}

std::vector<double> from_state(const ceabc::StateVector& u) {
    return {u.u.begin(), u.u.end()};
}

ceabc::ParamBounds to_bounds(const std::vector<double>& lower,
                             const std::vector<double>& upper) {
    ceabc::ParamBounds b;
    b.lower = to_params(lower);
    b.upper = to_params(upper);
    return b;
}

ceabc::DistributionState to_dist(const std::vector<double>& mu,
                                 const std::vector<double>& sigma,
                                 const std::vector<double>& lower,
                                 const std::vector<double>& upper) {
    if (sigma.size() != ceabc::kNumParams)
        throw std::invalid_argument("sigma must have 12 entries");
    ceabc::DistributionState d;
    d.mu = to_params(mu);
    for (std::size_t i = 0; i < ceabc::kNumParams; ++i) d.sigma[i] = sigma[i];
    d.bounds = to_bounds(lower, upper);
    return d;
}

py::dict trajectory_dict(const ceabc::Trajectory& traj) {
    std::vector<std::vector<double>> states(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) states[k] = from_state(traj.states[k]);
    py::dict out;
    out["times"] = traj.times;
    out["states"] = states;
    out["admissions"] = traj.admissions;
    return out;
}

py::dict ce_result_dict(const ceabc::CEResult& r) {
    py::dict out;
    out["x_opt"] = from_params(r.x_opt);
    out["j_opt"] = r.j_opt;
    out["iterations"] = r.iterations_run;
    out["converged"] = r.converged;
    out["mu"] = from_params(r.final_dist.mu);
    out["sigma"] = std::vector<double>(r.final_dist.sigma.begin(), r.final_dist.sigma.end());
    std::vector<double> best_j;
    best_j.reserve(r.history.size());
    for (const auto& rec : r.history) best_j.push_back(rec.best_j);
    out["best_j_history"] = best_j;
    return out;
}

py::dict abc_result_dict(const ceabc::ABCResult& r) {
    py::dict out;
    std::vector<std::vector<double>> samples;
    std::vector<double> js;
    samples.reserve(r.accepted.size());
    js.reserve(r.accepted.size());
    for (const auto& s : r.accepted) {
        samples.push_back(from_params(s.x));
        js.push_back(s.j);
    }
    out["accepted"] = samples;
    out["j"] = js;
    out["acceptance_rate"] = r.acceptance_rate;
    out["n_evaluated"] = r.n_evaluated;
    if (!r.empty()) {
        out["best_x"] = from_params(r.best().x);
        out["best_j"] = r.best().j;
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_ceabc, m) {
    m.doc() = "Epidemic calibration engine: cross-entropy optimization with ABC";

    m.attr("param_names") = std::vector<std::string>(ceabc::kParamNames.begin(),
                                                     ceabc::kParamNames.end());
    m.attr("compartment_names") = std::vector<std::string>(
        ceabc::kCompartmentNames.begin(), ceabc::kCompartmentNames.end());

    m.def("default_nominal", []() { return from_params(ceabc::default_nominal()); },
          "Nominal parameter vector");
    m.def("default_bounds", []() {
        const ceabc::ParamBounds b = ceabc::default_bounds();
        return py::make_tuple(from_params(b.lower), from_params(b.upper));
    }, "Search box as (lower, upper)");

    m.def("transmission_rate",
          [](double t, const std::vector<double>& x) {
              return ceabc::transmission_rate(t, to_params(x));
          },
          py::arg("t"), py::arg("params"), "Time-dependent transmission rate");

    m.def("rhs",
          [](double t, const std::vector<double>& u, const std::vector<double>& x) {
              return from_state(ceabc::rhs(t, to_state(u), to_params(x)));
          },
          py::arg("t"), py::arg("state"), py::arg("params"),
          "Compartmental time derivatives");

    m.def("simulate",
          [](const std::vector<double>& u0, const std::vector<double>& x, double t0,
             double t_end, double output_step, int substeps) {
              const ceabc::TimeGrid grid{t0, t_end, output_step, substeps};
              return trajectory_dict(ceabc::integrate(to_state(u0), to_params(x), grid));
          },
          py::arg("u0"), py::arg("params"), py::arg("t0"), py::arg("t_end"),
          py::arg("output_step") = 1.0, py::arg("substeps") = 10,
          "Fixed-step RK4 integration on a daily grid");

    m.def("misfit",
          [](const std::vector<std::vector<double>>& y_model,
             const std::vector<double>& h_data, const std::vector<double>& d_data,
             double omega) {
              return ceabc::misfit(y_model, ceabc::make_target(h_data, d_data, omega));
          },
          py::arg("y_model"), py::arg("hospitalized"), py::arg("total_deaths"),
          py::arg("omega"),
          "Weighted squared relative misfit against a two-block target");

    m.def("weighted_rms_norm",
          [](const std::vector<double>& a, const std::vector<double>& b,
             const std::vector<double>& atol, double rtol) {
              return ceabc::weighted_rms_norm(a, b, ceabc::ToleranceConfig{atol, rtol});
          },
          py::arg("a"), py::arg("b"), py::arg("atol"), py::arg("rtol"),
          "Weighted root-mean-square distance");

    m.def("sample_truncated_gaussian",
          [](const std::vector<double>& mu, const std::vector<double>& sigma,
             const std::vector<double>& lower, const std::vector<double>& upper,
             std::size_t n, std::uint64_t seed) {
              const auto draws = ceabc::sample_truncated_gaussian(
                  to_dist(mu, sigma, lower, upper), n, ceabc::RngSeed{seed});
              std::vector<std::vector<double>> out;
              out.reserve(draws.size());
              for (const auto& d : draws) out.push_back(from_params(d));
              return out;
          },
          py::arg("mu"), py::arg("sigma"), py::arg("lower"), py::arg("upper"),
          py::arg("n"), py::arg("seed"),
          "Componentwise truncated-Gaussian draws, bit-reproducible per seed");

    m.def("truncated_normal_moments",
          [](double mu, double sigma, double lo, double hi) {
              double mean = 0.0, stddev = 0.0;
              ceabc::truncated_normal_moments(mu, sigma, lo, hi, mean, stddev);
              return py::make_tuple(mean, stddev);
          },
          py::arg("mu"), py::arg("sigma"), py::arg("lo"), py::arg("hi"),
          "Analytic truncated-normal mean and standard deviation");

    m.def("quantile", &ceabc::quantile, py::arg("xs"), py::arg("p"),
          "Linear-interpolation empirical quantile");

    m.def("select_elite",
          [](const std::vector<double>& j_values, std::size_t n_elite) {
              const ceabc::EliteSelection sel = ceabc::select_elite(j_values, n_elite);
              return py::make_tuple(sel.indices, sel.gamma_hat);
          },
          py::arg("j_values"), py::arg("n_elite"),
          "Indices of the n_elite smallest misfits plus their maximum");

    m.def("ce_minimize",
          [](const std::function<double(std::vector<double>)>& objective,
             const std::vector<double>& lower, const std::vector<double>& upper,
             std::size_t n_samples, double elite_fraction, double smoothing_a,
             double smoothing_b, int smoothing_q, std::size_t max_iter,
             std::uint64_t seed) {
              ceabc::CEConfig cfg;
              cfg.n_samples = n_samples;
              cfg.elite_fraction = elite_fraction;
              cfg.smoothing_a = smoothing_a;
              cfg.smoothing_b = smoothing_b;
              cfg.smoothing_q = smoothing_q;
              cfg.max_iter = max_iter;
              cfg.threads = 1;  // python objective holds the GIL
              const auto obj = [&objective](const ceabc::ParamVector& x) {
                  return objective(from_params(x));
              };
              return ce_result_dict(ceabc::ce_optimize_objective(
                  obj, to_bounds(lower, upper), cfg, ceabc::RngSeed{seed}));
          },
          py::arg("objective"), py::arg("lower"), py::arg("upper"),
          py::arg("n_samples") = 100, py::arg("elite_fraction") = 0.10,
          py::arg("smoothing_a") = 0.7, py::arg("smoothing_b") = 0.8,
          py::arg("smoothing_q") = 5, py::arg("max_iter") = 150, py::arg("seed") = 0,
          "Cross-entropy minimization of a python objective over a box");

    m.def("infer_initial_condition",
          [](double n0, double e0, double horizon, const std::vector<double>& params,
             double h_ref, double d_ref, double omega, int substeps) {
              ceabc::VirginConfig cfg;
              cfg.n0 = n0;
              cfg.e0 = e0;
              cfg.horizon = horizon;
              cfg.params = to_params(params);
              return from_state(ceabc::infer_initial_condition(cfg, h_ref, d_ref, omega,
                                                               substeps));
          },
          py::arg("n0"), py::arg("e0"), py::arg("horizon"), py::arg("params"),
          py::arg("h_ref"), py::arg("d_ref"), py::arg("omega"),
          py::arg("substeps") = 10,
          "Dynamically consistent initial condition from reference observations");

    m.def("calibrate",
          [](const std::vector<double>& u0, const std::vector<double>& h_data,
             const std::vector<double>& d_data, double omega,
             const std::vector<double>& lower, const std::vector<double>& upper,
             std::size_t ce_n_samples, std::size_t abc_n_samples, double abc_tol,
             std::uint64_t seed, unsigned threads, int substeps) {
              if (h_data.size() != d_data.size() || h_data.empty())
                  throw std::invalid_argument("data series must be nonempty, equal length");
              const ceabc::StateVector ic = to_state(u0);
              const ceabc::TimeGrid grid{0.0, static_cast<double>(h_data.size() - 1),
                                         1.0, substeps};
              const ceabc::QoITarget target = ceabc::make_target(h_data, d_data, omega);
              const ceabc::ForwardFn forward = [ic, grid](const ceabc::ParamVector& x) {
                  const ceabc::QoISeries q =
                      ceabc::extract_qoi(ceabc::integrate(ic, x, grid));
                  return ceabc::ModelSeries{q.hospitalized, q.total_deaths};
              };
              ceabc::CEConfig ce_cfg;
              ce_cfg.n_samples = ce_n_samples;
              ce_cfg.threads = threads;
              ceabc::ABCConfig abc_cfg;
              abc_cfg.n_samples = abc_n_samples;
              abc_cfg.tol = abc_tol;
              abc_cfg.threads = threads;
              std::uint64_t seed_state = seed;
              const ceabc::RngSeed ce_seed{ceabc::splitmix64(seed_state)};
              const ceabc::RngSeed abc_seed{ceabc::splitmix64(seed_state)};
              py::gil_scoped_release release;
              const ceabc::CEResult ce = ceabc::ce_optimize(
                  forward, target, to_bounds(lower, upper), ce_cfg, ce_seed);
              const ceabc::ABCResult abc =
                  ceabc::abc_infer(ce.final_dist, forward, target, abc_cfg, abc_seed);
              py::gil_scoped_acquire acquire;
              py::dict out;
              out["ce"] = ce_result_dict(ce);
              out["abc"] = abc_result_dict(abc);
              return out;
          },
          py::arg("u0"), py::arg("hospitalized"), py::arg("total_deaths"),
          py::arg("omega"), py::arg("lower"), py::arg("upper"),
          py::arg("ce_n_samples") = 100, py::arg("abc_n_samples") = 2000,
          py::arg("abc_tol") = 0.1, py::arg("seed") = 0, py::arg("threads") = 1,
          py::arg("substeps") = 10,
          "Full pipeline: cross-entropy prior learning then ABC refinement");
}
