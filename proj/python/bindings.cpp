#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cbm/commands.hpp"
#include "cbm/errors.hpp"

namespace py = pybind11;
using namespace cbm;

namespace {

ThresholdVector thresholds(const std::vector<double>& v) { return ThresholdVector{v}; }

Policy make_policy(double tau, const std::vector<double>& h2) { return Policy{tau, thresholds(h2)}; }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Gamma-process degradation with random shocks: reliability, maintenance cost rate, "
              "policy optimization and Monte Carlo validation.";
    m.attr("__version__") = CBM_VERSION;

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<TruncationError>(m, "TruncationError", PyExc_RuntimeError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<OptimizationError>(m, "OptimizationError", PyExc_RuntimeError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    py::class_<ComponentParams>(m, "ComponentParams")
        .def(py::init([](std::string name, double h1, double d, double alpha, double beta, double y_alpha,
                         double y_beta, double w_mu, double w_sigma) {
                 return ComponentParams{std::move(name), h1, d, alpha, beta, y_alpha, y_beta, w_mu, w_sigma};
             }),
             py::arg("name"), py::arg("h1"), py::arg("d"), py::arg("alpha"), py::arg("beta"), py::arg("y_alpha"),
             py::arg("y_beta"), py::arg("w_mu"), py::arg("w_sigma"))
        .def_readwrite("name", &ComponentParams::name)
        .def_readwrite("h1", &ComponentParams::h1)
        .def_readwrite("d", &ComponentParams::d)
        .def_readwrite("alpha", &ComponentParams::alpha)
        .def_readwrite("beta", &ComponentParams::beta)
        .def_readwrite("y_alpha", &ComponentParams::y_alpha)
        .def_readwrite("y_beta", &ComponentParams::y_beta)
        .def_readwrite("w_mu", &ComponentParams::w_mu)
        .def_readwrite("w_sigma", &ComponentParams::w_sigma);

    py::class_<SystemModel>(m, "SystemModel")
        .def(py::init([](std::vector<ComponentParams> components, double lambda_) {
                 SystemModel s{std::move(components), lambda_};
                 s.validate();
                 return s;
             }),
             py::arg("components"), py::arg("shock_rate"))
        .def_readwrite("components", &SystemModel::components)
        .def_readwrite("shock_rate", &SystemModel::lambda);

    py::class_<Policy>(m, "Policy")
        .def(py::init(&make_policy), py::arg("tau"), py::arg("h2"))
        .def_readwrite("tau", &Policy::tau)
        .def_property(
            "h2", [](const Policy& p) { return p.h2.values; },
            [](Policy& p, const std::vector<double>& v) { p.h2.values = v; });

    py::class_<CostParams>(m, "CostParams")
        .def(py::init([](double c_i, double c_rho, double c_r) { return CostParams{c_i, c_rho, c_r}; }),
             py::arg("c_i"), py::arg("c_rho"), py::arg("c_r"))
        .def_readwrite("c_i", &CostParams::c_i)
        .def_readwrite("c_rho", &CostParams::c_rho)
        .def_readwrite("c_r", &CostParams::c_r);

    py::class_<CostBreakdown>(m, "CostBreakdown")
        .def_readonly("e_ni", &CostBreakdown::e_ni)
        .def_readonly("e_rho", &CostBreakdown::e_rho)
        .def_readonly("e_k", &CostBreakdown::e_k)
        .def_readonly("e_tc", &CostBreakdown::e_tc)
        .def_readonly("cr", &CostBreakdown::cr);

    py::class_<EventProbabilities>(m, "EventProbabilities")
        .def_readonly("safe", &EventProbabilities::safe)
        .def_readonly("degraded", &EventProbabilities::degraded)
        .def_readonly("failed", &EventProbabilities::failed);

    py::class_<SimulationConfig>(m, "SimulationConfig")
        .def(py::init([](long replications, std::uint64_t seed, std::optional<double> sub_step, int threads) {
                 SimulationConfig s;
                 s.replications = replications;
                 s.seed = seed;
                 s.sub_step = sub_step;
                 s.threads = threads;
                 s.validate();
                 return s;
             }),
             py::arg("replications") = 100000, py::arg("seed") = 0, py::arg("sub_step") = py::none(),
             py::arg("threads") = 0)
        .def_readwrite("replications", &SimulationConfig::replications)
        .def_readwrite("seed", &SimulationConfig::seed)
        .def_readwrite("sub_step", &SimulationConfig::sub_step)
        .def_readwrite("threads", &SimulationConfig::threads);

    py::class_<SimulationEstimate>(m, "SimulationEstimate")
        .def_readonly("replications", &SimulationEstimate::replications)
        .def_readonly("mean_cr", &SimulationEstimate::mean_cr)
        .def_readonly("stderr_cr", &SimulationEstimate::stderr_cr)
        .def_readonly("mean_inspections", &SimulationEstimate::mean_inspections)
        .def_readonly("mean_downtime", &SimulationEstimate::mean_downtime)
        .def_readonly("stderr_downtime", &SimulationEstimate::stderr_downtime)
        .def_readonly("mean_cycle_length", &SimulationEstimate::mean_cycle_length)
        .def_readonly("mean_total_cost", &SimulationEstimate::mean_total_cost)
        .def_readonly("preventive_fraction", &SimulationEstimate::preventive_fraction)
        .def_readonly("hard_failure_fraction", &SimulationEstimate::hard_failure_fraction)
        .def_readonly("soft_failure_fraction", &SimulationEstimate::soft_failure_fraction);

    py::class_<OptimizerConfig>(m, "OptimizerConfig")
        .def(py::init([](int multistart_count, int max_iterations, double tau_min, double tau_max,
                         std::uint64_t seed, int threads) {
                 OptimizerConfig o;
                 o.multistart_count = multistart_count;
                 o.max_iterations = max_iterations;
                 o.tau_min = tau_min;
                 o.tau_max = tau_max;
                 o.seed = seed;
                 o.threads = threads;
                 o.validate();
                 return o;
             }),
             py::arg("multistart_count") = 16, py::arg("max_iterations") = 500, py::arg("tau_min") = 1e-3,
             py::arg("tau_max") = 1e4, py::arg("seed") = 0, py::arg("threads") = 0);

    py::class_<OptimizationResult>(m, "OptimizationResult")
        .def_readonly("best_policy", &OptimizationResult::best_policy)
        .def_readonly("best_breakdown", &OptimizationResult::best_breakdown)
        .def_readonly("iterations_used", &OptimizationResult::iterations_used)
        .def_readonly("starts_converged", &OptimizationResult::starts_converged);

    m.def("regularized_lower_gamma", &regularized_lower_gamma, py::arg("shape"), py::arg("x"));
    m.def("std_normal_cdf", &std_normal_cdf, py::arg("z"));
    m.def("shock_survival_prob", &shock_survival_prob, py::arg("component"));
    m.def(
        "total_degradation_cdf",
        [](const ComponentParams& c, double shock_rate, double x, double t) {
            return total_degradation_cdf(c, shock_rate, x, t);
        },
        py::arg("component"), py::arg("shock_rate"), py::arg("x"), py::arg("t"));
    m.def(
        "event_probabilities",
        [](const ComponentParams& c, double shock_rate, double t, double h2) {
            return event_probabilities(c, shock_rate, t, h2);
        },
        py::arg("component"), py::arg("shock_rate"), py::arg("t"), py::arg("h2"));
    m.def(
        "series_survival",
        [](const SystemModel& s, double t, const std::vector<double>& th) {
            return series_survival(s, t, thresholds(th));
        },
        py::arg("system"), py::arg("t"), py::arg("thresholds"));
    m.def(
        "failure_time_cdf", [](const SystemModel& s, double t) { return failure_time_cdf(s, t); }, py::arg("system"),
        py::arg("t"));
    m.def(
        "detection_time_cdf",
        [](const SystemModel& s, double t, const std::vector<double>& h2) {
            return detection_time_cdf(s, t, thresholds(h2));
        },
        py::arg("system"), py::arg("t"), py::arg("h2"));
    m.def(
        "cost_rate", [](const SystemModel& s, const Policy& p, const CostParams& c) { return cost_rate(s, p, c); },
        py::arg("system"), py::arg("policy"), py::arg("costs"));
    m.def("estimate_cost_rate", &estimate_cost_rate, py::arg("system"), py::arg("policy"), py::arg("costs"),
          py::arg("simulation"), py::call_guard<py::gil_scoped_release>());
    m.def(
        "optimize_policy",
        [](const SystemModel& s, const CostParams& c, const OptimizerConfig& o) { return optimize_policy(s, c, o); },
        py::arg("system"), py::arg("costs"), py::arg("optimizer") = OptimizerConfig{},
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "optimize_fixed_tau",
        [](const SystemModel& s, const CostParams& c, double tau, const OptimizerConfig& o) {
            return optimize_fixed_tau(s, c, tau, o);
        },
        py::arg("system"), py::arg("costs"), py::arg("tau"), py::arg("optimizer") = OptimizerConfig{},
        py::call_guard<py::gil_scoped_release>());
    m.def(
        "load_config",
        [](const std::string& path) {
            const RunConfig c = parse_config(path);
            return py::make_tuple(c.system, c.costs, c.policy);
        },
        py::arg("path"), "Parse a JSON run config into (system, costs, policy or None).");
}
