// Python bindings for the detection toolkit. Probabilities cross the boundary
// as plain floats; vectors as lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mpdet/detection.hpp"
#include "mpdet/gaussian.hpp"
#include "mpdet/landscape.hpp"
#include "mpdet/monte_carlo.hpp"
#include "mpdet/observation.hpp"
#include "mpdet/preorder.hpp"

namespace py = pybind11;
using namespace mpdet;

namespace {

py::dict estimate_dict(const MCEstimate& estimate) {
    py::dict d;
    d["p_hat"] = estimate.p_hat.value();
    d["trials"] = estimate.trials;
    d["ci_low"] = estimate.ci_low.value();
    d["ci_high"] = estimate.ci_high.value();
    d["seed"] = estimate.seed;
    d["z"] = estimate.z;
    return d;
}

std::span<const double> as_span(const std::vector<double>& y) { return {y.data(), y.size()}; }

}  // namespace

PYBIND11_MODULE(mpdet, m) {
    m.doc() = "Signal-detection test families (NP and RDT), Monte Carlo verification, "
              "and the preorder multiplicity-principle checker";

    // gaussian numerics
    m.def("phi", [](double x) { return phi(x).value(); }, py::arg("x"),
          "Standard normal CDF");
    m.def("phi_inv", &phi_inv, py::arg("p"), "Standard normal quantile for p in (0,1)");
    m.def("q_half", [](double a, double b) { return q_half(a, b).value(); }, py::arg("a"),
          py::arg("b"), "P(|N(a,1)| > b)");
    m.def("rdt_threshold", py::overload_cast<double, double>(&rdt_threshold), py::arg("gamma"),
          py::arg("a"), "Unique root of 2 - phi(x-a) - phi(x+a) = gamma");
    m.def("rdt_threshold_residual", &rdt_threshold_residual, py::arg("gamma"), py::arg("a"),
          py::arg("lambda_"));

    // detection tests
    py::enum_<TestKind>(m, "TestKind").value("np", TestKind::np).value("rdt", TestKind::rdt);

    py::class_<TestSpec>(m, "TestSpec")
        .def_static("np", &TestSpec::np, py::arg("n"), py::arg("gamma"))
        .def_static("rdt", &TestSpec::rdt, py::arg("n"), py::arg("gamma"), py::arg("tau"))
        .def_property_readonly("kind", &TestSpec::kind)
        .def_property_readonly("n", &TestSpec::n)
        .def_property_readonly("gamma", &TestSpec::gamma)
        .def_property_readonly("tau", &TestSpec::tau)
        .def("threshold", &TestSpec::threshold)
        .def("with_threshold_override", &TestSpec::with_threshold_override, py::arg("threshold"));

    m.def("decide", [](const TestSpec& spec, const std::vector<double>& y) {
        return decide(spec, as_span(y));
    }, py::arg("spec"), py::arg("y"));
    m.def("np_decide", [](const TestSpec& spec, const std::vector<double>& y) {
        return np_decide(spec, as_span(y));
    }, py::arg("spec"), py::arg("y"));
    m.def("rdt_decide", [](const TestSpec& spec, const std::vector<double>& y) {
        return rdt_decide(spec, as_span(y));
    }, py::arg("spec"), py::arg("y"));

    m.def("np_power_exact", [](double gamma, std::size_t n) {
        return np_power_exact(gamma, n).value();
    }, py::arg("gamma"), py::arg("n"));
    m.def("rdt_power_lower_bound", [](double gamma, double tau, double q, std::size_t n) {
        return rdt_power_lower_bound(gamma, tau, q, n).value();
    }, py::arg("gamma"), py::arg("tau"), py::arg("q"), py::arg("n"));

    py::enum_<SelectivityKind>(m, "SelectivityKind")
        .value("singleton_zero", SelectivityKind::singleton_zero)
        .value("closed_interval", SelectivityKind::closed_interval);

    py::class_<SelectivityDescriptor>(m, "SelectivityDescriptor")
        .def_readonly("kind", &SelectivityDescriptor::kind)
        .def_readonly("upper", &SelectivityDescriptor::upper)
        .def("__eq__", [](const SelectivityDescriptor& a, const SelectivityDescriptor& b) {
            return a == b;
        });

    m.def("selectivity_of", &selectivity_of, py::arg("spec"));

    m.def("check_invariance_and_integration",
          [](const TestSpec& spec, const std::vector<double>& y) {
              const auto report = check_invariance_and_integration(spec, as_span(y));
              return py::make_tuple(report.sign_invariant, report.integrator);
          },
          py::arg("spec"), py::arg("y"),
          "Returns (sign_invariant, integrator) for the given input");

    // observation model
    py::class_<InterferenceKind>(m, "InterferenceKind")
        .def_static("zero", &InterferenceKind::zero)
        .def_static("constant", &InterferenceKind::constant, py::arg("c"))
        .def_static("alternating", &InterferenceKind::alternating, py::arg("a"))
        .def_static("iid_uniform", &InterferenceKind::iid_uniform)
        .def_static("worst_case_size", &InterferenceKind::worst_case_size)
        .def_static("sinusoidal", &InterferenceKind::sinusoidal, py::arg("a"), py::arg("p"))
        .def("token", [](const InterferenceKind& kind) { return interference_token(kind); });

    m.def("parse_interference", [](const std::string& token) { return parse_interference(token); },
          py::arg("token"));

    py::class_<ObservationSpec>(m, "ObservationSpec")
        .def(py::init<bool, double, std::size_t, InterferenceKind, std::uint64_t>(),
             py::arg("epsilon"), py::arg("q"), py::arg("n"), py::arg("interference"),
             py::arg("seed"))
        .def_readonly("epsilon", &ObservationSpec::epsilon)
        .def_readonly("q", &ObservationSpec::q)
        .def_readonly("n", &ObservationSpec::n)
        .def_readonly("seed", &ObservationSpec::seed);

    m.def("generate", &generate, py::arg("spec"), py::arg("trial_index"));
    m.def("delta_at", &delta_at, py::arg("spec"), py::arg("trial_index"), py::arg("i"));
    m.def("noise_at", &noise_at, py::arg("spec"), py::arg("trial_index"), py::arg("i"));

    // monte carlo
    m.def("wilson_ci", [](std::uint64_t successes, std::uint64_t trials, double z) {
        const auto [lo, hi] = wilson_ci(successes, trials, z);
        return py::make_tuple(lo.value(), hi.value());
    }, py::arg("successes"), py::arg("trials"), py::arg("z"));

    m.def("estimate_pfa",
          [](const TestSpec& test, const ObservationSpec& model, std::uint64_t trials, double z,
             unsigned threads) { return estimate_dict(estimate_pfa(test, model, trials, z, threads)); },
          py::arg("test"), py::arg("model"), py::arg("trials"), py::arg("z") = 3.0,
          py::arg("threads") = 1);
    m.def("estimate_pdet",
          [](const TestSpec& test, const ObservationSpec& model, std::uint64_t trials, double z,
             unsigned threads) { return estimate_dict(estimate_pdet(test, model, trials, z, threads)); },
          py::arg("test"), py::arg("model"), py::arg("trials"), py::arg("z") = 3.0,
          py::arg("threads") = 1);

    py::class_<SweepConfig>(m, "SweepConfig")
        .def(py::init<>())
        .def_readwrite("kind", &SweepConfig::kind)
        .def_readwrite("gamma", &SweepConfig::gamma)
        .def_readwrite("tau", &SweepConfig::tau)
        .def_readwrite("q", &SweepConfig::q)
        .def_readwrite("interference", &SweepConfig::interference)
        .def_readwrite("n_list", &SweepConfig::n_list)
        .def_readwrite("trials", &SweepConfig::trials)
        .def_readwrite("seed", &SweepConfig::seed)
        .def_readwrite("z", &SweepConfig::z)
        .def_readwrite("threads", &SweepConfig::threads);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("n", &SweepRow::n)
        .def_readonly("trials", &SweepRow::trials)
        .def_property_readonly("pfa", [](const SweepRow& row) { return estimate_dict(row.pfa); })
        .def_property_readonly("pdet", [](const SweepRow& row) { return estimate_dict(row.pdet); })
        .def_property_readonly("reference",
                               [](const SweepRow& row) { return row.reference.value(); });

    m.def("sweep", &sweep, py::arg("config"));
    m.def("sweep_csv", &sweep_csv, py::arg("rows"));
    m.def("sweep_json", [](const std::vector<SweepRow>& rows) { return sweep_json(rows).dump(); },
          py::arg("rows"), "Sweep table as a JSON text");

    // preorder and multiplicity principle
    py::class_<FinitePreorder>(m, "FinitePreorder")
        .def(py::init<std::vector<std::string>, std::vector<std::vector<bool>>>(),
             py::arg("labels"), py::arg("relation"))
        .def_property_readonly("labels", &FinitePreorder::labels)
        .def("leq", &FinitePreorder::leq, py::arg("a"), py::arg("b"))
        .def("upper_bounds", &FinitePreorder::upper_bounds, py::arg("a_set"))
        .def("maximal_elements", &FinitePreorder::maximal_elements, py::arg("a_set"))
        .def("sup_set", &FinitePreorder::sup_set, py::arg("a_set"))
        .def("__len__", &FinitePreorder::size);

    py::class_<MPVerdict>(m, "MPVerdict")
        .def_readonly("holds", &MPVerdict::holds)
        .def_readonly("witness_same_upper", &MPVerdict::witness_same_upper)
        .def_readonly("witness_a", &MPVerdict::witness_a)
        .def_readonly("witness_b", &MPVerdict::witness_b)
        .def_readonly("failure_reason", &MPVerdict::failure_reason)
        .def_readonly("lemma_condition", &MPVerdict::lemma_condition);

    m.def("check_mp", &check_mp, py::arg("preorder"), py::arg("a_set"), py::arg("b_set"));

    py::enum_<AbstractionMode>(m, "AbstractionMode")
        .value("analytic", AbstractionMode::analytic)
        .value("mc", AbstractionMode::mc);

    py::class_<AbstractionConfig>(m, "AbstractionConfig")
        .def(py::init<>())
        .def_readwrite("gamma", &AbstractionConfig::gamma)
        .def_readwrite("tau", &AbstractionConfig::tau)
        .def_readwrite("n_grid", &AbstractionConfig::n_grid)
        .def_readwrite("q_grid", &AbstractionConfig::q_grid)
        .def_readwrite("mode", &AbstractionConfig::mode)
        .def_readwrite("trials", &AbstractionConfig::trials)
        .def_readwrite("seed", &AbstractionConfig::seed)
        .def_readwrite("threads", &AbstractionConfig::threads);

    py::class_<LandscapeAbstraction>(m, "LandscapeAbstraction")
        .def_property_readonly("preorder",
                               [](const LandscapeAbstraction& a) -> const FinitePreorder& {
                                   return a.preorder;
                               }, py::return_value_policy::reference_internal)
        .def_readonly("np_set", &LandscapeAbstraction::np_set)
        .def_readonly("rdt_set", &LandscapeAbstraction::rdt_set)
        .def_readonly("oracle_index", &LandscapeAbstraction::oracle_index);

    m.def("build_landscape_abstraction", &build_landscape_abstraction, py::arg("config"));
    m.def("verdict_json",
          [](const LandscapeAbstraction& abstraction, const MPVerdict& verdict,
             const AbstractionConfig& config) {
              return verdict_json(abstraction, verdict, config).dump(2);
          },
          py::arg("abstraction"), py::arg("verdict"), py::arg("config"));
}
