// Python bindings. Reports cross the boundary as JSON text; the package
// wrapper decodes them into dicts.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cauchydual/error.hpp"
#include "cauchydual/pipeline.hpp"

namespace py = pybind11;
namespace cd = cauchydual;

namespace {

cd::NumericPolicy policy_from(const std::optional<std::string>& text) {
    cd::NumericPolicy p;
    if (text) {
        try {
            p = nlohmann::json::parse(*text).get<cd::NumericPolicy>();
        } catch (const nlohmann::json::exception& e) {
            throw cd::Error(cd::ErrorKind::ParseError, "cli_reports", std::string("policy: ") + e.what());
        }
    }
    p.validate();
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Subnormality toolkit for Dirichlet-type spaces (native core)";
    m.attr("SCHEMA_VERSION") = cd::kSchemaVersion;

    static py::exception<cd::Error> error(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const cd::Error& e) {
            py::tuple args = py::make_tuple(std::string(cd::to_string(e.kind())), e.module(), std::string(e.what()));
            PyErr_SetObject(error.ptr(), args.ptr());
        }
    });

    m.def(
        "analyze",
        [](const std::string& measure, bool oracle, const std::optional<std::string>& policy) {
            const auto p = policy_from(policy);
            const auto report = cd::cmd_analyze(cd::parse_measure(measure, p), p, {oracle, false});
            return nlohmann::json(report).dump();
        },
        py::arg("measure"), py::arg("oracle") = false, py::arg("policy") = py::none(),
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "paper_check",
        [](const std::optional<std::string>& measure, const std::optional<std::string>& rotate,
           const std::optional<std::string>& policy) {
            const auto p = policy_from(policy);
            std::optional<cd::Measure> mu;
            if (measure) mu = cd::parse_measure(*measure, p);
            std::optional<cd::Turns> rot;
            if (rotate) rot = cd::parse_turns(*rotate);
            return nlohmann::json(cd::cmd_paper_check(mu, rot, p)).dump();
        },
        py::arg("measure") = py::none(), py::arg("rotate") = py::none(), py::arg("policy") = py::none(),
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "kernel",
        [](const std::string& measure, cd::CScalar z, cd::CScalar lam, const std::optional<std::string>& policy) {
            const auto p = policy_from(policy);
            return nlohmann::json(cd::cmd_kernel(cd::parse_measure(measure, p), z, lam, p)).dump();
        },
        py::arg("measure"), py::arg("z"), py::arg("lam"), py::arg("policy") = py::none(),
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "sweep",
        [](int grid, const std::vector<std::array<double, 3>>& weights, int jobs,
           const std::optional<std::string>& policy) {
            const auto p = policy_from(policy);
            cd::SweepSpec spec;
            spec.grid = grid;
            spec.weights = weights;
            spec.jobs = jobs;
            return cd::sweep_csv(cd::cmd_sweep(spec, p));
        },
        py::arg("grid") = 12, py::arg("weights") = std::vector<std::array<double, 3>>{{1.0, 1.0, 1.0}},
        py::arg("jobs") = 0, py::arg("policy") = py::none(), py::call_guard<py::gil_scoped_release>());
}
