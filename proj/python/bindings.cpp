#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "vecwp/cone.hpp"
#include "vecwp/diagnostics.hpp"
#include "vecwp/distance.hpp"
#include "vecwp/errors.hpp"
#include "vecwp/registry.hpp"
#include "vecwp/runner.hpp"

namespace py = pybind11;
using namespace vecwp;

namespace {

py::dict report_dict(const WellPosednessReport& r) {
    py::dict d;
    d["verdict"] = std::string(to_string(r.verdict));
    d["schedule"] = r.schedule;
    py::list curves;
    for (std::size_t j = 0; j < std::max<std::size_t>(1, r.directions.size()); ++j) curves.append(r.curve(j));
    d["diameters"] = curves;
    d["directions"] = r.directions;
    d["threshold"] = r.threshold;
    d["lattice_spacing"] = r.lattice_spacing;
    d["grid_resolution"] = r.grid_resolution;
    return d;
}

std::size_t grid_or_default(std::size_t grid, const RegistryEntry& e) {
    return grid ? grid : e.default_grid;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Well-posedness diagnostics for finite-dimensional vector optimization";
    m.attr("__version__") = kToolVersion;

    static py::exception<Error> error(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object args = py::make_tuple(std::string(to_string(e.kind())), std::string(e.what()));
            PyErr_SetObject(error.ptr(), args.ptr());
        }
    });

    py::class_<OrderingCone>(m, "OrderingCone")
        .def(py::init([](const std::vector<Vector>& generators, std::optional<Vector> k0) {
                 return OrderingCone(generators, std::move(k0));
             }),
             py::arg("generators"), py::arg("k0") = py::none())
        .def_static("orthant", &OrderingCone::orthant, py::arg("m"))
        .def_property_readonly("generators", &OrderingCone::generators)
        .def_property_readonly("dual_generators", &OrderingCone::dual_generators)
        .def_property_readonly("k0", &OrderingCone::k0)
        .def("contains", &OrderingCone::contains, py::arg("y"), py::arg("strict") = false);

    m.def(
        "oriented_distance",
        [](const OrderingCone& cone, const Vector& y) {
            const auto r = oriented_distance(cone, y);
            py::dict d;
            d["value"] = r.value;
            d["nearest_point"] = r.nearest_point;
            d["active_facet"] = r.active_facet;
            return d;
        },
        py::arg("cone"), py::arg("y"), "D_{-C}(y) with the nearest point of -C (or y itself when inside).");

    m.def("registry_labels", &registry_labels);

    m.def(
        "replicate",
        [](const std::string& label, std::uint64_t seed) {
            py::list out;
            for (const auto& a : replicate(label, seed).assertions) {
                py::dict d;
                d["name"] = a.name;
                d["source"] = std::string(to_string(a.source));
                d["passed"] = a.passed;
                d["detail"] = a.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("label"), py::arg("seed") = 0);

    m.def(
        "classify",
        [](const std::string& label, const Vector& point, std::size_t grid) {
            const auto e = registry_entry(label);
            ClassifyOptions opt;
            opt.test_strict = false;
            const auto v = classify_point(e.make(), point, grid_or_default(grid, e), opt);
            py::dict d;
            d["efficient"] = std::string(to_string(v.efficient));
            d["weakly_efficient"] = std::string(to_string(v.weakly_efficient));
            d["dominating_witness"] = v.dominating_witness;
            return d;
        },
        py::arg("label"), py::arg("point"), py::arg("grid") = 0);

    m.def(
        "dh_check",
        [](const std::string& label, std::optional<Vector> point, std::size_t grid) {
            const auto e = registry_entry(label);
            const auto p = e.make();
            return report_dict(dh_diagnostic(p, point.value_or(e.reference_point), default_dh_directions(p.cone()),
                                             default_schedule(), grid_or_default(grid, e)));
        },
        py::arg("label"), py::arg("point") = py::none(), py::arg("grid") = 0);

    m.def(
        "tykhonov_check",
        [](const std::string& label, const Vector& xi, std::size_t grid) {
            const auto e = registry_entry(label);
            return report_dict(tykhonov_diagnostic(scalarize_linear(e.make(), xi), default_schedule(), grid_or_default(grid, e)));
        },
        py::arg("label"), py::arg("xi"), py::arg("grid") = 0);

    m.def(
        "run",
        [](const std::string& subcommand, const std::string& problem, const std::string& config, std::size_t grid,
           double sigma, std::size_t n, std::uint64_t seed, double tol, const std::vector<std::string>& points,
           const std::string& y, const std::string& xi, const std::string& format) {
            RunConfig cfg;
            cfg.subcommand = parse_subcommand(subcommand);
            cfg.problem = problem;
            cfg.config = config;
            cfg.grid = grid;
            cfg.sigma = sigma;
            cfg.n = n;
            cfg.seed = seed;
            cfg.tol = tol;
            cfg.points = points;
            cfg.y = y;
            cfg.xi = xi;
            cfg.format = parse_format(format);
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = run(cfg, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("subcommand"), py::arg("problem") = "", py::arg("config") = "", py::arg("grid") = 0,
        py::arg("sigma") = 0.1, py::arg("n") = 1, py::arg("seed") = 0, py::arg("tol") = 1e-9,
        py::arg("points") = std::vector<std::string>{}, py::arg("y") = "", py::arg("xi") = "",
        py::arg("format") = "record",
        "Runs a CLI subcommand in process; returns (exit_code, stdout, stderr).");
}
