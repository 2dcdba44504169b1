#include "evofam/app.hpp"
#include "evofam/audit.hpp"
#include "evofam/bounds.hpp"
#include "evofam/diagnostics.hpp"
#include "evofam/errors.hpp"
#include "evofam/evolution.hpp"
#include "evofam/hamel.hpp"
#include "evofam/loewner.hpp"
#include "evofam/registry.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace evofam;

namespace {

using Runner = CommandResult (*)(const RunConfig&, std::ostream&);

py::tuple run(Runner runner, const RunConfig& config)
{
    std::ostringstream log;
    CommandResult result;
    {
        py::gil_scoped_release release;
        result = runner(config, log);
    }
    return py::make_tuple(result.exit_code, result.report, log.str());
}

py::dict certificate_dict(const UnivalenceCertificate& c)
{
    py::dict d;
    d["s0"] = c.s0;
    d["t0"] = c.t0;
    d["radius"] = c.radius;
    d["z0"] = c.z0;
    d["sigma"] = c.sigma;
    d["landau_radius"] = c.landau_radius;
    d["subdivision"] = c.subdivision;
    d["ratios"] = c.ratios;
    return d;
}

EvolutionFamily real_family(const AnyFamily& f)
{
    if (const auto* e = std::get_if<EvolutionFamily>(&f))
        return *e;
    throw ConfigError("this operation needs a real-time family");
}

} // namespace

PYBIND11_MODULE(_evofam, m)
{
    m.doc() = "Evolution families of holomorphic self-maps of the unit disk";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<IntervalMismatch>(m, "IntervalMismatch", base.ptr());
    py::register_exception<InversionFailure>(m, "InversionFailure", base.ptr());
    py::register_exception<RangeError>(m, "RangeError", base.ptr());
    py::register_exception<CertificationFailure>(m, "CertificationFailure", base.ptr());
    py::register_exception<BasisMismatch>(m, "BasisMismatch", base.ptr());
    py::register_exception<LatticeError>(m, "LatticeError", base.ptr());
    py::register_exception<NotDiscontinuous>(m, "NotDiscontinuous", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

    py::class_<DiskMap>(m, "DiskMap")
        .def_static("identity", &DiskMap::identity)
        .def_static("rotation", &DiskMap::rotation, py::arg("theta"))
        .def_static("scale", &DiskMap::scale, py::arg("lam"))
        .def_static("mobius", &DiskMap::mobius, py::arg("lam"))
        .def_static("compose", &DiskMap::compose, py::arg("outer"), py::arg("inner"))
        .def_static("blaschke2", &blaschke2, py::arg("a"))
        .def("eval", &DiskMap::eval, py::arg("z"))
        .def("deriv", &DiskMap::deriv, py::arg("z"))
        .def("__call__", &DiskMap::eval, py::arg("z"))
        .def("size", &DiskMap::size)
        .def("describe", &DiskMap::describe)
        .def("__repr__", [](const DiskMap& f) { return "<DiskMap " + f.describe() + ">"; });

    m.def("schwarz_pick_upper", &schwarz_pick_upper, py::arg("z_abs"), py::arg("w0_abs"));
    m.def("center_bound", &center_bound, py::arg("z_abs"), py::arg("wz_abs"));
    m.def("fixed_origin_growth", &fixed_origin_growth, py::arg("z_abs"), py::arg("lambda_abs"));
    m.def("identity_deviation", &identity_deviation, py::arg("z_abs"), py::arg("lam"));
    m.def("landau_radius", &landau_radius, py::arg("sigma"));
    m.def("landau_sigma_for_radius", &landau_sigma_for_radius, py::arg("r"));
    m.def("lipschitz_bound", &lipschitz_bound, py::arg("z0"), py::arg("z1"), py::arg("r"));
    m.def("hyperbolic_sum", &hyperbolic_sum, py::arg("e1"), py::arg("e2"));
    m.def(
        "lu_distance", [](const DiskMap& f, const DiskMap& g, double r, int n) { return lu_distance(f, g, DiskRegion(r), n); },
        py::arg("f"), py::arg("g"), py::arg("r"), py::arg("n_angles") = 64);
    m.def(
        "univalence_sample_test",
        [](const DiskMap& f, double r, std::size_t n, std::uint64_t seed) {
            const UnivalenceSample s = univalence_sample_test(f, DiskRegion(r), n, seed);
            return py::make_tuple(s.passed, s.witness);
        },
        py::arg("map"), py::arg("r"), py::arg("n"), py::arg("seed") = 0);

    py::class_<EvolutionFamily>(m, "EvolutionFamily")
        .def("at", &EvolutionFamily::at, py::arg("s"), py::arg("t"))
        .def_property_readonly("label", [](const EvolutionFamily& f) { return f.label(); })
        .def_property_readonly("interval", [](const EvolutionFamily& f) {
            return py::make_tuple(f.interval().a, f.interval().b);
        })
        .def_property_readonly("iterative",
                               [](const EvolutionFamily& f) { return f.exactness() == Exactness::iterative; });

    m.def(
        "family",
        [](const std::string& name, std::optional<std::pair<double, double>> interval) {
            std::optional<Interval> iv;
            if (interval)
                iv = Interval{interval->first, interval->second};
            return real_family(make_family(name, iv));
        },
        py::arg("name"), py::arg("interval") = py::none());
    m.def("glue", &glue, py::arg("first"), py::arg("second"));
    m.def(
        "reverse_round_trip_distance",
        [](const EvolutionFamily& f, double s, double t, double r) {
            return lu_distance(reverse_dual(reverse_dual(f)).at(s, t), f.at(s, t), DiskRegion(r), 64);
        },
        py::arg("family"), py::arg("s"), py::arg("t"), py::arg("r") = 0.9);
    m.def(
        "semigroup_residual",
        [](const EvolutionFamily& f, std::size_t n_time, std::uint64_t seed) {
            GridSpec g;
            g.n_time = n_time;
            g.seed = seed;
            py::gil_scoped_release release;
            return semigroup_residual(f, g);
        },
        py::arg("family"), py::arg("n_time") = 9, py::arg("seed") = 0);
    m.def(
        "identity_residual",
        [](const EvolutionFamily& f, std::size_t n_time) {
            GridSpec g;
            g.n_time = n_time;
            return identity_residual(f, g);
        },
        py::arg("family"), py::arg("n_time") = 9);
    m.def(
        "univalence_certificate",
        [](const EvolutionFamily& f, double s0, double t0, double r, Complex z0) {
            return certificate_dict(univalence_certificate(f, s0, t0, DiskRegion(r), z0));
        },
        py::arg("family"), py::arg("s0"), py::arg("t0"), py::arg("r") = 0.5, py::arg("z0") = Complex(0.0));

    m.def(
        "additive_eval",
        [](const std::vector<std::string>& coords) {
            const auto spec = hamel::AdditiveSpec::standard();
            return hamel::additive_eval(spec, hamel::TimeVector::from_strings(spec.basis, coords));
        },
        py::arg("coords"), "f on the default lattice (basis 1, sqrt2; images pi, 0)");

    py::class_<RunConfig>(m, "RunConfig")
        .def(py::init<>())
        .def_readwrite("family", &RunConfig::family)
        .def_property(
            "interval",
            [](const RunConfig& c) -> std::optional<std::pair<double, double>> {
                if (!c.interval)
                    return std::nullopt;
                return std::make_pair(c.interval->a, c.interval->b);
            },
            [](RunConfig& c, std::optional<std::pair<double, double>> iv) {
                c.interval = iv ? std::optional<Interval>(Interval{iv->first, iv->second}) : std::nullopt;
            })
        .def_property(
            "n_time", [](const RunConfig& c) { return c.grid.n_time; },
            [](RunConfig& c, std::size_t n) { c.grid.n_time = n; })
        .def_property(
            "radii", [](const RunConfig& c) { return c.grid.radii; },
            [](RunConfig& c, std::vector<double> r) { c.grid.radii = std::move(r); })
        .def_property(
            "n_angles", [](const RunConfig& c) { return c.grid.n_angles; },
            [](RunConfig& c, int n) { c.grid.n_angles = n; })
        .def_property(
            "seed", [](const RunConfig& c) { return c.grid.seed; },
            [](RunConfig& c, std::uint64_t s) { c.grid.seed = s; })
        .def_readwrite("threads", &RunConfig::threads)
        .def_readwrite("trials", &RunConfig::trials)
        .def_readwrite("custom_scale", &RunConfig::custom_scale)
        .def_readwrite("spec_path", &RunConfig::spec_path)
        .def_readwrite("witness_radius", &RunConfig::witness_radius)
        .def("apply_toml", [](RunConfig& c, const std::string& text) { apply_config_toml(c, text); });

    m.def(
        "run_verify", [](const RunConfig& c) { return run(&run_verify, c); }, py::arg("config"),
        "Returns (exit_code, report_json, log).");
    m.def(
        "run_scan", [](const RunConfig& c) { return run(&run_scan, c); }, py::arg("config"));
    m.def(
        "run_bounds", [](const RunConfig& c) { return run(&run_bounds, c); }, py::arg("config"));
    m.def(
        "run_counterexample", [](const RunConfig& c) { return run(&run_counterexample, c); }, py::arg("config"));
}
