#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nfcircle/circle.hpp"
#include "nfcircle/io.hpp"
#include "nfcircle/report.hpp"

namespace py = pybind11;
using namespace nfc;

namespace {

/// Python-facing handle; heavy structures stay on the C++ side and cross the
/// boundary as JSON strings.
struct PyInstance {
    EquationInstance inst;

    static PyInstance from_json(const std::string& text) {
        return {instance_from_json(Json::parse(text))};
    }
    static PyInstance from_fixture(const std::string& name) {
        return {builtin_fixture(name)};
    }

    std::string to_json() const { return instance_to_json(inst).dump(); }
    std::string label() const { return inst.label; }
    std::size_t m() const { return inst.m(); }
    unsigned n() const { return inst.n; }
    std::size_t slots() const { return inst.slots(); }
    double rho() const { return inst.box.rho; }

    std::string count(double P, unsigned jobs, uint64_t budget) const {
        CountOptions opts;
        opts.jobs = jobs;
        opts.budget_points = budget;
        return count_solutions(inst, P, opts).count.get_str();
    }
    std::string naive(double P, uint64_t budget) const {
        return naive_count(inst, P, budget).get_str();
    }
    std::string orthogonality(double P) const {
        return orthogonality_count(inst, P, {}).get_str();
    }
    std::complex<double> complete_sum_at(const std::vector<std::string>& gamma) const {
        std::vector<Rat> g;
        for (const auto& s : gamma) g.push_back(rat_from_string(s));
        return complete_sum(g, inst).S;
    }
    std::string local_density_at(long p, double tol) const {
        auto r = local_density_adaptive(principal_ideal(fe_from_int(*inst.k, Int(p))), inst, tol);
        Json doc;
        doc["p"] = r.p.get_str();
        doc["mu"] = r.mu;
        doc["j_stop"] = r.j_stop;
        doc["stabilized"] = r.stabilized;
        doc["tail_gap"] = r.tail_gap;
        return doc.dump();
    }
    std::string series(long prime_cutoff, long gamma_cutoff) const {
        return series_to_json(singular_series(inst, Int(prime_cutoff), 0, Int(gamma_cutoff)))
            .dump();
    }
    std::string integral(const std::string& method, uint64_t samples, uint64_t seed,
                         unsigned jobs) const {
        return integral_to_json(singular_integral(inst, method, samples, seed, jobs)).dump();
    }
    std::string predict(double P, long prime_cutoff, long gamma_cutoff, uint64_t samples,
                        uint64_t seed, unsigned jobs) const {
        auto s = singular_series(inst, Int(prime_cutoff), 0, Int(gamma_cutoff));
        auto i = singular_integral(inst, "slab", samples, seed, jobs);
        auto p = prediction(inst, s, i, P);
        Json doc;
        doc["value"] = p.value;
        doc["stderr"] = p.stderr_;
        doc["series"] = p.series;
        doc["integral"] = p.integral;
        doc["P"] = p.P;
        return doc.dump();
    }
    std::string hensel(long p) const {
        return hensel_to_json(hensel_certify(principal_ideal(fe_from_int(*inst.k, Int(p))), inst))
            .dump();
    }
    bool hensel_replay(const std::string& cert_text) const {
        return replay_hensel(hensel_from_json(Json::parse(cert_text)), inst);
    }
    std::string real_places() const {
        Json arr = Json::array();
        for (const auto& c : real_place_certify(inst)) arr.push_back(real_place_to_json(c));
        return arr.dump();
    }
    std::string wapprox(const std::vector<double>& schedule, unsigned jobs) const {
        CountOptions opts;
        opts.jobs = jobs;
        WitnessCertificate cert = weak_approx_search(inst, schedule, opts);
        return witness_to_json(cert).dump();
    }
    bool wapprox_replay(const std::string& cert_text) const {
        WitnessCertificate cert = witness_from_json(Json::parse(cert_text));
        return replay_witness(inst, cert);
    }
    std::string minor_arcs(const std::vector<double>& P_list, double theta, std::size_t samples,
                           uint64_t seed) const {
        MinorArcScan scan = minor_arc_scan(inst, P_list, theta, samples, seed);
        Json doc;
        doc["fitted_exponent"] = scan.fitted_exponent;
        Json rows = Json::array();
        for (const auto& r : scan.rows)
            rows.push_back(Json{{"P", r.P},
                                {"max_abs_S3", r.max_abs_S3},
                                {"minor_samples", r.minor_samples},
                                {"major_samples", r.major_samples}});
        doc["rows"] = rows;
        return doc.dump();
    }
};

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "circle-method toolkit for a N(x) + b N(y) = z^n over a number field";
    mod.attr("tool_version") = kToolVersion;
    mod.def("builtin_fixture_names", &builtin_fixture_names);

    py::register_exception<SchemaError>(mod, "SchemaError");
    py::register_exception<BudgetExceeded>(mod, "BudgetError");
    py::register_exception<InfeasibleError>(mod, "InfeasibleError");

    py::class_<PyInstance>(mod, "Instance")
        .def_static("from_json", &PyInstance::from_json, py::arg("text"))
        .def_static("from_fixture", &PyInstance::from_fixture, py::arg("name"))
        .def("to_json", &PyInstance::to_json)
        .def_property_readonly("label", &PyInstance::label)
        .def_property_readonly("m", &PyInstance::m)
        .def_property_readonly("n", &PyInstance::n)
        .def_property_readonly("slots", &PyInstance::slots)
        .def_property_readonly("rho", &PyInstance::rho)
        .def("count", &PyInstance::count, py::arg("P"), py::arg("jobs") = 1,
             py::arg("budget") = 2'000'000'000ULL)
        .def("naive_count", &PyInstance::naive, py::arg("P"),
             py::arg("budget") = 100'000'000ULL)
        .def("orthogonality_count", &PyInstance::orthogonality, py::arg("P"))
        .def("complete_sum", &PyInstance::complete_sum_at, py::arg("gamma"))
        .def("local_density", &PyInstance::local_density_at, py::arg("p"),
             py::arg("tol") = 1e-3)
        .def("singular_series", &PyInstance::series, py::arg("prime_cutoff") = 50,
             py::arg("gamma_cutoff") = 64)
        .def("singular_integral", &PyInstance::integral, py::arg("method") = "slab",
             py::arg("samples") = 2'000'000ULL, py::arg("seed") = 1, py::arg("jobs") = 1)
        .def("predict", &PyInstance::predict, py::arg("P"), py::arg("prime_cutoff") = 50,
             py::arg("gamma_cutoff") = 64, py::arg("samples") = 2'000'000ULL, py::arg("seed") = 1,
             py::arg("jobs") = 1)
        .def("hensel", &PyInstance::hensel, py::arg("p"))
        .def("hensel_replay", &PyInstance::hensel_replay, py::arg("cert"))
        .def("real_places", &PyInstance::real_places)
        .def("wapprox", &PyInstance::wapprox, py::arg("schedule"), py::arg("jobs") = 1)
        .def("wapprox_replay", &PyInstance::wapprox_replay, py::arg("cert"))
        .def("minor_arcs", &PyInstance::minor_arcs, py::arg("P_list"), py::arg("theta") = 0.4,
             py::arg("samples") = 100, py::arg("seed") = 42);
}
