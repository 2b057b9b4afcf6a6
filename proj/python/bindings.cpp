// Python bindings. Elements cross the boundary as coordinate lists; certificates
// as JSON text (decoded on the Python side).

#include <pybind11/pybind11.h>
#include <pybind11/complex.h>
#include <pybind11/stl.h>

#include <complex>
#include <numbers>

#include "spectile/analysis.hpp"
#include "spectile/certificate.hpp"
#include "spectile/constructions.hpp"
#include "spectile/errors.hpp"
#include "spectile/fourier.hpp"
#include "spectile/io.hpp"

namespace py = pybind11;
using namespace spectile;

namespace {

using Coords = std::vector<std::vector<std::int64_t>>;

GroupSubset make_subset(const Group& g, const Coords& elements) {
    nlohmann::json arr = elements;
    return GroupSubset::from_elems(g, io::elems_from_json(g, arr, "elements"));
}

Coords coords_of(const GroupSubset& s) {
    Coords out;
    for (const auto& e : s.elems()) out.push_back(e.coords);
    return out;
}

TransformMode mode_from(const std::string& m) {
    if (m == "auto") return TransformMode::automatic;
    if (m == "naive") return TransformMode::naive;
    if (m == "tensor") return TransformMode::tensor;
    throw std::invalid_argument("mode must be auto, naive or tensor");
}

RunConfig config(std::int64_t budget, unsigned threads, const std::string& mode) {
    RunConfig c;
    c.search_node_budget = budget;
    c.parallelism = threads;
    c.transform_mode = mode_from(mode);
    return c;
}

}  // namespace

PYBIND11_MODULE(_spectile, m) {
    m.doc() = "Exact Fourier analysis of subsets of finite abelian groups";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);

    py::class_<Group>(m, "Group")
        .def(py::init<std::vector<std::int64_t>>(), py::arg("moduli"))
        .def_property_readonly("moduli",
                               [](const Group& g) { return std::vector<std::int64_t>(g.moduli().begin(), g.moduli().end()); })
        .def_property_readonly("order", &Group::order)
        .def_property_readonly("exponent", &Group::exponent)
        .def("index_of", [](const Group& g, std::vector<std::int64_t> x) { return g.index_of(Elem{std::move(x)}); })
        .def("element", [](const Group& g, Index i) { return g.element(i).coords; })
        .def("__eq__", &Group::operator==)
        .def("__repr__", &Group::to_string);

    py::class_<GroupSubset>(m, "Subset")
        .def(py::init(&make_subset), py::arg("group"), py::arg("elements"))
        .def_property_readonly("group", &GroupSubset::group)
        .def_property_readonly("elements", &coords_of)
        .def("__len__", &GroupSubset::size)
        .def("__contains__", [](const GroupSubset& s, std::vector<std::int64_t> x) {
            return s.group().is_canonical(x) && s.contains(Elem{std::move(x)});
        })
        .def("__eq__", &GroupSubset::operator==)
        .def("translate",
             [](const GroupSubset& s, std::vector<std::int64_t> t) { return s.translate(s.group().index_of(Elem{std::move(t)})); })
        .def("to_json", [](const GroupSubset& s) { return io::subset_to_json(s).dump(); })
        .def_static("from_json", [](const std::string& text) {
            return io::subset_from_json(io::parse_json_text(text, "<string>"));
        });

    py::class_<CycInt>(m, "CycInt")
        .def_property_readonly("order", &CycInt::order)
        .def_property_readonly("coeffs", &CycInt::coeffs)
        .def_property_readonly("reduced", &CycInt::reduced)
        .def("is_zero", &cyc_is_zero)
        .def("as_integer", &cyc_as_integer)
        .def("__eq__", &cyc_equal)
        .def("__complex__", [](const CycInt& c) {
            std::complex<double> s = 0;
            for (std::int64_t k = 0; k < c.order(); ++k)
                s += static_cast<double>(c.coeff(k)) *
                     std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(c.order()));
            return s;
        });

    m.def("difference_set", &difference_set);
    m.def("subgroup_generated", &subgroup_generated);
    m.def("annihilator", &annihilator);

    m.def("ft_indicator_at",
          [](const GroupSubset& a, std::vector<std::int64_t> xi) { return ft_indicator_at(a, Elem{std::move(xi)}); },
          py::arg("a"), py::arg("xi"));
    m.def("zero_set", [](const GroupSubset& a, const std::string& mode) { return zero_set(a, mode_from(mode)); },
          py::arg("a"), py::arg("mode") = "auto");
    m.def("power_tiling_check", [](const GroupSubset& o, const GroupSubset& l) { return power_tiling_check(o, l); });

    m.def("is_tiling", &is_tiling, py::arg("a"), py::arg("t"), py::arg("level") = 1);
    m.def("is_spectrum", &is_spectrum, py::arg("a"), py::arg("spectrum"));
    m.def(
        "can_tile",
        [](const GroupSubset& a, std::int64_t budget) -> py::tuple {
            auto r = can_tile(a, budget);
            py::object c = r.complement ? py::cast(*r.complement) : py::none();
            return py::make_tuple(to_string(r.status), c);
        },
        py::arg("a"), py::arg("budget") = kDefaultNodeBudget,
        "Returns (status, complement) with status 'found', 'none' or 'inconclusive'.");
    m.def(
        "find_spectrum",
        [](const GroupSubset& a, std::int64_t budget) -> py::tuple {
            auto r = find_spectrum(a, budget);
            py::object s = r.spectrum ? py::cast(*r.spectrum) : py::none();
            return py::make_tuple(to_string(r.status), s);
        },
        py::arg("a"), py::arg("budget") = kDefaultNodeBudget);
    m.def("is_log_hadamard", [](const std::vector<std::vector<std::int64_t>>& rows, std::int64_t den) {
        return is_log_hadamard(RationalMatrix::scaled(rows, den));
    }, py::arg("rows"), py::arg("denominator") = 1);

    m.def("build_E", &build_E);
    m.def("build_K", &build_K);

    m.def("_verify_usc", [](std::int64_t budget, unsigned threads, const std::string& mode) {
        return serialize(build_usc_certificate(config(budget, threads, mode)));
    });
    m.def("_verify_gamma", [](const std::string& variant, std::int64_t budget, unsigned threads, const std::string& mode) {
        return serialize(gamma_nonspectral_certificate(gamma_variant_from_string(variant), config(budget, threads, mode)));
    });
    m.def("_lift", [](const std::string& variant, std::int64_t k, std::int64_t budget, unsigned threads, const std::string& mode) {
        return serialize(lifted_obstruction_check(gamma_variant_from_string(variant), k, config(budget, threads, mode)));
    });
    m.def("_compose", [](const std::string& kind, const std::string& bundle, std::int64_t budget, unsigned threads,
                         const std::string& mode) {
        auto in = composition_from_json(io::parse_json_text(bundle, "<bundle>"));
        return serialize(compose_certificate(kind, in, config(budget, threads, mode)));
    });
    m.attr("DEFAULT_BUDGET") = kDefaultNodeBudget;
}
